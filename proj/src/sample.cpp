#include "pmfix/sample.hpp"

#include <algorithm>
#include <cmath>

#include "pmfix/errors.hpp"
#include "pmfix/report.hpp"

namespace pmfix {

namespace {

std::vector<Point> normalize(std::vector<Point> pts) {
    if (pts.empty()) throw ValidationError("empty sample");
    for (Point p : pts)
        if (!finite_point(p)) throw ValidationError("sample contains a non-finite point");
    std::sort(pts.begin(), pts.end());
    std::vector<Point> out;
    out.reserve(pts.size());
    for (Point p : pts)
        if (out.empty() || !same_point(out.back(), p)) out.push_back(p);
    return out;
}

std::string list_spec(const std::vector<Point>& pts) {
    std::string s = "list(";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ", ";
        s += format_double(pts[i]);
    }
    return s + ")";
}

}  // namespace

SampleSet::SampleSet(std::vector<Point> points, std::string spec)
    : points_(std::move(points)), spec_(std::move(spec)) {}

SampleSet SampleSet::from_list(std::vector<Point> points) {
    auto pts = normalize(std::move(points));
    auto spec = list_spec(pts);
    return SampleSet(std::move(pts), std::move(spec));
}

SampleSet SampleSet::from_range(double first, double last, double step) {
    if (!(step > 0)) throw ValidationError("range step must be positive");
    if (last < first) throw ValidationError("range end precedes start");
    if ((last - first) / step > 1e6) throw ValidationError("range produces too many points");
    std::vector<Point> pts;
    for (double v = first; v <= last + kPointTol; v += step) pts.push_back(v);
    auto spec = "range(" + format_double(first) + ", " + format_double(last) + ", " +
                format_double(step) + ")";
    return SampleSet(normalize(std::move(pts)), std::move(spec));
}

SampleSet SampleSet::geometric(double first, double ratio, int count) {
    if (count < 1) throw ValidationError("geometric count must be at least 1");
    if (count > 1000000) throw ValidationError("geometric produces too many points");
    if (first == 0.0) throw ValidationError("geometric start must be nonzero");
    if (ratio == 0.0) throw ValidationError("geometric ratio must be nonzero");
    std::vector<Point> pts;
    double v = first;
    for (int i = 0; i < count; ++i) {
        pts.push_back(v);
        v *= ratio;
    }
    auto spec = "geometric(" + format_double(first) + ", " + format_double(ratio) + ", " +
                std::to_string(count) + ")";
    return SampleSet(normalize(std::move(pts)), std::move(spec));
}

SampleSet SampleSet::union_of(const SampleSet& a, const SampleSet& b) {
    std::vector<Point> pts = a.points_;
    pts.insert(pts.end(), b.points_.begin(), b.points_.end());
    auto spec = "union(" + a.spec_ + ", " + b.spec_ + ")";
    return SampleSet(normalize(std::move(pts)), std::move(spec));
}

bool SampleSet::contains(Point x) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), x - kPointTol);
    return it != points_.end() && same_point(*it, x);
}

SampleSet SampleSet::with_spec(std::string spec) const { return SampleSet(points_, std::move(spec)); }

}  // namespace pmfix
