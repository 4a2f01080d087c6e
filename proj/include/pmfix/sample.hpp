#pragma once

#include <string>
#include <vector>

#include "pmfix/point.hpp"

namespace pmfix {

/// Finite, ordered stand-in for the (possibly infinite) point set of a
/// space. Points are stored ascending with duplicates within point
/// tolerance removed, so every report derived from a sample is
/// deterministic. The generator spec records how the sample was produced
/// and is echoed in reports.
class SampleSet {
public:
    static SampleSet from_list(std::vector<Point> points);
    static SampleSet from_range(double first, double last, double step);
    static SampleSet geometric(double first, double ratio, int count);
    static SampleSet union_of(const SampleSet& a, const SampleSet& b);

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const std::string& generator_spec() const { return spec_; }

    bool contains(Point x) const;

    /// Same points, explicit spec string (used when a sample is rebuilt
    /// from report data).
    SampleSet with_spec(std::string spec) const;

private:
    SampleSet(std::vector<Point> points, std::string spec);

    std::vector<Point> points_;
    std::string spec_;
};

}  // namespace pmfix
