#include "pmfix/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmfix/errors.hpp"
#include "pmfix/report.hpp"

namespace pmfix {

PMetricSpace::PMetricSpace(std::string name, MetricFn p, DomainFn domain,
                           std::optional<double> rho_known)
    : impl_(std::make_shared<Impl>(Impl{std::move(name), std::move(p), std::move(domain), rho_known})) {}

bool PMetricSpace::contains(Point x) const {
    if (!finite_point(x)) return false;
    return !impl_->domain || impl_->domain(x);
}

double PMetricSpace::p(Point x, Point y) const {
    if (!finite_point(x) || !finite_point(y))
        throw DomainError("non-finite point passed to " + impl_->name);
    if (impl_->domain && (!impl_->domain(x) || !impl_->domain(y)))
        throw DomainError("point outside the domain of " + impl_->name);
    return impl_->metric(x, y);
}

double eval_pmetric(const PMetricSpace& space, Point x, Point y) { return space.p(x, y); }

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::P1: return "P1";
        case Axiom::P2: return "P2";
        case Axiom::P3: return "P3";
        case Axiom::P4: return "P4";
    }
    return "?";
}

namespace {

bool witness_less(const AxiomWitness& a, const AxiomWitness& b) {
    if (a.axiom != b.axiom) return static_cast<int>(a.axiom) < static_cast<int>(b.axiom);
    if (a.points != b.points) return a.points < b.points;
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
}

}  // namespace

AxiomReport verify_axioms(const PMetricSpace& space, const SampleSet& sample, double tol,
                          par::Exec exec) {
    if (tol < 0) throw Error("verify_axioms: tolerance must be nonnegative");
    const auto& pts = sample.points();
    const std::size_t n = pts.size();

    // Distance table once; the scans below only read it.
    std::vector<double> table(n * n);
    par::for_index(
        n,
        [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) table[i * n + j] = space.p(pts[i], pts[j]);
        },
        exec);
    auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

    // Pair scans (P1, P2, P3), one slot of witnesses per row.
    std::vector<std::vector<AxiomWitness>> slots(n);
    par::for_index(
        n,
        [&](std::size_t i) {
            auto& out = slots[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double pxx = at(i, i), pyy = at(j, j), pxy = at(i, j);
                if (i < j) {
                    const double spread =
                        std::max({std::abs(pxx - pxy), std::abs(pyy - pxy), std::abs(pxx - pyy)});
                    if (same_point(pts[i], pts[j])) {
                        if (spread > tol)
                            out.push_back({Axiom::P1, {pts[i], pts[j]}, spread, tol});
                    } else if (spread <= tol) {
                        out.push_back({Axiom::P1, {pts[i], pts[j]}, std::abs(pts[i] - pts[j]), kPointTol});
                    }
                    if (pxy != at(j, i))
                        out.push_back({Axiom::P3, {pts[i], pts[j]}, pxy, at(j, i)});
                }
                if (pxx > pxy + tol) out.push_back({Axiom::P2, {pts[i], pts[j]}, pxx, pxy});
            }
        },
        exec);

    // Triple scan (P4) over all ordered (x, y, z).
    std::vector<std::vector<AxiomWitness>> p4slots(n);
    par::for_index(
        n,
        [&](std::size_t i) {
            auto& out = p4slots[i];
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const double lhs = at(i, j);
                    const double rhs = at(i, k) + at(k, j) - at(k, k);
                    if (lhs > rhs + tol)
                        out.push_back({Axiom::P4, {pts[i], pts[j], pts[k]}, lhs, rhs});
                }
        },
        exec);

    AxiomReport report;
    report.tol = tol;
    for (auto& s : slots)
        report.witnesses.insert(report.witnesses.end(), s.begin(), s.end());
    for (auto& s : p4slots)
        report.witnesses.insert(report.witnesses.end(), s.begin(), s.end());
    std::sort(report.witnesses.begin(), report.witnesses.end(), witness_less);
    for (const auto& w : report.witnesses) report.pass[static_cast<int>(w.axiom)] = false;
    return report;
}

SpaceSummary space_summary(const PMetricSpace& space, const SampleSet& sample, double tol) {
    SpaceSummary summary;
    const auto& pts = sample.points();
    summary.sizes.reserve(pts.size());
    double rho = std::numeric_limits<double>::infinity();
    for (Point x : pts) {
        const double size = space.p(x, x);
        summary.sizes.emplace_back(x, size);
        rho = std::min(rho, size);
    }
    summary.rho_hat = rho;
    for (const auto& [x, size] : summary.sizes)
        if (size <= rho + tol) summary.up_hat.push_back(x);
    return summary;
}

PMetricSpace FiniteTable::to_space(std::string name) const {
    const int count = n;
    auto values_copy = std::make_shared<const std::vector<double>>(values);
    double rho = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) rho = std::min(rho, at(i, i));
    auto index_of = [count](Point x) -> int {
        const double r = std::round(x);
        if (std::abs(x - r) > kPointTol) return -1;
        const int i = static_cast<int>(r);
        return (i >= 0 && i < count) ? i : -1;
    };
    auto metric = [values_copy, count, index_of](Point x, Point y) {
        const int i = index_of(x), j = index_of(y);
        if (i < 0 || j < 0) throw DomainError("point outside the finite table");
        return (*values_copy)[static_cast<std::size_t>(i) * count + j];
    };
    auto domain = [index_of](Point x) { return index_of(x) >= 0; };
    return PMetricSpace(std::move(name), std::move(metric), std::move(domain), rho);
}

SampleSet FiniteTable::full_sample() const {
    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = i;
    return SampleSet::from_list(std::move(pts));
}

std::string FiniteTable::to_text() const {
    std::string out = "pmetric-table v1 n=" + std::to_string(n) + " seed=" + std::to_string(seed) + "\n";
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out += " ";
            out += format_double(at(i, j));
        }
        out += "\n";
    }
    return out;
}

FiniteTable FiniteTable::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    FiniteTable t;
    if (!(in >> word) || word != "pmetric-table") throw Error("bad table header");
    if (!(in >> word) || word != "v1") throw Error("unsupported table version");
    if (!(in >> word) || word.rfind("n=", 0) != 0) throw Error("missing table size");
    t.n = std::stoi(word.substr(2));
    if (t.n <= 0) throw Error("bad table size");
    if (!(in >> word) || word.rfind("seed=", 0) != 0) throw Error("missing table seed");
    t.seed = std::stoull(word.substr(5));
    t.values.resize(static_cast<std::size_t>(t.n) * t.n);
    for (auto& v : t.values)
        if (!(in >> v)) throw Error("truncated table body");
    return t;
}

}  // namespace pmfix
