#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmfix/parallel.hpp"
#include "pmfix/point.hpp"
#include "pmfix/sample.hpp"

namespace pmfix {

/// A point set together with a symmetric nonnegative distance function that
/// may assign points a positive self-distance (their "size"). Immutable and
/// cheap to copy; the distance function must be pure.
class PMetricSpace {
public:
    using MetricFn = std::function<double(Point, Point)>;
    using DomainFn = std::function<bool(Point)>;

    /// domain == nullptr means "all finite reals". rho_known is the exact
    /// infimum of sizes when it is known analytically (all bundled spaces
    /// set it), used to validate sampled estimates.
    PMetricSpace(std::string name, MetricFn p, DomainFn domain = nullptr,
                 std::optional<double> rho_known = std::nullopt);

    /// Distance evaluation with domain checking; pure and deterministic.
    /// Throws DomainError when either argument is non-finite or outside the
    /// declared domain.
    double p(Point x, Point y) const;

    bool contains(Point x) const;
    const std::string& name() const { return impl_->name; }
    std::optional<double> rho_known() const { return impl_->rho_known; }

private:
    struct Impl {
        std::string name;
        MetricFn metric;
        DomainFn domain;
        std::optional<double> rho_known;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Single checked evaluation of the distance function.
double eval_pmetric(const PMetricSpace& space, Point x, Point y);

enum class Axiom { P1, P2, P3, P4 };

const char* axiom_name(Axiom a);

/// One concrete violation: the points involved plus the two sides of the
/// inequality (or agreement check) that failed.
struct AxiomWitness {
    Axiom axiom;
    std::vector<Point> points;
    double lhs = 0;
    double rhs = 0;
};

struct AxiomReport {
    std::array<bool, 4> pass{true, true, true, true};
    std::vector<AxiomWitness> witnesses;
    double tol = kDefaultTol;

    bool all_pass() const { return pass[0] && pass[1] && pass[2] && pass[3]; }
    bool passed(Axiom a) const { return pass[static_cast<int>(a)]; }
};

/// Checks the four partial-metric axioms over the sample: identity both
/// directions on pairs, self-distance minimality and symmetry on pairs, and
/// the sharpened triangle inequality on all ordered triples. Witnesses are
/// sorted by (axiom, point values) so the report is order-independent.
AxiomReport verify_axioms(const PMetricSpace& space, const SampleSet& sample, double tol = kDefaultTol,
                          par::Exec exec = par::Exec::Auto);

/// Sampled estimates of the size infimum and the set of points attaining it.
/// Both are sample-dependent upper estimates; rho_hat can only decrease as
/// the sample grows.
struct SpaceSummary {
    double rho_hat = 0;
    std::vector<Point> up_hat;
    std::vector<std::pair<Point, double>> sizes;
};

SpaceSummary space_summary(const PMetricSpace& space, const SampleSet& sample, double tol = kDefaultTol);

/// Dense distance table over points 0..n-1. The exchange format for random
/// spaces and fuzz counterexamples.
struct FiniteTable {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;  // row-major n*n

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }

    PMetricSpace to_space(std::string name) const;
    SampleSet full_sample() const;

    /// `pmetric-table v1 n=<k> seed=<s>` header followed by n matrix rows.
    std::string to_text() const;
    static FiniteTable from_text(const std::string& text);
};

}  // namespace pmfix
