#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pmfix/orbit.hpp"
#include "pmfix/parallel.hpp"
#include "pmfix/sample.hpp"
#include "pmfix/selfmap.hpp"
#include "pmfix/space.hpp"

namespace pmfix {

// ---------------------------------------------------------------------------
// Condition (A): the orbit inequality. For each sampled start x and each
// depth q, p(T(x), T^{q+1}(x)) must not exceed
// max{ alpha * p(x, T^j(x)) : 1 <= j <= q+1 } joined with p(x, x).
// Ties count as pass; a verdict is always "on the sample up to depth Q".
// ---------------------------------------------------------------------------

struct CondAWitness {
    Point x;
    int q;
    double lhs;
    double rhs;
};

struct ConditionAReport {
    double alpha = 0;
    int Q = 0;
    double tol = kDefaultTol;
    bool pass = true;
    std::vector<CondAWitness> witnesses;  // sorted by (x, q)

    /// Starts with no witness against them (the per-start verdict).
    bool passes_at(Point x) const;
};

ConditionAReport check_condition_A(const PMetricSpace& space, const SelfMap& map,
                                   const SampleSet& points, double alpha, int Q,
                                   double tol = kDefaultTol, par::Exec exec = par::Exec::Auto);

/// Smallest grid value for which condition (A) passes, found by bisecting
/// the ascending grid (the right-hand side is nondecreasing in alpha). When
/// no grid value passes, `alpha` is empty and `failure_at_max` holds the
/// report at the largest grid value, witnesses included.
struct AlphaSearch {
    std::optional<double> alpha;
    std::optional<ConditionAReport> failure_at_max;
};

AlphaSearch find_alpha(const PMetricSpace& space, const SelfMap& map, const SampleSet& points,
                       int Q, const std::vector<double>& grid, double tol = kDefaultTol,
                       par::Exec exec = par::Exec::Auto);

// ---------------------------------------------------------------------------
// Condition (B): asymptotic proximity of small pairs. Only pairs whose
// larger size is within epsilon1 of the size infimum are tested; for each
// retained pair and each epsilon the scan looks for the first q with
// p(T^q(x), T^q(y)) <= max{p(x,x), p(y,y)} + epsilon. The existential is
// semi-decided: "not found within q_cap" is reported as such and never as a
// true negative.
// ---------------------------------------------------------------------------

struct PairEpsOutcome {
    Point x;
    Point y;
    double eps;
    std::optional<int> q_eps;  // first index satisfying the inequality
    double lhs_at_q = 0;       // distance at q_eps, or the best one seen
    double min_lhs = 0;        // smallest distance over the scan
    int q_at_min = 0;
};

struct ConditionBReport {
    double epsilon1 = 0;
    std::vector<double> eps_grid;
    int q_cap = 0;
    double tol = kDefaultTol;
    double rho_ref = 0;        // rho_known when available, else the sampled estimate
    bool rho_from_known = false;
    std::vector<std::pair<Point, Point>> tested_pairs;
    std::vector<std::pair<Point, Point>> skipped_pairs;  // failed the size filter
    std::vector<PairEpsOutcome> outcomes;                // sorted by (x, y, eps desc)
    bool pass = true;                                    // every (pair, eps) found a q
};

ConditionBReport check_condition_B(const PMetricSpace& space, const SelfMap& map,
                                   const SampleSet& points, double epsilon1,
                                   const std::vector<double>& eps_grid, int q_cap,
                                   double tol = kDefaultTol, par::Exec exec = par::Exec::Auto);

/// p(T^q(x), T^q(y)) for q = 1..q_cap; the raw trace behind the condition-B
/// scan, exposed for diagnosis and closed-form cross-checks.
std::vector<double> pair_orbit_distances(const PMetricSpace& space, const SelfMap& map, Point x,
                                         Point y, int q_cap);

// ---------------------------------------------------------------------------
// Two-point contraction conditions used for comparison: the plain max
// contraction p(Tx,Ty) <= max{alpha p(x,y), p(x,x), p(y,y)} and the
// Ciric-type variant whose max also includes alpha p(x,Tx), alpha p(y,Ty)
// and the averaged cross term (alpha/2)[p(x,Ty) + p(y,Tx)].
// ---------------------------------------------------------------------------

enum class ContractKind { MaxContraction, Ciric };

const char* contract_kind_name(ContractKind k);

struct ContractWitness {
    Point x;
    Point y;
    double lhs;
    double rhs;
};

struct ContractReport {
    ContractKind which = ContractKind::MaxContraction;
    double alpha = 0;
    double tol = kDefaultTol;
    bool pass = true;
    std::vector<ContractWitness> witnesses;  // sorted by (x, y)
};

ContractReport check_contract(const PMetricSpace& space, const SelfMap& map,
                              const SampleSet& points, double alpha, ContractKind which,
                              double tol = kDefaultTol, par::Exec exec = par::Exec::Auto);

/// The unscaled Ciric max M(x,y) = max{p(x,y), p(x,Tx), p(y,Ty), p(x,Ty), p(y,Tx)}.
double ciric_unscaled_max(const PMetricSpace& space, const SelfMap& map, Point x, Point y);

}  // namespace pmfix
