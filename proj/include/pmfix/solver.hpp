#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmfix/conditions.hpp"
#include "pmfix/orbit.hpp"
#include "pmfix/sample.hpp"
#include "pmfix/selfmap.hpp"
#include "pmfix/space.hpp"

namespace pmfix {

struct SolveOptions {
    int max_iter = 1000;
    double tol = kDefaultTol;
    int tail = 50;
    bool require_up_membership = true;
    std::optional<double> rho_reference;  // rho_known, else sampled, when unset

    /// A triggered candidate only counts as fixed if its own orbit stays put
    /// (within tol) for this many extra steps. Guards against slowly
    /// drifting orbits whose consecutive distances vanish without the orbit
    /// settling.
    int confirm_steps = 64;
};

enum class SolveStatus {
    FixedPointFound,
    FixedPointOutsideUp,
    ConvergedButNotFixed,
    NonConvergent,
};

const char* solve_status_name(SolveStatus s);

/// CLI exit code for a solve outcome (0 / 5 / 4 / 3).
int solve_status_exit_code(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::NonConvergent;
    Point start = 0;
    std::optional<Point> candidate;
    double candidate_size = 0;           // p(candidate, candidate), when candidate set
    double residual = 0;                 // max(|p(x,Tx)-p(x,x)|, |p(x,Tx)-p(Tx,Tx)|)
    std::optional<double> r_x;           // limit of the size sequence, when it settled
    double cauchy_deviation = 0;         // worst tail deviation from r_x
    int iterations_used = 0;
    std::optional<int> period_hint;
    double rho_reference = 0;
};

/// Runs the Picard iteration from x0, watching the identity criterion
/// p(x_q, x_{q+1}) = p(x_q, x_q) = p(x_{q+1}, x_{q+1}) (within tol). On a
/// confirmed trigger the candidate is returned as FixedPointFound, or
/// FixedPointOutsideUp when membership is required and its size exceeds the
/// reference. Otherwise the orbit tail is diagnosed: if it is Cauchy at the
/// settled size (outright or by a decreasing trend) and a sampled point
/// matches its limit, the run is ConvergedButNotFixed at that point; else
/// NonConvergent. The sample is only used for the limit search.
SolveResult solve_fixed_point(const PMetricSpace& space, const SelfMap& map,
                              const SampleSet& sample, Point x0, const SolveOptions& opts = {});

enum class UniquenessVerdict { UniqueInUp, Multiple, Inconclusive };

const char* uniqueness_verdict_name(UniquenessVerdict v);

struct UniquenessReport {
    std::vector<SolveResult> results;        // sorted by start value
    std::vector<Point> candidates;           // candidates of candidate-bearing results
    std::vector<double> pairwise_p;          // dense row-major over `candidates`
    UniquenessVerdict verdict = UniquenessVerdict::Inconclusive;
    double rho_reference = 0;
    std::optional<Point> best_candidate;     // smallest residual among the found fixed points
};

/// Solves from every start. Unique-in-Up requires every start to reach
/// FixedPointFound with all pairwise candidate distances within tol of the
/// size infimum (which, by the identity axiom, collapses the candidates to
/// one point). Two found candidates further apart than that make the
/// verdict Multiple; any other mix is Inconclusive.
UniquenessReport uniqueness_probe(const PMetricSpace& space, const SelfMap& map,
                                  const SampleSet& starts, const SolveOptions& opts = {},
                                  par::Exec exec = par::Exec::Auto);

struct PipelineOptions {
    double alpha = 0.75;
    double epsilon1 = 0.5;
    int Q = 30;
    std::vector<double> eps_grid{0.5, 0.1, 0.01};
    int q_cap = 200;
    double tol = kDefaultTol;
    SolveOptions solve;
};

enum class PipelineVerdict {
    UniqueFixedPointInUp,
    NoUniqueFixedPointInUp,
    ImplicationBreach,  // both hypotheses passed yet no unique fixed point was found
};

const char* pipeline_verdict_name(PipelineVerdict v);

struct PipelineReport {
    ConditionAReport condition_a;
    ConditionBReport condition_b;
    UniquenessReport uniqueness;
    std::vector<Point> starts;  // sampled points within tol of the size infimum
    bool conditions_hold = false;
    PipelineVerdict verdict = PipelineVerdict::NoUniqueFixedPointInUp;
    std::optional<Point> candidate;
    double rho_reference = 0;
};

/// Checks both hypotheses on the sample, then probes for the unique fixed
/// point from every sampled point of minimal size. When both hypotheses
/// pass, the probe must find it; the combined verdict flags a breach of
/// that implication otherwise.
PipelineReport fixed_point_pipeline(const PMetricSpace& space, const SelfMap& map,
                                 const SampleSet& sample, const PipelineOptions& opts = {},
                                 par::Exec exec = par::Exec::Auto);

}  // namespace pmfix
