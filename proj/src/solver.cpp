#include "pmfix/solver.hpp"

#include <algorithm>
#include <cmath>

#include "pmfix/errors.hpp"

namespace pmfix {

const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::FixedPointFound: return "FixedPointFound";
        case SolveStatus::FixedPointOutsideUp: return "FixedPointOutsideUp";
        case SolveStatus::ConvergedButNotFixed: return "ConvergedButNotFixed";
        case SolveStatus::NonConvergent: return "NonConvergent";
    }
    return "?";
}

int solve_status_exit_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::FixedPointFound: return 0;
        case SolveStatus::NonConvergent: return 3;
        case SolveStatus::ConvergedButNotFixed: return 4;
        case SolveStatus::FixedPointOutsideUp: return 5;
    }
    return 3;
}

namespace {

double resolve_rho(const PMetricSpace& space, const SampleSet& sample, const SolveOptions& opts) {
    if (opts.rho_reference) return *opts.rho_reference;
    if (auto rho = space.rho_known()) return *rho;
    return space_summary(space, sample, opts.tol).rho_hat;
}

double residual_at(const PMetricSpace& space, const SelfMap& map, Point x) {
    const Point tx = map.apply(x);
    const double pxt = space.p(x, tx);
    return std::max(std::abs(pxt - space.p(x, x)), std::abs(pxt - space.p(tx, tx)));
}

// The candidate's own orbit must stay at the candidate (in the identity
// sense: distances and sizes within tol) for the whole confirmation run.
bool confirm_candidate(const PMetricSpace& space, const SelfMap& map, Point c, int steps,
                       double tol) {
    const double size = space.p(c, c);
    Point y = c;
    for (int m = 0; m < steps; ++m) {
        y = map.apply(y);
        if (!map.in_domain(y)) return false;
        if (std::abs(space.p(c, y) - size) > tol) return false;
        if (std::abs(space.p(y, y) - size) > tol) return false;
    }
    return true;
}

// Trend surrogate for "the tail deviation goes to zero": the deviation over
// the final window must be at most 0.6 of the deviation around the midpoint
// (or already below tol).
constexpr double kTrendRatio = 0.6;

}  // namespace

SolveResult solve_fixed_point(const PMetricSpace& space, const SelfMap& map,
                              const SampleSet& sample, Point x0, const SolveOptions& opts) {
    if (!(opts.tol > 0)) throw Error("solve: tol must be positive");
    if (opts.max_iter < opts.tail + 2) throw Error("solve: max_iter must be at least tail + 2");
    if (!map.in_domain(x0)) throw DomainError("solve start outside the domain of " + map.name());

    SolveResult result;
    result.start = x0;
    result.rho_reference = resolve_rho(space, sample, opts);

    std::vector<Point> orbit{x0};
    orbit.reserve(static_cast<std::size_t>(opts.max_iter) + 1);
    for (int q = 0; q < opts.max_iter; ++q) {
        const Point x = orbit.back();
        const Point tx = map.apply(x);
        if (!map.in_domain(tx))
            throw DomainError("orbit left the domain of " + map.name() + " at step " +
                              std::to_string(q + 1));
        const double pxt = space.p(x, tx);
        const double res =
            std::max(std::abs(pxt - space.p(x, x)), std::abs(pxt - space.p(tx, tx)));
        if (res <= opts.tol && residual_at(space, map, tx) <= opts.tol &&
            confirm_candidate(space, map, tx, opts.confirm_steps, opts.tol)) {
            result.candidate = tx;
            result.candidate_size = space.p(tx, tx);
            result.residual = residual_at(space, map, tx);
            result.r_x = result.candidate_size;
            result.iterations_used = q + 1;
            const bool outside = opts.require_up_membership &&
                                 result.candidate_size > result.rho_reference + opts.tol;
            result.status = outside ? SolveStatus::FixedPointOutsideUp : SolveStatus::FixedPointFound;
            return result;
        }
        orbit.push_back(tx);
    }

    Orbit full{std::move(orbit)};
    result.iterations_used = opts.max_iter;
    result.residual = residual_at(space, map, full.last());
    const auto diag = orbit_diagnostics(space, full, std::nullopt, opts.tail, opts.tol);
    result.r_x = diag.r_x;
    result.period_hint = diag.period_hint;
    result.cauchy_deviation = diag.cauchy.max_deviation;
    if (!diag.r_x) {
        result.status = SolveStatus::NonConvergent;
        return result;
    }

    // Tail deviation around the midpoint, for the trend test.
    const int len = full.steps() + 1;
    const int mid = len / 2;
    const int w = std::min(opts.tail, mid - 1);
    double dev_mid = 0;
    for (int q = mid - w; q <= mid; ++q)
        for (int qp = q; qp <= mid; ++qp)
            dev_mid = std::max(dev_mid, std::abs(space.p(full.at(q), full.at(qp)) - *diag.r_x));
    const bool converging = diag.cauchy.max_deviation <= opts.tol ||
                            diag.cauchy.max_deviation <= kTrendRatio * dev_mid;
    if (!converging) {
        result.status = SolveStatus::NonConvergent;
        return result;
    }

    // The orbit looks convergent; hunt for its limit among the sampled
    // points. Outside the sample the limit is undetectable at this scale.
    const Point x_end = full.last();
    const Point x_mid = full.at(mid);
    std::optional<Point> best;
    double best_d = 0;
    for (Point z : sample.points()) {
        const double d = std::abs(space.p(x_end, z) - space.p(z, z));
        if (!best || d < best_d) {
            best = z;
            best_d = d;
        }
    }
    if (best) {
        const double d_mid = std::abs(space.p(x_mid, *best) - space.p(*best, *best));
        const bool limit_ok = best_d <= opts.tol || best_d <= kTrendRatio * d_mid;
        if (limit_ok) {
            result.candidate = *best;
            result.candidate_size = space.p(*best, *best);
            const double zres = residual_at(space, map, *best);
            if (zres <= opts.tol && confirm_candidate(space, map, *best, opts.confirm_steps, opts.tol)) {
                result.residual = zres;
                const bool outside = opts.require_up_membership &&
                                     result.candidate_size > result.rho_reference + opts.tol;
                result.status =
                    outside ? SolveStatus::FixedPointOutsideUp : SolveStatus::FixedPointFound;
            } else {
                result.residual = zres;
                result.status = SolveStatus::ConvergedButNotFixed;
            }
            return result;
        }
    }
    result.status = SolveStatus::NonConvergent;
    return result;
}

const char* uniqueness_verdict_name(UniquenessVerdict v) {
    switch (v) {
        case UniquenessVerdict::UniqueInUp: return "unique-in-Up";
        case UniquenessVerdict::Multiple: return "multiple";
        case UniquenessVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

UniquenessReport uniqueness_probe(const PMetricSpace& space, const SelfMap& map,
                                  const SampleSet& starts, const SolveOptions& opts,
                                  par::Exec exec) {
    const auto& pts = starts.points();
    UniquenessReport report;
    report.results.resize(pts.size());
    par::for_index(
        pts.size(),
        [&](std::size_t i) { report.results[i] = solve_fixed_point(space, map, starts, pts[i], opts); },
        exec);
    // Starts are ascending already, so results are canonically ordered.

    report.rho_reference = report.results.empty()
                               ? resolve_rho(space, starts, opts)
                               : report.results.front().rho_reference;

    for (const auto& r : report.results)
        if (r.candidate) report.candidates.push_back(*r.candidate);
    const std::size_t m = report.candidates.size();
    report.pairwise_p.resize(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            report.pairwise_p[i * m + j] = space.p(report.candidates[i], report.candidates[j]);

    bool all_found = !report.results.empty();
    for (const auto& r : report.results)
        if (r.status != SolveStatus::FixedPointFound) all_found = false;

    // Pairwise distances among the *found* fixed points decide multiplicity.
    std::vector<Point> found;
    for (const auto& r : report.results)
        if (r.status == SolveStatus::FixedPointFound && r.candidate) found.push_back(*r.candidate);
    bool spread = false;
    double max_found_p = 0;
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = i + 1; j < found.size(); ++j)
            max_found_p = std::max(max_found_p, space.p(found[i], found[j]));
    if (!found.empty() && max_found_p > report.rho_reference + opts.tol) spread = true;

    if (spread) report.verdict = UniquenessVerdict::Multiple;
    else if (all_found) report.verdict = UniquenessVerdict::UniqueInUp;
    else report.verdict = UniquenessVerdict::Inconclusive;

    const SolveResult* best = nullptr;
    for (const auto& r : report.results) {
        if (r.status != SolveStatus::FixedPointFound || !r.candidate) continue;
        if (!best || r.residual < best->residual ||
            (r.residual == best->residual && *r.candidate < *best->candidate))
            best = &r;
    }
    if (best) report.best_candidate = best->candidate;
    return report;
}

const char* pipeline_verdict_name(PipelineVerdict v) {
    switch (v) {
        case PipelineVerdict::UniqueFixedPointInUp: return "unique-fixed-point-in-Up";
        case PipelineVerdict::NoUniqueFixedPointInUp: return "no-unique-fixed-point-in-Up";
        case PipelineVerdict::ImplicationBreach: return "IMPLICATION-BREACH";
    }
    return "?";
}

PipelineReport fixed_point_pipeline(const PMetricSpace& space, const SelfMap& map,
                                 const SampleSet& sample, const PipelineOptions& opts,
                                 par::Exec exec) {
    PipelineReport report;
    report.condition_a =
        check_condition_A(space, map, sample, opts.alpha, opts.Q, opts.tol, exec);
    report.condition_b = check_condition_B(space, map, sample, opts.epsilon1, opts.eps_grid,
                                           opts.q_cap, opts.tol, exec);
    report.conditions_hold = report.condition_a.pass && report.condition_b.pass;

    SolveOptions solve_opts = opts.solve;
    report.rho_reference = resolve_rho(space, sample, solve_opts);
    solve_opts.rho_reference = report.rho_reference;

    for (Point x : sample.points())
        if (space.p(x, x) <= report.rho_reference + opts.tol) report.starts.push_back(x);

    if (!report.starts.empty()) {
        auto starts = SampleSet::from_list(report.starts)
                          .with_spec("Up-estimate of " + sample.generator_spec());
        report.uniqueness = uniqueness_probe(space, map, starts, solve_opts, exec);
    }

    const bool unique = report.uniqueness.verdict == UniquenessVerdict::UniqueInUp &&
                        !report.starts.empty();
    if (unique) {
        report.verdict = PipelineVerdict::UniqueFixedPointInUp;
        report.candidate = report.uniqueness.best_candidate;
    } else if (report.conditions_hold) {
        report.verdict = PipelineVerdict::ImplicationBreach;
    } else {
        report.verdict = PipelineVerdict::NoUniqueFixedPointInUp;
    }
    return report;
}

}  // namespace pmfix
