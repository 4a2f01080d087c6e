// Acceptance suite: the eight desk-scale scenarios the library must
// reproduce, each with its tolerances pinned in code. Prints one line per
// criterion; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pmfix/catalog.hpp"
#include "pmfix/conditions.hpp"
#include "pmfix/dsl.hpp"
#include "pmfix/errors.hpp"
#include "pmfix/fuzz.hpp"
#include "pmfix/orbit.hpp"
#include "pmfix/report.hpp"
#include "pmfix/rng.hpp"
#include "pmfix/solver.hpp"

#include <fstream>
#include <sstream>

namespace {

using namespace pmfix;

struct Checker {
    std::vector<std::string> failures;

    void operator()(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- criterion 1: example1 golden run --------------------------------------

void criterion1(Checker& check) {
    const auto entry = catalog_entry("example1");

    check(verify_axioms(entry.space, entry.default_sample, 1e-9).all_pass(), "axioms pass");
    check(space_summary(entry.space, entry.default_sample).rho_hat == 0.0, "rho_hat = 0");

    check(entry.default_sample.size() >= 7, "sample has at least 7 points");
    check(check_condition_A(entry.space, entry.map, entry.default_sample, 0.75, 30).pass,
          "condition A at alpha 3/4, Q = 30");
    check(check_condition_B(entry.space, entry.map, entry.default_sample, 0.5, {0.5, 0.1, 0.01},
                            200)
              .pass,
          "condition B at epsilon1 1/2, q_cap 200");

    const auto from_minus1 = solve_fixed_point(entry.space, entry.map, entry.default_sample, -1);
    check(from_minus1.status == SolveStatus::FixedPointFound, "solve(-1) finds a fixed point");
    check(from_minus1.candidate && std::abs(*from_minus1.candidate) <= 1e-8,
          "solve(-1) candidate is 0");
    check(from_minus1.residual <= 1e-9, "solve(-1) residual within 1e-9");
    check(from_minus1.candidate_size == 0.0, "solve(-1) candidate size equals the infimum");

    const auto from_two = solve_fixed_point(entry.space, entry.map, entry.default_sample, 2);
    check(from_two.status == SolveStatus::FixedPointOutsideUp, "solve(2) lands outside Up");
    check(from_two.candidate && *from_two.candidate == 1.0, "solve(2) candidate is 1");

    for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
        for (auto kind : {ContractKind::MaxContraction, ContractKind::Ciric}) {
            const auto report =
                check_contract(entry.space, entry.map, entry.default_sample, alpha, kind);
            check(!report.pass, std::string(contract_kind_name(kind)) + " fails at alpha " +
                                    format_double(alpha));
            bool witness = false;
            for (const auto& w : report.witnesses)
                if (w.x == 0.0 && w.y == 0.5 && w.lhs == 2.0) witness = true;
            check(witness, std::string(contract_kind_name(kind)) + " witness (0, 0.5) lhs 2 at " +
                               format_double(alpha));
        }
    }
}

// --- criterion 2: example2 ---------------------------------------------------

void criterion2(Checker& check) {
    const auto entry = catalog_entry("example2");

    check(check_condition_A(entry.space, entry.map, entry.default_sample, 0.75, 30).pass,
          "condition A at alpha 3/4");

    const auto b = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                     {0.5, 0.1, 0.01}, 200);
    check(!b.pass, "condition B exhausts the cap");
    bool pair_seen = false;
    for (const auto& res : b.outcomes)
        if (res.x == -1.0 && res.y == 0.0 && res.eps == 0.5 && !res.q_eps) pair_seen = true;
    check(pair_seen, "pair (0, -1) not found within cap at eps 1/2");

    const auto trace = pair_orbit_distances(entry.space, entry.map, 0, -1, 200);
    bool closed_form = true;
    for (int q = 1; q <= 200; ++q)
        if (std::abs(trace[static_cast<std::size_t>(q - 1)] - (2.0 + std::ldexp(1.0, -q))) > 1e-12)
            closed_form = false;
    check(closed_form, "distances match 2 + 2^-q to 1e-12");

    const auto pipeline = fixed_point_pipeline(entry.space, entry.map, entry.default_sample);
    check(pipeline.verdict == PipelineVerdict::NoUniqueFixedPointInUp,
          "pipeline reports no fixed point in Up");
}

// --- criterion 3: example3 ---------------------------------------------------

void criterion3(Checker& check) {
    const auto entry = catalog_entry("example3");

    bool all_fail = true, witness_ok = true;
    for (int i = 1; i <= 99; ++i) {
        const auto report =
            check_condition_A(entry.space, entry.map, entry.default_sample, i / 100.0, 8);
        if (report.pass) all_fail = false;
        if (report.witnesses.empty() || report.witnesses.front().x != 0.0 ||
            report.witnesses.front().q != 1 || report.witnesses.front().lhs != 2.0)
            witness_ok = false;
    }
    check(all_fail, "condition A fails on a 99-point alpha grid");
    check(witness_ok, "witness (x=0, q=1, lhs=2) at every alpha");

    check(check_condition_B(entry.space, entry.map, entry.default_sample, 0.5, {0.5, 0.1, 0.01},
                            200)
              .pass,
          "condition B at epsilon1 1/2");

    const auto solve = solve_fixed_point(entry.space, entry.map, entry.default_sample, 0);
    check(solve.status == SolveStatus::NonConvergent, "solver does not converge");
    check(solve.period_hint == 2, "period hint 2");

    const auto squared = entry.map.power(2);
    check(check_condition_A(entry.space, squared, entry.default_sample, 0.5, 8).pass,
          "squared map passes condition A at alpha 1/2");
    check(check_condition_B(entry.space, squared, entry.default_sample, 0.5, {0.5, 0.1, 0.01},
                            200)
              .pass,
          "squared map passes condition B at epsilon1 1/2");
    PipelineOptions opts;
    opts.alpha = 0.5;
    const auto pipeline = fixed_point_pipeline(entry.space, squared, entry.default_sample, opts);
    check(pipeline.verdict == PipelineVerdict::UniqueFixedPointInUp &&
              pipeline.candidate == 0.0,
          "squared-map pipeline finds fixed point 0");
}

// --- criterion 4: example4 ---------------------------------------------------

void criterion4(Checker& check) {
    const auto entry = catalog_entry("example4");

    const auto b = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                     {0.5, 0.1, 0.01}, 200);
    check(b.pass, "condition B passes");
    bool law_ok = true;
    for (const auto& res : b.outcomes) {
        if (!res.q_eps) {
            law_ok = false;
            continue;
        }
        const double m = std::min(res.x, res.y), mp = std::max(res.x, res.y);
        const int q = *res.q_eps;
        const double expect =
            (m == mp) ? 0.0 : 1.0 / (q + m) + 1.0 / (q + mp);
        if (std::abs(res.lhs_at_q - expect) > 1e-12) law_ok = false;
    }
    check(law_ok, "proximity distances match 1/(q+m) + 1/(q+m')");

    std::vector<double> grid;
    for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
    const auto search = find_alpha(entry.space, entry.map, entry.default_sample, 10, grid);
    check(!search.alpha.has_value(), "no alpha satisfies condition A");
    check(search.failure_at_max && !search.failure_at_max->witnesses.empty() &&
              search.failure_at_max->witnesses.front().x == 0.0 &&
              search.failure_at_max->witnesses.front().q == 1 &&
              search.failure_at_max->witnesses.front().lhs == 1.5,
          "witness (x=0, q=1, lhs=1.5)");

    const auto solve = solve_fixed_point(entry.space, entry.map, entry.default_sample, 0);
    check(solve.status == SolveStatus::ConvergedButNotFixed, "solver converges but is not fixed");
    check(solve.candidate == 0.0, "limit candidate 0");
    check(entry.map.apply(0) == 1.0, "the map moves 0 to 1");
}

// --- criterion 5: example5 ---------------------------------------------------

void criterion5(Checker& check) {
    const auto entry = catalog_entry("example5");
    for (Point branch : {0.0, 1.0, 1.5, 2.25})
        check(entry.default_sample.contains(branch),
              "sample contains branch point " + format_double(branch));

    check(check_condition_A(entry.space, entry.map, entry.default_sample, 0.75, 20).pass,
          "condition A at alpha 3/4, Q = 20");

    const auto b = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                     {0.5, 0.1, 0.01}, 200);
    check(!b.pass, "condition B exhausts the cap");
    bool pair_seen = false;
    for (const auto& res : b.outcomes)
        if (res.x == 0.0 && res.y == 1.0 && !res.q_eps && res.min_lhs == 1.0) pair_seen = true;
    check(pair_seen, "pair (0, 1) stays at distance exactly 1");
    const auto trace = pair_orbit_distances(entry.space, entry.map, 0, 1, 200);
    bool all_one = true;
    for (double v : trace)
        if (v != 1.0) all_one = false;
    check(all_one, "every tested distance is exactly 1.0");

    for (Point x0 : entry.default_sample.points()) {
        const auto solve = solve_fixed_point(entry.space, entry.map, entry.default_sample, x0);
        check(solve.status != SolveStatus::FixedPointFound &&
                  solve.status != SolveStatus::FixedPointOutsideUp,
              "no fixed point from start " + format_double(x0));
    }
}

// --- criterion 6: orbit bound and size-limit suite ---------------------------

void criterion6(Checker& check) {
    struct Combo {
        std::string label;
        CatalogEntry entry;
        SelfMap map;
    };
    std::vector<Combo> combos;
    for (const auto& id : catalog_ids()) {
        auto entry = catalog_entry(id);
        auto map = entry.map;
        combos.push_back({id, entry, map});
    }
    {
        auto entry = catalog_entry("example3");
        combos.push_back({"example3^2", entry, entry.map.power(2)});
    }

    constexpr int kDepth = 200;
    int exercised = 0;
    for (const auto& combo : combos) {
        const auto& space = combo.entry.space;
        const auto& sample = combo.entry.default_sample;
        const auto b = check_condition_B(space, combo.map, sample, 0.5, {0.5, 0.1, 0.01}, 200);
        const double rho = *space.rho_known();
        for (double alpha : {0.5, 0.75, 0.9}) {
            // Premise at the same depth as the conclusion orbits.
            const auto a = check_condition_A(space, combo.map, sample, alpha, kDepth);
            for (Point x0 : sample.points()) {
                if (!a.passes_at(x0)) continue;
                ++exercised;
                const auto orbit = compute_orbit(combo.map, x0, kDepth);
                const auto diag = orbit_diagnostics(space, orbit, alpha, kDepth / 4, 1e-9);
                check(diag.pairwise_bound_ok.value_or(false),
                      combo.label + " alpha " + format_double(alpha) + " x0 " +
                          format_double(x0) + ": pairwise bound 2/(1-a) p(x0,x1)");
                check(diag.limsup_size - diag.liminf_size <= 1e-6,
                      combo.label + " x0 " + format_double(x0) + ": size tail oscillation <= 1e-6");
                if (b.pass && space.p(x0, x0) < rho + 0.5) {
                    check(diag.r_x.has_value() &&
                              *diag.r_x <= space.p(x0, x0) + 1e-9,
                          combo.label + " x0 " + format_double(x0) + ": r_x <= p(x0, x0)");
                }
            }
        }
    }
    check(exercised >= 20, "the suite exercised enough combinations (" +
                               std::to_string(exercised) + ")");
}

// --- criterion 7: fuzz implication suite -------------------------------------

void criterion7(Checker& check) {
    const auto report = fuzz_implications(20240811, 1000);
    check(report.trials == 1000, "1000 trials");
    check(report.instances >= 990, "at least 99% of instances generated");
    check(report.implication_breaches == 0, "zero implication breaches");
    check(report.max_contract_pass > 0 && report.ciric_pass > 0 && report.b_pass > 0,
          "the filters are not vacuous");
    check(report.fixed_point_found == report.b_pass,
          "every instance with both hypotheses found its fixed point");
}

// --- criterion 8: parser corpus ----------------------------------------------

void criterion8(Checker& check) {
    const auto spec =
        dsl::parse_space_config(slurp(std::string(PMFIX_CONFIG_DIR) + "/example1.pmspec"));
    const auto entry = catalog_entry("example1");
    Rng rng(20240811);
    bool identical = true;
    for (int i = 0; i < 1000; ++i) {
        const Point x = rng.real_in(-10, 10);
        const Point y = rng.real_in(-10, 10);
        if (spec.space.p(x, y) != entry.space.p(x, y)) identical = false;
        if (spec.map.apply(x) != entry.map.apply(x)) identical = false;
    }
    check(identical, "bundled config matches the catalog on 1000 seeded pairs exactly");

    struct Expectation {
        const char* file;
        bool is_parse_error;
        int line, column;
    };
    const Expectation table[] = {
        {"m01.pmspec", true, 1, 1},   {"m02.pmspec", true, 1, 7},
        {"m03.pmspec", true, 1, 9},   {"m04.pmspec", true, 1, 17},
        {"m05.pmspec", true, 1, 17},  {"m06.pmspec", true, 2, 1},
        {"m07.pmspec", false, 1, 9},  {"m08.pmspec", false, 2, 3},
        {"m09.pmspec", false, 2, 24}, {"m10.pmspec", false, 1, 34},
        {"m11.pmspec", false, 2, 1},  {"m12.pmspec", false, 1, 9},
        {"m13.pmspec", true, 1, 15},  {"m14.pmspec", false, 2, 10},
        {"m15.pmspec", false, 2, 10}, {"m16.pmspec", false, 2, 10},
        {"m17.pmspec", false, 1, 1},  {"m18.pmspec", false, 1, 1},
        {"m19.pmspec", false, 2, 10}, {"m20.pmspec", true, 1, 32},
    };
    for (const auto& expect : table) {
        const auto text =
            slurp(std::string(PMFIX_CONFIG_DIR) + "/malformed/" + expect.file);
        bool ok = false;
        try {
            dsl::parse_space_config(text);
        } catch (const ParseError& e) {
            ok = expect.is_parse_error && e.line == expect.line && e.column == expect.column;
        } catch (const ValidationError& e) {
            ok = !expect.is_parse_error && e.line == expect.line && e.column == expect.column;
        }
        check(ok, std::string(expect.file) + ": documented error class with line/column");
    }
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<void(Checker&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "example1 golden run", 1.0, criterion1},
        {2, "example2: proximity condition fails", 1.0, criterion2},
        {3, "example3: swap vs squared swap", 1.0, criterion3},
        {4, "example4: convergent orbit, moving limit", 1.0, criterion4},
        {5, "example5: orbit condition without proximity", 1.0, criterion5},
        {6, "orbit bound and size-limit suite", 30.0, criterion6},
        {7, "fuzz implication suite (1000 instances)", 60.0, criterion7},
        {8, "parser corpus", 1.0, criterion8},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Checker check;
        std::string error;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criterion.fn(check);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds > criterion.budget_seconds)
            check.failures.push_back("runtime " + std::to_string(seconds) + "s over budget");
        if (!error.empty()) check.failures.push_back("exception: " + error);

        const bool ok = check.failures.empty();
        if (!ok) ++failed;
        std::printf("criterion %d: %s (%.2fs) %s%s%s\n", criterion.id, ok ? "PASS" : "FAIL",
                    seconds, criterion.name, ok ? "" : " -- ",
                    ok ? "" : check.failures.front().c_str());
        for (std::size_t i = 1; i < check.failures.size(); ++i)
            std::printf("    also: %s\n", check.failures[i].c_str());
    }
    return failed;
}
