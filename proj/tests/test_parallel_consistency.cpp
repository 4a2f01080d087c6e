#include <doctest.h>

#include "pmfix/catalog.hpp"
#include "pmfix/conditions.hpp"
#include "pmfix/fuzz.hpp"
#include "pmfix/orbit.hpp"
#include "pmfix/parallel.hpp"
#include "pmfix/random_space.hpp"
#include "pmfix/solver.hpp"

using namespace pmfix;
using pmfix::par::Exec;

// The OpenMP kernels must reproduce the serial reference bit for bit:
// identical witnesses, identical order, identical floating-point values.

namespace {

struct ThreadGuard {
    explicit ThreadGuard(int n) { par::set_threads(n); }
    ~ThreadGuard() { par::set_threads(0); }
};

bool same_axiom_report(const AxiomReport& a, const AxiomReport& b) {
    if (a.pass != b.pass || a.witnesses.size() != b.witnesses.size()) return false;
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
        const auto& wa = a.witnesses[i];
        const auto& wb = b.witnesses[i];
        if (wa.axiom != wb.axiom || wa.points != wb.points || wa.lhs != wb.lhs || wa.rhs != wb.rhs)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("axiom scans agree between serial and parallel kernels") {
    ThreadGuard guard(4);
    for (const auto& id : catalog_ids()) {
        const auto entry = catalog_entry(id);
        const auto serial = verify_axioms(entry.space, entry.default_sample, 1e-9, Exec::Serial);
        const auto parallel = verify_axioms(entry.space, entry.default_sample, 1e-9, Exec::Auto);
        CHECK(same_axiom_report(serial, parallel));
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto table = random_finite_table(seed, 6, GenKind::MetricPlusConstant);
        const auto space = table.to_space("t");
        const auto serial = verify_axioms(space, table.full_sample(), 0.0, Exec::Serial);
        const auto parallel = verify_axioms(space, table.full_sample(), 0.0, Exec::Auto);
        CHECK(same_axiom_report(serial, parallel));
    }
}

TEST_CASE("condition scans agree between serial and parallel kernels") {
    ThreadGuard guard(4);
    for (const auto& id : catalog_ids()) {
        const auto entry = catalog_entry(id);
        const auto a_s = check_condition_A(entry.space, entry.map, entry.default_sample, 0.6, 20,
                                           1e-9, Exec::Serial);
        const auto a_p = check_condition_A(entry.space, entry.map, entry.default_sample, 0.6, 20,
                                           1e-9, Exec::Auto);
        CHECK(a_s.pass == a_p.pass);
        REQUIRE(a_s.witnesses.size() == a_p.witnesses.size());
        for (std::size_t i = 0; i < a_s.witnesses.size(); ++i) {
            CHECK(a_s.witnesses[i].x == a_p.witnesses[i].x);
            CHECK(a_s.witnesses[i].q == a_p.witnesses[i].q);
            CHECK(a_s.witnesses[i].lhs == a_p.witnesses[i].lhs);
            CHECK(a_s.witnesses[i].rhs == a_p.witnesses[i].rhs);
        }

        const auto b_s = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                           {0.5, 0.1, 0.01}, 100, 1e-9, Exec::Serial);
        const auto b_p = check_condition_B(entry.space, entry.map, entry.default_sample, 0.5,
                                           {0.5, 0.1, 0.01}, 100, 1e-9, Exec::Auto);
        CHECK(b_s.pass == b_p.pass);
        REQUIRE(b_s.outcomes.size() == b_p.outcomes.size());
        for (std::size_t i = 0; i < b_s.outcomes.size(); ++i) {
            CHECK(b_s.outcomes[i].x == b_p.outcomes[i].x);
            CHECK(b_s.outcomes[i].y == b_p.outcomes[i].y);
            CHECK(b_s.outcomes[i].eps == b_p.outcomes[i].eps);
            CHECK(b_s.outcomes[i].q_eps == b_p.outcomes[i].q_eps);
            CHECK(b_s.outcomes[i].lhs_at_q == b_p.outcomes[i].lhs_at_q);
            CHECK(b_s.outcomes[i].min_lhs == b_p.outcomes[i].min_lhs);
        }

        for (auto kind : {ContractKind::MaxContraction, ContractKind::Ciric}) {
            const auto c_s = check_contract(entry.space, entry.map, entry.default_sample, 0.8,
                                            kind, 1e-9, Exec::Serial);
            const auto c_p = check_contract(entry.space, entry.map, entry.default_sample, 0.8,
                                            kind, 1e-9, Exec::Auto);
            CHECK(c_s.pass == c_p.pass);
            REQUIRE(c_s.witnesses.size() == c_p.witnesses.size());
            for (std::size_t i = 0; i < c_s.witnesses.size(); ++i) {
                CHECK(c_s.witnesses[i].x == c_p.witnesses[i].x);
                CHECK(c_s.witnesses[i].y == c_p.witnesses[i].y);
                CHECK(c_s.witnesses[i].lhs == c_p.witnesses[i].lhs);
                CHECK(c_s.witnesses[i].rhs == c_p.witnesses[i].rhs);
            }
        }
    }
}

TEST_CASE("orbit diagnostics agree between serial and parallel kernels") {
    ThreadGuard guard(4);
    const auto entry = catalog_entry("example1");
    const auto orbit = compute_orbit(entry.map, -1, 400);
    const auto d_s = orbit_diagnostics(entry.space, orbit, 0.75, 100, 1e-9, Exec::Serial);
    const auto d_p = orbit_diagnostics(entry.space, orbit, 0.75, 100, 1e-9, Exec::Auto);
    CHECK(d_s.sizes == d_p.sizes);
    CHECK(d_s.r_x == d_p.r_x);
    CHECK(d_s.limsup_size == d_p.limsup_size);
    CHECK(d_s.liminf_size == d_p.liminf_size);
    CHECK(d_s.cauchy.max_deviation == d_p.cauchy.max_deviation);
    CHECK(d_s.max_pairwise == d_p.max_pairwise);
    CHECK(d_s.pairwise_bound_ok == d_p.pairwise_bound_ok);
    CHECK(d_s.period_hint == d_p.period_hint);
}

TEST_CASE("fuzz reports are byte-identical across execution modes and runs") {
    ThreadGuard guard(4);
    FuzzOptions opts;
    const auto serial = fuzz_implications(99, 40, opts, Exec::Serial);
    const auto parallel = fuzz_implications(99, 40, opts, Exec::Auto);
    const auto parallel_again = fuzz_implications(99, 40, opts, Exec::Auto);
    CHECK(fuzz_report_text(serial) == fuzz_report_text(parallel));
    CHECK(fuzz_report_text(parallel) == fuzz_report_text(parallel_again));
}

TEST_CASE("uniqueness probe results do not depend on the execution mode") {
    ThreadGuard guard(4);
    const auto entry = catalog_entry("example1");
    const auto starts = SampleSet::from_list({-2, -1, -0.5, 0});
    const auto s = uniqueness_probe(entry.space, entry.map, starts, {}, Exec::Serial);
    const auto p = uniqueness_probe(entry.space, entry.map, starts, {}, Exec::Auto);
    CHECK(s.verdict == p.verdict);
    CHECK(s.candidates == p.candidates);
    CHECK(s.pairwise_p == p.pairwise_p);
    CHECK(s.best_candidate == p.best_candidate);
}

TEST_CASE("a single-thread cap forces the serial path") {
    ThreadGuard guard(1);
    CHECK_FALSE(par::parallel_enabled());
    CHECK(par::thread_count() == 1);
}

TEST_CASE("exceptions from parallel bodies surface deterministically") {
    ThreadGuard guard(4);
    const auto entry = catalog_entry("example3");
    // 0.5 is outside the two-point domain; both modes must throw DomainError.
    const auto bad = SampleSet::from_list({0, 0.5, 1});
    CHECK_THROWS_AS(verify_axioms(entry.space, bad, 1e-9, Exec::Serial), DomainError);
    CHECK_THROWS_AS(verify_axioms(entry.space, bad, 1e-9, Exec::Auto), DomainError);
}
