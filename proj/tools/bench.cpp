// Compares the serial reference kernels against the OpenMP kernels on
// sized-up inputs. Build with -DPMFIX_OPENMP=ON (default) and set
// PMFIX_THREADS to control the parallel side.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "pmfix/catalog.hpp"
#include "pmfix/conditions.hpp"
#include "pmfix/fuzz.hpp"
#include "pmfix/orbit.hpp"
#include "pmfix/parallel.hpp"
#include "pmfix/solver.hpp"

namespace {

using pmfix::par::Exec;

double time_ms(const std::function<void()>& fn) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const std::string& name, const std::function<void(Exec)>& kernel) {
    const double serial = time_ms([&] { kernel(Exec::Serial); });
    const double parallel = time_ms([&] { kernel(Exec::Auto); });
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
    using namespace pmfix;

    std::printf("threads: %d (set PMFIX_THREADS to change)\n", par::thread_count());
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const auto entry = catalog_entry("example1");

    std::vector<Point> big;
    for (int i = 0; i < 220; ++i) big.push_back(-5.0 + i * 0.05);
    const auto big_sample = SampleSet::from_list(big);

    row("verify-axioms n=220", [&](Exec exec) {
        verify_axioms(entry.space, big_sample, kDefaultTol, exec);
    });

    row("condition-A n=220 Q=400", [&](Exec exec) {
        check_condition_A(entry.space, entry.map, big_sample, 0.75, 400, kDefaultTol, exec);
    });

    std::vector<Point> pair_pts;
    for (int i = 0; i < 90; ++i) pair_pts.push_back(-4.5 + i * 0.1);
    const auto pair_sample = SampleSet::from_list(pair_pts);
    row("condition-B 4095 pairs", [&](Exec exec) {
        check_condition_B(entry.space, entry.map, pair_sample, 0.5, {0.5, 0.1, 0.01}, 200,
                          kDefaultTol, exec);
    });

    row("contract-ciric n=220", [&](Exec exec) {
        check_contract(entry.space, entry.map, big_sample, 0.75, ContractKind::Ciric, kDefaultTol,
                       exec);
    });

    const auto orbit = compute_orbit(entry.map, -1.0, 4000);
    row("orbit-diagnostics Q=4000", [&](Exec exec) {
        orbit_diagnostics(entry.space, orbit, 0.75, 1000, kDefaultTol, exec);
    });

    row("fuzz 60 trials", [&](Exec exec) { fuzz_implications(7, 60, FuzzOptions{}, exec); });

    return 0;
}
