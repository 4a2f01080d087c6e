#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmfix/parallel.hpp"
#include "pmfix/point.hpp"
#include "pmfix/random_space.hpp"

namespace pmfix {

struct FuzzOptions {
    int min_points = 2;
    int max_points = 6;
    int maps_per_instance = 100;  // sampled maps when exhaustive enumeration is too big
    std::vector<double> alpha_grid{0.25, 0.5, 0.75, 0.9};
    double epsilon1 = 1.0;
    std::vector<double> eps_grid{0.5, 0.1, 0.01, 0.001};
    int q_cap = 64;
    double tol = kDefaultTol;
    int max_breach_dumps = 5;
};

/// One implication failure, with everything needed to replay it by hand.
struct FuzzBreach {
    std::string kind;  // "max-contraction->A" | "max-contraction->B" | "ciric->A" | "AB->fixed-point"
    std::uint64_t instance_seed = 0;
    int n = 0;
    GenKind gen = GenKind::MaxWeight;
    std::vector<int> map_table;
    double alpha = 0;
    std::string table_text;
    std::string detail;
};

struct FuzzReport {
    std::uint64_t seed = 0;
    int trials = 0;
    long long instances = 0;
    long long maps_checked = 0;
    long long max_contract_pass = 0;
    long long ciric_pass = 0;
    long long a_pass = 0;
    long long b_pass = 0;
    long long fixed_point_found = 0;
    long long generation_exhausted = 0;
    long long implication_breaches = 0;
    std::vector<FuzzBreach> breach_dumps;  // first few, in trial order
};

/// Generates random finite spaces and self-maps (exhaustively for up to 4
/// points, sampled beyond) and cross-checks the implications between the
/// two-point contraction conditions, the orbit/proximity conditions and the
/// solver: a correct implementation reports zero breaches. Deterministic
/// for a fixed seed, independent of the execution mode.
FuzzReport fuzz_implications(std::uint64_t seed, int trials, const FuzzOptions& opts = {},
                             par::Exec exec = par::Exec::Auto);

/// Deterministic plain-text rendering (the CLI output).
std::string fuzz_report_text(const FuzzReport& report);

}  // namespace pmfix
