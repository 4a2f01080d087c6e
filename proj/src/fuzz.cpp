#include "pmfix/fuzz.hpp"

#include <algorithm>
#include <cmath>

#include "pmfix/conditions.hpp"
#include "pmfix/errors.hpp"
#include "pmfix/report.hpp"
#include "pmfix/rng.hpp"
#include "pmfix/solver.hpp"

namespace pmfix {

namespace {

struct TrialResult {
    bool generated = false;
    long long maps_checked = 0;
    long long max_contract_pass = 0;
    long long ciric_pass = 0;
    long long a_pass = 0;
    long long b_pass = 0;
    long long fixed_point_found = 0;
    std::vector<FuzzBreach> breaches;
};

SelfMap map_from_table(const FiniteTable& table, const std::vector<int>& images) {
    const int n = table.n;
    auto imgs = std::make_shared<const std::vector<int>>(images);
    auto fn = [imgs, n](Point x) -> Point {
        const int i = static_cast<int>(std::llround(x));
        if (i < 0 || i >= n || std::abs(x - i) > kPointTol)
            throw DomainError("point outside the finite table");
        return static_cast<double>((*imgs)[static_cast<std::size_t>(i)]);
    };
    auto domain = [n](Point x) {
        const int i = static_cast<int>(std::llround(x));
        return i >= 0 && i < n && std::abs(x - i) <= kPointTol;
    };
    return SelfMap("table-map", std::move(fn), std::move(domain));
}

std::string map_text(const std::vector<int>& images) {
    std::string out = "map:";
    for (int v : images) out += " " + std::to_string(v);
    return out;
}

// All n^n image tables in lexicographic order (n <= 4), or a seeded sample.
std::vector<std::vector<int>> enumerate_maps(int n, int cap, Rng& rng) {
    std::vector<std::vector<int>> maps;
    double total = std::pow(static_cast<double>(n), n);
    if (n <= 4) {
        std::vector<int> images(static_cast<std::size_t>(n), 0);
        for (long long code = 0; code < static_cast<long long>(total); ++code) {
            long long c = code;
            for (int i = 0; i < n; ++i) {
                images[static_cast<std::size_t>(i)] = static_cast<int>(c % n);
                c /= n;
            }
            maps.push_back(images);
        }
        return maps;
    }
    maps.reserve(static_cast<std::size_t>(cap));
    for (int k = 0; k < cap; ++k) {
        std::vector<int> images(static_cast<std::size_t>(n));
        for (auto& v : images) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        maps.push_back(std::move(images));
    }
    return maps;
}

TrialResult run_trial(std::uint64_t base_seed, int trial, const FuzzOptions& opts) {
    TrialResult out;
    const std::uint64_t instance_seed = mix_seed(base_seed, static_cast<std::uint64_t>(trial));
    Rng rng(instance_seed);
    const int n = static_cast<int>(rng.int_in(opts.min_points, opts.max_points));
    // Rejection tables get sparse fast; keep that generator to tiny instances.
    GenKind kind;
    const int pick = static_cast<int>(rng.below(n <= 3 ? 3 : 2));
    kind = pick == 0 ? GenKind::MaxWeight
           : pick == 1 ? GenKind::MetricPlusConstant
                       : GenKind::Rejection;

    FiniteTable table;
    try {
        table = random_finite_table(instance_seed, n, kind);
    } catch (const GenerationExhausted&) {
        return out;  // counted as skipped
    }
    out.generated = true;

    const auto space = table.to_space("fuzz-" + std::to_string(instance_seed));
    const auto sample = table.full_sample();
    double rho = table.at(0, 0);
    for (int i = 1; i < n; ++i) rho = std::min(rho, table.at(i, i));

    const auto maps = enumerate_maps(n, opts.maps_per_instance, rng);
    const int Q = 2 * n;

    auto add_breach = [&](const char* breach_kind, const std::vector<int>& images, double alpha,
                          std::string detail) {
        FuzzBreach b;
        b.kind = breach_kind;
        b.instance_seed = instance_seed;
        b.n = n;
        b.gen = kind;
        b.map_table = images;
        b.alpha = alpha;
        b.table_text = table.to_text();
        b.detail = std::move(detail);
        out.breaches.push_back(std::move(b));
    };

    for (const auto& images : maps) {
        ++out.maps_checked;
        const SelfMap map = map_from_table(table, images);

        // Per-alpha condition-A results are shared between the implication
        // checks and the alpha search.
        std::vector<bool> a_at_alpha(opts.alpha_grid.size());
        for (std::size_t ai = 0; ai < opts.alpha_grid.size(); ++ai)
            a_at_alpha[ai] =
                check_condition_A(space, map, sample, opts.alpha_grid[ai], Q, opts.tol,
                                  par::Exec::Serial)
                    .pass;

        bool b_known = false, b_ok = false;
        auto condition_b_passes = [&]() {
            if (!b_known) {
                b_ok = check_condition_B(space, map, sample, opts.epsilon1, opts.eps_grid,
                                         opts.q_cap, opts.tol, par::Exec::Serial)
                           .pass;
                b_known = true;
            }
            return b_ok;
        };

        bool max_any = false, ciric_any = false;
        for (std::size_t ai = 0; ai < opts.alpha_grid.size(); ++ai) {
            const double alpha = opts.alpha_grid[ai];
            const bool max_ok = check_contract(space, map, sample, alpha, ContractKind::MaxContraction,
                                            opts.tol, par::Exec::Serial)
                                 .pass;
            const bool ciric = check_contract(space, map, sample, alpha, ContractKind::Ciric,
                                              opts.tol, par::Exec::Serial)
                                   .pass;
            if (max_ok) {
                max_any = true;
                if (!a_at_alpha[ai])
                    add_breach("max-contraction->A", images, alpha, map_text(images));
                if (!condition_b_passes())
                    add_breach("max-contraction->B", images, alpha, map_text(images));
            }
            if (ciric) {
                ciric_any = true;
                if (!a_at_alpha[ai])
                    add_breach("ciric->A", images, alpha, map_text(images));
            }
        }
        if (max_any) ++out.max_contract_pass;
        if (ciric_any) ++out.ciric_pass;

        const bool a_any = std::find(a_at_alpha.begin(), a_at_alpha.end(), true) != a_at_alpha.end();
        if (a_any) ++out.a_pass;
        if (!a_any) continue;
        if (!condition_b_passes()) continue;
        ++out.b_pass;

        // Both hypotheses hold on the full finite space, so the unique
        // minimal-size fixed point must be reachable from every minimal
        // start.
        std::vector<Point> starts;
        for (int i = 0; i < n; ++i)
            if (table.at(i, i) <= rho + opts.tol) starts.push_back(i);
        SolveOptions sopts;
        sopts.max_iter = 200;
        sopts.tol = opts.tol;
        sopts.tail = 20;
        sopts.confirm_steps = 2 * n + 2;
        sopts.rho_reference = rho;
        const auto probe = uniqueness_probe(space, map, SampleSet::from_list(starts), sopts,
                                            par::Exec::Serial);
        bool ok = probe.verdict == UniquenessVerdict::UniqueInUp;
        for (const auto& r : probe.results)
            if (!r.candidate || std::abs(r.candidate_size - rho) > opts.tol) ok = false;
        if (ok) {
            ++out.fixed_point_found;
        } else {
            add_breach("AB->fixed-point", images, 0.0,
                       map_text(images) + " verdict: " +
                           uniqueness_verdict_name(probe.verdict));
        }
    }
    return out;
}

}  // namespace

FuzzReport fuzz_implications(std::uint64_t seed, int trials, const FuzzOptions& opts,
                             par::Exec exec) {
    if (trials < 1) throw UsageError("fuzz needs at least one trial");
    if (opts.min_points < 2 || opts.max_points > 8 || opts.min_points > opts.max_points)
        throw UsageError("fuzz point counts must satisfy 2 <= min <= max <= 8");

    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    par::for_index(
        static_cast<std::size_t>(trials),
        [&](std::size_t t) { results[t] = run_trial(seed, static_cast<int>(t), opts); },
        exec);

    FuzzReport report;
    report.seed = seed;
    report.trials = trials;
    for (const auto& r : results) {
        if (r.generated) ++report.instances;
        else ++report.generation_exhausted;
        report.maps_checked += r.maps_checked;
        report.max_contract_pass += r.max_contract_pass;
        report.ciric_pass += r.ciric_pass;
        report.a_pass += r.a_pass;
        report.b_pass += r.b_pass;
        report.fixed_point_found += r.fixed_point_found;
        report.implication_breaches += static_cast<long long>(r.breaches.size());
        for (const auto& b : r.breaches)
            if (static_cast<int>(report.breach_dumps.size()) < opts.max_breach_dumps)
                report.breach_dumps.push_back(b);
    }
    return report;
}

std::string fuzz_report_text(const FuzzReport& report) {
    std::string out;
    out += "fuzz-implications:\n";
    out += "  seed: " + std::to_string(report.seed) + "\n";
    out += "  trials: " + std::to_string(report.trials) + "\n";
    out += "  instances: " + std::to_string(report.instances) + "\n";
    out += "  generation-exhausted: " + std::to_string(report.generation_exhausted) + "\n";
    out += "  maps-checked: " + std::to_string(report.maps_checked) + "\n";
    out += "  max-contraction-pass: " + std::to_string(report.max_contract_pass) + "\n";
    out += "  ciric-pass: " + std::to_string(report.ciric_pass) + "\n";
    out += "  A-pass: " + std::to_string(report.a_pass) + "\n";
    out += "  B-pass: " + std::to_string(report.b_pass) + "\n";
    out += "  fixed-point-found: " + std::to_string(report.fixed_point_found) + "\n";
    out += "  implication-breaches: " + std::to_string(report.implication_breaches) + "\n";
    for (const auto& b : report.breach_dumps) {
        out += "  breach:\n";
        out += "    kind: " + b.kind + "\n";
        out += "    instance-seed: " + std::to_string(b.instance_seed) + "\n";
        out += "    generator: " + std::string(gen_kind_name(b.gen)) + "\n";
        out += "    alpha: " + format_double(b.alpha) + "\n";
        out += "    " + b.detail + "\n";
        for (std::size_t start = 0, end = 0; end != std::string::npos; start = end + 1) {
            end = b.table_text.find('\n', start);
            const auto line = b.table_text.substr(start, end - start);
            if (!line.empty()) out += "    " + line + "\n";
        }
    }
    out += "verdict: " + std::string(report.implication_breaches == 0 ? "pass" : "breach") + "\n";
    return out;
}

}  // namespace pmfix
