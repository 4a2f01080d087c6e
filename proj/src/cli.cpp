#include "pmfix/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmfix/catalog.hpp"
#include "pmfix/conditions.hpp"
#include "pmfix/dsl.hpp"
#include "pmfix/errors.hpp"
#include "pmfix/fuzz.hpp"
#include "pmfix/orbit.hpp"
#include "pmfix/report.hpp"
#include "pmfix/solver.hpp"

namespace pmfix::cli {

namespace {

using json = nlohmann::ordered_json;

struct Target {
    PMetricSpace space;
    SelfMap map;
    SampleSet sample;
    dsl::Overrides params;
    std::string label;

    Target(PMetricSpace s, SelfMap m, SampleSet ss)
        : space(std::move(s)), map(std::move(m)), sample(std::move(ss)) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Target load_target(const std::string& id, const std::string& config_path,
                   const std::string& sample_text, int map_power) {
    std::optional<Target> target;
    if (!config_path.empty()) {
        auto spec = dsl::parse_space_config(read_file(config_path));
        Target t(spec.space, spec.map, spec.sample);
        t.params = spec.params;
        t.label = spec.catalog_id ? *spec.catalog_id : "config:" + config_path;
        target = std::move(t);
    } else if (!id.empty()) {
        auto entry = catalog_entry(id);
        Target t(entry.space, entry.map, entry.default_sample);
        t.label = id;
        target = std::move(t);
    } else {
        throw UsageError("give a catalog id or --config <path>");
    }
    if (!sample_text.empty()) target->sample = dsl::parse_generator_text(sample_text);
    if (map_power > 1) target->map = target->map.power(map_power);
    return std::move(*target);
}

std::string pair_text(Point x, Point y) {
    return "(" + format_double(x) + ", " + format_double(y) + ")";
}

constexpr int kMaxWitnessLines = 10;

// --- text rendering -------------------------------------------------------

void render_header(ReportWriter& w, const std::string& command, const Target& t) {
    w.line("command", command);
    w.line("space", t.space.name());
    w.line("map", t.map.name());
    w.line("sample", t.sample.generator_spec());
    w.line("points", static_cast<long long>(t.sample.size()));
}

void render_axioms(ReportWriter& w, const AxiomReport& report) {
    w.open("axioms");
    for (int a = 0; a < 4; ++a)
        w.line(axiom_name(static_cast<Axiom>(a)), report.pass[a] ? "pass" : "fail");
    if (!report.witnesses.empty()) {
        w.open("witnesses");
        int shown = 0;
        for (const auto& wit : report.witnesses) {
            if (shown++ == kMaxWitnessLines) {
                w.item("... " + std::to_string(report.witnesses.size() - kMaxWitnessLines) +
                       " more");
                break;
            }
            std::string pts;
            for (std::size_t i = 0; i < wit.points.size(); ++i) {
                if (i) pts += ", ";
                pts += format_double(wit.points[i]);
            }
            w.item("- " + std::string(axiom_name(wit.axiom)) + " (" + pts +
                   ") lhs: " + format_double(wit.lhs) + " rhs: " + format_double(wit.rhs));
        }
        w.close();
    }
    w.close();
}

void render_summary(ReportWriter& w, const SpaceSummary& summary,
                    std::optional<double> rho_known) {
    w.open("summary");
    w.line("rho_hat", summary.rho_hat);
    if (rho_known) w.line("rho_known", *rho_known);
    std::string up = "[";
    for (std::size_t i = 0; i < summary.up_hat.size(); ++i) {
        if (i) up += ", ";
        up += format_double(summary.up_hat[i]);
    }
    w.line("up_hat", up + "]");
    w.open("sizes");
    for (const auto& [x, s] : summary.sizes) w.line("size(" + format_double(x) + ")", s);
    w.close();
    w.close();
}

void render_condition_a(ReportWriter& w, const ConditionAReport& report) {
    w.open("condition-A");
    w.line("alpha", report.alpha);
    w.line("Q", report.Q);
    w.line("tol", report.tol);
    w.line("verdict", report.pass ? "pass" : "fail");
    if (!report.witnesses.empty()) {
        w.open("witnesses");
        int shown = 0;
        for (const auto& wit : report.witnesses) {
            if (shown++ == kMaxWitnessLines) {
                w.item("... " + std::to_string(report.witnesses.size() - kMaxWitnessLines) +
                       " more");
                break;
            }
            w.item("- x: " + format_double(wit.x) + " q: " + std::to_string(wit.q) +
                   " lhs: " + format_double(wit.lhs) + " rhs: " + format_double(wit.rhs));
        }
        w.close();
    }
    w.close();
}

void render_condition_b(ReportWriter& w, const ConditionBReport& report) {
    w.open("condition-B");
    w.line("epsilon1", report.epsilon1);
    w.line("eps-grid", format_list(report.eps_grid));
    w.line("q-cap", report.q_cap);
    w.line("tol", report.tol);
    w.line("rho-reference", report.rho_ref);
    w.line("rho-source", report.rho_from_known ? "known" : "sampled");
    w.line("tested-pairs", static_cast<long long>(report.tested_pairs.size()));
    w.line("skipped-pairs", static_cast<long long>(report.skipped_pairs.size()));
    w.line("verdict", report.pass ? "pass" : "not-found-within-cap");
    if (!report.pass) {
        w.open("not-found");
        int shown = 0;
        for (const auto& res : report.outcomes) {
            if (res.q_eps) continue;
            if (shown++ == kMaxWitnessLines) {
                w.item("- ...");
                break;
            }
            w.item("- " + pair_text(res.x, res.y) + " eps: " + format_double(res.eps) +
                   " min-lhs: " + format_double(res.min_lhs) + " at-q: " +
                   std::to_string(res.q_at_min));
        }
        w.close();
    }
    w.close();
}

void render_contract(ReportWriter& w, const ContractReport& report) {
    w.open(std::string("contract-") + contract_kind_name(report.which));
    w.line("alpha", report.alpha);
    w.line("verdict", report.pass ? "pass" : "fail");
    if (!report.witnesses.empty()) {
        w.open("witnesses");
        int shown = 0;
        for (const auto& wit : report.witnesses) {
            if (shown++ == kMaxWitnessLines) {
                w.item("... " + std::to_string(report.witnesses.size() - kMaxWitnessLines) +
                       " more");
                break;
            }
            w.item("- " + pair_text(wit.x, wit.y) + " lhs: " + format_double(wit.lhs) +
                   " rhs: " + format_double(wit.rhs));
        }
        w.close();
    }
    w.close();
}

std::string solve_verdict_text(SolveStatus status) {
    switch (status) {
        case SolveStatus::FixedPointFound: return "fixed-point-found";
        case SolveStatus::FixedPointOutsideUp: return "fixed-point-outside-Up";
        case SolveStatus::ConvergedButNotFixed: return "converged-but-not-fixed";
        case SolveStatus::NonConvergent: return "non-convergent";
    }
    return "?";
}

void render_solve_body(ReportWriter& w, const SolveResult& r) {
    w.line("status", solve_status_name(r.status));
    if (r.candidate) {
        w.line("candidate", *r.candidate);
        w.line("size", r.candidate_size);
    } else {
        w.line("candidate", "none");
    }
    w.line("residual", r.residual);
    if (r.r_x) w.line("r_x", *r.r_x);
    else w.line("r_x", "unsettled");
    w.line("cauchy-deviation", r.cauchy_deviation);
    w.line("iterations", r.iterations_used);
    if (r.period_hint) w.line("period-hint", static_cast<long long>(*r.period_hint));
    else w.line("period-hint", "none");
    w.line("rho-reference", r.rho_reference);
}

// --- json mirrors ---------------------------------------------------------

json axioms_json(const AxiomReport& report) {
    json j;
    for (int a = 0; a < 4; ++a) j[axiom_name(static_cast<Axiom>(a))] = report.pass[a] ? "pass" : "fail";
    json wits = json::array();
    for (const auto& wit : report.witnesses) {
        json item;
        item["axiom"] = axiom_name(wit.axiom);
        item["points"] = wit.points;
        item["lhs"] = wit.lhs;
        item["rhs"] = wit.rhs;
        wits.push_back(item);
    }
    j["witnesses"] = wits;
    return j;
}

json condition_a_json(const ConditionAReport& r) {
    json j;
    j["alpha"] = r.alpha;
    j["Q"] = r.Q;
    j["tol"] = r.tol;
    j["verdict"] = r.pass ? "pass" : "fail";
    json wits = json::array();
    for (const auto& w : r.witnesses)
        wits.push_back({{"x", w.x}, {"q", w.q}, {"lhs", w.lhs}, {"rhs", w.rhs}});
    j["witnesses"] = wits;
    return j;
}

json condition_b_json(const ConditionBReport& r) {
    json j;
    j["epsilon1"] = r.epsilon1;
    j["eps_grid"] = r.eps_grid;
    j["q_cap"] = r.q_cap;
    j["tol"] = r.tol;
    j["rho_reference"] = r.rho_ref;
    j["rho_source"] = r.rho_from_known ? "known" : "sampled";
    j["tested_pairs"] = r.tested_pairs.size();
    j["skipped_pairs"] = r.skipped_pairs.size();
    j["verdict"] = r.pass ? "pass" : "not-found-within-cap";
    json items = json::array();
    for (const auto& res : r.outcomes) {
        json item;
        item["x"] = res.x;
        item["y"] = res.y;
        item["eps"] = res.eps;
        if (res.q_eps) item["q_eps"] = *res.q_eps;
        else item["q_eps"] = nullptr;
        item["lhs"] = res.lhs_at_q;
        items.push_back(item);
    }
    j["outcomes"] = items;
    return j;
}

json contract_json(const ContractReport& r) {
    json j;
    j["alpha"] = r.alpha;
    j["verdict"] = r.pass ? "pass" : "fail";
    json wits = json::array();
    for (const auto& w : r.witnesses)
        wits.push_back({{"x", w.x}, {"y", w.y}, {"lhs", w.lhs}, {"rhs", w.rhs}});
    j["witnesses"] = wits;
    return j;
}

json solve_json(const SolveResult& r) {
    json j;
    j["status"] = solve_status_name(r.status);
    j["start"] = r.start;
    if (r.candidate) {
        j["candidate"] = *r.candidate;
        j["size"] = r.candidate_size;
    } else {
        j["candidate"] = nullptr;
    }
    j["residual"] = r.residual;
    if (r.r_x) j["r_x"] = *r.r_x;
    else j["r_x"] = nullptr;
    j["cauchy_deviation"] = r.cauchy_deviation;
    j["iterations"] = r.iterations_used;
    if (r.period_hint) j["period_hint"] = *r.period_hint;
    else j["period_hint"] = nullptr;
    j["rho_reference"] = r.rho_reference;
    return j;
}

json header_json(const std::string& command, const Target& t) {
    json j;
    j["command"] = command;
    j["space"] = t.space.name();
    j["map"] = t.map.name();
    j["sample"] = t.sample.generator_spec();
    j["points"] = t.sample.size();
    return j;
}

// --- commands ---------------------------------------------------------------

struct CommonFlags {
    std::string id;
    std::string config;
    std::string sample;
    int map_power = 1;
    bool as_json = false;
    double tol = kDefaultTol;
};

int cmd_catalog(std::ostream& out, bool as_json) {
    if (as_json) {
        json j;
        j["command"] = "catalog";
        json items = json::array();
        for (const auto& id : catalog_ids()) {
            auto entry = catalog_entry(id);
            items.push_back({{"id", id}, {"description", entry.description}});
        }
        j["catalog"] = items;
        out << j.dump(2) << "\n";
        return 0;
    }
    ReportWriter w(out);
    w.line("command", "catalog");
    w.open("catalog");
    for (const auto& id : catalog_ids()) w.line(id, catalog_entry(id).description);
    w.close();
    return 0;
}

int cmd_verify(std::ostream& out, const CommonFlags& flags) {
    const Target t = load_target(flags.id, flags.config, flags.sample, flags.map_power);
    const auto report = verify_axioms(t.space, t.sample, flags.tol);
    const auto summary = space_summary(t.space, t.sample, flags.tol);
    if (flags.as_json) {
        json j = header_json("verify", t);
        j["tol"] = flags.tol;
        j["axioms"] = axioms_json(report);
        j["summary"] = {{"rho_hat", summary.rho_hat}, {"up_hat", summary.up_hat}};
        if (t.space.rho_known()) j["summary"]["rho_known"] = *t.space.rho_known();
        j["verdict"] = report.all_pass() ? "pass" : "fail";
        out << j.dump(2) << "\n";
    } else {
        ReportWriter w(out);
        render_header(w, "verify", t);
        w.line("tol", flags.tol);
        render_axioms(w, report);
        render_summary(w, summary, t.space.rho_known());
        w.line("verdict", report.all_pass() ? "pass" : "fail");
    }
    return report.all_pass() ? 0 : 1;
}

struct ConditionFlags {
    double alpha = 0.75;
    double epsilon1 = 0.5;
    int Q = 30;
    int q_cap = 200;
    std::vector<double> eps_grid{0.5, 0.1, 0.01};
};

void merge_params(ConditionFlags& flags, const dsl::Overrides& params, const CLI::App* sub) {
    if (params.alpha && sub->count("--alpha") == 0) flags.alpha = *params.alpha;
    if (params.epsilon1 && sub->count("--epsilon1") == 0) flags.epsilon1 = *params.epsilon1;
    if (params.Q && sub->count("--Q") == 0) flags.Q = *params.Q;
    if (params.q_cap && sub->count("--q-cap") == 0) flags.q_cap = *params.q_cap;
}

void merge_tol(CommonFlags& flags, const dsl::Overrides& params, const CLI::App* sub) {
    if (params.tol && sub->count("--tol") == 0) flags.tol = *params.tol;
}

void merge_solve_params(SolveOptions& opts, const dsl::Overrides& params, const CLI::App* sub) {
    if (params.max_iter && sub->count("--max-iter") == 0) opts.max_iter = *params.max_iter;
    if (params.tol && sub->count("--tol") == 0) opts.tol = *params.tol;
}

int cmd_conditions(std::ostream& out, const CommonFlags& flags, const ConditionFlags& cond) {
    const Target t = load_target(flags.id, flags.config, flags.sample, flags.map_power);
    const auto a = check_condition_A(t.space, t.map, t.sample, cond.alpha, cond.Q, flags.tol);
    const auto b = check_condition_B(t.space, t.map, t.sample, cond.epsilon1, cond.eps_grid,
                                     cond.q_cap, flags.tol);
    const auto plain_max = check_contract(t.space, t.map, t.sample, cond.alpha,
                                          ContractKind::MaxContraction, flags.tol);
    const auto ciric = check_contract(t.space, t.map, t.sample, cond.alpha, ContractKind::Ciric,
                                      flags.tol);
    const char* verdict = !a.pass ? "fail-with-witness" : (!b.pass ? "not-found-within-cap" : "pass");
    if (flags.as_json) {
        json j = header_json("conditions", t);
        j["condition_A"] = condition_a_json(a);
        j["condition_B"] = condition_b_json(b);
        j["contract_max_contraction"] = contract_json(plain_max);
        j["contract_ciric"] = contract_json(ciric);
        j["verdict"] = verdict;
        out << j.dump(2) << "\n";
    } else {
        ReportWriter w(out);
        render_header(w, "conditions", t);
        render_condition_a(w, a);
        render_condition_b(w, b);
        render_contract(w, plain_max);
        render_contract(w, ciric);
        w.line("verdict", verdict);
    }
    return !a.pass ? 1 : (!b.pass ? 2 : 0);
}

int cmd_solve(std::ostream& out, const CommonFlags& flags, Point x0, SolveOptions opts,
              const std::string& dump_path) {
    const Target t = load_target(flags.id, flags.config, flags.sample, flags.map_power);
    const auto result = solve_fixed_point(t.space, t.map, t.sample, x0, opts);
    if (!dump_path.empty()) {
        const int steps = std::max(2, std::min(opts.max_iter, result.iterations_used + 1));
        const auto orbit = compute_orbit(t.map, x0, steps);
        std::ofstream dump(dump_path, std::ios::binary);
        if (!dump) throw UsageError("cannot open dump file: " + dump_path);
        dump << orbit_dump(t.space, orbit);
    }
    if (flags.as_json) {
        json j = header_json("solve", t);
        j["x0"] = x0;
        j["max_iter"] = opts.max_iter;
        j["tol"] = opts.tol;
        j["result"] = solve_json(result);
        j["verdict"] = solve_verdict_text(result.status);
        out << j.dump(2) << "\n";
    } else {
        ReportWriter w(out);
        render_header(w, "solve", t);
        w.line("x0", x0);
        w.line("max-iter", opts.max_iter);
        w.line("tol", opts.tol);
        render_solve_body(w, result);
        w.line("verdict", solve_verdict_text(result.status));
    }
    return solve_status_exit_code(result.status);
}

int cmd_pipeline(std::ostream& out, const CommonFlags& flags, const ConditionFlags& cond,
                 SolveOptions solve_opts) {
    const Target t = load_target(flags.id, flags.config, flags.sample, flags.map_power);
    PipelineOptions opts;
    opts.alpha = cond.alpha;
    opts.epsilon1 = cond.epsilon1;
    opts.Q = cond.Q;
    opts.q_cap = cond.q_cap;
    opts.eps_grid = cond.eps_grid;
    opts.tol = flags.tol;
    opts.solve = solve_opts;
    const auto report = fixed_point_pipeline(t.space, t.map, t.sample, opts);

    std::string verdict = pipeline_verdict_name(report.verdict);
    if (report.verdict == PipelineVerdict::UniqueFixedPointInUp && report.candidate)
        verdict += " candidate: " + format_double(*report.candidate);

    if (flags.as_json) {
        json j = header_json("pipeline", t);
        j["condition_A"] = condition_a_json(report.condition_a);
        j["condition_B"] = condition_b_json(report.condition_b);
        j["starts"] = report.starts;
        json solves = json::array();
        for (const auto& r : report.uniqueness.results) solves.push_back(solve_json(r));
        j["solves"] = solves;
        j["uniqueness"] = uniqueness_verdict_name(report.uniqueness.verdict);
        j["rho_reference"] = report.rho_reference;
        j["conditions_hold"] = report.conditions_hold;
        j["verdict"] = verdict;
        out << j.dump(2) << "\n";
    } else {
        ReportWriter w(out);
        render_header(w, "pipeline", t);
        render_condition_a(w, report.condition_a);
        render_condition_b(w, report.condition_b);
        std::string starts = "[";
        for (std::size_t i = 0; i < report.starts.size(); ++i) {
            if (i) starts += ", ";
            starts += format_double(report.starts[i]);
        }
        w.line("starts", starts + "]");
        w.open("solves");
        for (const auto& r : report.uniqueness.results) {
            w.open("start " + format_double(r.start));
            render_solve_body(w, r);
            w.close();
        }
        w.close();
        w.line("uniqueness", uniqueness_verdict_name(report.uniqueness.verdict));
        w.line("rho-reference", report.rho_reference);
        w.line("conditions-hold", report.conditions_hold);
        w.line("verdict", verdict);
    }
    if (report.verdict == PipelineVerdict::UniqueFixedPointInUp) return 0;
    if (!report.condition_b.pass && report.verdict != PipelineVerdict::ImplicationBreach) return 2;
    return 1;
}

int cmd_fuzz(std::ostream& out, bool as_json, std::uint64_t seed, int trials,
             const FuzzOptions& opts) {
    const auto report = fuzz_implications(seed, trials, opts);
    if (as_json) {
        json j;
        j["command"] = "fuzz";
        j["seed"] = report.seed;
        j["trials"] = report.trials;
        j["instances"] = report.instances;
        j["generation_exhausted"] = report.generation_exhausted;
        j["maps_checked"] = report.maps_checked;
        j["max_contract_pass"] = report.max_contract_pass;
        j["ciric_pass"] = report.ciric_pass;
        j["A_pass"] = report.a_pass;
        j["B_pass"] = report.b_pass;
        j["fixed_point_found"] = report.fixed_point_found;
        j["implication_breaches"] = report.implication_breaches;
        j["verdict"] = report.implication_breaches == 0 ? "pass" : "breach";
        out << j.dump(2) << "\n";
    } else {
        out << "command: fuzz\n" << fuzz_report_text(report);
    }
    return report.implication_breaches == 0 ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pmfix: fixed points of self-maps on partial metric spaces"};
    app.require_subcommand(1);

    CommonFlags flags;
    ConditionFlags cond;
    SolveOptions solve_opts;
    Point x0 = 0;
    std::string dump_path;
    std::uint64_t fuzz_seed = 1;
    int fuzz_trials = 100;
    FuzzOptions fuzz_opts;

    auto add_target_flags = [&](CLI::App* sub, bool with_tol = true) {
        sub->add_option("target", flags.id, "catalog id");
        sub->add_option("--config", flags.config, "path to a .pmspec config");
        sub->add_option("--sample", flags.sample, "sample generator override, e.g. list(0, 1)");
        sub->add_option("--map-power", flags.map_power, "iterate the map this many times")
            ->check(CLI::PositiveNumber);
        if (with_tol)
            sub->add_option("--tol", flags.tol, "numeric tolerance")->check(CLI::PositiveNumber);
        sub->add_flag("--json", flags.as_json, "JSON output with stable key order");
    };
    auto add_condition_flags = [&](CLI::App* sub) {
        sub->add_option("--alpha", cond.alpha, "contraction factor in [0,1)")
            ->check(CLI::Range(0.0, 0.9999999999));
        sub->add_option("--epsilon1", cond.epsilon1, "size margin for condition B")
            ->check(CLI::PositiveNumber);
        sub->add_option("--Q", cond.Q, "orbit depth for condition A")->check(CLI::PositiveNumber);
        sub->add_option("--q-cap", cond.q_cap, "iteration cap for condition B")
            ->check(CLI::PositiveNumber);
        sub->add_option("--eps-grid", cond.eps_grid, "epsilon grid (descending)");
    };
    auto add_solve_flags = [&](CLI::App* sub) {
        sub->add_option("--max-iter", solve_opts.max_iter)->check(CLI::PositiveNumber);
        sub->add_option("--tail", solve_opts.tail)->check(CLI::PositiveNumber);
        sub->add_option("--confirm-steps", solve_opts.confirm_steps)->check(CLI::PositiveNumber);
        sub->add_flag("!--no-up-check", solve_opts.require_up_membership,
                      "skip the size-infimum membership check");
    };

    auto* catalog_cmd = app.add_subcommand("catalog", "list the bundled spaces");
    catalog_cmd->add_flag("--json", flags.as_json, "JSON output");

    auto* verify_cmd = app.add_subcommand("verify", "check the partial-metric axioms on a sample");
    add_target_flags(verify_cmd);

    auto* conditions_cmd =
        app.add_subcommand("conditions", "check the orbit and proximity conditions");
    add_target_flags(conditions_cmd);
    add_condition_flags(conditions_cmd);

    auto* solve_cmd = app.add_subcommand("solve", "run the fixed-point iteration from a start");
    add_target_flags(solve_cmd);
    add_solve_flags(solve_cmd);
    solve_cmd->add_option("--x0", x0, "starting point")->required();
    solve_cmd->add_option("--dump-orbit", dump_path, "write the orbit trace to this file");

    auto* pipeline_cmd =
        app.add_subcommand("pipeline", "conditions plus the uniqueness probe, combined verdict");
    add_target_flags(pipeline_cmd);
    add_condition_flags(pipeline_cmd);
    add_solve_flags(pipeline_cmd);

    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized implication checks on finite spaces");
    fuzz_cmd->add_flag("--json", flags.as_json, "JSON output");
    fuzz_cmd->add_option("--seed", fuzz_seed, "random seed");
    fuzz_cmd->add_option("--trials", fuzz_trials, "number of random instances");
    fuzz_cmd->add_option("--max-points", fuzz_opts.max_points, "largest instance size")
        ->check(CLI::Range(2, 8));
    fuzz_cmd->add_option("--maps-per-instance", fuzz_opts.maps_per_instance)
        ->check(CLI::PositiveNumber);

    std::vector<const char*> argv;
    argv.push_back("pmfix");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    try {
        if (catalog_cmd->parsed()) return cmd_catalog(out, flags.as_json);
        if (verify_cmd->parsed()) {
            Target probe = load_target(flags.id, flags.config, flags.sample, 1);
            merge_tol(flags, probe.params, verify_cmd);
            return cmd_verify(out, flags);
        }
        if (conditions_cmd->parsed()) {
            Target probe = load_target(flags.id, flags.config, flags.sample, 1);
            merge_params(cond, probe.params, conditions_cmd);
            merge_tol(flags, probe.params, conditions_cmd);
            return cmd_conditions(out, flags, cond);
        }
        if (solve_cmd->parsed()) {
            Target probe = load_target(flags.id, flags.config, flags.sample, 1);
            solve_opts.tol = flags.tol;
            merge_solve_params(solve_opts, probe.params, solve_cmd);
            return cmd_solve(out, flags, x0, solve_opts, dump_path);
        }
        if (pipeline_cmd->parsed()) {
            Target probe = load_target(flags.id, flags.config, flags.sample, 1);
            merge_params(cond, probe.params, pipeline_cmd);
            merge_tol(flags, probe.params, pipeline_cmd);
            solve_opts.tol = flags.tol;
            merge_solve_params(solve_opts, probe.params, pipeline_cmd);
            return cmd_pipeline(out, flags, cond, solve_opts);
        }
        if (fuzz_cmd->parsed()) {
            if (fuzz_trials < 1) throw UsageError("fuzz needs --trials >= 1");
            return cmd_fuzz(out, flags.as_json, fuzz_seed, fuzz_trials, fuzz_opts);
        }
        throw UsageError("no command given");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return 65;
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << "\n";
        return 65;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 70;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 70;
    }
}

}  // namespace pmfix::cli
