#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqbit/ee.hpp"
#include "pqbit/eval.hpp"
#include "pqbit/rng.hpp"
#include "pqbit/sigma.hpp"

using nlohmann::json;

namespace {

// Human-readable JSON carries 6 significant digits; CSV keeps all 17.
double sig6(double v) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

json pair_json(const pqbit::TruthPair& w) {
    return {{"wPlus", sig6(w.w_plus)}, {"wMinus", sig6(w.w_minus)}};
}

json amp_json(const pqbit::Amplitude& z) {
    return {{"re", sig6(z.re)}, {"im", sig6(z.im)}};
}

struct CommonOptions {
    std::string family = "minmax";
    double p = -1.0;
    std::string convention = "pure_generator";
    std::string op_map = "printed";
    std::string impl = "printed";
    double clamp = pqbit::kGeneratorFloor;
};

void add_family_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--family", opt.family, "t-norm family: minmax, product, ss, drastic")
        ->check(CLI::IsMember({"minmax", "product", "ss", "drastic"}));
    cmd->add_option("--p", opt.p, "Schweizer-Sklar parameter (used when --family ss)");
}

void add_sigma_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--convention", opt.convention, "sigma convention")
        ->check(CLI::IsMember({"pure_generator", "printed", "symmetric"}));
    cmd->add_option("--op-map", opt.op_map, "amplitude op assignment: printed (meet->add) or summary")
        ->check(CLI::IsMember({"printed", "summary"}));
    cmd->add_option("--clamp", opt.clamp, "generator clamp floor");
}

pqbit::TNormFamily family_of(const CommonOptions& opt) {
    if (opt.family == "minmax") return pqbit::TNormFamily::min_max();
    if (opt.family == "product") return pqbit::TNormFamily::product();
    if (opt.family == "drastic") return pqbit::TNormFamily::drastic();
    return pqbit::TNormFamily::schweizer_sklar(opt.p);
}

pqbit::SigmaConfig sigma_config_of(const CommonOptions& opt) {
    pqbit::SigmaConfig cfg;
    cfg.family = family_of(opt);
    cfg.convention = pqbit::sigma_convention_from(opt.convention);
    cfg.op_map = pqbit::op_map_from(opt.op_map);
    cfg.clamp = opt.clamp;
    return cfg;
}

pqbit::ImplVariant impl_of(const CommonOptions& opt) {
    return opt.impl == "standard" ? pqbit::ImplVariant::Standard : pqbit::ImplVariant::Printed;
}

pqbit::dsl::Environment load_environment(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open environment file: " + path);
    json j;
    in >> j;
    return pqbit::dsl::environment_from_json(j);
}

void emit(const json& j) {
    std::cout << j.dump(2) << '\n';
}

int run_eval(const std::string& expr_text, const std::string& env_path, const std::string& semantics,
             const CommonOptions& opt) {
    const auto expr = pqbit::dsl::parse(expr_text);
    const auto env = load_environment(env_path);
    json out;
    if (semantics == "crisp") {
        out["value"] = std::string(1, pqbit::pbit_code(pqbit::dsl::eval_crisp(*expr, env, impl_of(opt))));
    } else if (semantics == "fuzzy") {
        out["value"] = pair_json(pqbit::dsl::eval_fuzzy(*expr, env, family_of(opt), impl_of(opt)));
    } else {
        out["value"] = amp_json(pqbit::dsl::eval_quantum(*expr, env, sigma_config_of(opt)));
    }
    emit(out);
    return 0;
}

int run_truth_table(const std::string& op, const CommonOptions& opt) {
    using namespace pqbit;
    constexpr PBit values[] = {kTrue, kFalse, kBoth, kNeither};
    json rows = json::array();
    if (op == "neg") {
        for (PBit a : values) {
            rows.push_back({{"a", std::string(1, pbit_code(a))}, {"result", std::string(1, pbit_code(cd_neg(a)))}});
        }
    } else {
        for (PBit a : values) {
            for (PBit b : values) {
                PBit r{};
                if (op == "meet") r = cd_meet(a, b);
                else if (op == "join") r = cd_join(a, b);
                else r = cd_impl(a, b, impl_of(opt));
                rows.push_back({{"a", std::string(1, pbit_code(a))},
                                {"b", std::string(1, pbit_code(b))},
                                {"result", std::string(1, pbit_code(r))}});
            }
        }
    }
    emit({{"op", op}, {"rows", rows}});
    return 0;
}

json audit_rows_json(const pqbit::AuditReport& report) {
    json rows = json::array();
    for (const auto& r : report) {
        rows.push_back({{"p", sig6(r.p)},
                        {"family", r.family},
                        {"sigma_convention", to_string(r.convention)},
                        {"op_map", to_string(r.op_map)},
                        {"identity", r.identity},
                        {"max_abs_err", sig6(r.max_abs_err)},
                        {"mean_abs_err", sig6(r.mean_abs_err)},
                        {"samples", r.samples},
                        {"seed", r.seed}});
    }
    return rows;
}

int run_audit(const std::vector<double>& ps, std::size_t samples, std::uint64_t seed, const std::string& out) {
    const auto report = pqbit::sweep(ps, samples, seed);
    if (!out.empty()) {
        pqbit::write_audit_csv(report, out);
        emit({{"rows", report.size()}, {"out", out}});
    } else {
        emit({{"rows", audit_rows_json(report)}});
    }
    return 0;
}

int run_sweep_defect(const std::vector<std::string>& families, const std::vector<double>& ps, int grid,
                     const std::string& out) {
    std::vector<pqbit::DefectReport> reports;
    for (const auto& name : families) {
        if (name == "ss") {
            for (double p : ps) {
                reports.push_back(pqbit::distributivity_defect(pqbit::TNormFamily::schweizer_sklar(p), grid));
            }
        } else {
            CommonOptions opt;
            opt.family = name;
            reports.push_back(pqbit::distributivity_defect(family_of(opt), grid));
        }
    }
    if (!out.empty()) {
        pqbit::write_defect_csv(reports, out);
        emit({{"rows", reports.size()}, {"out", out}});
    } else {
        json rows = json::array();
        for (const auto& r : reports) {
            rows.push_back({{"family", family_name(r.family)},
                            {"p", sig6(family_parameter(r.family))},
                            {"grid", r.grid},
                            {"max_defect", sig6(r.max_defect)},
                            {"mean_defect", sig6(r.mean_defect)}});
        }
        emit({{"rows", rows}});
    }
    return 0;
}

int run_ee_fit(const std::vector<double>& epsilons, long total, long bound, int grid, std::size_t samples,
               std::uint64_t seed, const std::string& shift, const std::string& kernel, const std::string& out) {
    std::vector<pqbit::EeFitRow> rows;
    std::uint64_t index = 0;
    for (double eps : epsilons) {
        pqbit::NoiseModel nm{eps, pqbit::shift_mode_from(shift), pqbit::noise_kernel_from(kernel), bound};
        const std::uint64_t run_seed = pqbit::rng::derive(seed, index++);
        const auto surface = pqbit::smoothed_tnorm_surface(nm, total, grid, samples, run_seed);
        const auto fit = pqbit::fit_ss_parameter(surface);
        rows.push_back({eps, nm.shift, nm.kernel, bound, total, samples, run_seed, fit.p_hat, fit.rss, fit.at_bound});
    }
    if (!out.empty()) {
        pqbit::write_ee_fit_csv(rows, out);
        emit({{"rows", rows.size()}, {"out", out}});
    } else {
        json jrows = json::array();
        for (const auto& r : rows) {
            jrows.push_back({{"epsilon", sig6(r.epsilon)},
                             {"shift_mode", to_string(r.shift)},
                             {"kernel", to_string(r.kernel)},
                             {"K", r.bound},
                             {"N", r.total},
                             {"samples", r.samples},
                             {"seed", r.seed},
                             {"p_hat", sig6(r.p_hat)},
                             {"fit_rss", sig6(r.fit_rss)},
                             {"at_bound", r.at_bound}});
        }
        emit({{"rows", jrows}});
    }
    return 0;
}

int run_demorgan_check(const CommonOptions& opt, std::size_t samples, std::uint64_t seed) {
    const auto fam = family_of(opt);
    pqbit::rng::Stream stream(seed);
    double max_err = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const pqbit::TruthPair a{stream.uniform01(), stream.uniform01()};
        const pqbit::TruthPair b{stream.uniform01(), stream.uniform01()};
        const auto lhs = pqbit::fuzzy_neg(pqbit::fuzzy_join(a, b, fam));
        const auto rhs = pqbit::fuzzy_meet(pqbit::fuzzy_neg(a), pqbit::fuzzy_neg(b), fam);
        max_err = std::max({max_err, std::fabs(lhs.w_plus - rhs.w_plus), std::fabs(lhs.w_minus - rhs.w_minus)});
    }
    emit({{"family", pqbit::family_name(fam)},
          {"p", sig6(pqbit::family_parameter(fam))},
          {"samples", samples},
          {"seed", seed},
          {"max_abs_err", sig6(max_err)}});
    return 0;
}

int run_sample(const std::string& expr_text, const std::string& env_path, std::size_t trials,
               std::uint64_t seed, const CommonOptions& opt) {
    const auto expr = pqbit::dsl::parse(expr_text);
    const auto env = load_environment(env_path);
    const auto result = pqbit::dsl::sample_random(*expr, env, trials, seed, impl_of(opt));
    emit({{"value", pair_json(result.value)},
          {"stderrPlus", sig6(result.stderr_plus)},
          {"stderrMinus", sig6(result.stderr_minus)},
          {"trials", result.trials},
          {"seed", seed}});
    return 0;
}

int run_compare(const std::string& expr_text, const std::string& env_path, const CommonOptions& opt) {
    const auto expr = pqbit::dsl::parse(expr_text);
    const auto env = load_environment(env_path);
    const auto report = pqbit::dsl::compare(*expr, env, sigma_config_of(opt), family_of(opt));
    json nodes = json::array();
    for (const auto& n : report.nodes) {
        nodes.push_back({{"expr", n.text},
                         {"direct", amp_json(n.direct)},
                         {"mapped", amp_json(n.mapped)},
                         {"abs_err", sig6(n.abs_err)}});
    }
    emit({{"nodes", nodes}, {"root_err", sig6(report.root_err)}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paraconsistent truth-value algebra and amplitude mapping toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;

    std::string expr_text;
    std::string env_path;
    std::string semantics = "crisp";
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
    eval_cmd->add_option("--expr", expr_text, "expression text")->required();
    eval_cmd->add_option("--env", env_path, "JSON environment file");
    eval_cmd->add_option("--semantics", semantics, "crisp, fuzzy, or quantum")
        ->required()
        ->check(CLI::IsMember({"crisp", "fuzzy", "quantum"}));
    eval_cmd->add_option("--impl", opt.impl, "implication variant: printed or standard")
        ->check(CLI::IsMember({"printed", "standard"}));
    add_family_flags(eval_cmd, opt);
    add_sigma_flags(eval_cmd, opt);

    std::string table_op = "meet";
    auto* table_cmd = app.add_subcommand("truth-table", "print a 4-valued table");
    table_cmd->add_option("--op", table_op, "meet, join, neg, or impl")
        ->required()
        ->check(CLI::IsMember({"meet", "join", "neg", "impl"}));
    table_cmd->add_option("--impl", opt.impl, "implication variant: printed or standard")
        ->check(CLI::IsMember({"printed", "standard"}));

    std::vector<double> audit_ps{-1.0, -2.0, -4.0, -8.0, -16.0, -32.0};
    std::size_t audit_samples = 10000;
    std::uint64_t audit_seed = 42;
    std::string audit_out;
    auto* audit_cmd = app.add_subcommand("audit", "audit the amplitude mapping identities");
    audit_cmd->add_option("--p", audit_ps, "SS parameters to audit (negative)");
    audit_cmd->add_option("--samples", audit_samples, "Monte Carlo samples per row");
    audit_cmd->add_option("--seed", audit_seed, "base seed");
    audit_cmd->add_option("--out", audit_out, "CSV output path");

    std::vector<std::string> defect_families{"minmax", "product", "ss"};
    std::vector<double> defect_ps{-2.0, -32.0};
    int defect_grid = 50;
    std::string defect_out;
    auto* defect_cmd = app.add_subcommand("sweep-defect", "distributivity defect over a grid");
    defect_cmd->add_option("--families", defect_families, "families to sweep")
        ->check(CLI::IsMember({"minmax", "product", "ss", "drastic"}));
    defect_cmd->add_option("--p", defect_ps, "SS parameters (used for family ss)");
    defect_cmd->add_option("--grid", defect_grid, "grid points per axis")->check(CLI::Range(2, 1000));
    defect_cmd->add_option("--out", defect_out, "CSV output path");

    std::vector<double> fit_eps{0.2, 0.1, 0.05, 0.02};
    long fit_total = 1000;
    long fit_bound = 100;
    int fit_grid = 17;
    std::size_t fit_samples = 100000;
    std::uint64_t fit_seed = 7;
    std::string fit_shift = "common_shift";
    std::string fit_kernel = "binomial_symmetric";
    std::string fit_out;
    auto* fit_cmd = app.add_subcommand("ee-fit", "fit SS parameters to smoothed meet surfaces");
    fit_cmd->add_option("--epsilon", fit_eps, "noise rates");
    fit_cmd->add_option("--total", fit_total, "evidence total N");
    fit_cmd->add_option("--bound", fit_bound, "kernel bound K");
    fit_cmd->add_option("--grid", fit_grid, "surface grid points per axis")->check(CLI::Range(2, 512));
    fit_cmd->add_option("--samples", fit_samples, "Monte Carlo samples per cell");
    fit_cmd->add_option("--seed", fit_seed, "base seed");
    fit_cmd->add_option("--shift", fit_shift, "common_shift or swap_shift");
    fit_cmd->add_option("--kernel", fit_kernel, "binomial_symmetric or discrete_uniform");
    fit_cmd->add_option("--out", fit_out, "CSV output path");

    std::size_t dm_samples = 10000;
    std::uint64_t dm_seed = 42;
    auto* dm_cmd = app.add_subcommand("demorgan-check", "verify the De Morgan swap law");
    add_family_flags(dm_cmd, opt);
    dm_cmd->add_option("--samples", dm_samples, "random pair-pairs to test");
    dm_cmd->add_option("--seed", dm_seed, "seed");

    std::size_t sample_trials = 10000;
    std::uint64_t sample_seed = 42;
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo over random(rho) leaves");
    sample_cmd->add_option("--expr", expr_text, "expression text")->required();
    sample_cmd->add_option("--env", env_path, "JSON environment file");
    sample_cmd->add_option("--trials", sample_trials, "number of trials");
    sample_cmd->add_option("--seed", sample_seed, "seed");
    sample_cmd->add_option("--impl", opt.impl, "implication variant")
        ->check(CLI::IsMember({"printed", "standard"}));

    auto* compare_cmd = app.add_subcommand("compare", "per-node quantum vs mapped-fuzzy comparison");
    compare_cmd->add_option("--expr", expr_text, "expression text")->required();
    compare_cmd->add_option("--env", env_path, "JSON environment file");
    add_family_flags(compare_cmd, opt);
    add_sigma_flags(compare_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(expr_text, env_path, semantics, opt);
        if (table_cmd->parsed()) return run_truth_table(table_op, opt);
        if (audit_cmd->parsed()) return run_audit(audit_ps, audit_samples, audit_seed, audit_out);
        if (defect_cmd->parsed()) return run_sweep_defect(defect_families, defect_ps, defect_grid, defect_out);
        if (fit_cmd->parsed())
            return run_ee_fit(fit_eps, fit_total, fit_bound, fit_grid, fit_samples, fit_seed, fit_shift,
                              fit_kernel, fit_out);
        if (dm_cmd->parsed()) return run_demorgan_check(opt, dm_samples, dm_seed);
        if (sample_cmd->parsed()) return run_sample(expr_text, env_path, sample_trials, sample_seed, opt);
        if (compare_cmd->parsed()) return run_compare(expr_text, env_path, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
