#include "monoeq/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "monoeq/bench.hpp"
#include "monoeq/logreg.hpp"
#include "monoeq/perry.hpp"
#include "monoeq/problems.hpp"
#include "monoeq/rng.hpp"
#include "monoeq/solver.hpp"
#include "monoeq/sparse.hpp"

namespace monoeq {

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto dash = tok.find('-', 1); // allow leading minus to fail as stoi
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoi(tok));
            } else {
                const int lo = std::stoi(tok.substr(0, dash));
                const int hi = std::stoi(tok.substr(dash + 1));
                if (hi < lo) throw std::invalid_argument("descending range");
                for (int v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse integer list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty integer list: '" + text + "'");
    return out;
}

std::vector<Method> parse_method_list(const std::string& text) {
    std::vector<Method> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(method_from_name(tok));
    if (out.empty()) throw std::invalid_argument("empty method list");
    return out;
}

// Solver parameter flags shared by every solving subcommand. Defaults are
// the per-method values from MethodConfig::defaults; a flag only overrides
// when the user supplies it, and every override is echoed into metadata.
struct ParamFlags {
    double tau = 0, rho = 0, step0 = 0, zeta = 0, zeta1 = 0, zeta2 = 0;
    double alpha_min = 0, alpha_max = 0, gamma0 = 0, gamma_cap = 0, gamma_growth = 0;
    double lazy_c = 0, epsilon = 0;
    int max_iter = 0, max_backtracks = 0;
    bool no_adaptive_gamma = false, no_lazy_lambda = false;

    CLI::Option *o_tau = nullptr, *o_rho = nullptr, *o_step0 = nullptr, *o_zeta = nullptr,
                *o_zeta1 = nullptr, *o_zeta2 = nullptr, *o_amin = nullptr, *o_amax = nullptr,
                *o_gamma0 = nullptr, *o_gcap = nullptr, *o_ggrow = nullptr, *o_lazyc = nullptr,
                *o_eps = nullptr, *o_maxit = nullptr, *o_maxbt = nullptr, *o_noag = nullptr,
                *o_noll = nullptr;

    void attach(CLI::App* cmd) {
        o_tau = cmd->add_option("--tau", tau,
                                "direction parameter tau (default 1.0 gmop family, 0.001 gcg)");
        o_rho = cmd->add_option("--rho", rho,
                                "backtracking ratio rho (default 0.8 gmop, 0.5 gcg)");
        o_step0 = cmd->add_option("--step0", step0,
                                  "initial line-search step (default 0.5 gmop, 0.6 gcg)");
        o_zeta = cmd->add_option("--zeta", zeta,
                                 "line-search coefficient zeta (default 1e-4 gmop, 0.1 gcg)");
        o_zeta1 = cmd->add_option("--zeta1", zeta1, "residual clamp lower bound (default 1.0)");
        o_zeta2 = cmd->add_option("--zeta2", zeta2, "residual clamp upper bound (default 1.0)");
        o_amin = cmd->add_option("--alpha-min", alpha_min,
                                 "spectral window lower bound (default 0.1 gmop, 0.55 gcg)");
        o_amax = cmd->add_option("--alpha-max", alpha_max,
                                 "spectral window upper bound (default 2.0 gmop, 4.9 gcg)");
        o_gamma0 = cmd->add_option("--gamma0", gamma0,
                                   "initial relaxation gamma (default 1.1 gmop, 1.8 gcg)");
        o_gcap = cmd->add_option("--gamma-cap", gamma_cap,
                                 "adaptive gamma cap (default 1.8 gmop, 1.7 gcg)");
        o_ggrow = cmd->add_option("--gamma-growth", gamma_growth,
                                  "adaptive gamma growth factor (default 1.1)");
        o_lazyc = cmd->add_option("--lazy-c", lazy_c,
                                  "lazy spectral update threshold (default 0.75 gmop, 0.6 gcg)");
        o_eps = cmd->add_option("--epsilon", epsilon, "residual tolerance (default 1e-11)");
        o_maxit = cmd->add_option("--max-iter", max_iter, "iteration cap (default 2000)");
        o_maxbt = cmd->add_option("--max-backtracks", max_backtracks,
                                  "line-search backtrack cap (default 60)");
        o_noag = cmd->add_flag("--no-adaptive-gamma", no_adaptive_gamma,
                               "disable the adaptive relaxation enhancement");
        o_noll = cmd->add_flag("--no-lazy-lambda", no_lazy_lambda,
                               "disable the lazy spectral update enhancement");
    }

    MethodConfig build(Method m, json& overrides) const {
        MethodConfig cfg = MethodConfig::defaults(m);
        const auto take = [&](const CLI::Option* opt, auto& dst, const auto& src,
                              const char* key) {
            if (opt && opt->count() > 0) {
                dst = src;
                overrides[key] = src;
            }
        };
        take(o_tau, cfg.tau, tau, "tau");
        take(o_rho, cfg.rho, rho, "rho");
        take(o_step0, cfg.step0, step0, "step0");
        take(o_zeta, cfg.zeta, zeta, "zeta");
        take(o_zeta1, cfg.zeta1, zeta1, "zeta1");
        take(o_zeta2, cfg.zeta2, zeta2, "zeta2");
        take(o_amin, cfg.alpha_min, alpha_min, "alpha_min");
        take(o_amax, cfg.alpha_max, alpha_max, "alpha_max");
        take(o_gamma0, cfg.gamma0, gamma0, "gamma0");
        take(o_gcap, cfg.gamma_cap, gamma_cap, "gamma_cap");
        take(o_ggrow, cfg.gamma_growth, gamma_growth, "gamma_growth");
        take(o_lazyc, cfg.lambda_lazy_c, lazy_c, "lambda_lazy_c");
        take(o_eps, cfg.epsilon, epsilon, "epsilon");
        take(o_maxit, cfg.max_iter, max_iter, "max_iter");
        take(o_maxbt, cfg.max_backtracks, max_backtracks, "max_backtracks");
        if (no_adaptive_gamma) {
            cfg.adaptive_gamma = false;
            overrides["adaptive_gamma"] = false;
        }
        if (no_lazy_lambda) {
            cfg.lazy_lambda = false;
            overrides["lazy_lambda"] = false;
        }
        cfg.validate();
        return cfg;
    }
};

void print_overrides(const json& overrides) {
    if (overrides.empty()) return;
    std::cout << "overrides       ";
    bool first = true;
    for (const auto& [key, value] : overrides.items()) {
        if (!first) std::cout << ", ";
        std::cout << key << "=" << value.dump();
        first = false;
    }
    std::cout << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string points_csv_path(const std::string& svg_path) {
    const std::string suffix = ".svg";
    if (svg_path.size() > suffix.size()
        && svg_path.compare(svg_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return svg_path.substr(0, svg_path.size() - suffix.size()) + ".points.csv";
    return svg_path + ".points.csv";
}

std::string basename_of(const std::string& path) {
    const auto slash = path.find_last_of("/\\");
    return (slash == std::string::npos) ? path : path.substr(slash + 1);
}

void print_summaries(const std::vector<MethodSummary>& summaries) {
    std::cout << std::left << std::setw(14) << "method" << std::right << std::setw(8) << "total"
              << std::setw(10) << "conv" << std::setw(8) << "rate" << std::setw(12) << "med-it"
              << std::setw(12) << "med-fe" << std::setw(12) << "med-cpu" << "\n";
    const auto show = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        std::ostringstream os;
        os << std::setprecision(5) << *v;
        return os.str();
    };
    for (const auto& s : summaries) {
        std::cout << std::left << std::setw(14) << s.method << std::right << std::setw(8)
                  << s.total << std::setw(10) << s.converged << std::setw(8)
                  << std::setprecision(3) << s.rate << std::setw(12) << show(s.median_it)
                  << std::setw(12) << show(s.median_fe) << std::setw(12) << show(s.median_cpu)
                  << "\n";
    }
}

int do_solve(const std::string& method_str, int problem_id, Eigen::Index n, int start_id,
             bool substitute16, const ParamFlags& params, bool as_json,
             const std::string& out_path) {
    const Method method = method_from_name(method_str);
    json overrides = json::object();
    const MethodConfig cfg = params.build(method, overrides);
    const MonotoneProblem problem = make_problem(problem_id, n, substitute16);
    const Vec x0 = problem.constraint.project(starting_point(n, start_id));
    const SolveReport rep = solve(problem, x0, cfg);

    json j;
    j["schema_version"] = 1;
    j["subcommand"] = "solve";
    j["method"] = method_name(method);
    j["problem_id"] = problem_id;
    j["problem_name"] = problem.name;
    j["n"] = n;
    j["start_id"] = start_id;
    j["status"] = status_name(rep.status);
    j["iterations"] = rep.iterations;
    j["function_evals"] = rep.function_evals;
    j["cpu_s"] = rep.wall_time_s;
    j["final_residual"] = rep.final_residual;
    j["overrides"] = overrides;

    if (!out_path.empty()) write_text_file(out_path, j.dump(2) + "\n");
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "method          " << method_name(method) << "\n"
                  << "problem         " << problem_id << " (" << problem.name << ")\n"
                  << "n               " << n << "\n"
                  << "start           " << start_id << "\n"
                  << "status          " << status_name(rep.status) << "\n"
                  << "iterations      " << rep.iterations << "\n"
                  << "function evals  " << rep.function_evals << "\n"
                  << "cpu seconds     " << std::setprecision(6) << rep.wall_time_s << "\n"
                  << "final residual  " << std::setprecision(6) << rep.final_residual << "\n";
        print_overrides(overrides);
    }
    return 0;
}

int do_bench(const std::string& methods_str, const std::string& problems_str,
             const std::string& dims_str, const std::string& starts_str, int workers,
             bool substitute16, const ParamFlags& params, const std::string& out_path,
             bool as_json) {
    const std::vector<Method> methods = parse_method_list(methods_str);
    const std::vector<int> problem_ids =
        problems_str.empty() ? benchmark_problem_ids() : parse_int_list(problems_str);
    std::vector<Eigen::Index> dims;
    for (int d : parse_int_list(dims_str)) dims.push_back(d);
    const std::vector<int> start_ids = parse_int_list(starts_str);

    json overrides = json::object();
    std::vector<MethodConfig> cfgs;
    for (Method m : methods) cfgs.push_back(params.build(m, overrides));

    // Validate the whole matrix up front so worker threads never throw.
    for (int pid : problem_ids)
        for (Eigen::Index n : dims) make_problem(pid, n, substitute16);
    for (int sid : start_ids) starting_point(1, sid);

    BenchOptions opts;
    opts.workers = workers;
    opts.allow_substitute_16 = substitute16;
    opts.config = [&methods, &cfgs](Method m) {
        for (std::size_t i = 0; i < methods.size(); ++i)
            if (methods[i] == m) return cfgs[i];
        return MethodConfig::defaults(m);
    };

    const auto records = run_matrix(methods, problem_ids, dims, start_ids, opts);
    write_records_csv(records, out_path);
    const auto summaries = aggregate(records);

    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["subcommand"] = "bench";
        j["runs"] = records.size();
        j["out"] = out_path;
        j["overrides"] = overrides;
        json arr = json::array();
        for (const auto& s : summaries) {
            json e;
            e["method"] = s.method;
            e["total"] = s.total;
            e["converged"] = s.converged;
            e["rate"] = s.rate;
            if (s.median_it) e["median_it"] = *s.median_it;
            if (s.median_fe) e["median_fe"] = *s.median_fe;
            if (s.median_cpu) e["median_cpu"] = *s.median_cpu;
            arr.push_back(e);
        }
        j["summary"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << records.size() << " runs written to " << out_path << "\n";
        print_summaries(summaries);
        print_overrides(overrides);
    }
    return 0;
}

int do_profile(const std::string& in_path, const std::string& metric_str,
               const std::string& out_path) {
    const Metric metric = metric_from_name(metric_str);
    const auto records = read_records_csv(in_path);
    const auto curves = dolan_more(records, metric);

    std::string label = "iterations";
    if (metric == Metric::Fe) label = "function evaluations";
    if (metric == Metric::Cpu) label = "cpu time";

    write_text_file(out_path, render_profiles_svg(curves, label));
    const std::string points_path = points_csv_path(out_path);
    write_profile_points_csv(curves, points_path);

    std::cout << "profile (" << label << ") over " << records.size() << " records\n";
    for (const auto& c : curves) {
        const double rho1 = c.points.empty() ? 0.0 : c.points.front().second;
        const double rho_end = c.points.empty() ? 0.0 : c.points.back().second;
        std::cout << "  " << std::left << std::setw(14) << c.method << " rho(1)="
                  << std::setprecision(4) << rho1 << "  rho(max)=" << rho_end << "\n";
    }
    std::cout << "svg " << out_path << "\npoints " << points_path << "\n";
    return 0;
}

int do_cs(Eigen::Index n, double k_ratio, double m_ratio, double sigma,
          const std::string& method_str, std::uint64_t seed, int trials, bool trials_given,
          bool sweep, int workers, const ParamFlags& params, const std::string& out_path,
          bool as_json) {
    const Method method = method_from_name(method_str);
    json overrides = json::object();
    const MethodConfig cfg = params.build(method, overrides);

    std::vector<CsRecord> records;
    if (sweep) {
        CsSweepOptions opts;
        opts.n = n;
        opts.trials = trials_given ? trials : 5;
        opts.seed = seed;
        opts.workers = workers;
        records = run_cs_sweep(cfg, opts);
    } else {
        const auto k = Eigen::Index(std::lround(k_ratio * double(n)));
        const auto m = Eigen::Index(std::lround(m_ratio * double(n)));
        records.resize(std::size_t(trials));
        parallel_for(records.size(), workers, [&](std::size_t i) {
            const CsInstance inst = generate_instance(n, k, m, sigma, seed + i);
            const RecoverResult res = recover(inst, cfg);
            CsRecord& r = records[i];
            r.method = method_name(method);
            r.n = n;
            r.k = k;
            r.m = m;
            r.sigma = sigma;
            r.trial = int(i) + 1;
            r.status = res.report.status;
            r.it = res.report.iterations;
            r.fe = res.report.function_evals;
            r.cpu_s = res.report.wall_time_s;
            r.mse = mse(inst.x_orig, res.x_rec);
        });
    }

    if (!out_path.empty()) write_cs_csv(records, out_path);

    int converged = 0;
    std::vector<double> mses;
    for (const auto& r : records) {
        if (is_converged(r.status)) ++converged;
        mses.push_back(r.mse);
    }
    std::sort(mses.begin(), mses.end());
    const double median_mse =
        mses.empty() ? 0.0
                     : (mses.size() % 2 ? mses[mses.size() / 2]
                                        : 0.5 * (mses[mses.size() / 2 - 1] + mses[mses.size() / 2]));

    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["subcommand"] = "cs";
        j["method"] = method_name(method);
        j["rng"] = Rng::kName;
        j["seed"] = seed;
        j["runs"] = records.size();
        j["converged"] = converged;
        j["median_mse"] = median_mse;
        j["overrides"] = overrides;
        if (!out_path.empty()) j["out"] = out_path;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << records.size() << " recovery runs, " << converged << " converged, median mse "
                  << std::setprecision(6) << median_mse << "\n";
        if (!out_path.empty()) std::cout << "records written to " << out_path << "\n";
        print_overrides(overrides);
    }
    return 0;
}

int do_logreg(const std::string& data_path, Eigen::Index n_features,
              const std::string& method_str, double mu, double box_c, int trials,
              std::uint64_t seed, const ParamFlags& params, const std::string& out_path,
              bool as_json) {
    const Method method = method_from_name(method_str);
    json overrides = json::object();
    const MethodConfig cfg = params.build(method, overrides);
    if (!(mu > 0.0)) throw std::invalid_argument("--mu must be positive");
    if (!(box_c > 0.0)) throw std::invalid_argument("--C must be positive");

    const Dataset raw = parse_libsvm_file(data_path, n_features);
    LogRegProblem problem;
    problem.data = std::make_shared<Dataset>(standardize(raw));
    problem.mu = mu;
    problem.box_c = box_c;
    const std::string dataset_name = basename_of(data_path);

    std::vector<LogRegRecord> records;
    for (int trial = 1; trial <= trials; ++trial) {
        const TrainResult res = train(problem, cfg, seed + std::uint64_t(trial) - 1);
        LogRegRecord r;
        r.dataset = dataset_name;
        r.method = method_name(method);
        r.trial = trial;
        r.status = res.report.status;
        r.it = res.report.iterations;
        r.fe = res.report.function_evals;
        r.cpu_s = res.report.wall_time_s;
        r.final_residual = res.report.final_residual;
        r.accuracy = res.accuracy;
        records.push_back(std::move(r));
    }
    if (!out_path.empty()) write_logreg_csv(records, out_path);

    if (as_json) {
        json j;
        j["schema_version"] = 1;
        j["subcommand"] = "logreg";
        j["dataset"] = dataset_name;
        j["samples"] = problem.data->samples;
        j["features"] = problem.data->features;
        j["method"] = method_name(method);
        j["rng"] = Rng::kName;
        j["seed"] = seed;
        j["overrides"] = overrides;
        json arr = json::array();
        for (const auto& r : records) {
            json e;
            e["trial"] = r.trial;
            e["status"] = status_name(r.status);
            e["it"] = r.it;
            e["fe"] = r.fe;
            e["cpu_s"] = r.cpu_s;
            e["final_residual"] = r.final_residual;
            e["accuracy"] = r.accuracy;
            arr.push_back(e);
        }
        j["trials"] = arr;
        if (!out_path.empty()) j["out"] = out_path;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "dataset " << dataset_name << ": " << problem.data->samples << " samples, "
                  << problem.data->features << " features\n";
        for (const auto& r : records)
            std::cout << "  trial " << r.trial << ": " << status_name(r.status) << " it=" << r.it
                      << " fe=" << r.fe << " residual=" << std::setprecision(4)
                      << r.final_residual << " accuracy=" << std::setprecision(4) << r.accuracy
                      << "\n";
        if (!out_path.empty()) std::cout << "records written to " << out_path << "\n";
        print_overrides(overrides);
    }
    return 0;
}

int do_verify_perry(int instances, std::uint64_t seed, bool as_json) {
    const auto checks = verify_perry_lemmas(instances, seed);
    if (as_json) {
        json arr = json::array();
        for (const auto& c : checks) {
            json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            e["failures"] = c.failures;
            e["total"] = c.total;
            e["worst"] = c.worst;
            e["note"] = c.note;
            arr.push_back(e);
        }
        json j;
        j["schema_version"] = 1;
        j["subcommand"] = "verify-perry";
        j["instances"] = instances;
        j["seed"] = seed;
        j["checks"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(34) << c.name
                      << " failures " << c.failures << "/" << c.total << "  worst "
                      << std::setprecision(4) << c.worst;
            if (!c.note.empty()) std::cout << "  (" << c.note << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

int do_list_problems() {
    std::cout << std::left << std::setw(4) << "id" << std::setw(22) << "name" << std::setw(14)
              << "constraint" << std::setw(10) << "monotone" << "formula\n";
    for (int id = 1; id <= 18; ++id) {
        const MonotoneProblem p = make_problem(id, 3, true);
        std::string constraint = p.constraint.describe();
        std::string monotone = p.monotone_verified ? "sampled" : "no";
        std::string name = p.name;
        if (id == 16) name += " (opt-in)";
        std::cout << std::left << std::setw(4) << id << std::setw(22) << name << std::setw(14)
                  << constraint << std::setw(10) << monotone << p.formula << "\n";
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Spectral conjugate-gradient projection solver for large-scale nonlinear "
                 "monotone equations over convex sets"};
    app.require_subcommand(0, 1);

    // --- solve ---
    auto* solve_cmd = app.add_subcommand("solve", "Run one method on one suite problem");
    std::string sv_method = "gmopcgm";
    int sv_problem = 1;
    Eigen::Index sv_n = 1000;
    int sv_start = 1;
    bool sv_sub16 = false, sv_json = false;
    std::string sv_out, sv_config;
    ParamFlags sv_params;
    solve_cmd->add_option("--method", sv_method,
                          "gmopcgm | gcgpm | gmop-fixed | gcg-fixed (default gmopcgm)");
    solve_cmd->add_option("--problem", sv_problem, "problem id 1-18")->required();
    solve_cmd->add_option("--n", sv_n, "dimension (default 1000)");
    solve_cmd->add_option("--start", sv_start, "start id 1-10 (default 1)");
    solve_cmd->add_flag("--substitute-16", sv_sub16,
                        "allow the documented stand-in for problem 16");
    solve_cmd->add_flag("--json", sv_json, "print the report as JSON");
    solve_cmd->add_option("--out", sv_out, "write the JSON report to this file");
    sv_params.attach(solve_cmd);
    solve_cmd->add_option("--config", sv_config, "read flag defaults from a key=value file");

    // --- bench ---
    auto* bench_cmd = app.add_subcommand("bench", "Run the method x problem x n x start matrix");
    std::string bn_methods = "gmopcgm,gcgpm";
    std::string bn_problems; // empty = the 17 default ids
    std::string bn_dims = "1000,10000";
    std::string bn_starts = "1-10";
    int bn_workers = 1;
    bool bn_sub16 = false, bn_json = false;
    std::string bn_out, bn_config;
    ParamFlags bn_params;
    bench_cmd->add_option("--methods", bn_methods,
                          "comma list of methods (default gmopcgm,gcgpm)");
    bench_cmd->add_option("--problems", bn_problems,
                          "problem ids, e.g. 1-15,17,18 (default: all except 16)");
    bench_cmd->add_option("--dims", bn_dims, "dimensions (default 1000,10000)");
    bench_cmd->add_option("--starts", bn_starts, "start ids (default 1-10)");
    bench_cmd->add_option("--workers", bn_workers, "worker threads (default 1)");
    bench_cmd->add_flag("--substitute-16", bn_sub16,
                        "allow the documented stand-in for problem 16");
    bench_cmd->add_option("--out", bn_out, "records CSV path")->required();
    bench_cmd->add_flag("--json", bn_json, "print the summary as JSON");
    bn_params.attach(bench_cmd);
    bench_cmd->add_option("--config", bn_config, "read flag defaults from a key=value file");

    // --- profile ---
    auto* prof_cmd = app.add_subcommand("profile", "Dolan-More performance profile from a CSV");
    std::string pf_in, pf_out, pf_metric = "it", pf_config;
    prof_cmd->add_option("--in", pf_in, "records CSV from bench")->required();
    prof_cmd->add_option("--metric", pf_metric, "it | fe | cpu (default it)");
    prof_cmd->add_option("--out", pf_out, "SVG output path (companion points CSV alongside)")
        ->required();
    prof_cmd->add_option("--config", pf_config, "read flag defaults from a key=value file");

    // --- cs ---
    auto* cs_cmd = app.add_subcommand("cs", "Compressed-sensing recovery experiments");
    Eigen::Index cs_n = 1024;
    double cs_kr = 0.1, cs_mr = 0.5, cs_sigma = 1e-4;
    std::string cs_method = "gcgpm", cs_out, cs_config;
    std::uint64_t cs_seed = 1;
    int cs_trials = 1, cs_workers = 1;
    bool cs_sweep = false, cs_json = false;
    ParamFlags cs_params;
    cs_cmd->add_option("--n", cs_n, "signal length (default 1024)");
    cs_cmd->add_option("--k-ratio", cs_kr, "sparsity k/n (default 0.1)");
    cs_cmd->add_option("--m-ratio", cs_mr, "measurements m/n (default 0.5)");
    cs_cmd->add_option("--sigma", cs_sigma, "noise standard deviation (default 1e-4)");
    cs_cmd->add_option("--method", cs_method, "solver method (default gcgpm)");
    cs_cmd->add_option("--seed", cs_seed, "base RNG seed (default 1)");
    auto* cs_trials_opt =
        cs_cmd->add_option("--trials", cs_trials, "trials per configuration (default 1; 5 when "
                                                  "--sweep)");
    cs_cmd->add_flag("--sweep", cs_sweep,
                     "run the sparsity {0.05,0.1,0.2,0.3} x measurement {0.25,0.5,0.75} x noise "
                     "{0,1e-3,1e-2,1e-1} sweep");
    cs_cmd->add_option("--workers", cs_workers, "worker threads (default 1)");
    cs_cmd->add_option("--out", cs_out, "records CSV path");
    cs_cmd->add_flag("--json", cs_json, "print the summary as JSON");
    cs_params.attach(cs_cmd);
    cs_cmd->add_option("--config", cs_config, "read flag defaults from a key=value file");

    // --- logreg ---
    auto* lr_cmd = app.add_subcommand(
        "logreg", "Box-constrained regularized logistic regression on a LIBSVM-format file "
                  "(datasets: https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/)");
    std::string lr_data, lr_method = "gcgpm", lr_out, lr_config;
    Eigen::Index lr_nfeat = 0;
    double lr_mu = 0.1, lr_c = 10.0;
    int lr_trials = 5;
    std::uint64_t lr_seed = 1;
    bool lr_json = false;
    ParamFlags lr_params;
    lr_cmd->add_option("--data", lr_data, "path to a LIBSVM-format dataset")->required();
    lr_cmd->add_option("--n-features", lr_nfeat,
                       "feature count override (default: max index in file)");
    lr_cmd->add_option("--method", lr_method, "solver method (default gcgpm)");
    lr_cmd->add_option("--mu", lr_mu, "l2 regularization weight (default 0.1)");
    lr_cmd->add_option("--C", lr_c, "box half-width, feasible set [-C, C]^n (default 10)");
    lr_cmd->add_option("--trials", lr_trials, "random starts (default 5)");
    lr_cmd->add_option("--seed", lr_seed, "base RNG seed (default 1)");
    lr_cmd->add_option("--out", lr_out, "records CSV path");
    lr_cmd->add_flag("--json", lr_json, "print the summary as JSON");
    lr_params.attach(lr_cmd);
    lr_cmd->add_option("--config", lr_config, "read flag defaults from a key=value file");

    // --- verify-perry ---
    auto* vp_cmd = app.add_subcommand("verify-perry",
                                      "Randomized checks of the scaling-matrix identities");
    int vp_instances = 200;
    std::uint64_t vp_seed = 1;
    bool vp_json = false;
    vp_cmd->add_option("--instances", vp_instances, "random instances (default 200)");
    vp_cmd->add_option("--seed", vp_seed, "RNG seed (default 1)");
    vp_cmd->add_flag("--json", vp_json, "print the checks as JSON");

    // --- list-problems ---
    auto* lp_cmd = app.add_subcommand("list-problems", "Print the benchmark problem table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        app.exit(e);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    // Command-line flags keep precedence: config values only fill options
    // that were not set on the command line.
    const auto load_config = [](CLI::App* cmd, const std::string& path) {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        cmd->parse_from_stream(in);
    };

    try {
        if (solve_cmd->parsed()) {
            load_config(solve_cmd, sv_config);
            return do_solve(sv_method, sv_problem, sv_n, sv_start, sv_sub16, sv_params, sv_json,
                            sv_out);
        }
        if (bench_cmd->parsed()) {
            load_config(bench_cmd, bn_config);
            return do_bench(bn_methods, bn_problems, bn_dims, bn_starts, bn_workers, bn_sub16,
                            bn_params, bn_out, bn_json);
        }
        if (prof_cmd->parsed()) {
            load_config(prof_cmd, pf_config);
            return do_profile(pf_in, pf_metric, pf_out);
        }
        if (cs_cmd->parsed()) {
            load_config(cs_cmd, cs_config);
            return do_cs(cs_n, cs_kr, cs_mr, cs_sigma, cs_method, cs_seed, cs_trials,
                         cs_trials_opt->count() > 0, cs_sweep, cs_workers, cs_params, cs_out,
                         cs_json);
        }
        if (lr_cmd->parsed()) {
            load_config(lr_cmd, lr_config);
            return do_logreg(lr_data, lr_nfeat, lr_method, lr_mu, lr_c, lr_trials, lr_seed,
                             lr_params, lr_out, lr_json);
        }
        if (vp_cmd->parsed()) return do_verify_perry(vp_instances, vp_seed, vp_json);
        if (lp_cmd->parsed()) return do_list_problems();
        std::cout << app.help();
        return 1;
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace monoeq
