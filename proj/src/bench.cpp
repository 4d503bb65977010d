#include "monoeq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "monoeq/problems.hpp"

namespace monoeq {

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(std::size_t(workers), count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<RunRecord> run_matrix(const std::vector<Method>& methods,
                                  const std::vector<int>& problem_ids,
                                  const std::vector<Eigen::Index>& dims,
                                  const std::vector<int>& start_ids,
                                  const BenchOptions& opts) {
    const std::size_t np = problem_ids.size();
    const std::size_t nd = dims.size();
    const std::size_t ns = start_ids.size();
    const std::size_t total = methods.size() * np * nd * ns;
    std::vector<RunRecord> records(total);

    const auto config_for = [&](Method m) {
        return opts.config ? opts.config(m) : MethodConfig::defaults(m);
    };

    parallel_for(total, opts.workers, [&](std::size_t idx) {
        std::size_t rest = idx;
        const std::size_t si = rest % ns; rest /= ns;
        const std::size_t di = rest % nd; rest /= nd;
        const std::size_t pi = rest % np; rest /= np;
        const Method method = methods[rest];

        const int pid = problem_ids[pi];
        const Eigen::Index n = dims[di];
        const int start_id = start_ids[si];

        const MonotoneProblem problem = make_problem(pid, n, opts.allow_substitute_16);
        const Vec x0 = problem.constraint.project(starting_point(n, start_id));
        const SolveReport rep = solve(problem, x0, config_for(method));

        RunRecord& r = records[idx];
        r.method = method_name(method);
        r.problem_id = pid;
        r.n = n;
        r.start_id = start_id;
        r.status = rep.status;
        r.it = rep.iterations;
        r.fe = rep.function_evals;
        r.cpu_s = rep.wall_time_s;
        r.final_residual = rep.final_residual;
    });
    return records;
}

void write_records_csv(const std::vector<RunRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "method,problem_id,n,start_id,status,it,fe,cpu_s,final_residual\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.method << ',' << r.problem_id << ',' << r.n << ',' << r.start_id << ','
            << status_name(r.status) << ',' << r.it << ',' << r.fe << ',' << r.cpu_s << ','
            << r.final_residual << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) fields.push_back(cur);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

std::vector<RunRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty records file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "method,problem_id,n,start_id,status,it,fe,cpu_s,final_residual")
        throw std::runtime_error("unexpected header in " + path + ": " + line);
    std::vector<RunRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9)
            throw std::runtime_error(path + ":" + std::to_string(lineno)
                                     + ": expected 9 fields, got " + std::to_string(f.size()));
        RunRecord r;
        try {
            r.method = f[0];
            r.problem_id = std::stoi(f[1]);
            r.n = Eigen::Index(std::stoll(f[2]));
            r.start_id = std::stoi(f[3]);
            r.status = status_from_name(f[4]);
            r.it = std::stoi(f[5]);
            r.fe = std::stol(f[6]);
            r.cpu_s = std::stod(f[7]);
            r.final_residual = std::stod(f[8]);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::It: return "it";
        case Metric::Fe: return "fe";
        case Metric::Cpu: return "cpu";
    }
    return "?";
}

Metric metric_from_name(const std::string& name) {
    if (name == "it") return Metric::It;
    if (name == "fe") return Metric::Fe;
    if (name == "cpu") return Metric::Cpu;
    throw std::invalid_argument("unknown metric: " + name + " (expected it, fe, or cpu)");
}

namespace {

using InstanceKey = std::tuple<int, Eigen::Index, int>;

double metric_value(const RunRecord& r, Metric metric) {
    switch (metric) {
        case Metric::It: return double(r.it);
        case Metric::Fe: return double(r.fe);
        case Metric::Cpu: return std::max(r.cpu_s, 1e-3);
    }
    return 0.0;
}

std::vector<std::string> method_order(const std::vector<RunRecord>& records) {
    std::vector<std::string> methods;
    for (const auto& r : records)
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
    return methods;
}

} // namespace

std::vector<ProfileCurve> dolan_more(const std::vector<RunRecord>& records, Metric metric) {
    if (records.empty()) throw std::invalid_argument("dolan_more: no records");
    const auto methods = method_order(records);
    const std::size_t nm = methods.size();
    const auto method_index = [&](const std::string& name) {
        return std::size_t(std::find(methods.begin(), methods.end(), name) - methods.begin());
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::map<InstanceKey, std::vector<double>> table;
    for (const auto& r : records) {
        auto& row = table[{r.problem_id, r.n, r.start_id}];
        if (row.empty()) row.assign(nm, inf);
        row[method_index(r.method)] =
            is_converged(r.status) ? metric_value(r, metric) : inf;
    }

    std::vector<std::vector<double>> ratios(nm);
    std::vector<double> breakpoints;
    for (const auto& [key, row] : table) {
        const double best = *std::min_element(row.begin(), row.end());
        for (std::size_t s = 0; s < nm; ++s) {
            double r;
            if (!std::isfinite(row[s])) r = inf;
            else if (best > 0.0) r = row[s] / best;
            else r = (row[s] == 0.0) ? 1.0 : inf;
            ratios[s].push_back(r);
            if (std::isfinite(r)) breakpoints.push_back(r);
        }
    }
    const std::size_t n_inst = table.size();

    double tau_max = 1.0;
    for (double b : breakpoints) tau_max = std::max(tau_max, b);

    std::vector<double> grid;
    const int kLogPoints = 257;
    if (tau_max > 1.0) {
        const double lmax = std::log(tau_max);
        for (int i = 0; i < kLogPoints; ++i)
            grid.push_back(std::exp(lmax * double(i) / double(kLogPoints - 1)));
    } else {
        grid.push_back(1.0);
    }
    grid.insert(grid.end(), breakpoints.begin(), breakpoints.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty() || grid.front() > 1.0) grid.insert(grid.begin(), 1.0);

    std::vector<ProfileCurve> curves(nm);
    for (std::size_t s = 0; s < nm; ++s) {
        curves[s].method = methods[s];
        std::sort(ratios[s].begin(), ratios[s].end());
        curves[s].points.reserve(grid.size());
        for (double tau : grid) {
            const auto solved = std::upper_bound(ratios[s].begin(), ratios[s].end(), tau)
                                - ratios[s].begin();
            curves[s].points.emplace_back(tau, double(solved) / double(n_inst));
        }
    }
    return curves;
}

std::vector<PairwiseCell> pairwise_wtl(const std::vector<RunRecord>& records) {
    const auto methods = method_order(records);
    const std::size_t nm = methods.size();
    const auto method_index = [&](const std::string& name) {
        return std::size_t(std::find(methods.begin(), methods.end(), name) - methods.begin());
    };

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::map<InstanceKey, std::vector<double>> table;
    for (const auto& r : records) {
        auto& row = table[{r.problem_id, r.n, r.start_id}];
        if (row.empty()) row.assign(nm, nan);
        if (is_converged(r.status)) row[method_index(r.method)] = double(r.it);
    }

    std::vector<PairwiseCell> cells;
    cells.reserve(nm * nm);
    for (std::size_t a = 0; a < nm; ++a) {
        for (std::size_t b = 0; b < nm; ++b) {
            PairwiseCell cell;
            cell.method_a = methods[a];
            cell.method_b = methods[b];
            for (const auto& [key, row] : table) {
                const double va = row[a];
                const double vb = row[b];
                if (std::isnan(va) || std::isnan(vb)) continue;
                if (va < vb) cell.wins++;
                else if (va == vb) cell.ties++;
                else cell.losses++;
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

namespace {

std::optional<double> median_of(std::vector<double> v) {
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::vector<MethodSummary> aggregate(const std::vector<RunRecord>& records) {
    const auto methods = method_order(records);
    std::vector<MethodSummary> out;
    out.reserve(methods.size());
    for (const auto& name : methods) {
        MethodSummary s;
        s.method = name;
        std::vector<double> its, fes, cpus;
        for (const auto& r : records) {
            if (r.method != name) continue;
            s.total++;
            if (is_converged(r.status)) {
                s.converged++;
                its.push_back(double(r.it));
                fes.push_back(double(r.fe));
                cpus.push_back(r.cpu_s);
            }
        }
        s.rate = (s.total > 0) ? double(s.converged) / double(s.total) : 0.0;
        s.median_it = median_of(std::move(its));
        s.median_fe = median_of(std::move(fes));
        s.median_cpu = median_of(std::move(cpus));
        out.push_back(std::move(s));
    }
    return out;
}

void write_profile_points_csv(const std::vector<ProfileCurve>& curves, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "method,tau,rho\n";
    out << std::setprecision(17);
    for (const auto& c : curves)
        for (const auto& [tau, rho] : c.points)
            out << c.method << ',' << tau << ',' << rho << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace monoeq
