#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monoeq/solver.hpp"

namespace monoeq {

struct RunRecord {
    std::string method;
    int problem_id = 0;
    Eigen::Index n = 0;
    int start_id = 0;
    Status status = Status::MaxIterations;
    int it = 0;
    long fe = 0;
    double cpu_s = 0.0;
    double final_residual = 0.0;
};

// Runs fn(i) for i in [0, count) on `workers` threads. workers <= 1 runs
// serially on the calling thread. fn must be safe to call concurrently.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct BenchOptions {
    int workers = 1;
    bool allow_substitute_16 = false;
    // Per-method configuration; defaults to MethodConfig::defaults.
    std::function<MethodConfig(Method)> config;
};

// One record per (method, problem, n, start), ordered by the position of
// each coordinate in the input lists regardless of worker count.
std::vector<RunRecord> run_matrix(const std::vector<Method>& methods,
                                  const std::vector<int>& problem_ids,
                                  const std::vector<Eigen::Index>& dims,
                                  const std::vector<int>& start_ids,
                                  const BenchOptions& opts = {});

// CSV header: method,problem_id,n,start_id,status,it,fe,cpu_s,final_residual
void write_records_csv(const std::vector<RunRecord>& records, const std::string& path);
std::vector<RunRecord> read_records_csv(const std::string& path);

enum class Metric { It, Fe, Cpu };
std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

struct ProfileCurve {
    std::string method;
    std::vector<std::pair<double, double>> points; // (tau, rho), nondecreasing
};

// Dolan-More performance profiles. Instances are keyed by
// (problem_id, n, start_id); failed runs contribute an infinite ratio but
// stay in the denominator. Wall times below 1 ms are floored before ratio
// computation. The tau grid is log spaced from 1 to the largest finite
// ratio, with every exact ratio inserted as a breakpoint.
std::vector<ProfileCurve> dolan_more(const std::vector<RunRecord>& records, Metric metric);

struct PairwiseCell {
    std::string method_a;
    std::string method_b;
    int wins = 0;
    int ties = 0;
    int losses = 0;
};

// Win/tie/loss by iteration count over instances where both methods
// converged; every ordered pair is reported, including a method against
// itself.
std::vector<PairwiseCell> pairwise_wtl(const std::vector<RunRecord>& records);

struct MethodSummary {
    std::string method;
    int total = 0;
    int converged = 0;
    double rate = 0.0;
    std::optional<double> median_it;
    std::optional<double> median_fe;
    std::optional<double> median_cpu;
};

// Medians are taken over converged records only; an even count averages the
// middle two. No converged records leaves the medians absent.
std::vector<MethodSummary> aggregate(const std::vector<RunRecord>& records);

// Self-contained SVG rendering of profile curves (axes, step curves,
// legend) plus a companion CSV with header method,tau,rho.
std::string render_profiles_svg(const std::vector<ProfileCurve>& curves,
                                const std::string& metric_label);
void write_profile_points_csv(const std::vector<ProfileCurve>& curves, const std::string& path);

} // namespace monoeq
