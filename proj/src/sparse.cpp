#include "monoeq/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "monoeq/bench.hpp"
#include "monoeq/rng.hpp"

namespace monoeq {

CsInstance generate_instance(Eigen::Index n, Eigen::Index k, Eigen::Index m, double sigma,
                             std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_instance: n must be positive");
    if (k < 0 || k > n) throw std::invalid_argument("generate_instance: need 0 <= k <= n");
    if (m < 1 || m > n) throw std::invalid_argument("generate_instance: need 1 <= m <= n");
    if (sigma < 0.0) throw std::invalid_argument("generate_instance: sigma must be nonnegative");

    CsInstance inst;
    inst.n = n;
    inst.k = k;
    inst.m = m;
    inst.sigma = sigma;
    inst.seed = seed;

    Rng rng(seed);
    const double value_std = std::sqrt(1e-3);

    // Support: partial Fisher-Yates over 0..n-1 picks k distinct positions.
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Eigen::Index(0));
    for (Eigen::Index i = 0; i < k; ++i)
        std::swap(idx[std::size_t(i)],
                  idx[std::size_t(rng.uniform_int(int(i), int(n - 1)))]);

    inst.x_orig = Vec::Zero(n);
    for (Eigen::Index i = 0; i < k; ++i)
        inst.x_orig[idx[std::size_t(i)]] = value_std * rng.normal();

    Eigen::MatrixXd raw(m, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i) raw(i, j) = value_std * rng.normal();

    Vec noise = Vec::Zero(m);
    if (sigma > 0.0)
        for (Eigen::Index i = 0; i < m; ++i) noise[i] = sigma * rng.normal();

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw.transpose());
    Eigen::MatrixXd thin_q =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    inst.A = thin_q.transpose();

    inst.b = inst.A * inst.x_orig + noise;
    inst.tau_reg = 0.01 * (inst.A.transpose() * inst.b).lpNorm<Eigen::Infinity>();
    return inst;
}

MonotoneProblem lcp_map(const CsInstance& instance) {
    const Eigen::Index n = instance.n;
    const Eigen::Index m = instance.m;

    Vec c(2 * n);
    const Vec atb = instance.A.transpose() * instance.b;
    c.head(n) = (instance.tau_reg - atb.array()).matrix();
    c.tail(n) = (instance.tau_reg + atb.array()).matrix();

    struct Scratch {
        Vec diff, ax, atax;
    };
    auto scratch = std::make_shared<Scratch>();
    scratch->diff.resize(n);
    scratch->ax.resize(m);
    scratch->atax.resize(n);

    MonotoneProblem p;
    p.id = 0;
    p.name = "cs-lcp";
    p.formula = "G(z) = min{z, Qz + c}, Q applied as A^T A (z1 - z2)";
    p.dimension = 2 * n;
    p.constraint = FeasibleSet::nonnegative_orthant(2 * n);
    p.evaluator = [A = instance.A, c = std::move(c), scratch, n](const Vec& z, Vec& out) {
        scratch->diff = z.head(n) - z.tail(n);
        scratch->ax.noalias() = A * scratch->diff;
        scratch->atax.noalias() = A.transpose() * scratch->ax;
        out.head(n) = scratch->atax + c.head(n);
        out.tail(n) = c.tail(n) - scratch->atax;
        out = out.cwiseMin(z);
    };
    return p;
}

Vec lcp_start(const CsInstance& instance) {
    const Vec atb = instance.A.transpose() * instance.b;
    Vec z0(2 * instance.n);
    z0.head(instance.n) = atb.cwiseMax(0.0);
    z0.tail(instance.n) = (-atb).cwiseMax(0.0);
    return z0;
}

RecoverResult recover(const CsInstance& instance, MethodConfig cfg) {
    cfg.epsilon = 1e-5;
    cfg.max_iter = std::max(cfg.max_iter, 5000);
    const MonotoneProblem problem = lcp_map(instance);
    RecoverResult res;
    res.report = solve(problem, lcp_start(instance), cfg);
    res.x_rec = res.report.solution.head(instance.n) - res.report.solution.tail(instance.n);
    return res;
}

double mse(const Vec& x_orig, const Vec& x_rec) {
    if (x_orig.size() != x_rec.size())
        throw std::invalid_argument("mse: length mismatch");
    return (x_orig - x_rec).norm() / double(x_orig.size());
}

std::vector<CsRecord> run_cs_sweep(const MethodConfig& cfg, const CsSweepOptions& opts) {
    struct Task {
        Eigen::Index k, m;
        double sigma;
        int trial;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::uint64_t task_index = 0;
    for (double kr : opts.sparsity_ratios)
        for (double mr : opts.measurement_ratios)
            for (double sigma : opts.sigmas)
                for (int trial = 1; trial <= opts.trials; ++trial) {
                    Task t;
                    t.k = Eigen::Index(std::lround(kr * double(opts.n)));
                    t.m = Eigen::Index(std::lround(mr * double(opts.n)));
                    t.sigma = sigma;
                    t.trial = trial;
                    t.seed = opts.seed + task_index++;
                    tasks.push_back(t);
                }

    std::vector<CsRecord> records(tasks.size());
    parallel_for(tasks.size(), opts.workers, [&](std::size_t i) {
        const Task& t = tasks[i];
        const CsInstance inst = generate_instance(opts.n, t.k, t.m, t.sigma, t.seed);
        const RecoverResult res = recover(inst, cfg);
        CsRecord& r = records[i];
        r.method = method_name(cfg.method);
        r.n = opts.n;
        r.k = t.k;
        r.m = t.m;
        r.sigma = t.sigma;
        r.trial = t.trial;
        r.status = res.report.status;
        r.it = res.report.iterations;
        r.fe = res.report.function_evals;
        r.cpu_s = res.report.wall_time_s;
        r.mse = mse(inst.x_orig, res.x_rec);
    });
    return records;
}

void write_cs_csv(const std::vector<CsRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "method,n,k,m,sigma,trial,status,it,fe,cpu_s,mse\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.method << ',' << r.n << ',' << r.k << ',' << r.m << ',' << r.sigma << ','
            << r.trial << ',' << status_name(r.status) << ',' << r.it << ',' << r.fe << ','
            << r.cpu_s << ',' << r.mse << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace monoeq
