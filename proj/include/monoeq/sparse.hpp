#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monoeq/problem.hpp"
#include "monoeq/solver.hpp"

namespace monoeq {

// Compressed-sensing instance: recover a k-sparse signal x_orig of length n
// from m noisy measurements b = A x_orig + nu, where A has orthonormal rows.
struct CsInstance {
    Eigen::Index n = 0;
    Eigen::Index k = 0;
    Eigen::Index m = 0;
    double sigma = 0.0;
    Eigen::MatrixXd A; // m x n, A A^T = I_m
    Vec b;
    Vec x_orig;
    double tau_reg = 0.0; // 0.01 * |A^T b|_inf
    std::uint64_t seed = 0;
};

// Deterministic given seed. Signal values and raw A entries are drawn from
// N(0, 1e-3) (1e-3 as the variance); rows of A are then orthonormalized via
// a QR factorization. Noise is N(0, sigma^2) per measurement.
CsInstance generate_instance(Eigen::Index n, Eigen::Index k, Eigen::Index m, double sigma,
                             std::uint64_t seed);

// The monotone reformulation G(z) = min{z, Qz + c} over the nonnegative
// orthant of R^{2n}, with Qz applied implicitly as A^T(A(z1 - z2)) in
// O(mn); Q is never materialized. The returned problem owns mutable
// scratch buffers, so a single problem object must not be evaluated from
// two threads at once; build one per worker.
MonotoneProblem lcp_map(const CsInstance& instance);

// z0 = (max{A^T b, 0}; max{-A^T b, 0}).
Vec lcp_start(const CsInstance& instance);

struct RecoverResult {
    Vec x_rec; // z1 - z2
    SolveReport report;
};

// Solves the reformulation with epsilon = 1e-5 and at least 5000 iterations
// allowed; other parameters are taken from cfg unchanged.
RecoverResult recover(const CsInstance& instance, MethodConfig cfg);

// |x_orig - x_rec| / n (norm over n, not squared).
double mse(const Vec& x_orig, const Vec& x_rec);

struct CsRecord {
    std::string method;
    Eigen::Index n = 0;
    Eigen::Index k = 0;
    Eigen::Index m = 0;
    double sigma = 0.0;
    int trial = 0;
    Status status = Status::MaxIterations;
    int it = 0;
    long fe = 0;
    double cpu_s = 0.0;
    double mse = 0.0;
};

struct CsSweepOptions {
    Eigen::Index n = 1024;
    std::vector<double> sparsity_ratios = {0.05, 0.10, 0.20, 0.30};
    std::vector<double> measurement_ratios = {0.25, 0.50, 0.75};
    std::vector<double> sigmas = {0.0, 1e-3, 1e-2, 1e-1};
    int trials = 5;
    std::uint64_t seed = 1;
    int workers = 1;
};

// Full sparsity x measurement x noise sweep; instance seeds derive from
// opts.seed plus the task index, so results are reproducible and worker
// count only affects wall time.
std::vector<CsRecord> run_cs_sweep(const MethodConfig& cfg, const CsSweepOptions& opts);

// CSV header: method,n,k,m,sigma,trial,status,it,fe,cpu_s,mse
void write_cs_csv(const std::vector<CsRecord>& records, const std::string& path);

} // namespace monoeq
