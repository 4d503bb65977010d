#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "monoeq/problem.hpp"
#include "monoeq/solver.hpp"

namespace monoeq {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Binary classification data. Rows hold the sparse entries as parsed
// (0-based feature indices); standardize() replaces them with the dense
// matrix, which destroys sparsity by construction.
struct Dataset {
    Eigen::Index samples = 0;
    Eigen::Index features = 0;
    std::vector<std::vector<std::pair<Eigen::Index, double>>> rows;
    std::vector<double> labels; // exactly +1 or -1
    bool standardized = false;
    Eigen::MatrixXd dense; // samples x features once standardized

    double margin(Eigen::Index i, const Vec& x) const;
};

// Parses LIBSVM text: each nonempty line is `label idx:val idx:val ...`
// with strictly increasing 1-based indices. Labels +1/1 map to +1 and
// -1/0 map to -1. n_features = 0 infers the count from the largest index.
// Malformed input raises ParseError naming the line.
Dataset parse_libsvm(const std::string& text, Eigen::Index n_features = 0);
Dataset parse_libsvm_file(const std::string& path, Eigen::Index n_features = 0);

// Per-feature zero mean, unit population variance; features whose std is
// below 1e-12 become identically zero. Requires at least two samples.
Dataset standardize(const Dataset& data);

struct LogRegProblem {
    std::shared_ptr<const Dataset> data;
    double mu = 0.1;
    double box_c = 10.0;
};

// G(x) = -(1/N) sum_i b_i a_i / (1 + exp(b_i a_i' x)) + mu x, with the
// exponential branched on the margin sign so it never overflows.
Vec logistic_gradient(const LogRegProblem& problem, const Vec& x);

// (1/N) sum_i log(1 + exp(-b_i a_i' x)) + (mu/2) |x|^2, stable for large
// margins of either sign.
double logistic_loss(const LogRegProblem& problem, const Vec& x);

// Monotone-equation view: the gradient over Box(-C, C).
MonotoneProblem as_problem(const LogRegProblem& problem);

// Fraction of samples with sign(a_i' x) = b_i; sign(0) counts as +1.
double accuracy(const Dataset& data, const Vec& x);

struct TrainResult {
    Vec x;
    SolveReport report;
    double accuracy = 0.0;
};

// x0 = 4 (xi - 0.5 * ones) with xi uniform on [0,1]^n from the seed; the
// solve runs with epsilon = 1e-11 and at least 5000 iterations allowed.
TrainResult train(const LogRegProblem& problem, MethodConfig cfg, std::uint64_t seed);

struct LogRegRecord {
    std::string dataset;
    std::string method;
    int trial = 0;
    Status status = Status::MaxIterations;
    int it = 0;
    long fe = 0;
    double cpu_s = 0.0;
    double final_residual = 0.0;
    double accuracy = 0.0;
};

// CSV header: dataset,method,trial,status,it,fe,cpu_s,final_residual,accuracy
void write_logreg_csv(const std::vector<LogRegRecord>& records, const std::string& path);

} // namespace monoeq
