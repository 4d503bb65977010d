#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monoeq/geometry.hpp"

namespace monoeq {

// Verification surface for the Perry-matrix eigenvalue analysis behind the
// GMOPCGM scaling. The production direction never materializes this matrix;
// it exists for tests and the verify-perry subcommand only.
//
//   Q = lambda I - (lambda/2)(y s' + s y')/(y's) + t (s s')/(y's)
//   a = |s|^2/(s'y),  b = |s||y|/(s'y)  (b >= 1 when s'y > 0)
//
// Eigenvalues: lambda with multiplicity n-2 plus a pair (eta+, eta-) with
//   eta+ + eta-  = lambda + a t
//   eta+ * eta-  = (lambda^2/4)(1 - b^2) + lambda a t
struct PerryMatrix {
    Eigen::MatrixXd Q;
    double a = 0.0;
    double b = 0.0;
    double lambda = 0.0;
    double t = 0.0;
};

PerryMatrix perry_matrix_build(const Vec& s, const Vec& y, double lambda, double t);

// The plane-restricted eigenvalue pair from the quadratic characteristic
// coefficients (trace/determinant identities above), no eigensolve.
struct EigenPair {
    double plus;
    double minus;
};
EigenPair perry_eigen_pair(double a, double b, double lambda, double t);

// Spectral condition number |eta|_max / |eta|_min of the full matrix,
// computed from the closed-form pair plus the lambda eigenvalue when n > 2.
double perry_cond(double a, double b, double lambda, double t, Eigen::Index n);

struct PerryCheck {
    std::string name;
    bool pass = false;
    int failures = 0;
    int total = 0;
    double worst = 0.0;
    std::string note;
};

// Randomized verification of the trace / squared-trace / eigen-sum /
// eigen-product identities, the grid-minimum location of the condition
// number against t = lambda/a, and (for reference) the gap-minimum and the
// analytic condition-number minimizer t = lambda (b^2+1)/(2a).
std::vector<PerryCheck> verify_perry_lemmas(int instances, std::uint64_t seed);

} // namespace monoeq
