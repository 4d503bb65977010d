#include "monoeq/problems.hpp"

#include <cmath>
#include <string>

namespace monoeq {

namespace {

// Component i of a tridiagonal formula sees neighbours x_{i-1} and x_{i+1},
// with x_0 = x_{n+1} = 0. Eigen segments cover the interior; the two edge
// components are patched afterwards.
bool is_tridiagonal(int id) {
    return id == 4 || id == 5 || id == 6 || id == 7 || id == 14;
}

Vec index_weights(Eigen::Index n) {
    Vec t(n);
    for (Eigen::Index i = 0; i < n; ++i) t[i] = double(i + 1) / double(n);
    return t;
}

} // namespace

MonotoneProblem make_problem(int id, Eigen::Index n, bool allow_substitute_16) {
    if (id < 1 || id > 18) throw UnknownProblem("unknown problem id " + std::to_string(id));
    if (id == 16 && !allow_substitute_16)
        throw ExplicitlyUnspecified(
            "problem 16 has no published closed form; pass the substitute flag "
            "to use the documented stand-in");
    if (n < 1) throw std::invalid_argument("problem dimension must be positive");
    if (is_tridiagonal(id) && n < 3)
        throw std::invalid_argument("problem " + std::to_string(id) + " requires n >= 3");

    MonotoneProblem p;
    p.id = id;
    p.dimension = n;
    p.constraint = (id == 16) ? FeasibleSet::half_line(n, 1.0)
                              : FeasibleSet::nonnegative_orthant(n);

    switch (id) {
        case 1:
            p.name = "scaled-sine";
            p.formula = "G_i = 2 x_i - sin(x_i)";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = 2.0 * x - x.array().sin().matrix();
            };
            p.known_solution = Vec::Zero(n);
            p.lipschitz_bound = 3.0;
            break;
        case 2:
            p.name = "log-linear";
            p.formula = "G_i = log(x_i + 1) - x_i / n";
            p.evaluator = [n](const Vec& x, Vec& out) {
                out = ((x.array() + 1.0).log() - x.array() / double(n)).matrix();
            };
            p.known_solution = Vec::Zero(n);
            break;
        case 3:
            p.name = "exponential";
            p.formula = "G_i = exp(x_i) - 1";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = (x.array().exp() - 1.0).matrix();
            };
            p.known_solution = Vec::Zero(n);
            break;
        case 4:
            p.name = "tridiag-quadratic";
            p.formula = "G_i = 4 x_i + (x_{i+1} - 2 x_i) - x_{i-1}^2 / 3";
            p.evaluator = [n](const Vec& x, Vec& out) {
                out = 2.0 * x;
                out.head(n - 1) += x.tail(n - 1);
                out.tail(n - 1) -= x.head(n - 1).array().square().matrix() / 3.0;
            };
            break;
        case 5:
            p.name = "trig-exponential";
            p.formula = "G_i = x_i - exp(cos((i/n) (x_{i-1} + x_i + x_{i+1})))";
            p.evaluator = [t = index_weights(n), n](const Vec& x, Vec& out) {
                out = x;
                out.head(n - 1) += x.tail(n - 1);
                out.tail(n - 1) += x.head(n - 1);
                out = x - (out.array() * t.array()).cos().exp().matrix();
            };
            break;
        case 6:
            p.name = "tridiag-sine";
            p.formula = "G_i = -x_{i-1} + 2 x_i + sin(x_i) - 1";
            p.evaluator = [n](const Vec& x, Vec& out) {
                out = (2.0 * x.array() + x.array().sin() - 1.0).matrix();
                out.tail(n - 1) -= x.head(n - 1);
            };
            break;
        case 7:
            p.name = "cubic-tridiag";
            p.formula = "G_i = x_i (x_{i-1}^2 + 2 x_i^2 + x_{i+1}^2) - 1";
            p.evaluator = [n](const Vec& x, Vec& out) {
                out = 2.0 * x.array().square().matrix();
                out.head(n - 1) += x.tail(n - 1).array().square().matrix();
                out.tail(n - 1) += x.head(n - 1).array().square().matrix();
                out = (x.array() * out.array() - 1.0).matrix();
            };
            break;
        case 8:
            p.name = "shifted-square";
            p.formula = "G_i = (x_i - 1)^2 - 1.01";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = ((x.array() - 1.0).square() - 1.01).matrix();
            };
            p.monotone_verified = false;
            break;
        case 9:
            p.name = "weighted-exponential";
            p.formula = "G_i = (i/n) exp(x_i) - 1";
            p.evaluator = [t = index_weights(n)](const Vec& x, Vec& out) {
                out = (t.array() * x.array().exp() - 1.0).matrix();
            };
            break;
        case 10:
            p.name = "sine-abs";
            p.formula = "G_i = x_i - sin(|x_i - 1|)";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = x - (x.array() - 1.0).abs().sin().matrix();
            };
            break;
        case 11:
            p.name = "scaled-sine-abs";
            p.formula = "G_i = 2 x_i - sin(|x_i - 1|)";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = 2.0 * x - (x.array() - 1.0).abs().sin().matrix();
            };
            break;
        case 12:
            p.name = "double-sine-abs";
            p.formula = "G_i = x_i - 2 sin(|x_i - 1|)";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = x - 2.0 * (x.array() - 1.0).abs().sin().matrix();
            };
            break;
        case 13:
            p.name = "exp-trig";
            p.formula = "G_i = exp(2 x_i) + 3 sin(x_i) cos(x_i) - 1";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = ((2.0 * x.array()).exp() + 3.0 * x.array().sin() * x.array().cos() - 1.0)
                          .matrix();
            };
            p.known_solution = Vec::Zero(n);
            break;
        case 14:
            p.name = "tridiag-linear";
            p.formula = "G_i = x_{i-1} + 2.5 x_i + x_{i+1} - 1";
            p.evaluator = [n](const Vec& x, Vec& out) {
                out = (2.5 * x.array() - 1.0).matrix();
                out.head(n - 1) += x.tail(n - 1);
                out.tail(n - 1) += x.head(n - 1);
            };
            break;
        case 15:
            p.name = "sine-abs-origin";
            p.formula = "G_i = 2 x_i - sin(|x_i|)";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = 2.0 * x - x.array().abs().sin().matrix();
            };
            p.known_solution = Vec::Zero(n);
            break;
        case 16:
            p.name = "log-barrier-substitute";
            p.formula = "G_i = x_i + log(x_i) - 1 (substitute; feasible set [1,inf)^n)";
            p.evaluator = [](const Vec& x, Vec& out) {
                out = (x.array() + x.array().log() - 1.0).matrix();
            };
            p.known_solution = Vec::Ones(n);
            break;
        case 17:
            p.name = "quartic-coupled";
            p.formula = "G_i = 2e-5 (x_i - 1) + 4 x_i sum(x_j^2) - x_i";
            p.evaluator = [](const Vec& x, Vec& out) {
                const double s = x.squaredNorm();
                out = (2e-5 * (x.array() - 1.0) + (4.0 * s - 1.0) * x.array()).matrix();
            };
            break;
        case 18:
            p.name = "oscillatory-coupled";
            p.formula =
                "G_i = x_i cos(x_i - 1/n) (sin(x_i) - 1 - (1 - x_i)^2 - mean(x))";
            p.evaluator = [n](const Vec& x, Vec& out) {
                const double mean = x.sum() / double(n);
                out = (x.array() * (x.array() - 1.0 / double(n)).cos()
                       * (x.array().sin() - 1.0 - (1.0 - x.array()).square() - mean))
                          .matrix();
            };
            break;
        default:
            throw UnknownProblem("unknown problem id " + std::to_string(id));
    }
    return p;
}

const std::vector<int>& benchmark_problem_ids() {
    static const std::vector<int> ids = {1, 2,  3,  4,  5,  6,  7,  8,  9,
                                         10, 11, 12, 13, 14, 15, 17, 18};
    return ids;
}

std::vector<Vec> starting_points(Eigen::Index n) {
    std::vector<Vec> starts;
    starts.reserve(10);
    for (double c : {0.4, 0.5, 0.6, 0.8, 1.0, 1.1, 2.0, 5.0})
        starts.push_back(Vec::Constant(n, c));
    Vec harmonic(n), ramp(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        harmonic[i] = 1.0 / double(i + 1);
        ramp[i] = double(i + 1) / double(n);
    }
    starts.push_back(std::move(harmonic));
    starts.push_back(std::move(ramp));
    return starts;
}

Vec starting_point(Eigen::Index n, int start_id) {
    if (start_id < 1 || start_id > 10)
        throw std::invalid_argument("start_id must lie in 1..10");
    return starting_points(n)[size_t(start_id - 1)];
}

} // namespace monoeq
