#pragma once

#include <functional>
#include <string>
#include <vector>

#include "monoeq/problem.hpp"

namespace monoeq {

enum class Method { GMOPCGM, GCGPM, FixedLambdaGMOP, FixedLambdaGCG };

std::string method_name(Method m);
Method method_from_name(const std::string& name);
bool is_gmop_family(Method m);

enum class Status {
    Converged,
    ConvergedAtTrialPoint,
    MaxIterations,
    LineSearchFailure,
    DirectionTooSmall,
    NonFinite,
};

std::string status_name(Status s);
Status status_from_name(const std::string& name);
bool is_converged(Status s);

// All algorithm parameters plus the enhancement knobs. Defaults follow the
// per-method benchmark values; see MethodConfig::defaults.
struct MethodConfig {
    Method method = Method::GMOPCGM;

    double epsilon = 1e-11;
    double rho = 0.8;        // backtracking factor, in (0,1)
    double step0 = 0.5;      // initial trial step (beta for GMOPCGM, eta for GCGPM)
    double zeta = 1e-4;      // line-search coefficient
    double zeta1 = 1.0;
    double zeta2 = 1.0;
    double tau = 1.0;
    double alpha_min = 0.1;  // spectral clamp bounds
    double alpha_max = 2.0;
    double gamma0 = 1.1;     // projection relaxation, in (0,2)
    double gamma_cap = 1.8;
    double gamma_growth = 1.1;
    double lambda_lazy_c = 0.75;
    int max_iter = 2000;
    int max_backtracks = 60;
    bool adaptive_gamma = true;
    bool lazy_lambda = true;

    static MethodConfig defaults(Method m);

    // Throws std::invalid_argument with a specific message on any violated
    // range, including alpha_min > (1+tau)/2 for the GCGPM family.
    void validate() const;
};

struct SolveReport {
    Status status = Status::MaxIterations;
    int iterations = 0;
    long long function_evals = 0;
    double wall_time_s = 0.0;
    double final_residual = 0.0;
    Vec solution;
    std::vector<double> residual_history; // only filled when requested
};

// Snapshot of one iteration, emitted after the direction, line search and
// projection step have run. lambda and gamma are the values used this
// iteration. x_next_norm is NaN when the run exited at the trial point.
struct IterationInfo {
    int k = 0;
    double g_norm = 0.0;
    double p_norm = 0.0;
    double g_dot_p = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
    double alpha = 0.0;
    double x_norm = 0.0;
    double x_next_norm = 0.0;
    int ls_trials = 0;
    bool trial_exit = false;
};

using IterationObserver = std::function<void(const IterationInfo&)>;

struct SolveOptions {
    bool record_residuals = false;
    IterationObserver observer;
};

struct LineSearchResult {
    bool ok = false;
    double alpha = 0.0;
    Vec z;
    Vec g_z;
    int trials = 0; // G evaluations consumed
};

// Backtracking search for the largest alpha = rho^i * step0 with
//   G(x + alpha p)' p <= -zeta alpha |p|^2 clamp([zeta1,zeta2], |G(x+alpha p)|).
// Non-finite trial values are rejected and backtracking continues.
LineSearchResult line_search(const MonotoneProblem& problem, const Vec& x, const Vec& p,
                             const MethodConfig& cfg);

// mu = g_z'(x - z)/|g_z|^2, then project(x - gamma mu g_z) onto the set.
Vec hyperplane_step(const Vec& x, const Vec& z, const Vec& g_z, double gamma,
                    const FeasibleSet& set);

// Grow gamma by gamma_growth (capped at gamma_cap) on residual improvement,
// hold otherwise.
double adaptive_gamma(double gamma, double g_norm_new, double g_norm_old,
                      const MethodConfig& cfg);

// Adopt the candidate spectral value only when |G_{k+1}| >= c |G_k|.
double lazy_lambda(double current_lambda, double candidate_lambda, double g_norm_new,
                   double g_norm_old, double c);

SolveReport solve(const MonotoneProblem& problem, const Vec& x0, const MethodConfig& cfg,
                  const SolveOptions& opts = {});

} // namespace monoeq
