#include "monoeq/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monoeq/directions.hpp"

namespace monoeq {

std::string method_name(Method m) {
    switch (m) {
        case Method::GMOPCGM: return "gmopcgm";
        case Method::GCGPM: return "gcgpm";
        case Method::FixedLambdaGMOP: return "gmop-fixed";
        case Method::FixedLambdaGCG: return "gcg-fixed";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "gmopcgm") return Method::GMOPCGM;
    if (name == "gcgpm") return Method::GCGPM;
    if (name == "gmop-fixed") return Method::FixedLambdaGMOP;
    if (name == "gcg-fixed") return Method::FixedLambdaGCG;
    throw std::invalid_argument("unknown method: " + name);
}

bool is_gmop_family(Method m) {
    return m == Method::GMOPCGM || m == Method::FixedLambdaGMOP;
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Converged: return "converged";
        case Status::ConvergedAtTrialPoint: return "converged-at-trial";
        case Status::MaxIterations: return "max-iterations";
        case Status::LineSearchFailure: return "line-search-failure";
        case Status::DirectionTooSmall: return "direction-too-small";
        case Status::NonFinite: return "non-finite";
    }
    return "?";
}

Status status_from_name(const std::string& name) {
    if (name == "converged") return Status::Converged;
    if (name == "converged-at-trial") return Status::ConvergedAtTrialPoint;
    if (name == "max-iterations") return Status::MaxIterations;
    if (name == "line-search-failure") return Status::LineSearchFailure;
    if (name == "direction-too-small") return Status::DirectionTooSmall;
    if (name == "non-finite") return Status::NonFinite;
    throw std::invalid_argument("unknown status: " + name);
}

bool is_converged(Status s) {
    return s == Status::Converged || s == Status::ConvergedAtTrialPoint;
}

MethodConfig MethodConfig::defaults(Method m) {
    MethodConfig cfg;
    cfg.method = m;
    if (is_gmop_family(m)) {
        cfg.tau = 1.0;
        cfg.rho = 0.8;
        cfg.step0 = 0.5;
        cfg.zeta = 1e-4;
        cfg.alpha_min = 0.1;
        cfg.alpha_max = 2.0;
        cfg.gamma0 = 1.1;
        cfg.gamma_cap = 1.8;
        cfg.lambda_lazy_c = 0.75;
    } else {
        cfg.tau = 0.001;
        cfg.rho = 0.5;
        cfg.step0 = 0.6;
        cfg.zeta = 0.1;
        cfg.alpha_min = 0.55;
        cfg.alpha_max = 4.9;
        cfg.gamma0 = 1.8;
        cfg.gamma_cap = 1.7;
        cfg.lambda_lazy_c = 0.6;
    }
    return cfg;
}

void MethodConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
    if (!(step0 > 0.0)) throw std::invalid_argument("step0 must be positive");
    if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
    if (!(zeta1 > 0.0 && zeta1 <= zeta2))
        throw std::invalid_argument("zeta1, zeta2 must satisfy 0 < zeta1 <= zeta2");
    if (!(alpha_min > 0.0 && alpha_min <= alpha_max))
        throw std::invalid_argument("alpha bounds must satisfy 0 < alpha_min <= alpha_max");
    if (is_gmop_family(method)) {
        if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    } else {
        if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
        if (!(alpha_min > (1.0 + tau) / 2.0))
            throw std::invalid_argument(
                "the GCGPM family requires alpha_min > (1+tau)/2; got alpha_min = "
                + std::to_string(alpha_min) + ", (1+tau)/2 = "
                + std::to_string((1.0 + tau) / 2.0));
        if (!(tau <= 1.0))
            throw std::invalid_argument("tau must lie in [0,1] for the GCGPM family");
    }
    if (!(gamma0 > 0.0 && gamma0 < 2.0)) throw std::invalid_argument("gamma0 must lie in (0,2)");
    if (!(gamma_cap > 0.0 && gamma_cap < 2.0))
        throw std::invalid_argument("gamma_cap must lie in (0,2)");
    if (!(gamma_growth >= 1.0)) throw std::invalid_argument("gamma_growth must be at least 1");
    if (!(lambda_lazy_c > 0.0 && lambda_lazy_c <= 1.0))
        throw std::invalid_argument("lambda_lazy_c must lie in (0,1]");
    if (max_iter <= 0) throw std::invalid_argument("max_iter must be positive");
    if (max_backtracks <= 0) throw std::invalid_argument("max_backtracks must be positive");
}

LineSearchResult line_search(const MonotoneProblem& problem, const Vec& x, const Vec& p,
                             const MethodConfig& cfg) {
    LineSearchResult res;
    res.z.resize(x.size());
    res.g_z.resize(x.size());
    const double p2 = p.squaredNorm();
    double alpha = cfg.step0;
    for (int i = 0; i <= cfg.max_backtracks; ++i) {
        res.z = x + alpha * p;
        problem.eval(res.z, res.g_z);
        res.trials++;
        const double lhs = res.g_z.dot(p);
        const double gzn = res.g_z.norm();
        if (std::isfinite(lhs)
            && lhs <= -cfg.zeta * alpha * p2 * clamp_interval(cfg.zeta1, cfg.zeta2, gzn)) {
            res.ok = true;
            res.alpha = alpha;
            return res;
        }
        alpha *= cfg.rho;
    }
    return res;
}

Vec hyperplane_step(const Vec& x, const Vec& z, const Vec& g_z, double gamma,
                    const FeasibleSet& set) {
    const double gz2 = g_z.squaredNorm();
    if (gz2 <= 0.0)
        throw std::invalid_argument("hyperplane_step: zero residual at trial point");
    const double mu = g_z.dot(x - z) / gz2;
    Vec out = x - (gamma * mu) * g_z;
    set.project_in_place(out);
    return out;
}

double adaptive_gamma(double gamma, double g_norm_new, double g_norm_old,
                      const MethodConfig& cfg) {
    if (g_norm_new < g_norm_old) return std::min(cfg.gamma_growth * gamma, cfg.gamma_cap);
    return gamma;
}

double lazy_lambda(double current_lambda, double candidate_lambda, double g_norm_new,
                   double g_norm_old, double c) {
    return (g_norm_new >= c * g_norm_old) ? candidate_lambda : current_lambda;
}

SolveReport solve(const MonotoneProblem& problem, const Vec& x0, const MethodConfig& cfg,
                  const SolveOptions& opts) {
    cfg.validate();
    if (x0.size() != problem.dimension)
        throw std::invalid_argument("solve: x0 dimension mismatch");

    const bool gmop = is_gmop_family(cfg.method);
    const auto t_start = std::chrono::steady_clock::now();

    SolveReport rep;
    Vec x = x0;
    Vec g(x.size());
    problem.eval(x, g);
    rep.function_evals = 1;

    double gamma = cfg.gamma0;
    double lam = (cfg.method == Method::FixedLambdaGCG) ? 2.0 : 1.0;
    double gn_prev = 0.0;
    bool has_prev = false;

    DirectionStateGMOP stg;
    DirectionStateGCG stc;
    stg.tau = stc.tau = cfg.tau;

    Vec p, v, x_next, g_next;
    int k = 0;

    const auto finish = [&](Status status, int iterations, double residual, Vec solution) {
        rep.status = status;
        rep.iterations = iterations;
        rep.final_residual = residual;
        rep.solution = std::move(solution);
        rep.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    for (;;) {
        const double gn = g.norm();
        if (opts.record_residuals) rep.residual_history.push_back(gn);
        if (!std::isfinite(gn)) {
            finish(Status::NonFinite, k, gn, std::move(x));
            return rep;
        }
        if (gn < cfg.epsilon) {
            finish(Status::Converged, k, gn, std::move(x));
            return rep;
        }
        if (k > cfg.max_iter) {
            finish(Status::MaxIterations, k, gn, std::move(x));
            return rep;
        }

        double lam_used = lam;
        if (!has_prev) {
            p = -g;
        } else if (gmop) {
            v = (g - stg.g_prev) + cfg.tau * stg.s_prev;
            const auto cand = spectral_lambda_gmop(stg.s_prev, v, cfg.alpha_min, cfg.alpha_max);
            if (cfg.method == Method::GMOPCGM) {
                if (cand)
                    lam = cfg.lazy_lambda
                              ? lazy_lambda(lam, *cand, gn, gn_prev, cfg.lambda_lazy_c)
                              : *cand;
            } else {
                lam = 1.0;
            }
            lam_used = lam;
            bool restart = !cand.has_value();
            if (!restart) {
                auto d = direction_gmop_with_v(g, stg.s_prev, stg.p_prev, v, lam);
                if (d) p = std::move(*d);
                else restart = true;
            }
            if (restart) p = -lam * g;
        } else {
            const auto aux = gcgpm_auxiliaries(g, stc.g_prev, stc.p_prev);
            if (aux) {
                if (cfg.method == Method::GCGPM) {
                    const auto cand =
                        spectral_lambda_gcgpm(aux->w, stc.p_prev, cfg.alpha_min, cfg.alpha_max);
                    if (cand)
                        lam = cfg.lazy_lambda
                                  ? lazy_lambda(lam, *cand, gn, gn_prev, cfg.lambda_lazy_c)
                                  : *cand;
                } else {
                    lam = 2.0;
                }
                lam_used = lam;
                p = direction_gcgpm_with_aux(g, stc.p_prev, *aux, lam, cfg.tau);
            } else {
                lam_used = lam;
                p = -lam * g;
            }
        }

        const double pn = p.norm();
        if (!std::isfinite(pn)) {
            finish(Status::NonFinite, k, gn, std::move(x));
            return rep;
        }
        if (pn < 0.1 * cfg.epsilon) {
            finish(Status::DirectionTooSmall, k, gn, std::move(x));
            return rep;
        }

        LineSearchResult ls = line_search(problem, x, p, cfg);
        rep.function_evals += ls.trials;
        if (!ls.ok) {
            finish(Status::LineSearchFailure, k, gn, std::move(x));
            return rep;
        }

        const double gzn = ls.g_z.norm();
        if (problem.constraint.contains(ls.z) && gzn <= cfg.epsilon) {
            if (opts.record_residuals) rep.residual_history.push_back(gzn);
            if (opts.observer) {
                IterationInfo info;
                info.k = k;
                info.g_norm = gn;
                info.p_norm = pn;
                info.g_dot_p = g.dot(p);
                info.lambda = lam_used;
                info.gamma = gamma;
                info.alpha = ls.alpha;
                info.x_norm = x.norm();
                info.x_next_norm = std::numeric_limits<double>::quiet_NaN();
                info.ls_trials = ls.trials;
                info.trial_exit = true;
                opts.observer(info);
            }
            finish(Status::ConvergedAtTrialPoint, k + 1, gzn, std::move(ls.z));
            return rep;
        }

        x_next = hyperplane_step(x, ls.z, ls.g_z, gamma, problem.constraint);
        // the state swaps below can hand g_next an empty buffer; evaluators
        // write into blocks and need the full size up front
        g_next.resize(x.size());
        problem.eval(x_next, g_next);
        rep.function_evals += 1;
        const double gn_next = g_next.norm();

        const double gamma_used = gamma;
        if (cfg.adaptive_gamma) gamma = adaptive_gamma(gamma, gn_next, gn, cfg);

        if (opts.observer) {
            IterationInfo info;
            info.k = k;
            info.g_norm = gn;
            info.p_norm = pn;
            info.g_dot_p = g.dot(p);
            info.lambda = lam_used;
            info.gamma = gamma_used;
            info.alpha = ls.alpha;
            info.x_norm = x.norm();
            info.x_next_norm = x_next.norm();
            info.ls_trials = ls.trials;
            info.trial_exit = false;
            opts.observer(info);
        }

        if (gmop) {
            stg.s_prev = ls.z - x;
            stg.g_prev.swap(g);
            stg.p_prev.swap(p);
            stg.lambda = lam;
        } else {
            stc.g_prev.swap(g);
            stc.p_prev.swap(p);
            stc.lambda = lam;
        }
        x.swap(x_next);
        g.swap(g_next);
        gn_prev = gn;
        has_prev = true;
        ++k;
    }
}

} // namespace monoeq
