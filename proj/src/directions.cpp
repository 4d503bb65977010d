#include "monoeq/directions.hpp"

#include <cmath>
#include <stdexcept>

namespace monoeq {

bool denominator_ok(double d, double norm_u, double norm_v) {
    return std::abs(d) >= 1e-12 * (1.0 + norm_u * norm_v);
}

std::optional<double> spectral_lambda_gmop(const Vec& s, const Vec& v,
                                           double alpha_min, double alpha_max) {
    const double sv = s.dot(v);
    // Monotonicity makes s'v positive in exact arithmetic; anything at or
    // below the roundoff floor is treated as a breakdown.
    if (sv <= 1e-12 * (1.0 + s.norm() * v.norm())) return std::nullopt;
    const double ratio = std::max(s.squaredNorm() / sv, sv / v.squaredNorm());
    return clamp_interval(alpha_min, alpha_max, ratio);
}

std::optional<double> spectral_lambda_gcgpm(const Vec& w, const Vec& p_prev,
                                            double alpha_min, double alpha_max) {
    const double pw = p_prev.dot(w);
    if (!denominator_ok(pw, p_prev.norm(), w.norm())) return std::nullopt;
    const double ratio = std::max(w.squaredNorm() / pw, pw / p_prev.squaredNorm());
    return clamp_interval(alpha_min, alpha_max, ratio);
}

double optimal_tstar(const Vec& s, const Vec& v, double lambda) {
    const double s2 = s.squaredNorm();
    if (s2 <= 0.0) throw std::invalid_argument("optimal_tstar: zero s");
    return lambda * s.dot(v) / s2;
}

std::optional<Vec> direction_gmop(const Vec& g_k, const DirectionStateGMOP& state) {
    const Vec v = (g_k - state.g_prev) + state.tau * state.s_prev;
    return direction_gmop_with_v(g_k, state.s_prev, state.p_prev, v, state.lambda);
}

std::optional<Vec> direction_gmop_with_v(const Vec& g_k, const Vec& s_prev,
                                         const Vec& p_prev, const Vec& v, double lambda) {
    const double pv = p_prev.dot(v);
    if (!denominator_ok(pv, p_prev.norm(), v.norm())) return std::nullopt;
    const double tstar = optimal_tstar(s_prev, v, lambda);
    const double theta = (v - tstar * s_prev).dot(g_k) / pv;
    const double M = lambda + theta * g_k.dot(p_prev) / g_k.squaredNorm();
    return Vec(-M * g_k + theta * p_prev);
}

std::optional<GcgAux> gcgpm_auxiliaries(const Vec& g_k, const Vec& g_prev, const Vec& p_prev) {
    GcgAux aux;
    aux.y = g_k - g_prev;
    const double yp = aux.y.dot(p_prev);
    if (!denominator_ok(yp, aux.y.norm(), p_prev.norm())) return std::nullopt;
    aux.r = 1.0 + std::max(0.0, -g_k.dot(p_prev) / yp);
    aux.w = aux.y + aux.r * p_prev;
    const double pw = p_prev.dot(aux.w);
    if (!denominator_ok(pw, p_prev.norm(), aux.w.norm())) return std::nullopt;
    aux.a = g_k.dot(p_prev) / pw;
    return aux;
}

std::optional<Vec> direction_gcgpm(const Vec& g_k, const DirectionStateGCG& state,
                                   double lambda_k) {
    auto aux = gcgpm_auxiliaries(g_k, state.g_prev, state.p_prev);
    if (!aux) return std::nullopt;
    return direction_gcgpm_with_aux(g_k, state.p_prev, *aux, lambda_k, state.tau);
}

Vec direction_gcgpm_with_aux(const Vec& g_k, const Vec& p_prev, const GcgAux& aux,
                             double lambda_k, double tau) {
    const double pw = p_prev.dot(aux.w);
    const double w2 = aux.w.squaredNorm();
    const double gp = g_k.dot(p_prev);
    const double theta = g_k.dot(aux.w) / pw - lambda_k * (w2 / pw) * (gp / pw);
    return Vec(-lambda_k * g_k + theta * p_prev + tau * aux.a * aux.w);
}

} // namespace monoeq
