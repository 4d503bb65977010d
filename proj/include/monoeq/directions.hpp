#pragma once

#include <optional>

#include "monoeq/geometry.hpp"

namespace monoeq {

// Per-iteration state carried between direction evaluations of the GMOPCGM
// family. s_prev = z_{k-1} - x_{k-1}, g_prev = G_{k-1}, p_prev = p_{k-1}.
// lambda is the spectral parameter in effect for iteration k.
struct DirectionStateGMOP {
    Vec s_prev;
    Vec g_prev;
    Vec p_prev;
    double lambda = 1.0;
    double tau = 1.0;
};

struct DirectionStateGCG {
    Vec g_prev;
    Vec p_prev;
    double lambda = 1.0;
    double tau = 0.001;
};

// Auxiliary quantities of the GCGPM direction:
//   y = g_k - g_prev
//   r = 1 + max{0, -(g_k'p_prev)/(y'p_prev)}      (always r >= 1)
//   w = y + r p_prev
//   a = (g_k'p_prev)/(w'p_prev)
struct GcgAux {
    Vec y;
    Vec w;
    double r = 1.0;
    double a = 0.0;
};

// Denominator guard. A dot product d with factor norms nu, nv counts as a
// breakdown when |d| < 1e-12 * (1 + nu*nv); the solver restarts the
// direction as -lambda*g in that case.
bool denominator_ok(double d, double norm_u, double norm_v);

// Barzilai-Borwein style ratio clamp([amin,amax], max{|s|^2/(s'v), (s'v)/|v|^2}).
// Returns nullopt (spectral breakdown) when s'v is not safely positive.
std::optional<double> spectral_lambda_gmop(const Vec& s, const Vec& v,
                                           double alpha_min, double alpha_max);

// clamp([amin,amax], max{|w|^2/(p'w), (p'w)/|p|^2}); nullopt when |p'w| is tiny.
std::optional<double> spectral_lambda_gcgpm(const Vec& w, const Vec& p_prev,
                                            double alpha_min, double alpha_max);

// lambda * (s'v)/|s|^2. Requires |s| > 0.
double optimal_tstar(const Vec& s, const Vec& v, double lambda);

// p = -M g_k + theta p_prev with
//   v     = (g_k - g_prev) + tau s_prev
//   t*    = lambda (s'v)/|s|^2
//   theta = (v - t* s)' g_k / (p_prev' v)
//   M     = lambda + theta (g_k'p_prev)/|g_k|^2
// Satisfies g_k'p = -lambda |g_k|^2 exactly in real arithmetic.
// nullopt on denominator breakdown.
std::optional<Vec> direction_gmop(const Vec& g_k, const DirectionStateGMOP& state);

// Same with v precomputed by the caller (the solver shares it with the
// spectral update).
std::optional<Vec> direction_gmop_with_v(const Vec& g_k, const Vec& s_prev,
                                         const Vec& p_prev, const Vec& v, double lambda);

std::optional<GcgAux> gcgpm_auxiliaries(const Vec& g_k, const Vec& g_prev, const Vec& p_prev);

// p = -lambda_k g_k + theta p_prev + tau a w with
//   theta = g_k'w/(p'w) - lambda_k (|w|^2/(p'w)) (g_k'p/(p'w))
// Under 0 <= tau <= 1 and alpha_min > (1+tau)/2 this satisfies
//   g_k'p <= -alpha_min (1 - (1+tau)^2/(4 alpha_min^2)) |g_k|^2.
// nullopt on denominator breakdown.
std::optional<Vec> direction_gcgpm(const Vec& g_k, const DirectionStateGCG& state,
                                   double lambda_k);

Vec direction_gcgpm_with_aux(const Vec& g_k, const Vec& p_prev, const GcgAux& aux,
                             double lambda_k, double tau);

} // namespace monoeq
