#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "monoeq/directions.hpp"
#include "monoeq/rng.hpp"

using namespace monoeq;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec random_vec(Rng& rng, Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = 4.0 * (rng.uniform01() - 0.5);
    return v;
}

} // namespace

TEST_CASE("denominator guard") {
    CHECK(denominator_ok(1.0, 1.0, 1.0));
    CHECK(!denominator_ok(0.0, 1.0, 1.0));
    CHECK(!denominator_ok(1e-13, 1.0, 1.0));
    CHECK(!denominator_ok(-1e-13, 1.0, 1.0));
    CHECK(denominator_ok(-1.0, 1.0, 1.0));
    CHECK(!denominator_ok(1e-9, 1e6, 1e6));
}

TEST_CASE("spectral parameter, GMOP family") {
    CHECK(spectral_lambda_gmop(vec2(1, 0), vec2(2, 0), 0.1, 2.0) == 0.5);
    CHECK(spectral_lambda_gmop(vec2(1, 0), vec2(1, 0), 0.1, 2.0) == 1.0);
    CHECK(spectral_lambda_gmop(vec2(10, 0), vec2(1, 0), 0.1, 2.0) == 2.0);
    CHECK(!spectral_lambda_gmop(vec2(1, 0), vec2(0, 1), 0.1, 2.0).has_value());
    CHECK(!spectral_lambda_gmop(vec2(1, 0), vec2(-1, 0), 0.1, 2.0).has_value());
}

TEST_CASE("spectral parameter, GCGPM family") {
    CHECK(spectral_lambda_gcgpm(vec2(0, 2), vec2(0, 1), 0.55, 4.9) == 2.0);
    CHECK(spectral_lambda_gcgpm(vec2(1, 0), vec2(1, 0), 0.55, 4.9) == 1.0);
    CHECK(spectral_lambda_gcgpm(vec2(0, 10), vec2(0, 1), 0.55, 4.9) == 4.9);
    CHECK(spectral_lambda_gcgpm(vec2(0, -2), vec2(0, 1), 0.55, 4.9) == 0.55);
    CHECK(!spectral_lambda_gcgpm(vec2(1, 0), vec2(0, 1), 0.55, 4.9).has_value());
}

TEST_CASE("optimal shift t*") {
    CHECK(optimal_tstar(vec2(1, 0), vec2(1, 0), 1.0) == 1.0);
    CHECK(optimal_tstar(vec2(1, 0), vec2(3, 0), 2.0) == 6.0);
    CHECK(optimal_tstar(vec2(1, 0), vec2(0, 1), 1.0) == 0.0);
    CHECK_THROWS_AS(optimal_tstar(vec2(0, 0), vec2(1, 0), 1.0), std::invalid_argument);
}

TEST_CASE("GMOP direction, worked example") {
    DirectionStateGMOP st;
    st.s_prev = vec2(1, 0);
    st.g_prev = vec2(0, 1);
    st.p_prev = vec2(1, 0);
    st.lambda = 1.0;
    st.tau = 1.0;
    const Vec g = vec2(0, 1);
    const auto p = direction_gmop(g, st);
    REQUIRE(p.has_value());
    CHECK((*p - vec2(0, -1)).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.dot(*p) == doctest::Approx(-1.0));

    st.p_prev = vec2(0, 1);
    CHECK(!direction_gmop(g, st).has_value());
}

TEST_CASE("GCGPM auxiliaries, worked examples") {
    {
        const auto aux = gcgpm_auxiliaries(vec2(1, 0), vec2(1, -1), vec2(0, 1));
        REQUIRE(aux.has_value());
        CHECK(aux->r == 1.0);
        CHECK(aux->w == vec2(0, 2));
        CHECK(aux->a == 0.0);
    }
    {
        const auto aux = gcgpm_auxiliaries(vec2(0, -1), vec2(0, -2), vec2(0, 1));
        REQUIRE(aux.has_value());
        CHECK(aux->r == 2.0);
        CHECK(aux->w == vec2(0, 3));
        CHECK(aux->a == doctest::Approx(-1.0 / 3.0));
    }
    CHECK(!gcgpm_auxiliaries(vec2(1, 0), vec2(1, 0), vec2(0, 1)).has_value());
}

TEST_CASE("GCGPM direction, worked example") {
    DirectionStateGCG st;
    st.g_prev = vec2(1, -1);
    st.p_prev = vec2(0, 1);
    st.tau = 0.001;
    const Vec g = vec2(1, 0);
    const auto p = direction_gcgpm(g, st, 2.0);
    REQUIRE(p.has_value());
    CHECK((*p - vec2(-2, 0)).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.dot(*p) == doctest::Approx(-2.0));
}

TEST_CASE("r is never below one") {
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index n = 2 + Eigen::Index(rng.uniform_int(0, 8));
        const auto aux = gcgpm_auxiliaries(random_vec(rng, n), random_vec(rng, n),
                                           random_vec(rng, n));
        if (!aux) continue;
        CHECK(aux->r >= 1.0);
    }
}

TEST_CASE("GMOP exact descent identity on random data") {
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index n = 2 + Eigen::Index(rng.uniform_int(0, 48));
        DirectionStateGMOP st;
        st.s_prev = random_vec(rng, n);
        st.g_prev = random_vec(rng, n);
        st.p_prev = random_vec(rng, n);
        st.lambda = 0.1 + 1.9 * rng.uniform01();
        st.tau = rng.uniform01();
        const Vec g = random_vec(rng, n);
        const auto p = direction_gmop(g, st);
        if (!p) continue;
        const double g2 = g.squaredNorm();
        CHECK(std::abs(g.dot(*p) + st.lambda * g2) <= 1e-8 * (1.0 + g2));
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("GCGPM sufficient descent on random data") {
    Rng rng(77);
    const double tau = 0.001;
    const double amin = 0.55;
    const double bound = amin * (1.0 - (1.0 + tau) * (1.0 + tau) / (4.0 * amin * amin));
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index n = 2 + Eigen::Index(rng.uniform_int(0, 48));
        DirectionStateGCG st;
        st.g_prev = random_vec(rng, n);
        st.p_prev = random_vec(rng, n);
        st.tau = tau;
        const Vec g = random_vec(rng, n);
        const double lam = amin + (4.9 - amin) * rng.uniform01();
        const auto p = direction_gcgpm(g, st, lam);
        if (!p) continue;
        CHECK(g.dot(*p) <= -bound * g.squaredNorm() + 1e-8);
        ++checked;
    }
    CHECK(checked > 900);
}
