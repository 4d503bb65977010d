#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "monoeq/perry.hpp"
#include "monoeq/rng.hpp"

using namespace monoeq;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

} // namespace

TEST_CASE("matrix build, worked example") {
    const PerryMatrix pm = perry_matrix_build(vec2(1, 0), vec2(1, 0), 1.0, 3.0);
    Eigen::MatrixXd want(2, 2);
    want << 3, 0, 0, 1;
    CHECK((pm.Q - want).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pm.Q.trace() == doctest::Approx(4.0));
    CHECK(pm.a == doctest::Approx(1.0));
    CHECK(pm.b == doctest::Approx(1.0));
}

TEST_CASE("matrix build rejects bad inputs") {
    CHECK_THROWS_AS(perry_matrix_build(vec2(1, 0), vec2(-1, 0), 1.0, 1.0),
                    std::invalid_argument);
    Vec s1(1);
    s1 << 1.0;
    CHECK_THROWS_AS(perry_matrix_build(s1, s1, 1.0, 1.0), std::invalid_argument);
    Vec s3(3);
    s3 << 1, 0, 0;
    CHECK_THROWS_AS(perry_matrix_build(s3, vec2(1, 0), 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("closed-form pair matches dense eigensolve") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index n = 2 + Eigen::Index(rng.uniform_int(0, 4));
        Vec s(n), y(n);
        double sy = 0.0;
        do {
            for (Eigen::Index i = 0; i < n; ++i) s[i] = rng.normal();
            for (Eigen::Index i = 0; i < n; ++i) y[i] = rng.normal();
            sy = s.dot(y);
        } while (sy <= 1e-8);
        const double lambda = 0.5 + 1.5 * rng.uniform01();
        const double t = 0.1 + 4.9 * rng.uniform01();
        const PerryMatrix pm = perry_matrix_build(s, y, lambda, t);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pm.Q);
        const EigenPair pair = perry_eigen_pair(pm.a, pm.b, lambda, t);
        CHECK(pair.plus == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-8));
        CHECK(pair.minus == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-8));
        CHECK(pair.plus >= lambda - 1e-10);
        CHECK(pair.minus <= lambda + 1e-10);
    }
}

TEST_CASE("condition number values") {
    CHECK(perry_cond(1.0, 1.0, 1.0, 1.0, 2) == doctest::Approx(1.0));
    CHECK(perry_cond(1.0, 1.0, 1.0, 1.0, 5) == doctest::Approx(1.0));
    const double singular = perry_cond(1.0, std::sqrt(5.0), 1.0, 1.0, 2);
    CHECK(std::isinf(singular));
}

TEST_CASE("randomized lemma verification pattern") {
    const auto checks = verify_perry_lemmas(200, 12345);
    REQUIRE(checks.size() == 8);

    CHECK(checks[0].name == "trace identity");
    CHECK(checks[0].pass);
    CHECK(checks[1].name == "squared-trace identity");
    CHECK(checks[1].pass);
    CHECK(checks[2].name == "eigenvalue sum");
    CHECK(checks[2].pass);
    CHECK(checks[3].name == "eigenvalue product");
    CHECK(checks[3].pass);
    CHECK(checks[4].name == "closed-form eigenvalue pair");
    CHECK(checks[4].pass);

    CHECK(checks[5].name == "condition-number grid minimum at t = lambda/a");
    CHECK(!checks[5].pass);
    CHECK(checks[5].failures > 0);

    CHECK(checks[6].name == "eigenvalue-gap grid minimum at t = lambda/a");
    CHECK(checks[6].pass);

    CHECK(checks[7].name == "condition-number grid minimum at t = lambda(b^2+1)/(2a)");
    CHECK(checks[7].pass);
    CHECK(checks[7].total > 0);

    for (const auto& c : checks) {
        CHECK(c.total > 0);
        CHECK((c.pass == (c.failures == 0)));
    }
}
