#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "monoeq/rng.hpp"
#include "monoeq/sparse.hpp"

using namespace monoeq;

namespace {

CsInstance identity_instance() {
    CsInstance inst;
    inst.n = 2;
    inst.k = 1;
    inst.m = 2;
    inst.sigma = 0.0;
    inst.A = Eigen::MatrixXd::Identity(2, 2);
    inst.b = Vec(2);
    inst.b << 1.0, 0.0;
    inst.x_orig = Vec(2);
    inst.x_orig << 1.0, 0.0;
    inst.tau_reg = 0.1;
    inst.seed = 0;
    return inst;
}

} // namespace

TEST_CASE("instance generation is deterministic and well formed") {
    const auto a = generate_instance(64, 8, 32, 1e-3, 42);
    const auto b = generate_instance(64, 8, 32, 1e-3, 42);
    CHECK(a.A == b.A);
    CHECK(a.b == b.b);
    CHECK(a.x_orig == b.x_orig);
    CHECK(a.tau_reg == b.tau_reg);

    const auto c = generate_instance(64, 8, 32, 1e-3, 43);
    CHECK(a.A != c.A);

    CHECK(a.A.rows() == 32);
    CHECK(a.A.cols() == 64);
    const Eigen::MatrixXd gram = a.A * a.A.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(32, 32)).norm() <= 1e-10);

    Eigen::Index nonzeros = 0;
    for (Eigen::Index i = 0; i < a.x_orig.size(); ++i)
        if (a.x_orig[i] != 0.0) ++nonzeros;
    CHECK(nonzeros == 8);

    CHECK(a.tau_reg
          == doctest::Approx(0.01 * (a.A.transpose() * a.b).cwiseAbs().maxCoeff())
                 .epsilon(1e-15));
}

TEST_CASE("noise-free measurements are exact") {
    const auto inst = generate_instance(32, 4, 16, 0.0, 7);
    CHECK(inst.b == inst.A * inst.x_orig);
}

TEST_CASE("instance generation validates its arguments") {
    CHECK_THROWS_AS(generate_instance(0, 0, 1, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(10, 11, 5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(10, -1, 5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(10, 2, 0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(10, 2, 11, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(10, 2, 5, -1.0, 1), std::invalid_argument);
}

TEST_CASE("complementarity map, hand-checked identity sensing matrix") {
    const auto inst = identity_instance();
    const auto prob = lcp_map(inst);
    CHECK(prob.dimension == 4);
    CHECK(prob.constraint.kind() == SetKind::NonnegativeOrthant);

    Vec z_star(4);
    z_star << 0.9, 0.0, 0.0, 0.0;
    CHECK(prob.eval(z_star).norm() <= 1e-14);

    const Vec g0 = prob.eval(Vec::Zero(4));
    CHECK(g0[0] == doctest::Approx(-0.9).epsilon(1e-15));
    CHECK(g0[1] == 0.0);
    CHECK(g0[2] == 0.0);
    CHECK(g0[3] == 0.0);

    const Vec z0 = lcp_start(inst);
    CHECK(z0[0] == 1.0);
    CHECK(z0[1] == 0.0);
    CHECK(z0[2] == 0.0);
    CHECK(z0[3] == 0.0);
}

TEST_CASE("recovery reproduces the soft-threshold solution") {
    const auto inst = identity_instance();
    for (Method m : {Method::GMOPCGM, Method::GCGPM}) {
        const auto res = recover(inst, MethodConfig::defaults(m));
        CHECK(is_converged(res.report.status));
        CHECK(res.x_rec[0] == doctest::Approx(0.9).epsilon(1e-4));
        CHECK(std::abs(res.x_rec[1]) <= 1e-4);
    }
}

TEST_CASE("complementarity map is monotone on sampled pairs") {
    const auto inst = generate_instance(32, 4, 16, 1e-3, 11);
    const auto prob = lcp_map(inst);
    Rng rng(23);
    Vec x(prob.dimension), y(prob.dimension);
    for (int pair = 0; pair < 200; ++pair) {
        for (Eigen::Index i = 0; i < prob.dimension; ++i) x[i] = 2.0 * rng.uniform01();
        for (Eigen::Index i = 0; i < prob.dimension; ++i) y[i] = 2.0 * rng.uniform01();
        CHECK((prob.eval(x) - prob.eval(y)).dot(x - y) >= -1e-10);
    }
}

TEST_CASE("recovery error metric") {
    Vec a(2), b(2);
    a << 1.0, 0.0;
    b << 0.0, 0.0;
    CHECK(mse(a, a) == 0.0);
    CHECK(mse(a, b) == 0.5);
    CHECK(mse(3.0 * a, 3.0 * b) == doctest::Approx(1.5));
    Vec c(3);
    c << 1, 2, 3;
    CHECK_THROWS_AS(mse(a, c), std::invalid_argument);
}

TEST_CASE("zero-sparsity noise-free instance recovers the zero signal") {
    const auto inst = generate_instance(16, 0, 8, 0.0, 5);
    CHECK(inst.x_orig.norm() == 0.0);
    CHECK(inst.b.norm() == 0.0);
    CHECK(inst.tau_reg == 0.0);
    const auto res = recover(inst, MethodConfig::defaults(Method::GMOPCGM));
    CHECK(is_converged(res.report.status));
    CHECK(res.report.iterations == 0);
    CHECK(res.x_rec.norm() == 0.0);
}

TEST_CASE("end-to-end recovery on a generated instance") {
    const auto inst = generate_instance(256, 16, 128, 1e-4, 321);
    for (Method m : {Method::GMOPCGM, Method::GCGPM}) {
        const auto res = recover(inst, MethodConfig::defaults(m));
        CHECK(is_converged(res.report.status));
        CHECK(mse(inst.x_orig, res.x_rec) < 1e-4);
    }
}

TEST_CASE("sweep is reproducible across worker counts") {
    const MethodConfig cfg = MethodConfig::defaults(Method::GCGPM);
    CsSweepOptions opts;
    opts.n = 64;
    opts.sparsity_ratios = {0.1};
    opts.measurement_ratios = {0.5};
    opts.sigmas = {0.0, 1e-2};
    opts.trials = 2;
    opts.seed = 7;

    opts.workers = 1;
    const auto serial = run_cs_sweep(cfg, opts);
    opts.workers = 4;
    const auto threaded = run_cs_sweep(cfg, opts);

    REQUIRE(serial.size() == 4);
    REQUIRE(threaded.size() == 4);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].method == "gcgpm");
        CHECK(serial[i].n == 64);
        CHECK(serial[i].k == 6);
        CHECK(serial[i].m == 32);
        CHECK(serial[i].trial == threaded[i].trial);
        CHECK(serial[i].sigma == threaded[i].sigma);
        CHECK(serial[i].status == threaded[i].status);
        CHECK(serial[i].it == threaded[i].it);
        CHECK(serial[i].fe == threaded[i].fe);
        CHECK(serial[i].mse == threaded[i].mse);
    }
    CHECK(serial[0].trial == 1);
    CHECK(serial[1].trial == 2);
}

TEST_CASE("sweep CSV header") {
    const MethodConfig cfg = MethodConfig::defaults(Method::GMOPCGM);
    CsSweepOptions opts;
    opts.n = 32;
    opts.sparsity_ratios = {0.1};
    opts.measurement_ratios = {0.5};
    opts.sigmas = {0.0};
    opts.trials = 1;
    const auto records = run_cs_sweep(cfg, opts);
    const auto path =
        (std::filesystem::temp_directory_path() / "monoeq_cs_header.csv").string();
    write_cs_csv(records, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "method,n,k,m,sigma,trial,status,it,fe,cpu_s,mse");
    in.close();
    std::filesystem::remove(path);
}
