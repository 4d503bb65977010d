#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include "monoeq/logreg.hpp"
#include "monoeq/rng.hpp"

using namespace monoeq;

namespace {

LogRegProblem wrap(Dataset d, double mu = 0.1, double box_c = 10.0) {
    LogRegProblem p;
    p.data = std::make_shared<const Dataset>(std::move(d));
    p.mu = mu;
    p.box_c = box_c;
    return p;
}

Dataset random_dataset(Rng& rng, Eigen::Index samples, Eigen::Index features) {
    Dataset d;
    d.samples = samples;
    d.features = features;
    d.rows.resize(std::size_t(samples));
    for (auto& row : d.rows)
        for (Eigen::Index j = 0; j < features; ++j)
            if (rng.uniform01() < 0.7) row.emplace_back(j, rng.normal());
    for (Eigen::Index i = 0; i < samples; ++i)
        d.labels.push_back(rng.uniform01() < 0.5 ? -1.0 : 1.0);
    return d;
}

} // namespace

TEST_CASE("LIBSVM parsing, well-formed input") {
    const Dataset d = parse_libsvm("+1 1:0.5 3:2\n");
    CHECK(d.samples == 1);
    CHECK(d.features == 3);
    CHECK(d.labels[0] == 1.0);
    REQUIRE(d.rows[0].size() == 2);
    CHECK(d.rows[0][0].first == 0);
    CHECK(d.rows[0][0].second == 0.5);
    CHECK(d.rows[0][1].first == 2);
    CHECK(d.rows[0][1].second == 2.0);
    CHECK(!d.standardized);

    const Dataset zero_label = parse_libsvm("0 2:1\n");
    CHECK(zero_label.labels[0] == -1.0);
    CHECK(zero_label.features == 2);

    const Dataset with_blank = parse_libsvm("1 1:1\n\n-1 2:1\n");
    CHECK(with_blank.samples == 2);
    CHECK(with_blank.labels[1] == -1.0);

    const Dataset padded = parse_libsvm("-1 2:1\n", 5);
    CHECK(padded.features == 5);

    const Dataset crlf = parse_libsvm("+1 1:2\r\n-1 1:3\r\n");
    CHECK(crlf.samples == 2);
    CHECK(crlf.rows[0][0].second == 2.0);
}

TEST_CASE("LIBSVM parsing, malformed input") {
    CHECK_THROWS_WITH_AS(parse_libsvm("2 1:1\n"), doctest::Contains("unknown label"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_libsvm("+1 1:1\nabc 1:1\n"), doctest::Contains("line 2"),
                         ParseError);
    CHECK_THROWS_AS(parse_libsvm("+1 1:a\n"), ParseError);
    CHECK_THROWS_AS(parse_libsvm("+1 0:1\n"), ParseError);
    CHECK_THROWS_AS(parse_libsvm("+1 1.5:1\n"), ParseError);
    CHECK_THROWS_WITH_AS(parse_libsvm("+1 2:1 2:3\n"),
                         doctest::Contains("strictly increasing"), ParseError);
    CHECK_THROWS_AS(parse_libsvm("+1 2:1 1:3\n"), ParseError);
    CHECK_THROWS_AS(parse_libsvm("+1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_libsvm("+1 3:1\n", 2), ParseError);
    CHECK_THROWS_AS(parse_libsvm_file("/nonexistent/monoeq.t"), std::runtime_error);
}

TEST_CASE("margins on sparse and standardized data") {
    const Dataset d = parse_libsvm("+1 2:3\n");
    Vec x(2);
    x << 1.0, 2.0;
    CHECK(d.margin(0, x) == 6.0);

    const Dataset two = parse_libsvm("+1 1:1\n-1 1:3\n");
    const Dataset std_two = standardize(two);
    CHECK(std_two.standardized);
    CHECK(std_two.dense(0, 0) == doctest::Approx(-1.0));
    CHECK(std_two.dense(1, 0) == doctest::Approx(1.0));
    Vec w(1);
    w << 2.0;
    CHECK(std_two.margin(0, w) == doctest::Approx(-2.0));
}

TEST_CASE("standardization properties") {
    const Dataset d = parse_libsvm("+1 1:1 2:5\n-1 1:3 2:5\n");
    const Dataset s = standardize(d);
    CHECK(s.dense.col(0).sum() == doctest::Approx(0.0));
    CHECK(s.dense(0, 1) == 0.0);
    CHECK(s.dense(1, 1) == 0.0);

    const Dataset again = standardize(s);
    CHECK((again.dense - s.dense).norm() <= 1e-12);

    CHECK_THROWS_AS(standardize(parse_libsvm("+1 1:1\n")), std::invalid_argument);
}

TEST_CASE("gradient at zero, single and mirrored samples") {
    {
        const auto p = wrap(parse_libsvm("+1 1:1\n"));
        const Vec g = logistic_gradient(p, Vec::Zero(1));
        CHECK(g[0] == doctest::Approx(-0.5).epsilon(1e-15));
    }
    {
        const auto p = wrap(parse_libsvm("+1 1:1\n-1 1:1\n"));
        CHECK(logistic_gradient(p, Vec::Zero(1)).norm() == 0.0);
        CHECK(logistic_loss(p, Vec::Zero(1)) == doctest::Approx(std::log(2.0)));
    }
}

TEST_CASE("loss is stable for extreme margins") {
    const auto p = wrap(parse_libsvm("+1 1:1\n-1 2:1\n"), 0.1, 2000.0);
    Vec x(2);
    x << 1000.0, -1000.0;
    const double loss = logistic_loss(p, x);
    CHECK(std::isfinite(loss));
    const Vec g = logistic_gradient(p, x);
    CHECK(g.allFinite());
    Vec y(2);
    y << -1000.0, 1000.0;
    CHECK(std::isfinite(logistic_loss(p, y)));
    CHECK(logistic_gradient(p, y).allFinite());
}

TEST_CASE("gradient matches finite differences of the loss") {
    Rng rng(31);
    for (int inst = 0; inst < 20; ++inst) {
        const Eigen::Index samples = 2 + Eigen::Index(rng.uniform_int(0, 28));
        const Eigen::Index features = 1 + Eigen::Index(rng.uniform_int(0, 19));
        const auto p = wrap(random_dataset(rng, samples, features), 0.1);

        Vec x(features), u(features);
        for (Eigen::Index j = 0; j < features; ++j) x[j] = 2.0 * (rng.uniform01() - 0.5);
        for (Eigen::Index j = 0; j < features; ++j) u[j] = rng.normal();
        u.normalize();

        const double h = 1e-5;
        const double fd = (logistic_loss(p, x + h * u) - logistic_loss(p, x - h * u))
                          / (2.0 * h);
        const double an = logistic_gradient(p, x).dot(u);
        CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
    }
}

TEST_CASE("gradient is strongly monotone") {
    Rng rng(57);
    const auto p = wrap(random_dataset(rng, 40, 12), 0.1);
    Vec x(12), y(12);
    for (int pair = 0; pair < 200; ++pair) {
        for (Eigen::Index j = 0; j < 12; ++j) x[j] = 6.0 * (rng.uniform01() - 0.5);
        for (Eigen::Index j = 0; j < 12; ++j) y[j] = 6.0 * (rng.uniform01() - 0.5);
        const double inner =
            (logistic_gradient(p, x) - logistic_gradient(p, y)).dot(x - y);
        CHECK(inner >= 0.1 * (x - y).squaredNorm() - 1e-10);
    }
}

TEST_CASE("gradient satisfies the spectral Lipschitz bound") {
    Rng rng(71);
    Dataset data = random_dataset(rng, 30, 8);
    const Dataset std_data = standardize(data);
    const Eigen::MatrixXd& a = std_data.dense;
    const double spectral =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a.transpose() * a)
            .eigenvalues()
            .maxCoeff();
    const double lip = spectral / (4.0 * double(std_data.samples)) + 0.1;

    const auto p = wrap(std_data, 0.1);
    Vec x(8), y(8);
    for (int pair = 0; pair < 200; ++pair) {
        for (Eigen::Index j = 0; j < 8; ++j) x[j] = 6.0 * (rng.uniform01() - 0.5);
        for (Eigen::Index j = 0; j < 8; ++j) y[j] = 6.0 * (rng.uniform01() - 0.5);
        const double lhs = (logistic_gradient(p, x) - logistic_gradient(p, y)).norm();
        CHECK(lhs <= lip * (x - y).norm() + 1e-6);
    }
}

TEST_CASE("monotone-equation view uses the box constraint") {
    const auto p = wrap(parse_libsvm("+1 1:1\n-1 1:2\n"), 0.1, 10.0);
    const auto prob = as_problem(p);
    CHECK(prob.dimension == 1);
    CHECK(prob.constraint.kind() == SetKind::Box);
    CHECK(prob.constraint.lower() == -10.0);
    CHECK(prob.constraint.upper() == 10.0);
    Vec x(1);
    x << 0.5;
    CHECK(prob.eval(x) == logistic_gradient(p, x));
}

TEST_CASE("accuracy counts sign agreement with ties as positive") {
    const Dataset d = parse_libsvm("+1 1:1\n-1 1:1\n");
    CHECK(accuracy(d, Vec::Zero(1)) == 0.5);
    Vec neg(1);
    neg << -1.0;
    CHECK(accuracy(d, neg) == 0.5);
    const Dataset e = parse_libsvm("+1 1:1\n-1 1:-1\n");
    Vec pos(1);
    pos << 2.0;
    CHECK(accuracy(e, pos) == 1.0);
}

TEST_CASE("training separates a separable pair and is deterministic") {
    const auto p = wrap(parse_libsvm("+1 1:1\n-1 1:-1\n"));
    const auto a = train(p, MethodConfig::defaults(Method::GMOPCGM), 17);
    CHECK(is_converged(a.report.status));
    CHECK(a.report.final_residual <= 1e-11);
    CHECK(a.accuracy == 1.0);
    CHECK(a.x[0] > 0.0);

    const auto b = train(p, MethodConfig::defaults(Method::GMOPCGM), 17);
    CHECK(a.x == b.x);
    CHECK(a.report.iterations == b.report.iterations);

    const auto c = train(p, MethodConfig::defaults(Method::GMOPCGM), 18);
    CHECK((c.x - a.x).norm() <= 1e-8);
}

TEST_CASE("all methods find the same regularized optimum") {
    Rng rng(83);
    const auto p = wrap(random_dataset(rng, 25, 6), 0.1);
    Vec reference;
    for (Method m : {Method::GMOPCGM, Method::GCGPM, Method::FixedLambdaGMOP,
                     Method::FixedLambdaGCG}) {
        const auto res = train(p, MethodConfig::defaults(m), 5);
        REQUIRE(is_converged(res.report.status));
        if (reference.size() == 0) reference = res.x;
        else CHECK((res.x - reference).norm() <= 1e-8);
    }
}

TEST_CASE("training results CSV header") {
    std::vector<LogRegRecord> records(1);
    records[0].dataset = "toy";
    records[0].method = "gmopcgm";
    records[0].trial = 1;
    records[0].status = Status::Converged;
    records[0].accuracy = 1.0;
    const auto path =
        (std::filesystem::temp_directory_path() / "monoeq_logreg_header.csv").string();
    write_logreg_csv(records, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "dataset,method,trial,status,it,fe,cpu_s,final_residual,accuracy");
    in.close();
    std::filesystem::remove(path);
}
