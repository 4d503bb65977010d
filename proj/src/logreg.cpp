#include "monoeq/logreg.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "monoeq/rng.hpp"

namespace monoeq {

double Dataset::margin(Eigen::Index i, const Vec& x) const {
    if (standardized) return dense.row(i).dot(x);
    double dot = 0.0;
    for (const auto& [j, v] : rows[std::size_t(i)]) dot += v * x[j];
    return dot;
}

namespace {

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& what) {
    throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

double to_double(const std::string& tok, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) parse_fail(lineno, std::string("trailing junk in ") + what);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(lineno, std::string("non-numeric ") + what + ": '" + tok + "'");
    }
}

// sigma(-m) = 1/(1 + e^m) without overflowing for either sign of m
double inv_one_plus_exp(double m) {
    if (m >= 0.0) {
        const double e = std::exp(-m);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(m));
}

// log(1 + e^t), stable for large |t|
double softplus(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

} // namespace

Dataset parse_libsvm(const std::string& text, Eigen::Index n_features) {
    Dataset ds;
    Eigen::Index max_index = 0;
    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream toks(line);
        std::string tok;
        if (!(toks >> tok)) continue; // blank line

        const double raw_label = to_double(tok, lineno, "label");
        double label;
        if (raw_label == 1.0) label = 1.0;
        else if (raw_label == -1.0 || raw_label == 0.0) label = -1.0;
        else parse_fail(lineno, "unknown label '" + tok + "' (expected +1, 1, -1, or 0)");

        std::vector<std::pair<Eigen::Index, double>> row;
        Eigen::Index prev_index = 0;
        while (toks >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                parse_fail(lineno, "expected idx:val, got '" + tok + "'");
            const double idx_d = to_double(tok.substr(0, colon), lineno, "feature index");
            if (idx_d < 1.0 || idx_d != std::floor(idx_d))
                parse_fail(lineno, "feature index must be a positive integer: '"
                                       + tok.substr(0, colon) + "'");
            const Eigen::Index idx = Eigen::Index(idx_d);
            if (idx <= prev_index)
                parse_fail(lineno, "feature indices must be strictly increasing (saw "
                                       + std::to_string(idx) + " after "
                                       + std::to_string(prev_index) + ")");
            const double val = to_double(tok.substr(colon + 1), lineno, "feature value");
            row.emplace_back(idx - 1, val);
            prev_index = idx;
        }
        max_index = std::max(max_index, prev_index);
        ds.rows.push_back(std::move(row));
        ds.labels.push_back(label);
    }
    ds.samples = Eigen::Index(ds.rows.size());
    if (n_features > 0) {
        if (max_index > n_features)
            throw ParseError("feature index " + std::to_string(max_index)
                             + " exceeds declared feature count " + std::to_string(n_features));
        ds.features = n_features;
    } else {
        ds.features = max_index;
    }
    return ds;
}

Dataset parse_libsvm_file(const std::string& path, Eigen::Index n_features) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_libsvm(buf.str(), n_features);
}

Dataset standardize(const Dataset& data) {
    if (data.samples < 2)
        throw std::invalid_argument("standardize: need at least 2 samples");
    const Eigen::Index N = data.samples;
    const Eigen::Index n = data.features;

    Dataset out;
    out.samples = N;
    out.features = n;
    out.labels = data.labels;
    out.standardized = true;
    out.dense.setZero(N, n);
    if (data.standardized) out.dense = data.dense;
    else
        for (Eigen::Index i = 0; i < N; ++i)
            for (const auto& [j, v] : data.rows[std::size_t(i)]) out.dense(i, j) = v;

    for (Eigen::Index j = 0; j < n; ++j) {
        const double mean = out.dense.col(j).mean();
        const double var = (out.dense.col(j).array() - mean).square().sum() / double(N);
        const double std = std::sqrt(var);
        if (std < 1e-12) out.dense.col(j).setZero();
        else out.dense.col(j) = (out.dense.col(j).array() - mean) / std;
    }
    return out;
}

Vec logistic_gradient(const LogRegProblem& problem, const Vec& x) {
    const Dataset& ds = *problem.data;
    Vec g = Vec::Zero(ds.features);
    if (ds.standardized) {
        Vec weights(ds.samples);
        for (Eigen::Index i = 0; i < ds.samples; ++i) {
            const double m = ds.labels[std::size_t(i)] * ds.dense.row(i).dot(x);
            weights[i] = ds.labels[std::size_t(i)] * inv_one_plus_exp(m);
        }
        g.noalias() = ds.dense.transpose() * weights;
    } else {
        for (Eigen::Index i = 0; i < ds.samples; ++i) {
            const double b = ds.labels[std::size_t(i)];
            const double w = b * inv_one_plus_exp(b * ds.margin(i, x));
            for (const auto& [j, v] : ds.rows[std::size_t(i)]) g[j] += w * v;
        }
    }
    return (-g / double(ds.samples)) + problem.mu * x;
}

double logistic_loss(const LogRegProblem& problem, const Vec& x) {
    const Dataset& ds = *problem.data;
    double total = 0.0;
    for (Eigen::Index i = 0; i < ds.samples; ++i)
        total += softplus(-ds.labels[std::size_t(i)] * ds.margin(i, x));
    return total / double(ds.samples) + 0.5 * problem.mu * x.squaredNorm();
}

MonotoneProblem as_problem(const LogRegProblem& problem) {
    MonotoneProblem p;
    p.id = 0;
    p.name = "logreg";
    p.formula = "G(x) = grad of regularized logistic loss";
    p.dimension = problem.data->features;
    p.constraint = FeasibleSet::box(problem.data->features, -problem.box_c, problem.box_c);
    p.evaluator = [problem](const Vec& x, Vec& out) { out = logistic_gradient(problem, x); };
    return p;
}

double accuracy(const Dataset& data, const Vec& x) {
    if (data.samples == 0) return 0.0;
    Eigen::Index correct = 0;
    for (Eigen::Index i = 0; i < data.samples; ++i) {
        const double pred = (data.margin(i, x) >= 0.0) ? 1.0 : -1.0;
        if (pred == data.labels[std::size_t(i)]) ++correct;
    }
    return double(correct) / double(data.samples);
}

TrainResult train(const LogRegProblem& problem, MethodConfig cfg, std::uint64_t seed) {
    cfg.epsilon = 1e-11;
    cfg.max_iter = std::max(cfg.max_iter, 5000);

    Rng rng(seed);
    Vec x0(problem.data->features);
    for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = 4.0 * (rng.uniform01() - 0.5);

    const MonotoneProblem p = as_problem(problem);
    TrainResult res;
    res.report = solve(p, p.constraint.project(x0), cfg);
    res.x = res.report.solution;
    res.accuracy = accuracy(*problem.data, res.x);
    return res;
}

void write_logreg_csv(const std::vector<LogRegRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "dataset,method,trial,status,it,fe,cpu_s,final_residual,accuracy\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.dataset << ',' << r.method << ',' << r.trial << ',' << status_name(r.status)
            << ',' << r.it << ',' << r.fe << ',' << r.cpu_s << ',' << r.final_residual << ','
            << r.accuracy << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace monoeq
