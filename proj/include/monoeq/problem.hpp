#pragma once

#include <functional>
#include <optional>
#include <string>

#include "monoeq/geometry.hpp"

namespace monoeq {

// Black-box mapping G: R^n -> R^n over a convex constraint set. Evaluators
// write into a caller-supplied buffer so the solve loop stays allocation
// free; they must not share mutable state across threads.
struct MonotoneProblem {
    int id = 0;
    std::string name;
    Eigen::Index dimension = 0;
    std::function<void(const Vec&, Vec&)> evaluator;
    FeasibleSet constraint = FeasibleSet::whole_space(1);
    std::optional<Vec> known_solution;
    std::optional<double> lipschitz_bound;
    bool monotone_verified = true;
    std::string formula;

    void eval(const Vec& x, Vec& out) const { evaluator(x, out); }
    Vec eval(const Vec& x) const {
        Vec out(dimension);
        evaluator(x, out);
        return out;
    }
};

} // namespace monoeq
