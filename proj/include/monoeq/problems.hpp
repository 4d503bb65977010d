#pragma once

#include <stdexcept>
#include <vector>

#include "monoeq/problem.hpp"

namespace monoeq {

struct UnknownProblem : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Problem 16 has no usable closed form in its source; requesting it without
// opting into the documented substitute raises this.
struct ExplicitlyUnspecified : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Benchmark suite ids 1..18. Ids 4, 5, 6, 7, 14 are tridiagonal and require
// n >= 3; they use the boundary convention x_0 = x_{n+1} = 0. All problems
// are constrained to the nonnegative orthant except 16, which lives on
// [1, inf)^n and is only available with allow_substitute_16 = true.
MonotoneProblem make_problem(int id, Eigen::Index n, bool allow_substitute_16 = false);

// Ids included in the default benchmark matrix (16 is excluded).
const std::vector<int>& benchmark_problem_ids();

// The ten standard starts: eight constant vectors c*e with
// c in {0.4, 0.5, 0.6, 0.8, 1.0, 1.1, 2.0, 5.0}, then (1, 1/2, ..., 1/n),
// then (1/n, 2/n, ..., 1). start_id is 1-based.
std::vector<Vec> starting_points(Eigen::Index n);
Vec starting_point(Eigen::Index n, int start_id);

} // namespace monoeq
