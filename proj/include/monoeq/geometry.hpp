#pragma once

#include <Eigen/Core>
#include <string>

namespace monoeq {

using Vec = Eigen::VectorXd;

enum class SetKind { WholeSpace, NonnegativeOrthant, Box, HalfLineProduct };

// Closed convex constraint region with exact componentwise Euclidean
// projection. Bounds are uniform per coordinate. Immutable once built.
class FeasibleSet {
public:
    static FeasibleSet whole_space(Eigen::Index dim);
    static FeasibleSet nonnegative_orthant(Eigen::Index dim);
    static FeasibleSet box(Eigen::Index dim, double lower, double upper);
    static FeasibleSet half_line(Eigen::Index dim, double lower);

    SetKind kind() const { return kind_; }
    Eigen::Index dimension() const { return dim_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }

    bool contains(const Vec& x) const;
    Vec project(const Vec& x) const;
    void project_in_place(Vec& x) const;

    std::string describe() const;

private:
    FeasibleSet(SetKind kind, Eigen::Index dim, double lower, double upper);

    SetKind kind_;
    Eigen::Index dim_;
    double lower_;
    double upper_;
};

// max{a, min{x, b}}; requires a <= b.
double clamp_interval(double a, double b, double x);

Vec project(const FeasibleSet& set, const Vec& x);

} // namespace monoeq
