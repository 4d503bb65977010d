#include "monoeq/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace monoeq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FeasibleSet::FeasibleSet(SetKind kind, Eigen::Index dim, double lower, double upper)
    : kind_(kind), dim_(dim), lower_(lower), upper_(upper) {
    if (dim <= 0) throw std::invalid_argument("FeasibleSet: dimension must be positive");
}

FeasibleSet FeasibleSet::whole_space(Eigen::Index dim) {
    return FeasibleSet(SetKind::WholeSpace, dim, -kInf, kInf);
}

FeasibleSet FeasibleSet::nonnegative_orthant(Eigen::Index dim) {
    return FeasibleSet(SetKind::NonnegativeOrthant, dim, 0.0, kInf);
}

FeasibleSet FeasibleSet::box(Eigen::Index dim, double lower, double upper) {
    if (lower > upper) throw std::invalid_argument("FeasibleSet::box: lower > upper");
    return FeasibleSet(SetKind::Box, dim, lower, upper);
}

FeasibleSet FeasibleSet::half_line(Eigen::Index dim, double lower) {
    return FeasibleSet(SetKind::HalfLineProduct, dim, lower, kInf);
}

bool FeasibleSet::contains(const Vec& x) const {
    if (x.size() != dim_) throw std::invalid_argument("FeasibleSet::contains: dimension mismatch");
    switch (kind_) {
        case SetKind::WholeSpace: return true;
        case SetKind::NonnegativeOrthant: return (x.array() >= 0.0).all();
        case SetKind::Box: return (x.array() >= lower_).all() && (x.array() <= upper_).all();
        case SetKind::HalfLineProduct: return (x.array() >= lower_).all();
    }
    return false;
}

Vec FeasibleSet::project(const Vec& x) const {
    Vec out = x;
    project_in_place(out);
    return out;
}

void FeasibleSet::project_in_place(Vec& x) const {
    if (x.size() != dim_) throw std::invalid_argument("FeasibleSet::project: dimension mismatch");
    switch (kind_) {
        case SetKind::WholeSpace:
            return;
        case SetKind::NonnegativeOrthant:
            x = x.cwiseMax(0.0);
            return;
        case SetKind::Box:
            x = x.cwiseMax(lower_).cwiseMin(upper_);
            return;
        case SetKind::HalfLineProduct:
            x = x.cwiseMax(lower_);
            return;
    }
}

std::string FeasibleSet::describe() const {
    switch (kind_) {
        case SetKind::WholeSpace: return "R^n";
        case SetKind::NonnegativeOrthant: return "R^n_+";
        case SetKind::Box:
            return "[" + std::to_string(lower_) + ", " + std::to_string(upper_) + "]^n";
        case SetKind::HalfLineProduct:
            return "[" + std::to_string(lower_) + ", inf)^n";
    }
    return "?";
}

double clamp_interval(double a, double b, double x) {
    if (a > b) throw std::invalid_argument("clamp_interval: a > b");
    return std::max(a, std::min(x, b));
}

Vec project(const FeasibleSet& set, const Vec& x) {
    return set.project(x);
}

} // namespace monoeq
