#ifndef GITKIT_CONVEX_HPP
#define GITKIT_CONVEX_HPP

#include "gitkit/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gitkit {

/// Finite set of rational weight vectors in Q^dim, dim in {1, 2, 3}.
struct WeightPointSet {
    int dim = 1;
    std::vector<RationalVector> points;

    /// Throws InputError unless 1 <= dim <= 3, the set is nonempty and every
    /// point has length dim.
    void validate() const;
};

enum class ZeroPosition { Outside, Boundary, Interior };

std::string to_string(ZeroPosition z);

struct ZeroPositionResult {
    ZeroPosition position = ZeroPosition::Outside;
    /// Outside: primitive integer c with <c, s> > 0 for every point s.
    /// Boundary: nonzero primitive integer c with <c, s> >= 0 for every s.
    std::vector<Integer> certificate;
};

/// Exact position of the origin relative to conv(S), with interiority taken
/// in the full ambient space Q^dim.
ZeroPositionResult zero_position_certified(const WeightPointSet& s);
ZeroPosition zero_position(const WeightPointSet& s);

/// Exact solution of A x = b, x >= 0 by phase-one simplex (Bland's rule).
/// On infeasibility returns a Farkas vector y with y^T A >= 0 and y^T b < 0.
struct FeasibilityResult {
    bool feasible = false;
    RationalVector x;
    RationalVector farkas;
};
FeasibilityResult nonnegative_solution(const std::vector<RationalVector>& a_rows, const RationalVector& b);

/// Vertices of conv(points) in the plane, counter-clockwise starting from
/// the lexicographically smallest; collinear boundary points are dropped.
std::vector<RationalVector> convex_hull_2d(std::vector<RationalVector> points);

}  // namespace gitkit

#endif
