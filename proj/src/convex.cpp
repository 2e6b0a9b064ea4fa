#include "gitkit/convex.hpp"

#include <algorithm>
#include <stdexcept>

namespace gitkit {

void WeightPointSet::validate() const
{
    if (dim < 1 || dim > 3) throw InputError("weight set dimension must be 1, 2 or 3");
    if (points.empty()) throw InputError("empty weight set");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim) throw InputError("weight vector has wrong length");
}

std::string to_string(ZeroPosition z)
{
    switch (z) {
    case ZeroPosition::Outside: return "Outside";
    case ZeroPosition::Boundary: return "Boundary";
    case ZeroPosition::Interior: return "Interior";
    }
    return "?";
}

FeasibilityResult nonnegative_solution(const std::vector<RationalVector>& a_rows, const RationalVector& b_in)
{
    const std::size_t m = a_rows.size();
    if (b_in.size() != m) throw std::invalid_argument("feasibility: shape mismatch");
    const std::size_t n = m == 0 ? 0 : a_rows[0].size();

    // Tableau columns: n structural, m artificial, then rhs.
    const std::size_t cols = n + m + 1;
    std::vector<RationalVector> t(m, RationalVector(cols));
    std::vector<int> row_sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (a_rows[i].size() != n) throw std::invalid_argument("feasibility: ragged matrix");
        row_sign[i] = sgn(b_in[i]) < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = row_sign[i] * a_rows[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = row_sign[i] * b_in[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // Reduced costs for minimizing the sum of artificials.
    RationalVector cost(cols);
    for (std::size_t j = n; j < n + m; ++j) cost[j] = 1;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cols; ++j) cost[j] -= t[i][j];

    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (sgn(cost[j]) < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // cannot happen in phase one (objective bounded below)
        Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = cost[enter];
        for (std::size_t j = 0; j < cols; ++j) cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    FeasibilityResult res;
    // Objective value is -cost[rhs].
    if (sgn(cost[cols - 1]) == 0) {
        res.feasible = true;
        res.x.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
        return res;
    }
    // Dual multipliers y_i = 1 - reduced cost of artificial i; Farkas vector is -y
    // in the sign-adjusted system, mapped back through row_sign.
    res.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.farkas[i] = -(1 - cost[n + i]) * row_sign[i];
    return res;
}

ZeroPositionResult zero_position_certified(const WeightPointSet& s)
{
    s.validate();
    const auto dim = static_cast<std::size_t>(s.dim);
    const std::size_t n = s.points.size();

    // 0 in conv(S) <=> exists lambda >= 0, sum lambda = 1, sum lambda s = 0.
    std::vector<RationalVector> rows(dim + 1, RationalVector(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < dim; ++i) rows[i][j] = s.points[j][i];
        rows[dim][j] = 1;
    }
    RationalVector rhs(dim + 1);
    rhs[dim] = 1;
    auto hull = nonnegative_solution(rows, rhs);
    if (!hull.feasible) {
        // y = (c, c0): <c, s> + c0 >= 0 and c0 < 0, hence <c, s> > 0.
        RationalVector c(hull.farkas.begin(), hull.farkas.begin() + static_cast<std::ptrdiff_t>(dim));
        return {ZeroPosition::Outside, primitive_integer_vector(c)};
    }

    // Interior <=> the cone over S is all of Q^dim <=> it contains +-e_i.
    rows.pop_back();
    for (std::size_t i = 0; i < dim; ++i) {
        for (int sign : {1, -1}) {
            RationalVector target(dim);
            target[i] = sign;
            auto cone = nonnegative_solution(rows, target);
            if (!cone.feasible) return {ZeroPosition::Boundary, primitive_integer_vector(cone.farkas)};
        }
    }
    return {ZeroPosition::Interior, {}};
}

ZeroPosition zero_position(const WeightPointSet& s) { return zero_position_certified(s).position; }

std::vector<RationalVector> convex_hull_2d(std::vector<RationalVector> pts)
{
    for (const auto& p : pts)
        if (p.size() != 2) throw std::invalid_argument("convex_hull_2d: points must be planar");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const RationalVector& o, const RationalVector& a, const RationalVector& b) -> Rational {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<RationalVector> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && sgn(cross(hull[k - 2], hull[k - 1], p)) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && sgn(cross(hull[k - 2], hull[k - 1], pts[i])) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace gitkit
