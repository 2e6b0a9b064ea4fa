#ifndef GITKIT_TORUS_GIT_HPP
#define GITKIT_TORUS_GIT_HPP

#include "gitkit/convex.hpp"
#include "gitkit/verdict.hpp"
#include "gitkit/weighted_polynomial.hpp"

#include <array>
#include <map>
#include <set>
#include <vector>

namespace gitkit {

/// Linear torus action on P^n: one weight vector per homogeneous coordinate
/// and a rational character twist added to every weight.
struct TorusLinearisation {
    int rank = 1;
    std::vector<RationalVector> weights;
    RationalVector twist;

    void validate() const;
    /// Rank-1 convenience constructor.
    static TorusLinearisation rank_one(const RationalVector& weights, const Rational& twist = 0);
};

/// Weight set of the coordinates in `support`, each shifted by the twist.
WeightPointSet twisted_support(const TorusLinearisation& lin, const std::vector<std::size_t>& support);

/// Hilbert-Mumford test: Stable iff 0 is interior to the hull of the
/// twisted support weights, StrictlySemistable iff on its boundary,
/// Unstable otherwise (with a separating primitive covector).
StabilityVerdict torus_test(const WeightPointSet& support);
StabilityVerdict torus_test(const TorusLinearisation& lin, const std::vector<std::size_t>& support);

/// T_c(GL2) weight (i - k + delta, j - k + delta) of every monomial of
/// degree d. Odd d is rejected (multiply by x first to make it even).
std::map<WeightedMonomial, RationalVector, BasisOrder> tc_weight_map(int d, const Rational& delta);

/// T_c verdict of a polynomial at twist delta.
StabilityVerdict tc_test(const WeightedPolynomial& p, const Rational& delta);

/// Central C^* weights d - 4k + 2 delta of the support of p.
StabilityVerdict central_test(const WeightedPolynomial& p, const Rational& delta);

struct Chamber {
    /// Open interval (lo, hi) of twists.
    Rational lo;
    Rational hi;
    /// Coordinates whose twisted weight is positive / negative inside the chamber.
    std::vector<std::size_t> positive;
    std::vector<std::size_t> negative;
};

/// Rank-1 wall and chamber structure in the twist parameter.
struct ChamberDecomposition {
    std::vector<Rational> walls;
    std::vector<Chamber> chambers;

    /// Verdict predicted by the table for a support at twist delta.
    Status predict(const TorusLinearisation& lin, const std::vector<std::size_t>& support,
                   const Rational& delta) const;
};

ChamberDecomposition vgit_chambers(const TorusLinearisation& lin);

/// Rank-2 walls: lines {tau : <normal, tau> = offset} in twist space where
/// two distinct shifted weights become collinear with 0. Each line is scaled
/// to coprime integers with the first nonzero normal entry positive.
struct WallLine {
    std::array<Integer, 2> normal;
    Integer offset;
    friend bool operator==(const WallLine&, const WallLine&) = default;
    friend bool operator<(const WallLine& a, const WallLine& b)
    {
        if (a.normal[0] != b.normal[0]) return a.normal[0] < b.normal[0];
        if (a.normal[1] != b.normal[1]) return a.normal[1] < b.normal[1];
        return a.offset < b.offset;
    }
};
std::vector<WallLine> rank_two_walls(const TorusLinearisation& lin);

/// Point [a0 : a_11 : ... : a_34] of P^12.
struct P12Point {
    Rational a0;
    std::array<std::array<Rational, 4>, 3> a;

    void validate() const;
    /// [1 : 0 : ... : 0].
    static P12Point origin();
    /// [1 : iota] with iota the rank-q pattern (q in 1..3).
    static P12Point iota(int q);
};

/// Exponent (i, j, k, l) of X^i Y^j W^k z^l on Y_d.
using YMonomial = std::array<int, 4>;

int rank_stratum(const P12Point& a);

/// Sufficient bound on N: for N >= bound, a point with a0 = 0 is unstable for
/// the SL(4) action regardless of y.
int product_n_bound(int d);

struct ProductTestResult {
    StabilityVerdict verdict;
    bool n_below_bound = false;
    WeightPointSet weights;
};

/// Torus test on P^12 x Y_d with linearisation O(N) x O(1) and twist delta.
ProductTestResult product_torus_test(const P12Point& a, const std::vector<YMonomial>& ysupport, int N,
                                     const Rational& delta);

/// Polynomial in (X, Y, W, z) of degree d/2 with p_hat(x^2, y^2, xy, z) = p.
struct HatPolynomial {
    int degree = 0;
    std::map<YMonomial, Rational> terms;
};
HatPolynomial embed_hat(const WeightedPolynomial& p);
/// Evaluates p_hat(x^2, y^2, xy, z) back to a polynomial in x, y, z.
WeightedPolynomial hat_pullback(const HatPolynomial& h, int d);

}  // namespace gitkit

#endif
