#ifndef GITKIT_GROUP_ACTION_HPP
#define GITKIT_GROUP_ACTION_HPP

#include "gitkit/multipoly.hpp"
#include "gitkit/weighted_polynomial.hpp"

#include <array>
#include <vector>

namespace gitkit {

/// (alpha, beta, gamma) acting by z -> z + alpha x^2 + beta xy + gamma y^2.
/// The group is abelian; the inverse negates all three entries.
struct UnipotentElement {
    Rational alpha;
    Rational beta;
    Rational gamma;

    UnipotentElement inverse() const { return {-alpha, -beta, -gamma}; }
    friend UnipotentElement operator+(const UnipotentElement& a, const UnipotentElement& b)
    {
        return {a.alpha + b.alpha, a.beta + b.beta, a.gamma + b.gamma};
    }
    friend bool operator==(const UnipotentElement&, const UnipotentElement&) = default;
};

/// Invertible 2x2 rational matrix with its determinant cached.
class GL2Element {
public:
    /// Throws std::invalid_argument when the determinant vanishes.
    GL2Element(Rational a, Rational b, Rational c, Rational d);
    static GL2Element identity();

    const Rational& operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
    const Rational& det() const { return det_; }
    GL2Element inverse() const;
    friend GL2Element operator*(const GL2Element& a, const GL2Element& b);
    friend bool operator==(const GL2Element&, const GL2Element&) = default;

private:
    std::array<Rational, 4> m_;
    Rational det_;
};

/// p(x, y, z + alpha x^2 + beta xy + gamma y^2). Rejects the zero polynomial.
WeightedPolynomial apply_unipotent(const WeightedPolynomial& p, const UnipotentElement& u);

/// Direct substitution (x, y) -> g (x, y), z -> det(g)^{-1} z. Satisfies
/// apply_gl2(apply_gl2(p, g1), g2) == apply_gl2(p, g1 * g2).
WeightedPolynomial apply_gl2(const WeightedPolynomial& p, const GL2Element& g);

/// Matrix of the U-action on monomial_basis(d) with entries in Q[lambda, mu, nu]
/// (3 variables). Entry [row][col] is the coefficient of basis[row] in the
/// image of basis[col].
std::vector<std::vector<MultiPoly>> u_action_matrix(int d);

/// p(x, y, z + q) with q = a x^2 + b xy + c y^2 symbolic. The result lives in
/// Q[x, y, z, params...] where the three section parameters occupy variables
/// `first_param`, `first_param + 1`, `first_param + 2` and the ring has `nvars` variables.
MultiPoly substitute_symbolic_section(const MultiPoly& p_xyz, std::size_t nvars, std::size_t first_param);

}  // namespace gitkit

#endif
