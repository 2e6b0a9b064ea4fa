#ifndef GITKIT_SECTIONS_HPP
#define GITKIT_SECTIONS_HPP

#include "gitkit/group_action.hpp"
#include "gitkit/groebner.hpp"
#include "gitkit/weighted_polynomial.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gitkit {

struct ZDegreeRange {
    int k_min = 0;
    int k_max = 0;
};

ZDegreeRange z_degree_range(const WeightedPolynomial& p);

/// Ideal in (alpha, beta, gamma) whose zeros are the quadrics q with
/// (z - q)^m dividing p: all (x, y)-coefficients of the z^t coefficient of
/// p(x, y, z + q) for t < m.
PolynomialIdeal section_ideal(const WeightedPolynomial& p, int m);

struct SectionMultiplicity {
    int multiplicity = 0;
    /// A rational quadric attaining the multiplicity, when one was found.
    std::optional<UnipotentElement> witness;
};

/// Largest m such that (z - q)^m divides p for some quadric q over the
/// algebraic closure, decided by ideal properness.
SectionMultiplicity section_multiplicity_with_witness(const WeightedPolynomial& p,
                                                      const GroebnerBudget& budget = default_budget());
int section_multiplicity(const WeightedPolynomial& p, const GroebnerBudget& budget = default_budget());

/// Homogeneous binary form; coeffs[i] multiplies x^i y^(degree - i).
struct BinaryForm {
    int degree = 0;
    std::vector<Rational> coeffs;

    bool is_zero() const;
    Rational evaluate(const Rational& x, const Rational& y) const;
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

/// Point [a : b] of P^1(Q), normalized to b = 1 or [1 : 0].
struct ProjectiveRoot {
    Rational a;
    Rational b;
    friend bool operator==(const ProjectiveRoot&, const ProjectiveRoot&) = default;
};

struct BinaryFormRoots {
    std::vector<std::pair<ProjectiveRoot, int>> roots;
    /// b divided by the product of (b_r x - a_r y)^mult; has no rational root.
    BinaryForm residual;
};

/// Rational projective roots of a nonzero binary form, [1:0] first when
/// present, then affine roots in increasing order.
BinaryFormRoots binary_form_rational_roots(const BinaryForm& b);

}  // namespace gitkit

#endif
