#ifndef GITKIT_WEIGHTED_POLYNOMIAL_HPP
#define GITKIT_WEIGHTED_POLYNOMIAL_HPP

#include "gitkit/multipoly.hpp"
#include "gitkit/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gitkit {

/// x^i y^j z^k with weights (1,1,2).
struct WeightedMonomial {
    int i = 0;
    int j = 0;
    int k = 0;

    int weighted_degree() const { return i + j + 2 * k; }
    std::string to_string() const;
    friend bool operator==(const WeightedMonomial&, const WeightedMonomial&) = default;
};

/// Basis order: z-power ascending, then x-power descending.
struct BasisOrder {
    bool operator()(const WeightedMonomial& a, const WeightedMonomial& b) const
    {
        if (a.k != b.k) return a.k < b.k;
        return a.i > b.i;
    }
};

/// All monomials of weighted degree d in basis order, e.g. d = 4 gives
/// x^4, x^3y, x^2y^2, xy^3, y^4, x^2z, xyz, y^2z, z^2.
std::vector<WeightedMonomial> monomial_basis(int d);

/// A weighted-homogeneous polynomial of degree d in x, y, z.
class WeightedPolynomial {
public:
    using TermMap = std::map<WeightedMonomial, Rational, BasisOrder>;

    WeightedPolynomial() = default;
    explicit WeightedPolynomial(int d) : d_(d) {}

    int degree() const { return d_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c to the coefficient of m; throws std::invalid_argument on a degree mismatch.
    void add_term(const WeightedMonomial& m, const Rational& c);
    Rational coefficient(const WeightedMonomial& m) const;

    /// Interprets the polynomial in Q[x, y, z] (variables 0, 1, 2).
    MultiPoly to_multipoly(std::size_t nvars = 3) const;
    /// Inverse of to_multipoly; every term must have weighted degree d in
    /// the first three variables and no other variables.
    static WeightedPolynomial from_multipoly(int d, const MultiPoly& f);

    /// Text form, e.g. "z^2 - x^2*y^2".
    std::string to_text() const;

    friend bool operator==(const WeightedPolynomial&, const WeightedPolynomial&) = default;

private:
    int d_ = 0;
    TermMap terms_;
};

/// Parses the `c*x^i*y^j*z^k + ...` grammar and checks the weighted degree.
/// Errors (InputError): syntax error with position, degree mismatch naming
/// the monomial, zero polynomial.
WeightedPolynomial parse_polynomial(std::string_view text, int d);

/// Throws InputError("zero input") for the zero polynomial.
void require_nonzero(const WeightedPolynomial& p);

}  // namespace gitkit

#endif
