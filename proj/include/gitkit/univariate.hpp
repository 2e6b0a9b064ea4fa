#ifndef GITKIT_UNIVARIATE_HPP
#define GITKIT_UNIVARIATE_HPP

#include "gitkit/rational.hpp"

#include <utility>
#include <vector>

namespace gitkit {

/// Dense univariate polynomial, coeffs[i] multiplies t^i.
using UniPoly = std::vector<Rational>;

void trim(UniPoly& p);
Rational horner(const UniPoly& p, const Rational& t);
/// Divides by (t - root); the remainder must be zero.
UniPoly deflate(const UniPoly& p, const Rational& root);

/// Distinct rational roots of p with multiplicities, ascending by value.
/// p must be nonzero.
std::vector<std::pair<Rational, int>> rational_roots(const UniPoly& p);

}  // namespace gitkit

#endif
