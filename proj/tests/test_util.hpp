#ifndef GITKIT_TEST_UTIL_HPP
#define GITKIT_TEST_UTIL_HPP

#include "gitkit/weighted_polynomial.hpp"

#include <random>

namespace gitkit::testing {

/// Random nonzero polynomial of degree d; each basis monomial is present
/// with probability `density`, coefficients are small integers.
inline WeightedPolynomial random_polynomial(std::mt19937_64& rng, int d, double density = 0.6, long max_coeff = 5)
{
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<long> coeff(-max_coeff, max_coeff);
    auto basis = monomial_basis(d);
    while (true) {
        WeightedPolynomial p(d);
        for (const auto& m : basis) {
            if (coin(rng) >= density) continue;
            long c = 0;
            while (c == 0) c = coeff(rng);
            p.add_term(m, Rational(c));
        }
        if (!p.is_zero()) return p;
    }
}

}  // namespace gitkit::testing

#endif
