#ifndef GITKIT_RATIONAL_HPP
#define GITKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gitkit {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Thrown for malformed user input (bad syntax, wrong degree, zero polynomial).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "n", "-n", "p/q" (q != 0) into a canonical rational.
Rational parse_rational(std::string_view text);

/// "p/q", or "n" when the denominator is 1.
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Uniform random rational num/den with |num| <= max_num and 1 <= den <= max_den.
Rational random_rational(std::mt19937_64& rng, long max_num, long max_den);

/// Parses a comma separated list of rationals ("1,-2,3/4").
RationalVector parse_rational_list(std::string_view text);

/// Smallest positive integer multiple of the vector with integer entries
/// and content 1. The zero vector maps to itself.
std::vector<Integer> primitive_integer_vector(const RationalVector& v);

}  // namespace gitkit

#endif
