#ifndef GITKIT_MULTIPOLY_HPP
#define GITKIT_MULTIPOLY_HPP

#include "gitkit/rational.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gitkit {

inline constexpr std::size_t kMaxVariables = 8;

using Exponent = std::array<std::uint16_t, kMaxVariables>;

unsigned total_degree(const Exponent& e);
bool divides(const Exponent& a, const Exponent& b);
Exponent lcm(const Exponent& a, const Exponent& b);
Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a, const Exponent& b);
bool coprime(const Exponent& a, const Exponent& b);

/// Degree-reverse-lexicographic comparison: <0, 0, >0.
int degrevlex_compare(const Exponent& a, const Exponent& b);

struct Term {
    Exponent exp{};
    Rational coeff;
};

/// Sparse polynomial over Q in at most kMaxVariables variables. Terms are
/// kept strictly decreasing in degrevlex order with no zero coefficients.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    static MultiPoly monomial(std::size_t nvars, const Exponent& e, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }
    unsigned degree() const;
    unsigned degree_in(std::size_t var) const;

    /// Coefficient of an exact exponent (zero if absent).
    Rational coefficient(const Exponent& e) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly pow(unsigned n) const;
    /// this - c * x^shift * other, merged in one pass.
    void sub_scaled_shifted(const Rational& c, const Exponent& shift, const MultiPoly& other);
    /// Multiplies every term by x^shift.
    MultiPoly shifted(const Exponent& shift) const;
    void make_monic();

    Rational evaluate(std::span<const Rational> point) const;
    /// Substitutes variable `var` := value; the variable count is unchanged.
    MultiPoly substitute(std::size_t var, const Rational& value) const;
    /// Composition f(images[0], ..., images[n-1]); all images share a variable count.
    MultiPoly compose(std::span<const MultiPoly> images) const;
    /// Reinterprets in a ring with a different variable count; `map[i]` is the
    /// new index of old variable i.
    MultiPoly remap(std::size_t new_nvars, std::span<const std::size_t> map) const;

    std::string to_string(std::span<const std::string> names) const;

private:
    void normalize_unsorted();

    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

/// Splits f into coefficients with respect to the first `split` variables:
/// returns pairs (exponent in the first block, polynomial in the remaining
/// variables re-indexed from 0).
std::vector<std::pair<Exponent, MultiPoly>> coefficients_in_leading_block(const MultiPoly& f,
                                                                          std::size_t split);

}  // namespace gitkit

#endif
