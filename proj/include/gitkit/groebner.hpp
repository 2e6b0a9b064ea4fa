#ifndef GITKIT_GROEBNER_HPP
#define GITKIT_GROEBNER_HPP

#include "gitkit/multipoly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gitkit {

/// Raised when a Groebner computation exceeds its budget. The answer is
/// unknown; callers must surface it instead of guessing.
class UndecidedError : public std::runtime_error {
public:
    explicit UndecidedError(const std::string& what) : std::runtime_error("undecided: " + what) {}
};

struct GroebnerBudget {
    /// Maximum number of S-polynomials reduced in one computation.
    std::size_t max_pairs = 20000;
    /// Maximum basis size before giving up.
    std::size_t max_basis = 2000;
};

/// Default budget, overridden by GITKIT_GROEBNER_BUDGET (max S-pairs).
GroebnerBudget default_budget();

struct PolynomialIdeal {
    std::vector<std::string> variables;
    std::vector<MultiPoly> generators;

    /// Throws std::invalid_argument if a generator has more variables than declared.
    void validate() const;
};

/// Reduced degrevlex Groebner basis (monic, sorted by leading monomial).
/// Returns {1} for the unit ideal and {} for the zero ideal.
std::vector<MultiPoly> groebner_basis(const PolynomialIdeal& ideal, const GroebnerBudget& budget);

/// Full normal form of f modulo a Groebner basis.
MultiPoly normal_form(MultiPoly f, const std::vector<MultiPoly>& basis);

/// True iff 1 is not in the ideal. Over Q this is equivalent to the ideal
/// having a common zero over the algebraic closure.
bool ideal_is_proper(const PolynomialIdeal& ideal, const GroebnerBudget& budget = default_budget());

/// Searches for a rational common zero by fixing variables one at a time,
/// keeping the ideal proper at every step. nullopt means no rational point was
/// found (the ideal may still be proper with only irrational zeros).
std::optional<RationalVector> find_rational_point(const PolynomialIdeal& ideal,
                                                  const GroebnerBudget& budget = default_budget());

}  // namespace gitkit

#endif
