#ifndef GITKIT_NUMERIC_SOLVE_HPP
#define GITKIT_NUMERIC_SOLVE_HPP

#include "gitkit/multipoly.hpp"
#include "gitkit/weighted_polynomial.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gitkit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Value of f at a complex point.
Complex evaluate_complex(const MultiPoly& f, const ComplexVector& x);

/// max_g |g(x)| / sum_t |c_t| prod_v max(1, |x_v|)^e_tv. The floor at 1 keeps
/// the scale away from 0 when every term of g vanishes at the root.
double relative_residual(const std::vector<MultiPoly>& gens, const ComplexVector& x);

struct NumericSolveOptions {
    int starts = 48;
    // Convergence is only linear at singular zeros, which occur in practice.
    int max_iterations = 600;
    double accept = 1e-11;
    std::uint64_t seed = 0;
};

/// Damped Gauss-Newton (pseudo-inverse steps) from seeded random complex
/// starts. Intended for ideals already known to be proper.
std::optional<ComplexVector> numeric_common_zero(const std::vector<MultiPoly>& gens, std::size_t nvars,
                                                 const NumericSolveOptions& opts = {});

/// Coefficients of p(g (x, y), (z + a x^2 + b xy + c y^2) / det g) in
/// complex double arithmetic, keyed by (i, j, k). Independent of the exact
/// substitution code.
std::map<std::array<int, 3>, Complex> numeric_act(const WeightedPolynomial& p, const std::array<Complex, 4>& g,
                                                  const std::array<Complex, 3>& u);

}  // namespace gitkit

#endif
