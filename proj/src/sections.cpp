#include "gitkit/sections.hpp"

#include "gitkit/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace gitkit {

ZDegreeRange z_degree_range(const WeightedPolynomial& p)
{
    require_nonzero(p);
    ZDegreeRange r{p.degree(), 0};
    for (const auto& [m, c] : p.terms()) {
        r.k_min = std::min(r.k_min, m.k);
        r.k_max = std::max(r.k_max, m.k);
    }
    return r;
}

PolynomialIdeal section_ideal(const WeightedPolynomial& p, int m)
{
    require_nonzero(p);
    constexpr std::size_t kVars = 6;  // x, y, z, alpha, beta, gamma
    MultiPoly shifted = substitute_symbolic_section(p.to_multipoly(kVars), kVars, 3);
    PolynomialIdeal ideal{{"alpha", "beta", "gamma"}, {}};
    for (auto& [head, coeff] : coefficients_in_leading_block(shifted, 3)) {
        if (head[2] >= m) continue;
        ideal.generators.push_back(coeff);
    }
    return ideal;
}

SectionMultiplicity section_multiplicity_with_witness(const WeightedPolynomial& p, const GroebnerBudget& budget)
{
    auto range = z_degree_range(p);
    SectionMultiplicity result{range.k_min, UnipotentElement{0, 0, 0}};
    for (int m = range.k_min + 1; m <= range.k_max; ++m) {
        PolynomialIdeal ideal = section_ideal(p, m);
        if (!ideal_is_proper(ideal, budget)) break;
        result.multiplicity = m;
        result.witness.reset();
        if (auto pt = find_rational_point(ideal, budget)) result.witness = UnipotentElement{(*pt)[0], (*pt)[1], (*pt)[2]};
    }
    return result;
}

int section_multiplicity(const WeightedPolynomial& p, const GroebnerBudget& budget)
{
    auto range = z_degree_range(p);
    int mult = range.k_min;
    for (int m = range.k_min + 1; m <= range.k_max; ++m) {
        if (!ideal_is_proper(section_ideal(p, m), budget)) break;
        mult = m;
    }
    return mult;
}

bool BinaryForm::is_zero() const
{
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return gitkit::is_zero(c); });
}

Rational BinaryForm::evaluate(const Rational& x, const Rational& y) const
{
    Rational sum = 0;
    for (int i = 0; i <= degree; ++i) {
        Rational term = coeffs[static_cast<std::size_t>(i)];
        for (int e = 0; e < i; ++e) term *= x;
        for (int e = 0; e < degree - i; ++e) term *= y;
        sum += term;
    }
    return sum;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b)
{
    BinaryForm r{a.degree + b.degree, std::vector<Rational>(static_cast<std::size_t>(a.degree + b.degree + 1))};
    for (int i = 0; i <= a.degree; ++i)
        for (int j = 0; j <= b.degree; ++j)
            r.coeffs[static_cast<std::size_t>(i + j)] += a.coeffs[static_cast<std::size_t>(i)] * b.coeffs[static_cast<std::size_t>(j)];
    return r;
}

BinaryFormRoots binary_form_rational_roots(const BinaryForm& b)
{
    if (static_cast<int>(b.coeffs.size()) != b.degree + 1) throw std::invalid_argument("binary form: wrong coefficient count");
    if (b.is_zero()) throw std::invalid_argument("binary form: zero");
    BinaryFormRoots out;
    // Root [1:0] <=> y divides b <=> the x^degree coefficient vanishes.
    int top = b.degree;
    while (gitkit::is_zero(b.coeffs[static_cast<std::size_t>(top)])) --top;
    if (top < b.degree) out.roots.push_back({{1, 0}, b.degree - top});
    // Dehomogenize at y = 1: f(t) = sum coeffs[i] t^i of degree `top`.
    UniPoly f(b.coeffs.begin(), b.coeffs.begin() + top + 1);
    for (auto& [root, mult] : rational_roots(f)) {
        out.roots.push_back({{root, 1}, mult});
        for (int e = 0; e < mult; ++e) f = deflate(f, root);
    }
    // f now has no rational root; residual = f homogenized to degree `top`.
    out.residual.degree = static_cast<int>(f.size()) - 1;
    out.residual.coeffs = f;
    return out;
}

}  // namespace gitkit
