#include "gitkit/group_action.hpp"

#include <stdexcept>

namespace gitkit {

GL2Element::GL2Element(Rational a, Rational b, Rational c, Rational d)
    : m_{std::move(a), std::move(b), std::move(c), std::move(d)}, det_(m_[0] * m_[3] - m_[1] * m_[2])
{
    if (gitkit::is_zero(det_)) throw std::invalid_argument("singular GL(2) element");
}

GL2Element GL2Element::identity() { return {1, 0, 0, 1}; }

GL2Element GL2Element::inverse() const
{
    return {m_[3] / det_, -m_[1] / det_, -m_[2] / det_, m_[0] / det_};
}

GL2Element operator*(const GL2Element& a, const GL2Element& b)
{
    return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
            a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

namespace {

MultiPoly xyz_monomial(int i, int j, int k, const Rational& c)
{
    Exponent e{};
    e[0] = static_cast<std::uint16_t>(i);
    e[1] = static_cast<std::uint16_t>(j);
    e[2] = static_cast<std::uint16_t>(k);
    return MultiPoly::monomial(3, e, c);
}

}  // namespace

WeightedPolynomial apply_unipotent(const WeightedPolynomial& p, const UnipotentElement& u)
{
    require_nonzero(p);
    MultiPoly shifted_z = xyz_monomial(0, 0, 1, 1) + xyz_monomial(2, 0, 0, u.alpha) + xyz_monomial(1, 1, 0, u.beta) +
                          xyz_monomial(0, 2, 0, u.gamma);
    std::vector<MultiPoly> zpow{MultiPoly::constant(3, 1)};
    MultiPoly out(3);
    for (const auto& [m, c] : p.terms()) {
        while (static_cast<int>(zpow.size()) <= m.k) zpow.push_back(zpow.back() * shifted_z);
        Exponent shift{};
        shift[0] = static_cast<std::uint16_t>(m.i);
        shift[1] = static_cast<std::uint16_t>(m.j);
        MultiPoly t = zpow[static_cast<std::size_t>(m.k)].shifted(shift);
        out.sub_scaled_shifted(-c, Exponent{}, t);
    }
    return WeightedPolynomial::from_multipoly(p.degree(), out);
}

WeightedPolynomial apply_gl2(const WeightedPolynomial& p, const GL2Element& g)
{
    require_nonzero(p);
    std::vector<MultiPoly> images{xyz_monomial(1, 0, 0, g(0, 0)) + xyz_monomial(0, 1, 0, g(0, 1)),
                                  xyz_monomial(1, 0, 0, g(1, 0)) + xyz_monomial(0, 1, 0, g(1, 1)),
                                  xyz_monomial(0, 0, 1, 1 / g.det())};
    return WeightedPolynomial::from_multipoly(p.degree(), p.to_multipoly().compose(images));
}

MultiPoly substitute_symbolic_section(const MultiPoly& p_xyz, std::size_t nvars, std::size_t first_param)
{
    if (first_param + 3 > nvars || nvars > kMaxVariables) throw std::invalid_argument("section parameters out of range");
    auto var = [nvars](std::size_t i) { return MultiPoly::variable(nvars, i); };
    MultiPoly x = var(0);
    MultiPoly y = var(1);
    MultiPoly z = var(2);
    MultiPoly q = var(first_param) * x * x + var(first_param + 1) * x * y + var(first_param + 2) * y * y;
    std::vector<MultiPoly> images{x, y, z + q};
    for (std::size_t i = 3; i < p_xyz.nvars(); ++i) images.push_back(var(i));
    return p_xyz.compose(images);
}

std::vector<std::vector<MultiPoly>> u_action_matrix(int d)
{
    auto basis = monomial_basis(d);
    const std::size_t n = basis.size();
    std::vector<std::vector<MultiPoly>> mat(n, std::vector<MultiPoly>(n, MultiPoly(3)));
    constexpr std::size_t kVars = 6;  // x, y, z, lambda, mu, nu
    for (std::size_t col = 0; col < n; ++col) {
        const auto& m = basis[col];
        MultiPoly mono = xyz_monomial(m.i, m.j, m.k, 1).remap(kVars, std::vector<std::size_t>{0, 1, 2});
        MultiPoly image = substitute_symbolic_section(mono, kVars, 3);
        for (auto& [head, coeff] : coefficients_in_leading_block(image, 3)) {
            WeightedMonomial target{static_cast<int>(head[0]), static_cast<int>(head[1]), static_cast<int>(head[2])};
            for (std::size_t row = 0; row < n; ++row)
                if (basis[row] == target) mat[row][col] = coeff;
        }
    }
    return mat;
}

}  // namespace gitkit
