#include "gitkit/numeric_solve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gitkit {

namespace {

Complex cpow(const Complex& x, unsigned e)
{
    Complex r = 1;
    for (unsigned i = 0; i < e; ++i) r *= x;
    return r;
}

double term_scale(const MultiPoly& f, const ComplexVector& x)
{
    double s = 0;
    for (const auto& t : f.terms()) {
        double m = std::abs(t.coeff.get_d());
        for (std::size_t v = 0; v < f.nvars(); ++v) m *= std::pow(std::max(1.0, std::abs(x[v])), t.exp[v]);
        s += m;
    }
    return s;
}

}  // namespace

Complex evaluate_complex(const MultiPoly& f, const ComplexVector& x)
{
    if (x.size() < f.nvars()) throw std::invalid_argument("point has too few coordinates");
    Complex sum = 0;
    for (const auto& t : f.terms()) {
        Complex m = t.coeff.get_d();
        for (std::size_t v = 0; v < f.nvars(); ++v)
            if (t.exp[v]) m *= cpow(x[v], t.exp[v]);
        sum += m;
    }
    return sum;
}

double relative_residual(const std::vector<MultiPoly>& gens, const ComplexVector& x)
{
    double worst = 0;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        double scale = term_scale(g, x);
        double r = std::abs(evaluate_complex(g, x));
        worst = std::max(worst, scale > 0 ? r / scale : r);
    }
    return worst;
}

std::optional<ComplexVector> numeric_common_zero(const std::vector<MultiPoly>& gens, std::size_t nvars,
                                                 const NumericSolveOptions& opts)
{
    std::vector<MultiPoly> eqs;
    for (const auto& g : gens)
        if (!g.is_zero()) eqs.push_back(g);
    if (eqs.empty()) return ComplexVector(nvars, Complex(0));

    // Partial derivatives, computed once.
    std::vector<std::vector<MultiPoly>> jac(eqs.size(), std::vector<MultiPoly>(nvars));
    for (std::size_t i = 0; i < eqs.size(); ++i)
        for (std::size_t v = 0; v < nvars; ++v) {
            MultiPoly d(eqs[i].nvars());
            for (const auto& t : eqs[i].terms()) {
                if (t.exp[v] == 0) continue;
                Exponent e = t.exp;
                --e[v];
                d += MultiPoly::monomial(eqs[i].nvars(), e, t.coeff * t.exp[v]);
            }
            jac[i][v] = std::move(d);
        }

    auto residual_vec = [&](const ComplexVector& x) {
        Eigen::VectorXcd f(static_cast<Eigen::Index>(eqs.size()));
        for (std::size_t i = 0; i < eqs.size(); ++i) f(static_cast<Eigen::Index>(i)) = evaluate_complex(eqs[i], x);
        return f;
    };

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int start = 0; start < opts.starts; ++start) {
        ComplexVector x(nvars);
        for (auto& c : x) c = Complex(normal(rng), normal(rng));
        Eigen::VectorXcd f = residual_vec(x);
        double fnorm = f.norm();
        for (int it = 0; it < opts.max_iterations; ++it) {
            if (relative_residual(eqs, x) < opts.accept) return x;
            Eigen::MatrixXcd j(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(nvars));
            for (std::size_t i = 0; i < eqs.size(); ++i)
                for (std::size_t v = 0; v < nvars; ++v)
                    j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) = evaluate_complex(jac[i][v], x);
            Eigen::VectorXcd step = j.completeOrthogonalDecomposition().solve(f);
            double t = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h, t *= 0.5) {
                ComplexVector y = x;
                for (std::size_t v = 0; v < nvars; ++v) y[v] -= t * step(static_cast<Eigen::Index>(v));
                Eigen::VectorXcd fy = residual_vec(y);
                if (fy.norm() < fnorm) {
                    x = std::move(y);
                    f = std::move(fy);
                    fnorm = f.norm();
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        if (relative_residual(eqs, x) < opts.accept) return x;
    }
    return std::nullopt;
}

namespace {

using CPoly = std::map<std::array<int, 3>, Complex>;

CPoly mul(const CPoly& a, const CPoly& b)
{
    CPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) out[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
    return out;
}

CPoly cpoly_pow(const CPoly& a, int e)
{
    CPoly r{{{0, 0, 0}, Complex(1)}};
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

}  // namespace

std::map<std::array<int, 3>, Complex> numeric_act(const WeightedPolynomial& p, const std::array<Complex, 4>& g,
                                                  const std::array<Complex, 3>& u)
{
    const Complex det = g[0] * g[3] - g[1] * g[2];
    const CPoly xi{{{1, 0, 0}, g[0]}, {{0, 1, 0}, g[1]}};
    const CPoly yi{{{1, 0, 0}, g[2]}, {{0, 1, 0}, g[3]}};
    // z -> (z + q) / det, with q in the already transformed coordinates.
    const CPoly zi{{{0, 0, 1}, 1.0 / det}, {{2, 0, 0}, u[0] / det}, {{1, 1, 0}, u[1] / det}, {{0, 2, 0}, u[2] / det}};
    CPoly out;
    for (const auto& [m, c] : p.terms()) {
        CPoly t = mul(mul(cpoly_pow(xi, m.i), cpoly_pow(yi, m.j)), cpoly_pow(zi, m.k));
        const Complex cc = c.get_d();
        for (const auto& [e, v] : t) out[e] += cc * v;
    }
    return out;
}

}  // namespace gitkit
