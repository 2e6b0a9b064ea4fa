#include "gitkit/torus_git.hpp"

#include "gitkit/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gitkit {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Unstable: return "Unstable";
    case Status::StrictlySemistable: return "StrictlySemistable";
    case Status::Stable: return "Stable";
    }
    return "?";
}

Status parse_status(const std::string& s)
{
    if (s == "Unstable") return Status::Unstable;
    if (s == "StrictlySemistable") return Status::StrictlySemistable;
    if (s == "Stable") return Status::Stable;
    throw InputError("unknown status '" + s + "'");
}

void TorusLinearisation::validate() const
{
    if (rank < 1) throw InputError("torus rank must be at least 1");
    if (weights.empty()) throw InputError("linearisation has no coordinates");
    for (const auto& w : weights)
        if (static_cast<int>(w.size()) != rank) throw InputError("weight vector length differs from rank");
    if (static_cast<int>(twist.size()) != rank) throw InputError("twist length differs from rank");
}

TorusLinearisation TorusLinearisation::rank_one(const RationalVector& weights, const Rational& twist)
{
    TorusLinearisation lin;
    lin.rank = 1;
    for (const auto& w : weights) lin.weights.push_back({w});
    lin.twist = {twist};
    return lin;
}

WeightPointSet twisted_support(const TorusLinearisation& lin, const std::vector<std::size_t>& support)
{
    lin.validate();
    if (support.empty()) throw InputError("empty support");
    WeightPointSet s;
    s.dim = lin.rank;
    for (auto idx : support) {
        if (idx >= lin.weights.size()) throw InputError("support index " + std::to_string(idx) + " out of range");
        RationalVector w = lin.weights[idx];
        for (int c = 0; c < lin.rank; ++c) w[static_cast<std::size_t>(c)] += lin.twist[static_cast<std::size_t>(c)];
        s.points.push_back(std::move(w));
    }
    return s;
}

StabilityVerdict torus_test(const WeightPointSet& support)
{
    support.validate();
    auto zp = zero_position_certified(support);
    StabilityVerdict v;
    switch (zp.position) {
    case ZeroPosition::Interior: v.status = Status::Stable; break;
    case ZeroPosition::Boundary:
        v.status = Status::StrictlySemistable;
        v.certificate = Certificate{"supporting-covector", zp.certificate, std::nullopt, std::nullopt,
                                    "<c, w> >= 0 on every weight"};
        break;
    case ZeroPosition::Outside:
        v.status = Status::Unstable;
        v.certificate = Certificate{"covector", zp.certificate, std::nullopt, std::nullopt,
                                    "<c, w> > 0 on every weight"};
        break;
    }
    return v;
}

StabilityVerdict torus_test(const TorusLinearisation& lin, const std::vector<std::size_t>& support)
{
    return torus_test(twisted_support(lin, support));
}

namespace {

void require_even(int d)
{
    if (d < 0) throw InputError("negative degree");
    if (d % 2 != 0)
        throw InputError("odd degree d=" + std::to_string(d) +
                         ": multiply the polynomial by x to obtain an even degree first");
}

}  // namespace

std::map<WeightedMonomial, RationalVector, BasisOrder> tc_weight_map(int d, const Rational& delta)
{
    require_even(d);
    std::map<WeightedMonomial, RationalVector, BasisOrder> out;
    for (const auto& m : monomial_basis(d))
        out.emplace(m, RationalVector{Rational(m.i - m.k) + delta, Rational(m.j - m.k) + delta});
    return out;
}

StabilityVerdict tc_test(const WeightedPolynomial& p, const Rational& delta)
{
    require_nonzero(p);
    require_even(p.degree());
    WeightPointSet s;
    s.dim = 2;
    for (const auto& [m, c] : p.terms())
        s.points.push_back({Rational(m.i - m.k) + delta, Rational(m.j - m.k) + delta});
    return torus_test(s);
}

StabilityVerdict central_test(const WeightedPolynomial& p, const Rational& delta)
{
    require_nonzero(p);
    WeightPointSet s;
    s.dim = 1;
    for (const auto& [m, c] : p.terms()) s.points.push_back({Rational(p.degree() - 4 * m.k) + 2 * delta});
    return torus_test(s);
}

ChamberDecomposition vgit_chambers(const TorusLinearisation& lin)
{
    lin.validate();
    if (lin.rank != 1) throw InputError("vgit_chambers needs a rank-1 linearisation");
    ChamberDecomposition out;
    for (const auto& w : lin.weights) out.walls.push_back(-w[0]);
    std::sort(out.walls.begin(), out.walls.end());
    out.walls.erase(std::unique(out.walls.begin(), out.walls.end()), out.walls.end());
    for (std::size_t c = 0; c + 1 < out.walls.size(); ++c) {
        Chamber ch{out.walls[c], out.walls[c + 1], {}, {}};
        Rational mid = (ch.lo + ch.hi) / 2;
        for (std::size_t i = 0; i < lin.weights.size(); ++i)
            (lin.weights[i][0] + mid > 0 ? ch.positive : ch.negative).push_back(i);
        out.chambers.push_back(std::move(ch));
    }
    return out;
}

Status ChamberDecomposition::predict(const TorusLinearisation& lin, const std::vector<std::size_t>& support,
                                     const Rational& delta) const
{
    if (support.empty()) throw InputError("empty support");
    auto contains = [&](const std::vector<std::size_t>& set) {
        return std::any_of(support.begin(), support.end(), [&](std::size_t i) {
            return std::find(set.begin(), set.end(), i) != set.end();
        });
    };
    for (const auto& ch : chambers)
        if (ch.lo < delta && delta < ch.hi)
            return contains(ch.positive) && contains(ch.negative) ? Status::Stable : Status::Unstable;
    // On a wall or outside all chambers: read off signs directly.
    bool pos = false, neg = false, zero = false;
    for (auto i : support) {
        int s = sgn(lin.weights.at(i)[0] + delta);
        pos |= s > 0;
        neg |= s < 0;
        zero |= s == 0;
    }
    if (pos && neg) return Status::Stable;
    return zero ? Status::StrictlySemistable : Status::Unstable;
}

std::vector<WallLine> rank_two_walls(const TorusLinearisation& lin)
{
    lin.validate();
    if (lin.rank != 2) throw InputError("rank_two_walls needs a rank-2 linearisation");
    std::set<WallLine> lines;
    const auto& w = lin.weights;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            RationalVector a{w[i][0] - w[j][0], w[i][1] - w[j][1]};
            if (sgn(a[0]) == 0 && sgn(a[1]) == 0) continue;
            // det(w_i + t, w_j + t) = 0  <=>  <(-a1, a0), t> = -det(w_i, w_j)
            Rational det = w[i][0] * w[j][1] - w[i][1] * w[j][0];
            auto v = primitive_integer_vector({-a[1], a[0], -det});
            if (sgn(v[0]) < 0 || (sgn(v[0]) == 0 && sgn(v[1]) < 0))
                for (auto& x : v) x = -x;
            lines.insert(WallLine{{v[0], v[1]}, v[2]});
        }
    return {lines.begin(), lines.end()};
}

void P12Point::validate() const
{
    if (sgn(a0) != 0) return;
    for (const auto& row : a)
        for (const auto& x : row)
            if (sgn(x) != 0) return;
    throw InputError("all coordinates of the P^12 point vanish");
}

P12Point P12Point::origin()
{
    P12Point p;
    p.a0 = 1;
    return p;
}

P12Point P12Point::iota(int q)
{
    if (q < 0 || q > 3) throw InputError("iota pattern rank must be in 0..3");
    P12Point p = origin();
    for (int l = 0; l < q; ++l) p.a[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)] = 1;
    return p;
}

int rank_stratum(const P12Point& a)
{
    a.validate();
    RationalMatrix m(3, 4);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = a.a[r][c];
    return static_cast<int>(rank(m));
}

int product_n_bound(int d)
{
    require_even(d);
    return 1 + 3 * d / 2;
}

ProductTestResult product_torus_test(const P12Point& a, const std::vector<YMonomial>& ysupport, int N,
                                     const Rational& delta)
{
    a.validate();
    if (ysupport.empty()) throw InputError("empty Y support");
    if (N <= 0) throw InputError("N must be positive");
    int half = -1;
    for (const auto& m : ysupport) {
        if (std::any_of(m.begin(), m.end(), [](int e) { return e < 0; }))
            throw InputError("negative exponent in Y support");
        int deg = m[0] + m[1] + m[2] + m[3];
        if (half < 0) half = deg;
        if (deg != half) throw InputError("Y support monomials of different degrees");
    }
    const int d = 2 * half;

    ProductTestResult out;
    out.n_below_bound = N < product_n_bound(d);
    out.weights.dim = 3;

    // chi_1, chi_2, chi_3 coordinates with chi_4 = -(chi_1 + chi_2 + chi_3);
    // the twist shifts every Y weight by delta (1, 1, 1).
    std::vector<RationalVector> yweights;
    for (const auto& m : ysupport)
        yweights.push_back({Rational(m[0] - m[3]) + delta, Rational(m[1] - m[3]) + delta,
                            Rational(m[2] - m[3]) + delta});
    if (sgn(a.a0) != 0)
        for (const auto& y : yweights) out.weights.points.push_back(y);
    for (std::size_t col = 0; col < 4; ++col) {
        bool nonzero = false;
        for (std::size_t row = 0; row < 3; ++row) nonzero |= sgn(a.a[row][col]) != 0;
        if (!nonzero) continue;
        RationalVector chi(3);
        if (col < 3)
            chi[col] = N;
        else
            chi = {Rational(-N), Rational(-N), Rational(-N)};
        for (const auto& y : yweights)
            out.weights.points.push_back({chi[0] + y[0], chi[1] + y[1], chi[2] + y[2]});
    }

    if (sgn(a.a0) == 0 && !out.n_below_bound) {
        // Move the row space of (a_ij) off the last basis vector; the 1-PS
        // diag(t, t, t, t^-3) then has positive weight on every coordinate.
        out.verdict.status = Status::Unstable;
        out.verdict.certificate = Certificate{"one-parameter-subgroup", {1, 1, 1, -3}, std::nullopt, std::nullopt,
                                              "after a basis change sending the row space of a into the "
                                              "first three coordinates; N exceeds 3d/2"};
        return out;
    }
    out.verdict = torus_test(out.weights);
    return out;
}

HatPolynomial embed_hat(const WeightedPolynomial& p)
{
    require_nonzero(p);
    require_even(p.degree());
    HatPolynomial h;
    h.degree = p.degree() / 2;
    for (const auto& [m, c] : p.terms()) {
        const int lo = std::min(m.i, m.j);
        const int hi = std::max(m.i, m.j);
        // ceil((lo - hi) / 2) with lo - hi even here since i = j mod 2
        const int shift = -((hi - lo) / 2);
        YMonomial e{(m.i - hi) / 2 - shift, (m.j - hi) / 2 - shift, hi + 2 * shift, m.k};
        h.terms[e] += c;
    }
    return h;
}

WeightedPolynomial hat_pullback(const HatPolynomial& h, int d)
{
    WeightedPolynomial p(d);
    for (const auto& [e, c] : h.terms) p.add_term({2 * e[0] + e[2], 2 * e[1] + e[2], e[3]}, c);
    return p;
}

}  // namespace gitkit
