#include "gitkit/envelope.hpp"

#include "gitkit/group_action.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gitkit {

void NilpotentRep::validate() const
{
    if (r < 1) throw InputError("r must be at least 1");
    if (dimV < 1) throw InputError("dimV must be at least 1");
    if (static_cast<int>(generators.size()) != r) throw InputError("expected " + std::to_string(r) + " generators");
    for (const auto& g : generators) {
        if (static_cast<int>(g.rows()) != dimV || static_cast<int>(g.cols()) != dimV)
            throw InputError("generator is not dimV x dimV");
        if (!is_nilpotent(g)) throw InputError("generator is not nilpotent");
    }
    for (std::size_t a = 0; a < generators.size(); ++a)
        for (std::size_t b = a + 1; b < generators.size(); ++b)
            if (!commutator(generators[a], generators[b]).is_zero()) throw InputError("generators do not commute");
}

RationalMatrix NilpotentRep::phi(const RationalVector& u) const
{
    if (static_cast<int>(u.size()) != r) throw std::invalid_argument("u has the wrong length");
    RationalMatrix m(static_cast<std::size_t>(dimV), static_cast<std::size_t>(dimV));
    for (std::size_t a = 0; a < generators.size(); ++a)
        if (sgn(u[a]) != 0) m += generators[a] * u[a];
    return m;
}

NilpotentRep unipotent_lie_rep(int d)
{
    auto mat = u_action_matrix(d);
    const std::size_t n = mat.size();
    NilpotentRep rep;
    rep.r = 3;
    rep.dimV = static_cast<int>(n);
    for (std::size_t a = 0; a < 3; ++a) {
        RationalMatrix g(n, n);
        Exponent e{};
        e[a] = 1;
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t col = 0; col < n; ++col) g(row, col) = mat[row][col].coefficient(e);
        rep.generators.push_back(std::move(g));
    }
    return rep;
}

FlagChain derived_flag(const NilpotentRep& rep)
{
    rep.validate();
    FlagChain chain;
    std::vector<RationalVector> current;
    for (int i = 0; i < rep.dimV; ++i) {
        RationalVector e(static_cast<std::size_t>(rep.dimV));
        e[static_cast<std::size_t>(i)] = 1;
        current.push_back(e);
    }
    while (!current.empty()) {
        chain.bases.push_back(current);
        chain.dims.push_back(static_cast<int>(current.size()));
        std::vector<RationalVector> images;
        for (const auto& g : rep.generators)
            for (const auto& v : current) images.push_back(g * v);
        current = independent_subset(images);
        if (static_cast<int>(chain.dims.size()) > rep.dimV) throw std::logic_error("flag did not terminate");
    }
    chain.bases.emplace_back();
    chain.dims.push_back(0);
    return chain;
}

void ThetaSpec::validate() const
{
    if (r < 1 || dimV < 1) throw InputError("theta spec needs r >= 1 and dimV >= 1");
    if (j < 0 || j > dimV - 1) throw InputError("theta spec needs 0 <= j <= dimV - 1");
    if (degree_h() < 0) throw InputError("negative h-degree in theta spec");
}

Integer theta_dim(const ThetaSpec& spec)
{
    spec.validate();
    const long m = static_cast<long>(spec.r) * spec.r * (spec.dimV - 1);
    const long dh = spec.degree_h();
    Integer count;
    if (m == 0) {
        count = dh == 0 ? 1 : 0;
    } else {
        mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(dh + m - 1), static_cast<unsigned long>(m - 1));
    }
    Integer rj;
    mpz_ui_pow_ui(rj.get_mpz_t(), static_cast<unsigned long>(spec.r), static_cast<unsigned long>(spec.j));
    return rj * count;
}

WmDescriptor wm_descriptor(const NilpotentRep& rep)
{
    auto flag = derived_flag(rep);
    WmDescriptor out;
    out.total = 0;
    for (int j = 0; j < rep.dimV; ++j) {
        Integer t = theta_dim({rep.r, rep.dimV, j});
        int f = j < static_cast<int>(flag.dims.size()) ? flag.dims[static_cast<std::size_t>(j)] : 0;
        out.theta_dims.push_back(t);
        out.flag_dims.push_back(f);
        out.component_dims.push_back(t * f);
        out.total += t * f;
    }
    return out;
}

namespace {

void check_shapes(const NilpotentRep& rep, int j, const std::vector<RationalVector>& us,
                  const std::vector<RationalMatrix>& hs)
{
    if (j < 0 || j >= rep.dimV) throw std::invalid_argument("component index out of range");
    if (static_cast<int>(us.size()) != j) throw std::invalid_argument("expected j vectors u_i");
    if (static_cast<int>(hs.size()) != rep.dimV - 1) throw std::invalid_argument("expected dimV - 1 matrices h_l");
    for (const auto& u : us)
        if (static_cast<int>(u.size()) != rep.r) throw std::invalid_argument("u_i has the wrong length");
    for (const auto& h : hs)
        if (static_cast<int>(h.rows()) != rep.r || static_cast<int>(h.cols()) != rep.r)
            throw std::invalid_argument("h_l has the wrong shape");
}

}  // namespace

RationalVector psi_evaluate(const NilpotentRep& rep, const RationalVector& v, int j,
                            const std::vector<RationalVector>& us, const std::vector<RationalMatrix>& hs)
{
    check_shapes(rep, j, us, hs);
    if (static_cast<int>(v.size()) != rep.dimV) throw std::invalid_argument("v has the wrong length");
    const int n = rep.dimV;
    Rational scale = 1;
    for (int l = 1; l <= n - j - 1; ++l) scale *= determinant(hs[static_cast<std::size_t>(l - 1)]);
    // Innermost factor is phi(h_{n-j} u_j).
    RationalVector w = v;
    for (int i = j; i >= 1; --i) {
        const auto& h = hs[static_cast<std::size_t>(n - i - 1)];
        w = rep.phi(h * us[static_cast<std::size_t>(i - 1)]) * w;
    }
    for (auto& x : w) x *= scale;
    return w;
}

WmElement psi(const NilpotentRep& rep, const RationalVector& v)
{
    return {rep.dimV, [rep, v](int j, const std::vector<RationalVector>& us, const std::vector<RationalMatrix>& hs) {
                return psi_evaluate(rep, v, j, us, hs);
            }};
}

RationalMatrix adjugate(const RationalMatrix& h)
{
    if (!h.is_square()) throw std::invalid_argument("adjugate of a non-square matrix");
    const std::size_t n = h.rows();
    RationalMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            RationalMatrix minor(n - 1, n - 1);
            for (std::size_t a = 0, ra = 0; a < n; ++a) {
                if (a == i) continue;
                for (std::size_t b = 0, cb = 0; b < n; ++b) {
                    if (b == k) continue;
                    minor(ra, cb++) = h(a, b);
                }
                ++ra;
            }
            Rational c = determinant(minor);
            if ((i + k) % 2) c = -c;
            adj(k, i) = c;
        }
    return adj;
}

WmElement u_act_wm(const NilpotentRep& rep, const RationalVector& u, const WmElement& alpha)
{
    if (static_cast<int>(u.size()) != rep.r) throw std::invalid_argument("u has the wrong length");
    const int n = rep.dimV;
    return {n, [n, u, alpha](int j, const std::vector<RationalVector>& us, const std::vector<RationalMatrix>& hs) {
                if (j + 1 >= n) return RationalVector(static_cast<std::size_t>(n));
                std::vector<RationalVector> args = us;
                args.push_back(adjugate(hs[static_cast<std::size_t>(n - 2 - j)]) * u);
                return alpha.eval(j + 1, args, hs);
            }};
}

WmElement glr_act_wm(const NilpotentRep& rep, const RationalMatrix& g, const WmElement& alpha)
{
    if (static_cast<int>(g.rows()) != rep.r || !g.is_square()) throw std::invalid_argument("g has the wrong shape");
    const Rational det = determinant(g);
    if (sgn(det) == 0) throw std::invalid_argument("singular g");
    const RationalMatrix ginv = inverse(g);
    return {rep.dimV,
            [g, ginv, det, alpha](int j, const std::vector<RationalVector>& us, const std::vector<RationalMatrix>& hs) {
                std::vector<RationalVector> gu;
                for (const auto& u : us) gu.push_back(g * u);
                std::vector<RationalMatrix> gh;
                for (const auto& h : hs) gh.push_back(g * h * ginv);
                RationalVector out = alpha.eval(j, gu, gh);
                Rational scale = 1;
                for (int i = 0; i < j; ++i) scale *= det;
                for (auto& x : out) x *= scale;
                return out;
            }};
}

namespace {

std::string vec_text(const RationalVector& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

}  // namespace

EquivarianceReport check_psi_equivariance(const NilpotentRep& rep, int trials, std::uint64_t seed, int size_guard)
{
    rep.validate();
    if (rep.dimV > size_guard)
        throw InputError("dimV " + std::to_string(rep.dimV) + " exceeds the size guard " + std::to_string(size_guard));
    std::mt19937_64 rng(seed);
    auto rvec = [&](int len) {
        RationalVector v(static_cast<std::size_t>(len));
        for (auto& x : v) x = random_rational(rng, 9, 5);
        return v;
    };
    auto rmat = [&](int k) {
        RationalMatrix m(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) m(a, b) = random_rational(rng, 9, 5);
        return m;
    };
    EquivarianceReport report;
    report.trials = trials;
    for (int t = 0; t < trials; ++t) {
        RationalVector v = rvec(rep.dimV);
        RationalVector u = rvec(rep.r);
        std::vector<RationalMatrix> hs;
        for (int l = 0; l + 1 < rep.dimV; ++l) hs.push_back(rmat(rep.r));
        std::vector<RationalVector> all_us;
        for (int i = 0; i + 1 < rep.dimV; ++i) all_us.push_back(rvec(rep.r));
        const RationalVector moved = rep.phi(u) * v;
        const WmElement rhs = u_act_wm(rep, u, psi(rep, v));
        for (int j = 0; j < rep.dimV; ++j) {
            std::vector<RationalVector> us(all_us.begin(), all_us.begin() + j);
            ++report.checks;
            if (psi_evaluate(rep, moved, j, us, hs) != rhs.eval(j, us, hs))
                report.violations.push_back("trial " + std::to_string(t) + " j=" + std::to_string(j) + " v=" +
                                            vec_text(v) + " u=" + vec_text(u));
        }
    }
    return report;
}

Sl2Triple sl2_complete(const RationalMatrix& e)
{
    if (!e.is_square()) throw InputError("sl2_complete needs a square matrix");
    if (!is_nilpotent(e)) throw InputError("matrix is not nilpotent");
    const std::size_t n = e.rows();
    // kernels[s] = basis of ker e^s.
    std::vector<std::vector<RationalVector>> kernels{{}};
    std::size_t index = 0;
    for (std::size_t s = 1; s <= n; ++s) {
        kernels.push_back(nullspace(power(e, static_cast<unsigned>(s))));
        if (kernels.back().size() == n) {
            index = s;
            break;
        }
    }
    if (n == 0) index = 0;

    struct Block {
        RationalVector top;
        std::size_t size;
    };
    std::vector<Block> blocks;
    for (std::size_t s = index; s >= 1; --s) {
        std::vector<RationalVector> span = kernels[s - 1];
        for (const auto& b : blocks) {
            // Height-s vector of a longer chain: e^(size - s) top.
            RationalVector w = b.top;
            for (std::size_t t = 0; t < b.size - s; ++t) w = e * w;
            span.push_back(w);
        }
        std::size_t r = independent_subset(span).size();
        for (const auto& cand : kernels[s]) {
            span.push_back(cand);
            std::size_t r2 = independent_subset(span).size();
            if (r2 > r) {
                blocks.push_back({cand, s});
                r = r2;
            } else {
                span.pop_back();
            }
        }
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.size > b.size; });

    Sl2Triple out;
    out.e = e;
    std::vector<RationalVector> columns;
    RationalMatrix hb(n, n), fb(n, n);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        out.block_sizes.push_back(static_cast<int>(b.size));
        std::vector<RationalVector> chain(b.size);
        chain[b.size - 1] = b.top;
        for (std::size_t i = b.size - 1; i-- > 0;) chain[i] = e * chain[i + 1];
        const long k = static_cast<long>(b.size) - 1;
        for (std::size_t i = 0; i < b.size; ++i) {
            columns.push_back(chain[i]);
            const long one_based = static_cast<long>(i) + 1;
            hb(offset + i, offset + i) = k - 2 * (one_based - 1);
            if (i + 1 < b.size) fb(offset + i + 1, offset + i) = one_based * (k - one_based + 1);
        }
        offset += b.size;
    }
    out.jordan_basis = RationalMatrix::from_columns(columns, n);
    const RationalMatrix pinv = inverse(out.jordan_basis);
    out.h = out.jordan_basis * hb * pinv;
    out.f = out.jordan_basis * fb * pinv;
    return out;
}

RationalMatrix nilpotent_exp(const RationalMatrix& e, const Rational& t)
{
    const std::size_t n = e.rows();
    RationalMatrix result = RationalMatrix::identity(n);
    RationalMatrix term = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        term = term * e * (t / Rational(static_cast<long>(k)));
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

}  // namespace gitkit
