#include "gitkit/envelope.hpp"
#include "gitkit/group_action.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace gitkit;

namespace {

RationalMatrix jordan_type(const std::vector<int>& sizes)
{
    int n = 0;
    for (int s : sizes) n += s;
    RationalMatrix e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::size_t offset = 0;
    for (int s : sizes) {
        for (int i = 0; i + 1 < s; ++i) e(offset + static_cast<std::size_t>(i), offset + static_cast<std::size_t>(i) + 1) = 1;
        offset += static_cast<std::size_t>(s);
    }
    return e;
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) = random_rational(rng, 5, 3);
    return m;
}

RationalMatrix random_invertible(std::mt19937_64& rng, std::size_t n)
{
    while (true) {
        RationalMatrix m = random_matrix(rng, n);
        if (determinant(m) != 0) return m;
    }
}

RationalVector random_vec(std::mt19937_64& rng, std::size_t n)
{
    RationalVector v(n);
    for (auto& x : v) x = random_rational(rng, 7, 3);
    return v;
}

// Number of monomials of degree D in M variables, by enumeration.
long count_monomials(int vars, int degree)
{
    if (vars == 0) return degree == 0 ? 1 : 0;
    long total = 0;
    for (int e = 0; e <= degree; ++e) total += count_monomials(vars - 1, degree - e);
    return total;
}

struct Point {
    std::vector<RationalVector> us;
    std::vector<RationalMatrix> hs;
};

Point random_point(std::mt19937_64& rng, const NilpotentRep& rep)
{
    Point p;
    for (int i = 0; i + 1 < rep.dimV; ++i) p.us.push_back(random_vec(rng, static_cast<std::size_t>(rep.r)));
    for (int l = 0; l + 1 < rep.dimV; ++l) p.hs.push_back(random_invertible(rng, static_cast<std::size_t>(rep.r)));
    return p;
}

bool same_element(const NilpotentRep& rep, const WmElement& a, const WmElement& b, const Point& pt)
{
    for (int j = 0; j < rep.dimV; ++j) {
        std::vector<RationalVector> us(pt.us.begin(), pt.us.begin() + j);
        if (a.eval(j, us, pt.hs) != b.eval(j, us, pt.hs)) return false;
    }
    return true;
}

NilpotentRep two_parameter_rep()
{
    RationalMatrix a(3, 3), b(3, 3);
    a(0, 1) = 1;
    b(0, 2) = 1;
    return NilpotentRep{2, 3, {a, b}};
}

}  // namespace

TEST(Envelope, ThetaDimMatchesMonomialCount)
{
    for (int r = 1; r <= 2; ++r)
        for (int n = 1; n <= 4; ++n)
            for (int j = 0; j < n; ++j) {
                ThetaSpec spec{r, n, j};
                long want = count_monomials(r * r * (n - 1), spec.degree_h());
                for (int k = 0; k < j; ++k) want *= r;
                EXPECT_EQ(theta_dim(spec), want) << "r=" << r << " n=" << n << " j=" << j;
            }
}

TEST(Envelope, DescriptorOfJordanBlock)
{
    NilpotentRep rep{1, 3, {jordan_type({3})}};
    FlagChain flag = derived_flag(rep);
    EXPECT_EQ(flag.dims, (std::vector<int>{3, 2, 1, 0}));
    WmDescriptor w = wm_descriptor(rep);
    ASSERT_EQ(w.component_dims.size(), w.theta_dims.size());
    Integer total = 0;
    for (std::size_t j = 0; j < w.component_dims.size(); ++j) total += w.component_dims[j];
    EXPECT_EQ(total, w.total);
}

TEST(Envelope, RejectsBadRepresentations)
{
    EXPECT_THROW((NilpotentRep{1, 2, {RationalMatrix::identity(2)}}.validate()), InputError);
    RationalMatrix a(2, 2), b(2, 2);
    a(0, 1) = 1;
    b(1, 0) = 1;
    EXPECT_THROW((NilpotentRep{2, 2, {a, b}}.validate()), InputError);
    EXPECT_THROW((NilpotentRep{1, 3, {a}}.validate()), InputError);
}

TEST(Envelope, AdjugateIdentity)
{
    std::mt19937_64 rng(41);
    for (std::size_t n = 1; n <= 4; ++n) {
        RationalMatrix h = random_matrix(rng, n);
        EXPECT_EQ(h * adjugate(h), determinant(h) * RationalMatrix::identity(n));
    }
}

TEST(Envelope, PsiEquivarianceRankOne)
{
    for (int n : {2, 3}) {
        NilpotentRep rep{1, n, {jordan_type({n})}};
        EquivarianceReport rep_out = check_psi_equivariance(rep, 50, 7);
        EXPECT_EQ(rep_out.trials, 50);
        EXPECT_EQ(rep_out.checks, 50 * n);
        EXPECT_TRUE(rep_out.violations.empty()) << rep_out.violations.front();
    }
    NilpotentRep split{1, 3, {jordan_type({2, 1})}};
    EXPECT_TRUE(check_psi_equivariance(split, 20, 8).violations.empty());
}

TEST(Envelope, PsiEquivarianceRankTwo)
{
    EquivarianceReport r = check_psi_equivariance(two_parameter_rep(), 20, 9);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_THROW(check_psi_equivariance(unipotent_lie_rep(4), 1, 0), InputError);
}

TEST(Envelope, GlrIsARightAction)
{
    std::mt19937_64 rng(42);
    for (const NilpotentRep& rep : {NilpotentRep{1, 3, {jordan_type({3})}}, two_parameter_rep()}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto rr = static_cast<std::size_t>(rep.r);
            RationalMatrix g1 = random_invertible(rng, rr), g2 = random_invertible(rng, rr);
            WmElement alpha = psi(rep, random_vec(rng, static_cast<std::size_t>(rep.dimV)));
            Point pt = random_point(rng, rep);
            EXPECT_TRUE(same_element(rep, glr_act_wm(rep, g1, glr_act_wm(rep, g2, alpha)),
                                     glr_act_wm(rep, g2 * g1, alpha), pt));
            EXPECT_TRUE(same_element(rep, glr_act_wm(rep, RationalMatrix::identity(rr), alpha), alpha, pt));
        }
    }
}

TEST(Envelope, ConjugatingUnipotentByGlr)
{
    std::mt19937_64 rng(43);
    for (const NilpotentRep& rep : {NilpotentRep{1, 3, {jordan_type({3})}}, two_parameter_rep()}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto rr = static_cast<std::size_t>(rep.r);
            RationalMatrix g = random_invertible(rng, rr);
            RationalMatrix ginv = inverse(g);
            RationalVector u = random_vec(rng, rr);
            WmElement alpha = psi(rep, random_vec(rng, static_cast<std::size_t>(rep.dimV)));
            WmElement lhs = glr_act_wm(rep, g, u_act_wm(rep, u, glr_act_wm(rep, ginv, alpha)));
            RationalVector u2 = (Rational(1) / determinant(g)) * ginv * u;
            Point pt = random_point(rng, rep);
            EXPECT_TRUE(same_element(rep, lhs, u_act_wm(rep, u2, alpha), pt));
        }
    }
}

TEST(Sl2, JordanTypesGiveTriples)
{
    std::mt19937_64 rng(44);
    for (const auto& sizes : std::vector<std::vector<int>>{{2}, {3, 2}, {4, 1}}) {
        RationalMatrix e0 = jordan_type(sizes);
        RationalMatrix p = random_invertible(rng, e0.rows());
        RationalMatrix e = p * e0 * inverse(p);
        Sl2Triple t = sl2_complete(e);
        EXPECT_EQ(t.e, e);
        EXPECT_EQ(t.block_sizes, sizes);
        EXPECT_EQ(commutator(t.h, t.e), Rational(2) * t.e);
        EXPECT_EQ(commutator(t.h, t.f), Rational(-2) * t.f);
        EXPECT_EQ(commutator(t.e, t.f), t.h);
    }
    EXPECT_THROW(sl2_complete(RationalMatrix::identity(2)), InputError);
}

// e on binary forms of degree n: f(x, y) -> d/dt f(x + t y, y) at t = 0.
TEST(Sl2, ExponentialIsTheAdditiveAction)
{
    std::mt19937_64 rng(45);
    for (int n = 1; n <= 4; ++n) {
        const auto dim = static_cast<std::size_t>(n + 1);
        RationalMatrix e(dim, dim);
        for (int i = 0; i < n; ++i) e(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = n - i;
        Rational t = random_rational(rng, 7, 3);
        RationalMatrix want(dim, dim);
        for (int i = 0; i <= n; ++i) {
            Integer binom = 1;
            Rational tp = 1;
            for (int m = 0; i + m <= n; ++m) {
                want(static_cast<std::size_t>(i + m), static_cast<std::size_t>(i)) = Rational(binom) * tp;
                binom = binom * (n - i - m) / (m + 1);
                tp *= t;
            }
        }
        EXPECT_EQ(nilpotent_exp(e, t), want);
        EXPECT_EQ(sl2_complete(e).block_sizes, (std::vector<int>{n + 1}));
    }
}

TEST(Sl2, ExponentialOfLieRepIsTheGroupAction)
{
    std::mt19937_64 rng(46);
    for (int d : {2, 4}) {
        NilpotentRep rep = unipotent_lie_rep(d);
        auto m = u_action_matrix(d);
        for (int trial = 0; trial < 5; ++trial) {
            RationalVector u = random_vec(rng, 3);
            RationalMatrix g = nilpotent_exp(rep.phi(u), 1);
            for (std::size_t r = 0; r < m.size(); ++r)
                for (std::size_t c = 0; c < m.size(); ++c) EXPECT_EQ(g(r, c), m[r][c].evaluate(u));
        }
    }
}
