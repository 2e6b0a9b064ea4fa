#include "gitkit/group_action.hpp"
#include "gitkit/groebner.hpp"
#include "gitkit/io.hpp"
#include "gitkit/multipoly.hpp"
#include "gitkit/rational.hpp"
#include "gitkit/sections.hpp"
#include "gitkit/univariate.hpp"
#include "gitkit/weighted_polynomial.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace gitkit;

namespace {

MultiPoly var(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }
MultiPoly cst(std::size_t n, long c) { return MultiPoly::constant(n, Rational(c)); }

MultiPoly random_multipoly(std::mt19937_64& rng, std::size_t nvars, int terms, int max_deg)
{
    MultiPoly f(nvars);
    std::uniform_int_distribution<int> deg(0, max_deg);
    for (int t = 0; t < terms; ++t) {
        Exponent e{};
        for (std::size_t i = 0; i < nvars; ++i) e[i] = static_cast<std::uint16_t>(deg(rng));
        f += MultiPoly::monomial(nvars, e, random_rational(rng, 7, 3));
    }
    return f;
}

RationalVector random_point(std::mt19937_64& rng, std::size_t n)
{
    RationalVector p(n);
    for (auto& x : p) x = random_rational(rng, 9, 4);
    return p;
}

}  // namespace

TEST(Rational, ParseCanonicalizesAndRejectsGarbage)
{
    EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
    EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
    EXPECT_EQ(to_string(parse_rational("0")), "0");
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_THROW(parse_rational("abc"), InputError);
    EXPECT_THROW(parse_rational(""), InputError);
    auto v = parse_rational_list("1,-2,3/4");
    ASSERT_EQ(v.size(), 3U);
    EXPECT_EQ(v[2], make_rational(3, 4));
}

TEST(Rational, PrimitiveIntegerVector)
{
    auto v = primitive_integer_vector({make_rational(2, 3), make_rational(-4, 9)});
    ASSERT_EQ(v.size(), 2U);
    EXPECT_EQ(v[0], 3);
    EXPECT_EQ(v[1], -2);
}

TEST(MultiPoly, SquareOfBinomial)
{
    MultiPoly x = var(2, 0), y = var(2, 1);
    MultiPoly lhs = (x + y).pow(2);
    MultiPoly rhs = x * x + cst(2, 2) * x * y + y * y;
    EXPECT_EQ(lhs, rhs);
    EXPECT_TRUE((lhs - rhs).is_zero());
}

// Ring operations agree with pointwise evaluation.
TEST(MultiPoly, EvaluationIsARingHomomorphism)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        MultiPoly f = random_multipoly(rng, 3, 5, 3), g = random_multipoly(rng, 3, 4, 2);
        RationalVector pt = random_point(rng, 3);
        EXPECT_EQ((f * g).evaluate(pt), f.evaluate(pt) * g.evaluate(pt));
        EXPECT_EQ((f + g).evaluate(pt), f.evaluate(pt) + g.evaluate(pt));
        EXPECT_EQ(f.pow(3).evaluate(pt), f.evaluate(pt) * f.evaluate(pt) * f.evaluate(pt));
    }
}

TEST(MultiPoly, CompositionMatchesEvaluation)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly f = random_multipoly(rng, 2, 4, 3);
        std::vector<MultiPoly> images{random_multipoly(rng, 3, 3, 2), random_multipoly(rng, 3, 3, 2)};
        RationalVector pt = random_point(rng, 3);
        RationalVector inner{images[0].evaluate(pt), images[1].evaluate(pt)};
        EXPECT_EQ(f.compose(images).evaluate(pt), f.evaluate(inner));
    }
}

TEST(MultiPoly, TextRoundTripThroughParser)
{
    std::mt19937_64 rng(3);
    const std::vector<std::string> names{"a", "b", "c"};
    for (int trial = 0; trial < 30; ++trial) {
        MultiPoly f = random_multipoly(rng, 3, 5, 3);
        if (f.is_zero()) continue;
        EXPECT_EQ(parse_multipoly(f.to_string(names), names), f);
    }
}

TEST(Groebner, UnitIdealIsNotProper)
{
    PolynomialIdeal ideal{{"x"}, {var(1, 0) * var(1, 0) - cst(1, 1), var(1, 0) - cst(1, 2)}};
    EXPECT_FALSE(ideal_is_proper(ideal));
    auto gb = groebner_basis(ideal, default_budget());
    ASSERT_EQ(gb.size(), 1U);
    EXPECT_TRUE(gb[0].is_constant());
}

TEST(Groebner, RationalPointFound)
{
    MultiPoly x = var(2, 0), y = var(2, 1);
    PolynomialIdeal ideal{{"x", "y"}, {x * y - cst(2, 1), x - cst(2, 2)}};
    ASSERT_TRUE(ideal_is_proper(ideal));
    auto pt = find_rational_point(ideal);
    ASSERT_TRUE(pt.has_value());
    EXPECT_EQ((*pt)[0], 2);
    EXPECT_EQ((*pt)[1], make_rational(1, 2));
}

TEST(Groebner, IrrationalOnlyZerosAreProperWithoutRationalPoint)
{
    MultiPoly x = var(1, 0);
    PolynomialIdeal ideal{{"x"}, {x * x - cst(1, 2)}};
    EXPECT_TRUE(ideal_is_proper(ideal));
    EXPECT_FALSE(find_rational_point(ideal).has_value());
}

// Every combination a f1 + b f2 reduces to zero modulo the basis.
TEST(Groebner, IdealMembersReduceToZero)
{
    std::mt19937_64 rng(4);
    MultiPoly x = var(3, 0), y = var(3, 1), z = var(3, 2);
    std::vector<MultiPoly> gens{x * x + y * y - z, x * y - cst(3, 1), y * z - x};
    PolynomialIdeal ideal{{"x", "y", "z"}, gens};
    auto gb = groebner_basis(ideal, default_budget());
    for (int trial = 0; trial < 15; ++trial) {
        MultiPoly member(3);
        for (const auto& g : gens) member += random_multipoly(rng, 3, 3, 2) * g;
        EXPECT_TRUE(normal_form(member, gb).is_zero());
    }
    // The basis generates the same ideal: each generator reduces to zero.
    for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).is_zero());
}

TEST(Univariate, RationalRootsWithMultiplicity)
{
    // (t - 1/2)^2 (t + 3) (t^2 + 1)
    UniPoly a{make_rational(-1, 2), Rational(1)};
    UniPoly b{Rational(3), Rational(1)};
    UniPoly c{Rational(1), Rational(0), Rational(1)};
    auto mul = [](const UniPoly& p, const UniPoly& q) {
        UniPoly r(p.size() + q.size() - 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
        return r;
    };
    UniPoly p = mul(mul(mul(a, a), b), c);
    auto roots = rational_roots(p);
    ASSERT_EQ(roots.size(), 2U);
    EXPECT_EQ(roots[0].first, -3);
    EXPECT_EQ(roots[0].second, 1);
    EXPECT_EQ(roots[1].first, make_rational(1, 2));
    EXPECT_EQ(roots[1].second, 2);
}

TEST(WeightedPolynomial, BasisOrderForQuartics)
{
    auto basis = monomial_basis(4);
    std::vector<std::string> names;
    for (const auto& m : basis) names.push_back(m.to_string());
    EXPECT_EQ(names, (std::vector<std::string>{"x^4", "x^3*y", "x^2*y^2", "x*y^3", "y^4", "x^2*z", "x*y*z", "y^2*z",
                                               "z^2"}));
    EXPECT_EQ(monomial_basis(6).size(), 16U);
}

TEST(WeightedPolynomial, ParseExamples)
{
    WeightedPolynomial p = parse_polynomial("z^2 - x^2*y^2", 4);
    EXPECT_EQ(p.terms().size(), 2U);
    EXPECT_EQ(p.coefficient({0, 0, 2}), 1);
    EXPECT_EQ(p.coefficient({2, 2, 0}), -1);

    try {
        parse_polynomial("x + y", 4);
        FAIL() << "expected a degree mismatch";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("degree"), std::string::npos);
    }
    EXPECT_THROW(parse_polynomial("x^4 - x^4", 4), InputError);
    EXPECT_THROW(parse_polynomial("x^4 + * y^4", 4), InputError);
    EXPECT_THROW(parse_polynomial("x^4 + w^4", 4), InputError);
}

TEST(WeightedPolynomial, LikeTermsCombine)
{
    WeightedPolynomial p = parse_polynomial("2*x*y*z + x^4 - x*y*z - 1/2*x^4", 4);
    EXPECT_EQ(p.coefficient({1, 1, 1}), 1);
    EXPECT_EQ(p.coefficient({4, 0, 0}), make_rational(1, 2));
}

TEST(WeightedPolynomial, TextRoundTrip200)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 * (1 + trial % 4);
        WeightedPolynomial p = gitkit::testing::random_polynomial(rng, d);
        EXPECT_EQ(parse_polynomial(p.to_text(), d), p) << p.to_text();
    }
}

TEST(GroupAction, Gl2CompositionLaw)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedPolynomial p = gitkit::testing::random_polynomial(rng, 4);
        auto rg = [&] {
            while (true) {
                Rational a = random_rational(rng, 3, 2), b = random_rational(rng, 3, 2), c = random_rational(rng, 3, 2),
                         d = random_rational(rng, 3, 2);
                if (a * d - b * c != 0) return GL2Element(a, b, c, d);
            }
        };
        GL2Element g1 = rg(), g2 = rg();
        EXPECT_EQ(apply_gl2(apply_gl2(p, g1), g2), apply_gl2(p, g1 * g2));
        EXPECT_EQ(apply_gl2(apply_gl2(p, g1), g1.inverse()), p);
    }
}

TEST(GroupAction, UnipotentIsAdditive)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedPolynomial p = gitkit::testing::random_polynomial(rng, 6);
        UnipotentElement u1{random_rational(rng, 3, 2), random_rational(rng, 3, 2), random_rational(rng, 3, 2)};
        UnipotentElement u2{random_rational(rng, 3, 2), random_rational(rng, 3, 2), random_rational(rng, 3, 2)};
        EXPECT_EQ(apply_unipotent(apply_unipotent(p, u1), u2), apply_unipotent(p, u1 + u2));
        EXPECT_EQ(apply_unipotent(apply_unipotent(p, u1), u1.inverse()), p);
    }
}

// The symbolic matrix specialises to the action of concrete unipotent elements.
TEST(GroupAction, ActionMatrixMatchesSubstitution)
{
    std::mt19937_64 rng(8);
    for (int d : {2, 4, 6}) {
        auto basis = monomial_basis(d);
        auto m = u_action_matrix(d);
        for (int trial = 0; trial < 5; ++trial) {
            RationalVector lmn = random_point(rng, 3);
            UnipotentElement u{lmn[0], lmn[1], lmn[2]};
            for (std::size_t col = 0; col < basis.size(); ++col) {
                WeightedPolynomial mono(d);
                mono.add_term(basis[col], 1);
                WeightedPolynomial image = apply_unipotent(mono, u);
                for (std::size_t row = 0; row < basis.size(); ++row)
                    EXPECT_EQ(m[row][col].evaluate(lmn), image.coefficient(basis[row]));
            }
        }
    }
}

TEST(GroupAction, QuarticActionMatrixAsPrinted)
{
    const std::vector<std::vector<std::string>> printed{
        {"1", "0", "0", "0", "0", "lambda", "0", "0", "lambda^2"},
        {"0", "1", "0", "0", "0", "mu", "lambda", "0", "2*lambda*mu"},
        {"0", "0", "1", "0", "0", "nu", "mu", "lambda", "2*lambda*nu + mu^2"},
        {"0", "0", "0", "1", "0", "0", "nu", "mu", "2*mu*nu"},
        {"0", "0", "0", "0", "1", "0", "0", "nu", "nu^2"},
        {"0", "0", "0", "0", "0", "1", "0", "0", "2*lambda"},
        {"0", "0", "0", "0", "0", "0", "1", "0", "2*mu"},
        {"0", "0", "0", "0", "0", "0", "0", "1", "2*nu"},
        {"0", "0", "0", "0", "0", "0", "0", "0", "1"},
    };
    const std::vector<std::string> names{"lambda", "mu", "nu"};
    auto m = u_action_matrix(4);
    ASSERT_EQ(m.size(), 9U);
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 9; ++c) EXPECT_EQ(m[r][c], parse_multipoly(printed[r][c], names)) << r << "," << c;
}

TEST(Sections, MultiplicityOfSquaredSection)
{
    // (z - x^2 - x*y)^2
    WeightedPolynomial p = parse_polynomial("z^2 - 2*x^2*z - 2*x*y*z + x^4 + 2*x^3*y + x^2*y^2", 4);
    SectionMultiplicity sm = section_multiplicity_with_witness(p);
    EXPECT_EQ(sm.multiplicity, 2);
    ASSERT_TRUE(sm.witness.has_value());
    int shifted = std::max(z_degree_range(apply_unipotent(p, *sm.witness)).k_min,
                           z_degree_range(apply_unipotent(p, sm.witness->inverse())).k_min);
    EXPECT_EQ(shifted, 2);
}

TEST(Sections, MultiplicityExamples)
{
    EXPECT_EQ(section_multiplicity(parse_polynomial("z^2 - x^2*y^2", 4)), 1);
    EXPECT_EQ(section_multiplicity(parse_polynomial("x^4 + y^4", 4)), 0);
    EXPECT_EQ(section_multiplicity(parse_polynomial("z^2 - 2*x^2*y^2", 4)), 1);  // irrational section
    EXPECT_EQ(section_multiplicity(parse_polynomial("z^3", 6)), 3);
    auto r = z_degree_range(parse_polynomial("x^2*z + z^2", 4));
    EXPECT_EQ(r.k_min, 1);
    EXPECT_EQ(r.k_max, 2);
}

// Multiplicity is invariant under the unipotent group.
TEST(Sections, MultiplicityIsUnipotentInvariant)
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        WeightedPolynomial p = gitkit::testing::random_polynomial(rng, 4, 0.5);
        UnipotentElement u{random_rational(rng, 3, 2), random_rational(rng, 3, 2), random_rational(rng, 3, 2)};
        EXPECT_EQ(section_multiplicity(apply_unipotent(p, u)), section_multiplicity(p)) << p.to_text();
    }
}

TEST(Sections, BinaryFormRoots)
{
    // x^3 y - 2 x^2 y^2 = x^2 y (x - 2 y), coefficients of x^i y^(4-i)
    BinaryForm f{4, {Rational(0), Rational(0), Rational(-2), Rational(1), Rational(0)}};
    auto roots = binary_form_rational_roots(f);
    int total = 0;
    for (const auto& [root, mult] : roots.roots) {
        EXPECT_EQ(f.evaluate(root.a, root.b), 0);
        total += mult;
    }
    EXPECT_EQ(total, 4);
    EXPECT_EQ(roots.residual.degree, 0);
    ASSERT_EQ(roots.roots.size(), 3U);
    EXPECT_EQ(roots.roots[0].first, (ProjectiveRoot{Rational(1), Rational(0)}));
}
