#include "gitkit/groebner.hpp"

#include "gitkit/univariate.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace gitkit {

GroebnerBudget default_budget()
{
    GroebnerBudget b;
    if (const char* env = std::getenv("GITKIT_GROEBNER_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) b.max_pairs = static_cast<std::size_t>(v);
    }
    return b;
}

void PolynomialIdeal::validate() const
{
    if (variables.size() > kMaxVariables) throw std::invalid_argument("ideal: more than 8 variables");
    for (const auto& g : generators) {
        for (const auto& t : g.terms())
            for (std::size_t i = variables.size(); i < kMaxVariables; ++i)
                if (t.exp[i] != 0) throw std::invalid_argument("ideal: generator uses an undeclared variable");
    }
}

MultiPoly normal_form(MultiPoly f, const std::vector<MultiPoly>& basis)
{
    MultiPoly rem(f.nvars());
    while (!f.is_zero()) {
        const Term& lt = f.leading();
        const MultiPoly* reducer = nullptr;
        for (const auto& g : basis) {
            if (divides(g.leading().exp, lt.exp)) {
                reducer = &g;
                break;
            }
        }
        if (reducer == nullptr) {
            rem += MultiPoly::monomial(f.nvars(), lt.exp, lt.coeff);
            f -= MultiPoly::monomial(f.nvars(), lt.exp, lt.coeff);
            continue;
        }
        Rational c = lt.coeff / reducer->leading().coeff;
        Exponent shift = lt.exp - reducer->leading().exp;
        f.sub_scaled_shifted(c, shift, *reducer);
    }
    return rem;
}

namespace {

// Reduction that only touches the leading term repeatedly (top reduction),
// followed by tail reduction; both against the active set.
MultiPoly reduce_against(MultiPoly f, const std::vector<MultiPoly>& polys, const std::vector<bool>& active)
{
    MultiPoly rem(f.nvars());
    std::vector<Term> tail;
    while (!f.is_zero()) {
        const Term& lt = f.leading();
        const MultiPoly* reducer = nullptr;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            if (active[i] && divides(polys[i].leading().exp, lt.exp)) {
                reducer = &polys[i];
                break;
            }
        }
        if (reducer == nullptr) {
            tail.push_back(lt);
            f.sub_scaled_shifted(Rational(1), Exponent{}, MultiPoly::monomial(f.nvars(), lt.exp, lt.coeff));
            continue;
        }
        Rational c = lt.coeff / reducer->leading().coeff;
        f.sub_scaled_shifted(c, lt.exp - reducer->leading().exp, *reducer);
    }
    for (auto& t : tail) rem += MultiPoly::monomial(rem.nvars(), t.exp, t.coeff);
    return rem;
}

struct Pair {
    std::size_t i;
    std::size_t j;
    Exponent lcm;
};

bool pair_less(const Pair& a, const Pair& b)
{
    int c = degrevlex_compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
}

MultiPoly spoly(const MultiPoly& f, const MultiPoly& g, const Exponent& l)
{
    MultiPoly a = f.shifted(l - f.leading().exp);
    a *= 1 / f.leading().coeff;
    a.sub_scaled_shifted(1 / g.leading().coeff, l - g.leading().exp, g);
    return a;
}

// Gebauer-Moeller update after appending polys[h].
void update(std::vector<MultiPoly>& polys, std::vector<bool>& active, std::vector<Pair>& pairs, std::size_t h)
{
    const Exponent& lh = polys[h].leading().exp;
    std::vector<Pair> c;
    for (std::size_t g = 0; g < h; ++g)
        if (active[g]) c.push_back({g, h, lcm(polys[g].leading().exp, lh)});

    std::vector<Pair> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
        bool keep = coprime(polys[c[a].i].leading().exp, lh);
        if (!keep) {
            keep = true;
            for (std::size_t b = a + 1; b < c.size() && keep; ++b)
                if (divides(c[b].lcm, c[a].lcm)) keep = false;
            for (std::size_t b = 0; b < d.size() && keep; ++b)
                if (divides(d[b].lcm, c[a].lcm)) keep = false;
        }
        if (keep) d.push_back(c[a]);
    }
    std::vector<Pair> e;
    for (const auto& p : d)
        if (!coprime(polys[p.i].leading().exp, lh)) e.push_back(p);

    std::vector<Pair> kept;
    for (const auto& p : pairs) {
        bool drop = divides(lh, p.lcm) && lcm(polys[p.i].leading().exp, lh) != p.lcm &&
                    lcm(polys[p.j].leading().exp, lh) != p.lcm;
        if (!drop) kept.push_back(p);
    }
    kept.insert(kept.end(), e.begin(), e.end());
    pairs = std::move(kept);

    for (std::size_t g = 0; g < h; ++g)
        if (active[g] && divides(lh, polys[g].leading().exp)) active[g] = false;
}

std::vector<MultiPoly> interreduce(std::vector<MultiPoly> basis)
{
    std::sort(basis.begin(), basis.end(), [](const MultiPoly& a, const MultiPoly& b) {
        return degrevlex_compare(a.leading().exp, b.leading().exp) < 0;
    });
    // Drop elements whose leading monomial is divisible by another one.
    std::vector<MultiPoly> minimal;
    for (auto& f : basis) {
        bool redundant = false;
        for (const auto& g : minimal)
            if (divides(g.leading().exp, f.leading().exp)) redundant = true;
        if (!redundant) minimal.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MultiPoly lead = MultiPoly::monomial(minimal[i].nvars(), minimal[i].leading().exp, minimal[i].leading().coeff);
        MultiPoly rest = minimal[i] - lead;
        minimal[i] = lead + normal_form(rest, others);
        minimal[i].make_monic();
    }
    return minimal;
}

}  // namespace

std::vector<MultiPoly> groebner_basis(const PolynomialIdeal& ideal, const GroebnerBudget& budget)
{
    ideal.validate();
    const std::size_t n = ideal.variables.size();
    std::vector<MultiPoly> polys;
    std::vector<bool> active;
    std::vector<Pair> pairs;

    auto unit = [n]() { return std::vector<MultiPoly>{MultiPoly::constant(n, Rational(1))}; };

    for (const auto& g0 : ideal.generators) {
        MultiPoly g = reduce_against(g0, polys, active);
        if (g.is_zero()) continue;
        g.make_monic();
        if (g.is_constant()) return unit();
        polys.push_back(std::move(g));
        active.push_back(true);
        update(polys, active, pairs, polys.size() - 1);
    }

    std::size_t processed = 0;
    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
        Pair p = *it;
        pairs.erase(it);
        if (++processed > budget.max_pairs)
            throw UndecidedError("budget of " + std::to_string(budget.max_pairs) + " S-pairs exhausted");
        MultiPoly s = spoly(polys[p.i], polys[p.j], p.lcm);
        // Reducers may include inactive polynomials: they are still in the ideal,
        // and using only the active ones is enough for correctness.
        MultiPoly r = reduce_against(std::move(s), polys, active);
        if (r.is_zero()) continue;
        r.make_monic();
        if (r.is_constant()) return unit();
        polys.push_back(std::move(r));
        active.push_back(true);
        if (polys.size() > budget.max_basis)
            throw UndecidedError("basis grew beyond " + std::to_string(budget.max_basis) + " elements");
        update(polys, active, pairs, polys.size() - 1);
    }

    std::vector<MultiPoly> basis;
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (active[i]) basis.push_back(polys[i]);
    return interreduce(std::move(basis));
}

bool ideal_is_proper(const PolynomialIdeal& ideal, const GroebnerBudget& budget)
{
    auto basis = groebner_basis(ideal, budget);
    return basis.empty() || !basis.front().is_constant();
}

namespace {

// Rational roots of any basis element that is univariate in `var`.
std::vector<Rational> univariate_root_candidates(const std::vector<MultiPoly>& basis, std::size_t var)
{
    std::vector<Rational> out;
    for (const auto& g : basis) {
        bool univariate = true;
        for (const auto& t : g.terms())
            for (std::size_t i = 0; i < kMaxVariables; ++i)
                if (i != var && t.exp[i] != 0) univariate = false;
        if (!univariate || g.degree() == 0) continue;
        UniPoly u(g.degree_in(var) + 1);
        for (const auto& t : g.terms()) u[t.exp[var]] += t.coeff;
        for (auto& [root, mult] : rational_roots(u)) out.push_back(root);
    }
    return out;
}

}  // namespace

std::optional<RationalVector> find_rational_point(const PolynomialIdeal& ideal, const GroebnerBudget& budget)
{
    const std::size_t n = ideal.variables.size();
    PolynomialIdeal current = ideal;
    auto basis = groebner_basis(current, budget);
    if (!basis.empty() && basis.front().is_constant()) return std::nullopt;

    static const long kTrials[][2] = {{0, 1}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}, {3, 1}, {-3, 1}};
    RationalVector point(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Rational> candidates = univariate_root_candidates(basis, v);
        bool forced = !candidates.empty();
        if (!forced)
            for (const auto& t : kTrials) candidates.push_back(make_rational(t[0], t[1]));
        bool fixed = false;
        for (const auto& c : candidates) {
            PolynomialIdeal trial = current;
            for (auto& g : trial.generators) g = g.substitute(v, c);
            auto trial_basis = groebner_basis(trial, budget);
            if (!trial_basis.empty() && trial_basis.front().is_constant()) continue;
            current = std::move(trial);
            basis = std::move(trial_basis);
            point[v] = c;
            fixed = true;
            break;
        }
        if (!fixed) return std::nullopt;
    }
    for (const auto& g : ideal.generators)
        if (g.evaluate(point) != 0) return std::nullopt;
    return point;
}

}  // namespace gitkit
