#include "gitkit/nonreductive_git.hpp"

#include "gitkit/numeric_solve.hpp"
#include "gitkit/sections.hpp"
#include "gitkit/torus_git.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <random>
#include <thread>

namespace gitkit {

void HLinearisation::validate() const
{
    if (d <= 0 || d % 2 != 0) throw InputError("H-linearisation degree must be even and positive, got " + std::to_string(d));
}

namespace {

void check_input(const WeightedPolynomial& p, const HLinearisation& lin)
{
    lin.validate();
    require_nonzero(p);
    if (p.degree() != lin.d)
        throw InputError("polynomial has degree " + std::to_string(p.degree()) + ", linearisation expects " +
                         std::to_string(lin.d));
}

bool is_endpoint(const HLinearisation& lin)
{
    const Rational half = make_rational(lin.d, 2);
    return lin.delta == half || lin.delta == -half;
}

bool inside_range(const HLinearisation& lin)
{
    const Rational half = make_rational(lin.d, 2);
    return -half < lin.delta && lin.delta < half;
}

}  // namespace

WallTable h_walls(int d)
{
    if (d <= 0 || d % 2 != 0) throw InputError("h_walls needs an even positive degree");
    std::vector<Rational> walls;
    for (int m = 0; m <= d / 2; ++m) walls.push_back(Rational(2 * m) - make_rational(d, 2));
    // The full triangle has 0 on its boundary when the vertex (delta - d/2,
    // delta - d/2) or the edge i + j = d (weight sum d + 2 delta) hits it.
    walls.push_back(make_rational(d, 2));
    walls.push_back(make_rational(-d, 2));
    std::sort(walls.begin(), walls.end());
    walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
    return {walls, walls.front(), walls.back()};
}

StabilityVerdict uhat_test(const WeightedPolynomial& p, const HLinearisation& lin, const GroebnerBudget& budget)
{
    check_input(p, lin);
    const auto range = z_degree_range(p);
    const auto sm = section_multiplicity_with_witness(p, budget);
    const Rational s = Rational(lin.d) + 2 * lin.delta;
    const Rational lo = 4 * sm.multiplicity;
    const Rational hi = 4 * range.k_max;

    StabilityVerdict v;
    v.endpoint_caveat = is_endpoint(lin);
    if (lo < s && s < hi) {
        v.status = Status::Stable;
    } else if (lo <= s && s <= hi) {
        v.status = Status::StrictlySemistable;
    } else if (s > hi) {
        // Every central weight d - 4k + 2 delta is positive for every u.
        v.status = Status::Unstable;
        v.certificate = Certificate{"covector", {1}, std::nullopt, std::nullopt, "all central weights positive"};
    } else {
        v.status = Status::Unstable;
        if (sm.witness) {
            const auto& u = *sm.witness;
            v.certificate = Certificate{"group-element", {-1}, std::vector<Rational>{u.alpha, u.beta, u.gamma},
                                        std::nullopt, "after u, every central weight is negative"};
        } else {
            const std::string what = "(z - q)^" + std::to_string(sm.multiplicity) +
                                     " divides p for an irrational quadric q";
            auto ideal = section_ideal(p, sm.multiplicity);
            auto x = numeric_common_zero(ideal.generators, 3);
            if (x) {
                v.certificate = Certificate{"numeric-group-element", {-1}, std::nullopt, std::nullopt,
                                            what + "; u approximates it"};
                v.certificate->numeric_unipotent = *x;
            } else {
                v.certificate = Certificate{"section-ideal", {-1}, std::nullopt, std::nullopt, what};
            }
        }
    }
    return v;
}

namespace {

std::vector<UnipotentElement> default_u_grid()
{
    const RationalVector vals{0, 1, -1, 2, -2, make_rational(1, 2), make_rational(-1, 2)};
    std::vector<UnipotentElement> out;
    // Entries in {0, +-1, +-2, +-1/2}.
    for (const auto& a : vals)
        for (const auto& b : vals)
            for (const auto& c : vals) out.push_back({a, b, c});
    return out;
}

}  // namespace

StabilityVerdict uhat_oracle(const WeightedPolynomial& p, const HLinearisation& lin, const OracleGrid& grid)
{
    check_input(p, lin);
    std::vector<UnipotentElement> samples{{0, 0, 0}};
    if (grid.include_default_grid) {
        auto g = default_u_grid();
        samples.insert(samples.end(), g.begin() + 1, g.end());
    }
    std::mt19937_64 rng(grid.seed);
    for (int i = 0; i < grid.random_samples; ++i)
        samples.push_back({random_rational(rng, 5, 4), random_rational(rng, 5, 4), random_rational(rng, 5, 4)});

    StabilityVerdict worst_v;
    worst_v.status = Status::Stable;
    bool first = true;
    for (const auto& u : samples) {
        auto v = central_test(apply_unipotent(p, u), lin.delta);
        if (first || static_cast<int>(v.status) < static_cast<int>(worst_v.status)) {
            worst_v = v;
            if (v.certificate) v.certificate->unipotent = std::vector<Rational>{u.alpha, u.beta, u.gamma};
            worst_v.certificate = v.certificate;
            if (worst_v.certificate) worst_v.certificate->kind = "group-element";
            first = false;
        }
        if (worst_v.status == Status::Unstable) break;
    }
    worst_v.endpoint_caveat = is_endpoint(lin);
    return worst_v;
}

namespace {

using Mask = std::uint64_t;

enum class Chart { Lower, Upper };

GL2Element chart_element(Chart c, const Rational& s)
{
    return c == Chart::Lower ? GL2Element(1, 0, s, 1) : GL2Element(1, s, 0, 1);
}

/// Coefficients of p(g_s(x, y), z + a x^2 + b xy + c y^2) on monomial_basis(d),
/// as polynomials in (s, a, b, c).
std::vector<MultiPoly> chart_coefficients(const WeightedPolynomial& p, Chart chart,
                                          const std::vector<WeightedMonomial>& basis)
{
    constexpr std::size_t n = 7;
    auto var = [](std::size_t i) { return MultiPoly::variable(n, i); };
    MultiPoly x = var(0), y = var(1), z = var(2), s = var(3);
    MultiPoly q = var(4) * x * x + var(5) * x * y + var(6) * y * y;
    std::vector<MultiPoly> images = chart == Chart::Lower ? std::vector<MultiPoly>{x, s * x + y, z + q}
                                                          : std::vector<MultiPoly>{x + s * y, y, z + q};
    for (std::size_t i = 3; i < n; ++i) images.push_back(var(i));
    MultiPoly f = p.to_multipoly(n).compose(images);
    std::vector<MultiPoly> coeffs(basis.size(), MultiPoly(4));
    for (auto& [head, poly] : coefficients_in_leading_block(f, 3)) {
        WeightedMonomial m{static_cast<int>(head[0]), static_cast<int>(head[1]), static_cast<int>(head[2])};
        auto it = std::find(basis.begin(), basis.end(), m);
        coeffs[static_cast<std::size_t>(it - basis.begin())] = std::move(poly);
    }
    return coeffs;
}

std::vector<Integer> primitive(const Integer& a, const Integer& b)
{
    return primitive_integer_vector({Rational(a), Rational(b)});
}

int half_plane(const std::vector<Integer>& v)
{
    return (sgn(v[1]) > 0 || (sgn(v[1]) == 0 && sgn(v[0]) > 0)) ? 0 : 1;
}

bool angle_less(const std::vector<Integer>& a, const std::vector<Integer>& b)
{
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return sgn(a[0] * b[1] - a[1] * b[0]) > 0;
}

/// Normals r at which the set {m : <r, w_m> <= 0} or {< 0} can change, plus
/// one direction in every open arc between them.
std::vector<std::vector<Integer>> candidate_normals(const std::vector<RationalVector>& weights)
{
    std::vector<std::vector<Integer>> crit;
    for (const auto& w : weights) {
        if (sgn(w[0]) == 0 && sgn(w[1]) == 0) continue;
        auto v = primitive_integer_vector({-w[1], w[0]});
        crit.push_back(v);
        crit.push_back({-v[0], -v[1]});
    }
    if (crit.empty()) crit = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::sort(crit.begin(), crit.end(), angle_less);
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    std::vector<std::vector<Integer>> out = crit;
    for (std::size_t i = 0; i < crit.size(); ++i) {
        const auto& a = crit[i];
        const auto& b = crit[(i + 1) % crit.size()];
        Integer cross = a[0] * b[1] - a[1] * b[0];
        Integer dot = a[0] * b[0] + a[1] * b[1];
        std::vector<Integer> mid;
        if (crit.size() == 1 || (sgn(cross) == 0 && sgn(dot) > 0))
            mid = primitive(-a[1], a[0]);
        else if (sgn(cross) > 0)
            mid = primitive(a[0] + b[0], a[1] + b[1]);
        else if (sgn(cross) == 0)
            mid = primitive(-a[1], a[0]);
        else
            mid = primitive(-(a[0] + b[0]), -(a[1] + b[1]));
        out.push_back(mid);
    }
    return out;
}

/// Inclusion-minimal vanishing sets with a representative normal each.
std::vector<std::pair<Mask, std::vector<Integer>>> minimal_sets(const std::vector<RationalVector>& weights,
                                                                 const std::vector<std::vector<Integer>>& normals,
                                                                 bool strict)
{
    std::map<Mask, std::vector<Integer>> sets;
    for (const auto& r : normals) {
        Mask m = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            int s = sgn(Rational(r[0]) * weights[i][0] + Rational(r[1]) * weights[i][1]);
            if (strict ? s < 0 : s <= 0) m |= Mask{1} << i;
        }
        sets.try_emplace(m, r);
    }
    std::vector<std::pair<Mask, std::vector<Integer>>> sorted(sets.begin(), sets.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return std::popcount(a.first) < std::popcount(b.first); });
    std::vector<std::pair<Mask, std::vector<Integer>>> out;
    for (const auto& cand : sorted) {
        bool dominated = std::any_of(out.begin(), out.end(),
                                     [&](const auto& kept) { return (kept.first & cand.first) == kept.first; });
        if (!dominated) out.push_back(cand);
    }
    return out;
}

struct SearchOutcome {
    bool solvable = false;
    std::optional<Certificate> certificate;
    std::vector<DestabilizationCandidate> found;
};

WeightedPolynomial act(const WeightedPolynomial& p, const GL2Element& g, const UnipotentElement& u)
{
    return apply_unipotent(apply_gl2(p, g), u);
}

std::vector<Rational> row_major(const GL2Element& g) { return {g(0, 0), g(0, 1), g(1, 0), g(1, 1)}; }

/// Looks for (chart, s, u) killing every coefficient in one of the sets.
SearchOutcome search(const WeightedPolynomial& p, const HLinearisation& lin,
                     const std::vector<std::pair<Mask, std::vector<Integer>>>& sets,
                     const std::array<std::vector<MultiPoly>, 2>& coeffs, Status target,
                     const GroebnerBudget& budget, std::size_t& checked)
{
    SearchOutcome out;
    const std::vector<std::string> names{"s", "alpha", "beta", "gamma"};
    for (const auto& [mask, normal] : sets) {
        for (int c = 0; c < 2; ++c) {
            PolynomialIdeal ideal{names, {}};
            for (std::size_t i = 0; i < coeffs[static_cast<std::size_t>(c)].size(); ++i)
                if ((mask >> i) & 1U) {
                    const auto& g = coeffs[static_cast<std::size_t>(c)][i];
                    if (!g.is_zero()) ideal.generators.push_back(g);
                }
            ++checked;
            if (!ideal_is_proper(ideal, budget)) continue;
            out.solvable = true;
            DestabilizationCandidate cand;
            cand.normal = normal;
            auto point = find_rational_point(ideal, budget);
            if (point) {
                GL2Element g = chart_element(c == 0 ? Chart::Lower : Chart::Upper, (*point)[0]);
                UnipotentElement u{(*point)[1], (*point)[2], (*point)[3]};
                auto moved = act(p, g, u);
                auto tv = tc_test(moved, lin.delta);
                if (static_cast<int>(tv.status) > static_cast<int>(target))
                    throw std::logic_error("destabilizing solution failed independent verification");
                cand.section = u;
                cand.point = g;
                out.found.push_back(cand);
                Certificate cert;
                cert.kind = "group-element";
                cert.covector = tv.certificate ? tv.certificate->covector : normal;
                cert.unipotent = std::vector<Rational>{u.alpha, u.beta, u.gamma};
                cert.gl2 = row_major(g);
                cert.note = "T_c weights of apply_unipotent(apply_gl2(p, g), u) avoid the open half-plane <c, w> < 0"
                            " (strictly positive when unstable)";
                out.certificate = cert;
                return out;
            }
            cand.nonrational = true;
            out.found.push_back(cand);
            if (out.certificate) continue;
            out.certificate = Certificate{"section-ideal", normal, std::nullopt, std::nullopt,
                                          "a solution exists over the algebraic closure; no rational point found"};
            if (auto x = numeric_common_zero(ideal.generators, 4)) {
                const Complex s = (*x)[0];
                out.certificate->kind = "numeric-group-element";
                out.certificate->note = "irrational solution (s, alpha, beta, gamma) approximated in double precision";
                out.certificate->numeric_gl2 = c == 0 ? ComplexVector{1, 0, s, 1} : ComplexVector{1, s, 0, 1};
                out.certificate->numeric_unipotent = {(*x)[1], (*x)[2], (*x)[3]};
            }
        }
    }
    return out;
}

HTestReport hm_procedure(const WeightedPolynomial& p, const HLinearisation& lin, const GroebnerBudget& budget)
{
    HTestReport report;
    auto central = uhat_test(p, lin, budget);
    if (central.status == Status::Unstable && central.certificate &&
        central.certificate->kind != "section-ideal") {
        Certificate cert = *central.certificate;
        Integer sign = cert.covector.at(0);
        cert.covector = {sign, sign};
        const bool numeric = cert.kind == "numeric-group-element";
        if (!numeric) {
            cert.kind = "group-element";
            cert.gl2 = row_major(GL2Element::identity());
            if (!cert.unipotent) cert.unipotent = std::vector<Rational>{0, 0, 0};
        } else {
            cert.numeric_gl2 = {1, 0, 0, 1};
        }
        cert.note = "central weights of u p are one-sided";
        report.verdict.status = Status::Unstable;
        report.verdict.certificate = cert;
        DestabilizationCandidate cand;
        cand.kind = DestabilizationCandidate::Kind::CentralOnly;
        if (cert.unipotent) {
            const auto& uv = *cert.unipotent;
            cand.section = UnipotentElement{uv[0], uv[1], uv[2]};
        } else {
            cand.nonrational = true;
        }
        cand.normal = cert.covector;
        report.destabilizers.push_back(cand);
        return report;
    }

    const auto basis = monomial_basis(lin.d);
    if (basis.size() > 64) throw InputError("degree too large for the H test (at most d = 14)");
    std::vector<RationalVector> weights;
    for (const auto& m : basis) weights.push_back({Rational(m.i - m.k) + lin.delta, Rational(m.j - m.k) + lin.delta});
    const auto normals = candidate_normals(weights);
    const std::array<std::vector<MultiPoly>, 2> coeffs{chart_coefficients(p, Chart::Lower, basis),
                                                       chart_coefficients(p, Chart::Upper, basis)};

    auto unstable = search(p, lin, minimal_sets(weights, normals, false), coeffs, Status::Unstable, budget,
                           report.systems_checked);
    if (unstable.solvable) {
        report.verdict.status = Status::Unstable;
        report.verdict.certificate = unstable.certificate;
        report.destabilizers = std::move(unstable.found);
        return report;
    }
    auto boundary = search(p, lin, minimal_sets(weights, normals, true), coeffs, Status::StrictlySemistable, budget,
                           report.systems_checked);
    if (boundary.solvable) {
        report.verdict.status = Status::StrictlySemistable;
        report.verdict.certificate = boundary.certificate;
        if (report.verdict.certificate) report.verdict.certificate->kind += "/supporting";
        report.destabilizers = std::move(boundary.found);
        return report;
    }
    report.verdict.status = Status::Stable;
    return report;
}

}  // namespace

HTestReport h_test_report(const WeightedPolynomial& p, const HLinearisation& lin, const GroebnerBudget& budget)
{
    check_input(p, lin);
    HTestReport report = hm_procedure(p, lin, budget);
    if (is_endpoint(lin)) {
        report.hm_prediction = report.verdict.status;
        if (report.verdict.status != Status::Unstable) {
            report.verdict.status = Status::Unstable;
            report.verdict.certificate =
                Certificate{"emptiness-range", {}, std::nullopt, std::nullopt,
                            "twist at an endpoint of (-d/2, d/2); the semistable set is empty there"};
        }
        report.verdict.endpoint_caveat = true;
    } else if (!inside_range(lin) && report.verdict.status != Status::Unstable) {
        throw std::logic_error("twist outside (-d/2, d/2) but the weight test did not destabilize");
    }
    return report;
}

StabilityVerdict h_test(const WeightedPolynomial& p, const HLinearisation& lin, const GroebnerBudget& budget)
{
    return h_test_report(p, lin, budget).verdict;
}

StabilityVerdict h_oracle(const WeightedPolynomial& p, const HLinearisation& lin, int samples, std::uint64_t seed)
{
    check_input(p, lin);
    std::mt19937_64 rng(seed);
    StabilityVerdict worst_v;
    worst_v.status = Status::Stable;
    for (int n = 0; n < std::max(samples, 1); ++n) {
        GL2Element g = GL2Element::identity();
        UnipotentElement u{0, 0, 0};
        if (n > 0) {
            u = {random_rational(rng, 4, 3), random_rational(rng, 4, 3), random_rational(rng, 4, 3)};
            for (;;) {
                RationalVector e{random_rational(rng, 4, 3), random_rational(rng, 4, 3), random_rational(rng, 4, 3),
                                 random_rational(rng, 4, 3)};
                if (e[0] * e[3] - e[1] * e[2] == 0) continue;
                g = GL2Element(e[0], e[1], e[2], e[3]);
                break;
            }
        }
        auto v = tc_test(act(p, g, u), lin.delta);
        if (n == 0 || static_cast<int>(v.status) < static_cast<int>(worst_v.status)) {
            worst_v.status = v.status;
            worst_v.certificate.reset();
            if (v.certificate) {
                Certificate c = *v.certificate;
                c.kind = "group-element";
                c.unipotent = std::vector<Rational>{u.alpha, u.beta, u.gamma};
                c.gl2 = row_major(g);
                worst_v.certificate = c;
            }
        }
        if (worst_v.status == Status::Unstable) break;
    }
    worst_v.endpoint_caveat = is_endpoint(lin);
    return worst_v;
}

namespace {

/// Numerically moved polynomial; coefficients below the support tolerance
/// (relative to the largest) count as zero.
std::vector<WeightedMonomial> numeric_support(const WeightedPolynomial& p, const std::vector<Complex>& g,
                                              const std::vector<Complex>& u)
{
    std::array<Complex, 4> ga{1, 0, 0, 1};
    std::array<Complex, 3> ua{0, 0, 0};
    if (g.size() == 4) std::copy(g.begin(), g.end(), ga.begin());
    if (u.size() == 3) std::copy(u.begin(), u.end(), ua.begin());
    auto coeffs = numeric_act(p, ga, ua);
    double biggest = 0;
    for (const auto& [e, c] : coeffs) biggest = std::max(biggest, std::abs(c));
    std::vector<WeightedMonomial> out;
    for (const auto& [e, c] : coeffs)
        if (std::abs(c) > kNumericSupportTolerance * biggest) out.push_back({e[0], e[1], e[2]});
    return out;
}

bool pairing_ok(const std::vector<Rational>& pairings, Status status)
{
    for (const auto& x : pairings) {
        if (status == Status::Unstable ? sgn(x) <= 0 : sgn(x) < 0) return false;
    }
    return !pairings.empty();
}

}  // namespace

bool verify_uhat_certificate(const WeightedPolynomial& p, const HLinearisation& lin, const StabilityVerdict& v)
{
    if (v.status != Status::Unstable || !v.certificate || v.certificate->covector.size() != 1) return false;
    const auto& c = *v.certificate;
    std::vector<WeightedMonomial> support;
    if (!c.numeric_unipotent.empty()) {
        support = numeric_support(p, {}, c.numeric_unipotent);
    } else if (c.kind == "section-ideal") {
        return false;
    } else {
        UnipotentElement u{0, 0, 0};
        if (c.unipotent) u = {(*c.unipotent)[0], (*c.unipotent)[1], (*c.unipotent)[2]};
        const WeightedPolynomial moved = apply_unipotent(p, u);
        for (const auto& [m, coeff] : moved.terms()) support.push_back(m);
    }
    std::vector<Rational> pairings;
    for (const auto& m : support)
        pairings.push_back(Rational(c.covector[0]) * (Rational(lin.d - 4 * m.k) + 2 * lin.delta));
    return pairing_ok(pairings, Status::Unstable);
}

bool verify_h_certificate(const WeightedPolynomial& p, const HLinearisation& lin, const StabilityVerdict& v)
{
    if (!v.certificate) return false;
    const auto& c = *v.certificate;
    if (c.covector.size() == 2 && (!c.numeric_gl2.empty() || !c.numeric_unipotent.empty())) {
        std::vector<Rational> pairings;
        for (const auto& m : numeric_support(p, c.numeric_gl2, c.numeric_unipotent))
            pairings.push_back(Rational(c.covector[0]) * (Rational(m.i - m.k) + lin.delta) +
                               Rational(c.covector[1]) * (Rational(m.j - m.k) + lin.delta));
        return pairing_ok(pairings, v.status);
    }
    if (c.covector.size() != 2 || (!c.gl2 && !c.unipotent)) return false;
    GL2Element g = GL2Element::identity();
    if (c.gl2) {
        const auto& e = *c.gl2;
        if (e.size() != 4 || e[0] * e[3] - e[1] * e[2] == 0) return false;
        g = GL2Element(e[0], e[1], e[2], e[3]);
    }
    UnipotentElement u{0, 0, 0};
    if (c.unipotent) {
        if (c.unipotent->size() != 3) return false;
        u = {(*c.unipotent)[0], (*c.unipotent)[1], (*c.unipotent)[2]};
    }
    auto moved = act(p, g, u);
    bool all_positive = true, all_nonnegative = true;
    for (const auto& [m, coeff] : moved.terms()) {
        Rational pairing = Rational(c.covector[0]) * (Rational(m.i - m.k) + lin.delta) +
                           Rational(c.covector[1]) * (Rational(m.j - m.k) + lin.delta);
        all_positive &= sgn(pairing) > 0;
        all_nonnegative &= sgn(pairing) >= 0;
    }
    return v.status == Status::Unstable ? all_positive : all_nonnegative;
}

ClassifyReport classify_corpus(const std::vector<WeightedPolynomial>& polys, const std::vector<Rational>& deltas,
                               unsigned jobs, const GroebnerBudget& budget)
{
    ClassifyReport report;
    report.deltas = deltas;
    report.counts.assign(deltas.size(), {0, 0, 0});
    if (polys.empty()) return report;
    const int d = polys.front().degree();
    for (const auto& p : polys)
        if (p.degree() != d) throw InputError("corpus polynomials have different degrees");
    report.cells.assign(polys.size(), std::vector<ClassifyCell>(deltas.size()));

    std::vector<Rational> walls;
    if (d > 0 && d % 2 == 0) walls = h_walls(d).walls;
    const std::size_t total = polys.size() * deltas.size();
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t pi = idx / deltas.size();
            const std::size_t di = idx % deltas.size();
            ClassifyCell& cell = report.cells[pi][di];
            cell.on_wall = std::find(walls.begin(), walls.end(), deltas[di]) != walls.end();
            HLinearisation lin{d, deltas[di]};
            try {
                cell.uhat = uhat_test(polys[pi], lin, budget);
                auto r = h_test_report(polys[pi], lin, budget);
                cell.h = r.verdict;
                cell.hm_prediction = r.hm_prediction;
            } catch (const UndecidedError& e) {
                cell.outcome = e.what();
            } catch (const std::exception& e) {
                cell.outcome = std::string("error: ") + e.what();
            }
        }
    };
    const unsigned n = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    for (const auto& row : report.cells)
        for (std::size_t di = 0; di < row.size(); ++di) {
            const auto& cell = row[di];
            if (cell.h)
                ++report.counts[di][static_cast<std::size_t>(cell.h->status)];
            else if (cell.outcome.rfind("undecided", 0) == 0)
                ++report.undecided;
            else
                ++report.errors;
        }
    return report;
}

}  // namespace gitkit
