// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "gitkit/cli.hpp"
#include "gitkit/envelope.hpp"
#include "gitkit/io.hpp"
#include "gitkit/moment_flow.hpp"
#include "gitkit/nonreductive_git.hpp"
#include "gitkit/torus_git.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace gitkit;

namespace {

// Pinned tolerances and budgets.
constexpr double kMatrixSeconds = 1.0;
constexpr double kSupportsSeconds = 1.0;
constexpr double kEndpointSeconds = 120.0;
constexpr double kUhatSeconds = 300.0;
constexpr double kHSeconds = 600.0;
constexpr double kFlowSeconds = 120.0;
constexpr double kWallsSeconds = 30.0;
constexpr double kFlowTol = 1e-8;
constexpr int kFlowMaxIter = 10000;
constexpr double kFlowMargin = 0.05;
constexpr double kMomentTol = 1e-12;
constexpr int kHOracleSamples = 500;
constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

bool run_criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body)
{
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = budget_s <= 0 || secs < budget_s;
    bool pass = o.pass && in_time;
    std::ostringstream line;
    line << "criterion " << std::setw(2) << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  ["
         << std::fixed << std::setprecision(2) << secs << "s";
    if (budget_s > 0) line << " / " << budget_s << "s";
    line << "]";
    if (!o.detail.empty()) line << "  " << o.detail;
    if (!in_time) line << "  over time budget";
    std::cout << line.str() << std::endl;
    return pass;
}

std::vector<WeightedPolynomial> monomials(int d)
{
    std::vector<WeightedPolynomial> out;
    for (const auto& m : monomial_basis(d)) {
        WeightedPolynomial p(d);
        p.add_term(m, 1);
        out.push_back(p);
    }
    return out;
}

std::vector<std::vector<std::size_t>> all_supports(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1U << i)) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

bool meets(const std::vector<std::size_t>& s, const std::set<std::size_t>& block)
{
    for (auto i : s)
        if (block.count(i)) return true;
    return false;
}

Outcome criterion_matrix()
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
    std::ostringstream out, err;
    int code = cli::dispatch({"matrix", "--d", "4"}, out, err);
    if (code != 0) return {false, "exit " + std::to_string(code) + ": " + err.str()};
    Json m = Json::parse(out.str()).at("results").at("matrix");
    const std::vector<std::string> names{"lambda", "mu", "nu"};
    if (m.size() != 9) return {false, "wrong row count"};
    int bad = 0;
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 9; ++c)
            if (parse_multipoly(m[r][c].get<std::string>(), names) != parse_multipoly(printed[r][c], names)) ++bad;
    return {bad == 0, std::to_string(81 - bad) + "/81 entries match symbolically"};
}

Outcome criterion_supports()
{
    const RationalVector w{3, 3, 1, -1, -1};
    int bad = 0, strict_at_wall = 0;
    for (const auto& s : all_supports(5)) {
        bool stable0 = meets(s, {0, 1, 2}) && meets(s, {3, 4});
        bool stable2 = meets(s, {0, 1}) && meets(s, {2, 3, 4});
        Status a = torus_test(TorusLinearisation::rank_one(w, 0), s).status;
        Status b = torus_test(TorusLinearisation::rank_one(w, -2), s).status;
        Status c = torus_test(TorusLinearisation::rank_one(w, -1), s).status;
        bad += a != (stable0 ? Status::Stable : Status::Unstable);
        bad += b != (stable2 ? Status::Stable : Status::Unstable);
        strict_at_wall += c == Status::StrictlySemistable;
    }
    return {bad == 0 && strict_at_wall > 0, "31 supports x 3 twists, " + std::to_string(bad) + " mismatches, " +
                                                std::to_string(strict_at_wall) + " strictly semistable at twist -1"};
}

Outcome criterion_triangle()
{
    int cases = 0, bad = 0;
    for (int d : {2, 4, 6, 8, 10})
        for (Rational delta : {Rational(-3), Rational(0), make_rational(5, 2)}) {
            ++cases;
            std::vector<RationalVector> pts;
            for (const auto& [m, wt] : tc_weight_map(d, delta)) pts.push_back(wt);
            std::set<std::pair<Rational, Rational>> got, want;
            for (const auto& v : convex_hull_2d(pts)) got.insert({v[0], v[1]});
            Rational half = Rational(d) / 2;
            want = {{d + delta, delta}, {delta, d + delta}, {delta - half, delta - half}};
            bad += got != want;
        }
    return {bad == 0, std::to_string(cases - bad) + "/" + std::to_string(cases) + " hulls are the expected triangle"};
}

Outcome criterion_endpoints()
{
    std::mt19937_64 rng(4004);
    auto polys = monomials(4);
    for (int i = 0; i < 100; ++i) polys.push_back(gitkit::testing::random_polynomial(rng, 4));
    int bad = 0, checked = 0;
    for (Rational delta : {make_rational(-5, 2), Rational(-2), Rational(2), Rational(3)}) {
        bool endpoint = abs(delta) == 2;
        for (const auto& p : polys) {
            StabilityVerdict v = h_test(p, {4, delta});
            ++checked;
            bad += v.status != Status::Unstable || v.endpoint_caveat != endpoint;
        }
    }
    return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " Unstable with caveat exactly at +-2"};
}

Outcome criterion_uhat_oracle()
{
    std::mt19937_64 rng(5005);
    int polys = 0, checked = 0, bad = 0, by_oracle = 0, by_certificate = 0;
    for (int d : {2, 4, 6, 8}) {
        for (int i = 0; i < 50; ++i) {
            WeightedPolynomial p = gitkit::testing::random_polynomial(rng, d, i % 4 == 0 ? 0.3 : 0.6);
            ++polys;
            for (Rational delta : {Rational(-d / 2 + 1), Rational(0), Rational(d / 2 - 1)}) {
                HLinearisation lin{d, delta};
                StabilityVerdict exact = uhat_test(p, lin);
                StabilityVerdict oracle = uhat_oracle(p, lin, {true, 50, static_cast<std::uint64_t>(checked)});
                ++checked;
                if (static_cast<int>(oracle.status) < static_cast<int>(exact.status)) {
                    ++bad;
                    continue;
                }
                if (exact.status == Status::Unstable) {
                    if (oracle.status == Status::Unstable)
                        ++by_oracle;
                    else if (verify_uhat_certificate(p, lin, exact))
                        ++by_certificate;
                    else
                        ++bad;
                }
            }
        }
    }
    std::ostringstream s;
    s << polys << " polynomials, " << checked << " verdicts, " << bad << " disagreements; Unstable confirmed by oracle "
      << by_oracle << ", by certificate " << by_certificate;
    return {bad == 0 && polys >= 200, s.str()};
}

Outcome criterion_h_oracle()
{
    std::mt19937_64 rng(6006);
    int polys = 0, checked = 0, oracle_hits = 0, uncheckable = 0, stable = 0;
    for (int i = 0; i < 100; ++i) {
        WeightedPolynomial p = gitkit::testing::random_polynomial(rng, 4, i % 3 == 0 ? 0.35 : 0.6);
        ++polys;
        for (Rational delta : {Rational(-1), Rational(0), Rational(1)}) {
            HLinearisation lin{4, delta};
            StabilityVerdict v = h_test(p, lin);
            ++checked;
            if (v.status == Status::Unstable) {
                uncheckable += !verify_h_certificate(p, lin, v);
                continue;
            }
            StabilityVerdict o = h_oracle(p, lin, kHOracleSamples, static_cast<std::uint64_t>(checked));
            if (v.status == Status::Stable) {
                ++stable;
                oracle_hits += o.status != Status::Stable;
            } else {
                oracle_hits += o.status == Status::Unstable;
            }
        }
    }
    std::ostringstream s;
    s << polys << " polynomials, " << checked << " verdicts (" << stable << " Stable); oracle counterexamples "
      << oracle_hits << ", unverifiable Unstable certificates " << uncheckable;
    return {oracle_hits == 0 && uncheckable == 0, s.str()};
}

Outcome criterion_flow()
{
    std::mt19937_64 rng(7007);
    std::uniform_int_distribution<int> wd(-6, 6), dimd(2, 9), rankd(1, 2);
    FlowOptions opts;
    opts.tol = kFlowTol;
    opts.max_iter = kFlowMaxIter;
    int reps = 0, samples = 0, agree = 0, max_iter = 0;
    for (int t = 0; t < 20; ++t) {
        int n = dimd(rng), rank = rankd(rng);
        std::vector<RationalVector> w(static_cast<std::size_t>(n), RationalVector(static_cast<std::size_t>(rank)));
        for (auto& row : w)
            for (auto& v : row) v = wd(rng);
        RationalVector twist(static_cast<std::size_t>(rank));
        for (auto& v : twist) v = Rational(wd(rng)) / 2;
        FlowComparison c = compare_flow_exact(w, twist, 100, static_cast<std::uint64_t>(t), kFlowMargin, opts, 4);
        ++reps;
        samples += c.samples;
        agree += c.agreements;
        max_iter = std::max(max_iter, c.max_iterations_used);
    }
    std::ostringstream s;
    s << reps << " reps, " << agree << "/" << samples << " agree, max iterations " << max_iter << " (tol " << kFlowTol
      << ")";
    return {agree == samples && samples > 0 && max_iter <= kFlowMaxIter, s.str()};
}

Outcome criterion_moment()
{
    std::mt19937_64 rng(8008);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_int_distribution<int> wd(-6, 6);
    double worst = 0, worst_product = 0;
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 8, rank = 1 + t % 3;
        std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(rank)));
        for (auto& row : w)
            for (auto& v : row) v = wd(rng);
        Eigen::VectorXcd x(n);
        for (int k = 0; k < n; ++k) x[k] = {g(rng), g(rng)};
        auto rep = CompactRepresentation::diagonal(w);
        Eigen::VectorXd mu = moment_value(rep, x);
        for (int j = 0; j < rank; ++j) {
            double num = 0, den = 0;
            for (int k = 0; k < n; ++k) {
                num += std::norm(x[k]) * w[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                den += std::norm(x[k]);
            }
            worst = std::max(worst, std::abs(mu[j] - num / (2 * kPi * den)));
        }
        Eigen::VectorXcd y(3);
        for (int k = 0; k < 3; ++k) y[k] = {g(rng), g(rng)};
        std::vector<std::vector<double>> wy(3, std::vector<double>(static_cast<std::size_t>(rank)));
        for (auto& row : wy)
            for (auto& v : row) v = wd(rng);
        auto repy = CompactRepresentation::diagonal(wy);
        double nn = 1 + t % 5;
        Eigen::VectorXd want = nn * mu + moment_value(repy, y);
        worst_product = std::max(worst_product, (product_moment_value(rep, x, repy, y, nn) - want).norm());
    }
    std::ostringstream s;
    s << "max error " << worst << ", product max error " << worst_product << " (tol " << kMomentTol << ")";
    return {worst <= kMomentTol && worst_product <= kMomentTol, s.str()};
}

RationalMatrix jordan(const std::vector<int>& sizes)
{
    int n = 0;
    for (int s : sizes) n += s;
    RationalMatrix e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::size_t off = 0;
    for (int s : sizes) {
        for (int i = 0; i + 1 < s; ++i) e(off + static_cast<std::size_t>(i), off + static_cast<std::size_t>(i) + 1) = 1;
        off += static_cast<std::size_t>(s);
    }
    return e;
}

long count_monomials(int vars, int degree)
{
    if (vars == 0) return degree == 0 ? 1 : 0;
    long total = 0;
    for (int e = 0; e <= degree; ++e) total += count_monomials(vars - 1, degree - e);
    return total;
}

Outcome criterion_envelope()
{
    int violations = 0, checks = 0;
    for (int n : {2, 3}) {
        EquivarianceReport r = check_psi_equivariance(NilpotentRep{1, n, {jordan({n})}}, 50, 9009);
        violations += static_cast<int>(r.violations.size());
        checks += r.checks;
    }
    RationalMatrix a(3, 3), b(3, 3);
    a(0, 1) = 1;
    b(0, 2) = 1;
    NilpotentRep two{2, 3, {a, b}};
    EquivarianceReport r2 = check_psi_equivariance(two, 50, 9010);
    violations += static_cast<int>(r2.violations.size());
    checks += r2.checks;

    int theta_bad = 0;
    for (int r = 1; r <= 2; ++r)
        for (int n = 1; n <= 4; ++n)
            for (int j = 0; j < n; ++j) {
                ThetaSpec spec{r, n, j};
                long want = count_monomials(r * r * (n - 1), spec.degree_h());
                for (int k = 0; k < j; ++k) want *= r;
                theta_bad += theta_dim(spec) != want;
            }

    // g1 (g2 alpha) = (g2 g1) alpha on the rank-2 example.
    std::mt19937_64 rng(9011);
    auto rmat = [&] {
        while (true) {
            RationalMatrix m(2, 2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) m(i, j) = random_rational(rng, 5, 3);
            if (determinant(m) != 0) return m;
        }
    };
    auto rvec = [&](std::size_t n) {
        RationalVector v(n);
        for (auto& x : v) x = random_rational(rng, 5, 3);
        return v;
    };
    int law_bad = 0;
    for (int t = 0; t < 10; ++t) {
        RationalMatrix g1 = rmat(), g2 = rmat();
        WmElement alpha = psi(two, rvec(3));
        WmElement lhs = glr_act_wm(two, g1, glr_act_wm(two, g2, alpha));
        WmElement rhs = glr_act_wm(two, g2 * g1, alpha);
        std::vector<RationalVector> us{rvec(2), rvec(2)};
        std::vector<RationalMatrix> hs{rmat(), rmat()};
        for (int j = 0; j < 3; ++j) {
            std::vector<RationalVector> uj(us.begin(), us.begin() + j);
            law_bad += lhs.eval(j, uj, hs) != rhs.eval(j, uj, hs);
        }
    }
    std::ostringstream s;
    s << checks << " equivariance checks, " << violations << " violations; theta mismatches " << theta_bad
      << "; composition-law failures " << law_bad;
    return {violations == 0 && theta_bad == 0 && law_bad == 0, s.str()};
}

Outcome criterion_sl2()
{
    std::mt19937_64 rng(10010);
    int bad = 0;
    for (const auto& sizes : std::vector<std::vector<int>>{{2}, {3, 2}, {4, 1}}) {
        RationalMatrix e0 = jordan(sizes);
        RationalMatrix p(e0.rows(), e0.rows());
        do {
            for (std::size_t i = 0; i < p.rows(); ++i)
                for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) = random_rational(rng, 4, 3);
        } while (determinant(p) == 0);
        RationalMatrix e = p * e0 * inverse(p);
        Sl2Triple t = sl2_complete(e);
        bad += t.block_sizes != sizes;
        bad += commutator(t.h, t.e) != Rational(2) * t.e;
        bad += commutator(t.h, t.f) != Rational(-2) * t.f;
        bad += commutator(t.e, t.f) != t.h;
    }
    // exp(t e) on binary forms of degree n is f(x, y) -> f(x + t y, y).
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
        bad += nilpotent_exp(e, t) != want;
    }
    return {bad == 0, "Jordan types (2), (3,2), (4,1) and exp(te) on Sym^1..Sym^4, " + std::to_string(bad) + " failures"};
}

Outcome criterion_walls()
{
    WallTable t = h_walls(4);
    if (t.walls != std::vector<Rational>{-2, 0, 2}) return {false, "wrong wall set"};
    std::mt19937_64 rng(11011);
    auto polys = monomials(4);
    for (int i = 0; i < 50; ++i) polys.push_back(gitkit::testing::random_polynomial(rng, 4));
    const std::vector<std::vector<Rational>> chambers{
        {make_rational(-7, 2), Rational(-3), make_rational(-5, 2), make_rational(-21, 10)},
        {make_rational(-19, 10), make_rational(-3, 2), Rational(-1), make_rational(-1, 10)},
        {make_rational(1, 10), make_rational(1, 2), make_rational(3, 2), make_rational(19, 10)},
        {make_rational(21, 10), make_rational(5, 2), Rational(3), Rational(4)}};
    int bad = 0;
    for (const auto& p : polys)
        for (const auto& ch : chambers) {
            Status first = uhat_test(p, {4, ch.front()}).status;
            for (const auto& delta : ch) bad += uhat_test(p, {4, delta}).status != first;
        }
    return {bad == 0, "walls {-2,0,2}; " + std::to_string(polys.size()) + " polynomials x 4 chambers, " +
                          std::to_string(bad) + " changes inside a chamber"};
}

}  // namespace

int main()
{
    bool ok = true;
    ok &= run_criterion(1, "quartic unipotent action matrix", kMatrixSeconds, criterion_matrix);
    ok &= run_criterion(2, "three-block supports at twists 0, -1, -2", kSupportsSeconds, criterion_supports);
    ok &= run_criterion(3, "weight triangle vertices", 0, criterion_triangle);
    ok &= run_criterion(4, "H verdicts outside and at the endpoints", kEndpointSeconds, criterion_endpoints);
    ok &= run_criterion(5, "U-hat test against sampling oracle", kUhatSeconds, criterion_uhat_oracle);
    ok &= run_criterion(6, "H test against sampling oracle and certificates", kHSeconds, criterion_h_oracle);
    ok &= run_criterion(7, "flow against exact torus verdicts", kFlowSeconds, criterion_flow);
    ok &= run_criterion(8, "moment map formula and product moment", 0, criterion_moment);
    ok &= run_criterion(9, "envelope equivariance, theta dims, composition law", 0, criterion_envelope);
    ok &= run_criterion(10, "sl2 completion and exponential", 0, criterion_sl2);
    ok &= run_criterion(11, "quartic walls and chamber constancy", kWallsSeconds, criterion_walls);
    std::cout << (ok ? "all criteria PASS" : "some criteria FAIL") << std::endl;
    return ok ? 0 : 1;
}
