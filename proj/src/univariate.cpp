#include "gitkit/univariate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gitkit {

void trim(UniPoly& p)
{
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

Rational horner(const UniPoly& p, const Rational& t)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
    return acc;
}

UniPoly deflate(const UniPoly& p, const Rational& root)
{
    if (p.size() < 2) throw std::invalid_argument("deflate: constant polynomial");
    UniPoly q(p.size() - 1);
    Rational carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = carry * root + p[i];
        q[i - 1] = carry;
    }
    if (carry * root + p[0] != 0) throw std::logic_error("deflate: not a root");
    return q;
}

namespace {

constexpr unsigned long kTrialDivisionLimit = 1000000000000UL;

// Positive divisors of n (n > 0), or empty when n is too large to factor by trial division.
std::vector<Integer> divisors(const Integer& n)
{
    if (n > Integer(std::to_string(kTrialDivisionLimit))) return {};
    unsigned long v = n.get_ui();
    std::vector<std::pair<unsigned long, int>> factors;
    for (unsigned long p = 2; p * p <= v; ++p) {
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e > 0) factors.emplace_back(p, e);
    }
    if (v > 1) factors.emplace_back(v, 1);
    std::vector<Integer> out{Integer(1)};
    for (auto [p, e] : factors) {
        std::size_t base = out.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

// Candidate rational roots from approximate real eigenvalues of the companion
// matrix; every candidate is verified exactly by the caller.
std::vector<Rational> numeric_candidates(const UniPoly& p, const Integer& lead)
{
    const std::size_t n = p.size() - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double an = p.back().get_d();
    for (std::size_t i = 0; i < n; ++i) {
        companion(0, static_cast<Eigen::Index>(i)) = -p[n - 1 - i].get_d() / an;
        if (i + 1 < n) companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<Rational> out;
    for (const auto& ev : solver.eigenvalues()) {
        if (std::abs(ev.imag()) > 1e-6 * (1.0 + std::abs(ev.real()))) continue;
        // Continued fraction convergents with denominators up to |lead|.
        double x = ev.real();
        Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        double r = x;
        for (int step = 0; step < 40; ++step) {
            double a = std::floor(r);
            Integer ai(a);
            Integer h2 = ai * h1 + h0;
            Integer k2 = ai * k1 + k0;
            if (abs(k2) > abs(lead) && abs(lead) > 0) break;
            out.emplace_back(h2, k2);
            out.back().canonicalize();
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            double frac = r - a;
            if (std::abs(frac) < 1e-12) break;
            r = 1.0 / frac;
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const UniPoly& input)
{
    UniPoly p = input;
    trim(p);
    if (p.empty()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<std::pair<Rational, int>> out;
    int zero_mult = 0;
    while (p.size() > 1 && is_zero(p.front())) {
        p.erase(p.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) out.emplace_back(Rational(0), zero_mult);
    if (p.size() <= 1) return out;

    // Integer, primitive version.
    Integer l = 1;
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ip;
    for (const auto& c : p) ip.push_back(c.get_num() * (l / c.get_den()));
    Integer a0 = abs(ip.front());
    Integer an = abs(ip.back());

    std::vector<Rational> candidates;
    auto dq = divisors(an);
    auto dp = divisors(a0);
    if (!dq.empty() && !dp.empty()) {
        for (const auto& num : dp)
            for (const auto& den : dq) {
                Rational c(num, den);
                c.canonicalize();
                candidates.push_back(c);
                candidates.push_back(-c);
            }
    } else {
        candidates = numeric_candidates(p, ip.back());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const auto& c : candidates) {
        int mult = 0;
        while (p.size() > 1 && horner(p, c) == 0) {
            p = deflate(p, c);
            ++mult;
        }
        if (mult > 0) out.emplace_back(c, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace gitkit
