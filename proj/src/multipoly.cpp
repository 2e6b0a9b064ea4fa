#include "gitkit/multipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gitkit {

unsigned total_degree(const Exponent& e)
{
    unsigned s = 0;
    for (auto v : e) s += v;
    return s;
}

bool divides(const Exponent& a, const Exponent& b)
{
    for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent lcm(const Exponent& a, const Exponent& b)
{
    Exponent r{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Exponent operator+(const Exponent& a, const Exponent& b)
{
    Exponent r{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
    return r;
}

Exponent operator-(const Exponent& a, const Exponent& b)
{
    Exponent r{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
    return r;
}

bool coprime(const Exponent& a, const Exponent& b)
{
    for (std::size_t i = 0; i < kMaxVariables; ++i)
        if (a[i] != 0 && b[i] != 0) return false;
    return true;
}

int degrevlex_compare(const Exponent& a, const Exponent& b)
{
    unsigned da = total_degree(a);
    unsigned db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = kMaxVariables; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

namespace {

struct Greater {
    bool operator()(const Term& a, const Term& b) const { return degrevlex_compare(a.exp, b.exp) > 0; }
};

}  // namespace

void MultiPoly::normalize_unsorted()
{
    std::sort(terms_.begin(), terms_.end(), Greater{});
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exp == t.exp) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && gitkit::is_zero(out.back().coeff)) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && gitkit::is_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c)
{
    MultiPoly p(nvars);
    if (!gitkit::is_zero(c)) p.terms_.push_back({Exponent{}, c});
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index)
{
    if (index >= nvars) throw std::out_of_range("variable index");
    Exponent e{};
    e[index] = 1;
    return monomial(nvars, e, Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t nvars, const Exponent& e, const Rational& c)
{
    MultiPoly p(nvars);
    if (!gitkit::is_zero(c)) p.terms_.push_back({e, c});
    return p;
}

bool MultiPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exp) == 0);
}

unsigned MultiPoly::degree() const
{
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.exp));
    return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const
{
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.exp[var]);
    return d;
}

Rational MultiPoly::coefficient(const Exponent& e) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{e, Rational(0)}, Greater{});
    if (it != terms_.end() && it->exp == e) return it->coeff;
    return Rational(0);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    sub_scaled_shifted(Rational(-1), Exponent{}, o);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    sub_scaled_shifted(Rational(1), Exponent{}, o);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c)
{
    if (gitkit::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

void MultiPoly::sub_scaled_shifted(const Rational& c, const Exponent& shift, const MultiPoly& other)
{
    if (nvars_ < other.nvars_) nvars_ = other.nvars_;
    if (other.terms_.empty() || gitkit::is_zero(c)) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    Term scratch;
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end()) {
            out.push_back(std::move(*a++));
            continue;
        }
        Exponent be = b->exp + shift;
        int cmp = a == terms_.end() ? -1 : degrevlex_compare(a->exp, be);
        if (cmp > 0) {
            out.push_back(std::move(*a++));
        } else if (cmp < 0) {
            out.push_back({be, -(c * b->coeff)});
            ++b;
        } else {
            Rational v = a->coeff - c * b->coeff;
            if (!gitkit::is_zero(v)) out.push_back({be, std::move(v)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    MultiPoly r(std::max(a.nvars_, b.nvars_));
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1) {
        r = b.shifted(a.terms_[0].exp);
        r *= a.terms_[0].coeff;
        return r;
    }
    if (b.terms_.size() == 1) {
        r = a.shifted(b.terms_[0].exp);
        r *= b.terms_[0].coeff;
        return r;
    }
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) r.terms_.push_back({ta.exp + tb.exp, ta.coeff * tb.coeff});
    r.normalize_unsorted();
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

MultiPoly MultiPoly::pow(unsigned n) const
{
    MultiPoly result = constant(nvars_, Rational(1));
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::shifted(const Exponent& shift) const
{
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.exp = t.exp + shift;
    return r;
}

void MultiPoly::make_monic()
{
    if (terms_.empty()) return;
    Rational inv = 1 / terms_.front().coeff;
    for (auto& t : terms_) t.coeff *= inv;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const
{
    if (point.size() < nvars_) throw std::invalid_argument("evaluation point too short");
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < nvars_; ++i) {
            for (unsigned k = 0; k < t.exp[i]; ++k) v *= point[i];
        }
        sum += v;
    }
    return sum;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const
{
    MultiPoly r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        for (unsigned k = 0; k < t.exp[var]; ++k) c *= value;
        if (gitkit::is_zero(c)) continue;
        Exponent e = t.exp;
        e[var] = 0;
        r.terms_.push_back({e, c});
    }
    r.normalize_unsorted();
    return r;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const
{
    if (images.size() < nvars_) throw std::invalid_argument("compose: too few images");
    std::size_t target = images.empty() ? 0 : images[0].nvars();
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        unsigned deg = degree_in(i);
        powers[i].push_back(constant(target, Rational(1)));
        for (unsigned k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * images[i]);
    }
    MultiPoly result(target);
    for (const auto& t : terms_) {
        MultiPoly prod = constant(target, t.coeff);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (t.exp[i] > 0) prod = prod * powers[i][t.exp[i]];
        result += prod;
    }
    return result;
}

MultiPoly MultiPoly::remap(std::size_t new_nvars, std::span<const std::size_t> map) const
{
    MultiPoly r(new_nvars);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponent e{};
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (t.exp[i] == 0) continue;
            if (i >= map.size() || map[i] >= new_nvars) throw std::invalid_argument("remap: variable dropped");
            e[map[i]] = static_cast<std::uint16_t>(e[map[i]] + t.exp[i]);
        }
        r.terms_.push_back({e, t.coeff});
    }
    r.normalize_unsorted();
    return r;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool has_var = total_degree(t.exp) > 0;
        bool wrote = false;
        if (!has_var || c != 1) {
            os << gitkit::to_string(c);
            wrote = true;
        }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (t.exp[i] == 0) continue;
            if (wrote) os << "*";
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (t.exp[i] > 1) os << "^" << t.exp[i];
            wrote = true;
        }
    }
    return os.str();
}

std::vector<std::pair<Exponent, MultiPoly>> coefficients_in_leading_block(const MultiPoly& f,
                                                                          std::size_t split)
{
    std::map<Exponent, MultiPoly> buckets;
    std::size_t rest = f.nvars() > split ? f.nvars() - split : 0;
    for (const auto& t : f.terms()) {
        Exponent head{};
        Exponent tail{};
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (i < split)
                head[i] = t.exp[i];
            else
                tail[i - split] = t.exp[i];
        }
        auto [it, inserted] = buckets.try_emplace(head, MultiPoly(rest));
        it->second += MultiPoly::monomial(rest, tail, t.coeff);
    }
    std::vector<std::pair<Exponent, MultiPoly>> out;
    out.reserve(buckets.size());
    for (auto& [e, p] : buckets) out.emplace_back(e, std::move(p));
    return out;
}

}  // namespace gitkit
