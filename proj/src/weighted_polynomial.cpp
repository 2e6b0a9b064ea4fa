#include "gitkit/weighted_polynomial.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace gitkit {

std::string WeightedMonomial::to_string() const
{
    std::string s;
    auto put = [&s](char v, int e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += v;
        if (e > 1) s += "^" + std::to_string(e);
    };
    put('x', i);
    put('y', j);
    put('z', k);
    return s.empty() ? "1" : s;
}

std::vector<WeightedMonomial> monomial_basis(int d)
{
    std::vector<WeightedMonomial> out;
    if (d < 0) return out;
    for (int k = 0; 2 * k <= d; ++k) {
        int rest = d - 2 * k;
        for (int i = rest; i >= 0; --i) out.push_back({i, rest - i, k});
    }
    return out;
}

void WeightedPolynomial::add_term(const WeightedMonomial& m, const Rational& c)
{
    if (m.i < 0 || m.j < 0 || m.k < 0) throw std::invalid_argument("negative exponent");
    if (m.weighted_degree() != d_)
        throw std::invalid_argument("monomial " + m.to_string() + " has weighted degree " +
                                    std::to_string(m.weighted_degree()) + ", expected " + std::to_string(d_));
    if (gitkit::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (gitkit::is_zero(it->second)) terms_.erase(it);
    }
}

Rational WeightedPolynomial::coefficient(const WeightedMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly WeightedPolynomial::to_multipoly(std::size_t nvars) const
{
    MultiPoly f(nvars);
    for (const auto& [m, c] : terms_) {
        Exponent e{};
        e[0] = static_cast<std::uint16_t>(m.i);
        e[1] = static_cast<std::uint16_t>(m.j);
        e[2] = static_cast<std::uint16_t>(m.k);
        f += MultiPoly::monomial(nvars, e, c);
    }
    return f;
}

WeightedPolynomial WeightedPolynomial::from_multipoly(int d, const MultiPoly& f)
{
    WeightedPolynomial p(d);
    for (const auto& t : f.terms()) {
        for (std::size_t v = 3; v < kMaxVariables; ++v)
            if (t.exp[v] != 0) throw std::invalid_argument("from_multipoly: extra variables present");
        p.add_term({t.exp[0], t.exp[1], t.exp[2]}, t.coeff);
    }
    return p;
}

std::string WeightedPolynomial::to_text() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c0] : terms_) {
        Rational c = c0;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono = m.to_string();
        if (mono == "1")
            os << gitkit::to_string(c);
        else if (c == 1)
            os << mono;
        else
            os << gitkit::to_string(c) << "*" << mono;
    }
    return os.str();
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    WeightedPolynomial parse(int d)
    {
        WeightedPolynomial p(d);
        skip();
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            std::size_t term_start = pos_;
            auto [m, c] = term();
            if (m.weighted_degree() != d) {
                throw InputError("degree mismatch at position " + std::to_string(term_start) + ": monomial " +
                                 m.to_string() + " has weighted degree " + std::to_string(m.weighted_degree()) +
                                 ", expected " + std::to_string(d));
            }
            p.add_term(m, sign * c);
            skip();
            if (pos_ >= s_.size()) break;
        }
        return p;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError("syntax error at position " + std::to_string(pos_) + ": " + what);
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::pair<WeightedMonomial, Rational> term()
    {
        WeightedMonomial m;
        Rational c = 1;
        bool any = false;
        while (true) {
            skip();
            if (pos_ >= s_.size()) fail("unexpected end of input");
            char ch = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
                std::string num = digits();
                std::string den = "1";
                if (pos_ < s_.size() && s_[pos_] == '/') {
                    ++pos_;
                    den = digits();
                }
                c *= parse_rational(num + "/" + den);
            } else if (ch == 'x' || ch == 'y' || ch == 'z') {
                ++pos_;
                int e = 1;
                skip();
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    skip();
                    e = std::stoi(digits());
                }
                (ch == 'x' ? m.i : ch == 'y' ? m.j : m.k) += e;
            } else {
                fail(std::string("unexpected character '") + ch + "'");
            }
            any = true;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        return {m, c};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

WeightedPolynomial parse_polynomial(std::string_view text, int d)
{
    if (d < 0) throw InputError("negative degree");
    WeightedPolynomial p = Parser(text).parse(d);
    if (p.is_zero()) throw InputError("zero polynomial: '" + std::string(text) + "' cancels to 0");
    return p;
}

void require_nonzero(const WeightedPolynomial& p)
{
    if (p.is_zero()) throw InputError("zero input");
}

}  // namespace gitkit
