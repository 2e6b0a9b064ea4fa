#include "gitkit/io.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gitkit {

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
    throw InputError("expected a rational as a string or integer, got " + j.dump());
}

Json rational_to_json(const Rational& q) { return to_string(q); }

RationalVector rational_vector_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
    RationalVector v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

Json rational_vector_to_json(const RationalVector& v)
{
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rational_to_json(q));
    return a;
}

Json integer_vector_to_json(const std::vector<Integer>& v)
{
    Json a = Json::array();
    for (const auto& z : v) a.push_back(z.get_str());
    return a;
}

namespace {

const Json& require(const Json& j, const char* key)
{
    if (!j.is_object()) throw InputError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

int require_int(const Json& j, const char* key)
{
    const Json& v = require(j, key);
    if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

}  // namespace

WeightedPolynomial polynomial_from_json(const Json& j)
{
    const int d = require_int(j, "d");
    if (d <= 0) throw InputError("degree d must be positive");
    if (j.contains("text")) return parse_polynomial(j["text"].get<std::string>(), d);
    const Json& terms = require(j, "terms");
    if (!terms.is_array()) throw InputError("'terms' must be an array");
    WeightedPolynomial p(d);
    for (const auto& t : terms) {
        WeightedMonomial m{require_int(t, "i"), require_int(t, "j"), require_int(t, "k")};
        if (m.i < 0 || m.j < 0 || m.k < 0) throw InputError("negative exponent in " + m.to_string());
        if (m.weighted_degree() != d)
            throw InputError("degree mismatch: monomial " + m.to_string() + " has weighted degree " +
                             std::to_string(m.weighted_degree()) + ", expected " + std::to_string(d));
        p.add_term(m, rational_from_json(require(t, "c")));
    }
    require_nonzero(p);
    return p;
}

Json polynomial_to_json(const WeightedPolynomial& p)
{
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms())
        terms.push_back(Json{{"i", m.i}, {"j", m.j}, {"k", m.k}, {"c", rational_to_json(c)}});
    return Json{{"d", p.degree()}, {"terms", terms}};
}

std::vector<WeightedPolynomial> corpus_from_json(const Json& j)
{
    if (!j.is_array()) throw InputError("corpus must be a JSON array of polynomial objects");
    std::vector<WeightedPolynomial> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            out.push_back(polynomial_from_json(j[i]));
        } catch (const InputError& e) {
            throw InputError("corpus entry " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

TorusLinearisation linearisation_from_json(const Json& j)
{
    TorusLinearisation lin;
    lin.rank = j.contains("rank") ? require_int(j, "rank") : 1;
    const Json& w = require(j, "weights");
    if (!w.is_array()) throw InputError("'weights' must be an array");
    for (const auto& e : w) lin.weights.push_back(e.is_array() ? rational_vector_from_json(e) : RationalVector{rational_from_json(e)});
    if (j.contains("twist")) {
        const Json& t = j["twist"];
        lin.twist = t.is_array() ? rational_vector_from_json(t) : RationalVector{rational_from_json(t)};
    } else {
        lin.twist.assign(static_cast<std::size_t>(lin.rank), Rational(0));
    }
    lin.validate();
    return lin;
}

Json linearisation_to_json(const TorusLinearisation& lin)
{
    Json w = Json::array();
    for (const auto& v : lin.weights) w.push_back(rational_vector_to_json(v));
    return Json{{"rank", lin.rank}, {"weights", w}, {"twist", rational_vector_to_json(lin.twist)}};
}

namespace {

Json complex_list(const std::vector<std::complex<double>>& v)
{
    Json a = Json::array();
    for (const auto& z : v) a.push_back(Json::array({z.real(), z.imag()}));
    return a;
}

}  // namespace

Json certificate_to_json(const Certificate& c)
{
    Json j{{"kind", c.kind}, {"covector", integer_vector_to_json(c.covector)}};
    if (c.unipotent) j["unipotent"] = rational_vector_to_json(*c.unipotent);
    if (c.gl2) j["gl2"] = rational_vector_to_json(*c.gl2);
    if (!c.numeric_unipotent.empty()) j["numeric_unipotent"] = complex_list(c.numeric_unipotent);
    if (!c.numeric_gl2.empty()) j["numeric_gl2"] = complex_list(c.numeric_gl2);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json verdict_to_json(const StabilityVerdict& v)
{
    return Json{{"status", to_string(v.status)},
                {"certificate", v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr)},
                {"endpoint_caveat", v.endpoint_caveat}};
}

RationalMatrix matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
    std::vector<RationalVector> rows;
    for (const auto& r : j) rows.push_back(rational_vector_from_json(r));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw InputError("matrix rows have different lengths");
    return RationalMatrix::from_rows(rows);
}

Json matrix_to_json(const RationalMatrix& m)
{
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(rational_vector_to_json(m.row(r)));
    return a;
}

NilpotentRep nilpotent_rep_from_json(const Json& j)
{
    NilpotentRep rep;
    rep.r = require_int(j, "r");
    rep.dimV = require_int(j, "dimV");
    const Json& g = require(j, "generators");
    if (!g.is_array()) throw InputError("'generators' must be an array of matrices");
    for (const auto& m : g) rep.generators.push_back(matrix_from_json(m));
    rep.validate();
    return rep;
}

std::complex<double> complex_from_json(const Json& j)
{
    auto real = [](const Json& e) -> double {
        if (e.is_number()) return e.get<double>();
        if (e.is_string()) return parse_rational(e.get<std::string>()).get_d();
        throw InputError("expected a number, got " + e.dump());
    };
    if (j.is_array()) {
        if (j.size() != 2) throw InputError("complex entries are [re, im]");
        return {real(j[0]), real(j[1])};
    }
    return {real(j), 0.0};
}

MultiPoly parse_multipoly(std::string_view text, const std::vector<std::string>& names)
{
    const std::size_t nvars = names.size();
    if (nvars > kMaxVariables) throw std::invalid_argument("too many variables");
    MultiPoly result(nvars);
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("syntax error at position " + std::to_string(pos) + ": " + what);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto number = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(start, pos - start));
    };
    skip();
    if (pos == text.size()) fail("empty input");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        Rational sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Rational coeff = 1;
        Exponent e{};
        bool have_factor = false;
        while (true) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::string num = number();
                Rational c{Integer(num)};
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    std::string den = number();
                    if (den.empty() || Integer(den) == 0) fail("bad denominator");
                    c /= Rational(Integer(den));
                }
                coeff *= c;
            } else {
                std::size_t best = nvars;
                std::size_t best_len = 0;
                for (std::size_t v = 0; v < nvars; ++v)
                    if (names[v].size() > best_len && text.substr(pos, names[v].size()) == names[v]) {
                        best = v;
                        best_len = names[v].size();
                    }
                if (best == nvars) fail("expected a coefficient or variable");
                pos += best_len;
                unsigned power = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    std::string p = number();
                    if (p.empty()) fail("expected an exponent");
                    power = static_cast<unsigned>(std::stoul(p));
                }
                e[best] = static_cast<std::uint16_t>(e[best] + power);
            }
            have_factor = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        result += MultiPoly::monomial(nvars, e, sign * coeff);
    }
    return result;
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
}

Json RunManifest::to_json() const
{
    Json params = Json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    Json digests = Json::object();
    for (const auto& [k, v] : input_digests) digests[k] = "sha256:" + v;
    return Json{{"subcommand", subcommand},
                {"parameters", params},
                {"seed", seed},
                {"tool_version", tool_version},
                {"input_digests", digests}};
}

ReportFormat parse_report_format(const std::string& s)
{
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    throw InputError("unknown format '" + s + "' (expected json or csv)");
}

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string emit_report(const Report& report, const RunManifest& manifest, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        Json doc{{"manifest", manifest.to_json()}, {"results", report.results}};
        return doc.dump(2) + "\n";
    }
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_escape(fields[i]);
        out += "\n";
    };
    line(report.csv_columns);
    for (const auto& r : report.csv_rows) line(r);
    return out;
}

std::string manifest_document(const RunManifest& manifest) { return manifest.to_json().dump(2) + "\n"; }

}  // namespace gitkit
