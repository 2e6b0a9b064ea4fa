#ifndef GITKIT_IO_HPP
#define GITKIT_IO_HPP

#include "gitkit/envelope.hpp"
#include "gitkit/linalg.hpp"
#include "gitkit/multipoly.hpp"
#include "gitkit/torus_git.hpp"
#include "gitkit/verdict.hpp"
#include "gitkit/weighted_polynomial.hpp"

#include <json.hpp>

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gitkit {

/// Insertion-ordered JSON keeps field order deterministic.
using Json = nlohmann::ordered_json;

/// Accepts "p/q" strings and JSON integers; floats are rejected.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);
RationalVector rational_vector_from_json(const Json& j);
Json rational_vector_to_json(const RationalVector& v);
Json integer_vector_to_json(const std::vector<Integer>& v);

/// {d, terms: [{i, j, k, c}]} or {d, text}. Like terms are combined; a
/// degree mismatch names the monomial; the zero polynomial is rejected.
WeightedPolynomial polynomial_from_json(const Json& j);
Json polynomial_to_json(const WeightedPolynomial& p);
/// JSON array of polynomial objects.
std::vector<WeightedPolynomial> corpus_from_json(const Json& j);

/// {rank, weights: [[...]], twist: [...]}; rank 1 also accepts flat weights
/// and a scalar twist.
TorusLinearisation linearisation_from_json(const Json& j);
Json linearisation_to_json(const TorusLinearisation& lin);

Json certificate_to_json(const Certificate& c);
/// {status, certificate, endpoint_caveat}.
Json verdict_to_json(const StabilityVerdict& v);

RationalMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const RationalMatrix& m);
/// {r, dimV, generators: [matrices]}; validated.
NilpotentRep nilpotent_rep_from_json(const Json& j);

/// A complex entry: a number or [re, im]. Rational strings are allowed.
std::complex<double> complex_from_json(const Json& j);

/// Parses the `c*v^e*...` grammar over the given variable names.
MultiPoly parse_multipoly(std::string_view text, const std::vector<std::string>& names);

std::string sha256_hex(std::string_view data);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::string& path);
/// Parses JSON text; syntax errors become InputError.
Json parse_json(const std::string& text, const std::string& origin);

struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::map<std::string, std::string> input_digests;

    Json to_json() const;
};

enum class ReportFormat { Json, Csv };
ReportFormat parse_report_format(const std::string& s);

/// Results in both shapes: JSON is authoritative, CSV rows are a lossy
/// flattening (no certificates).
struct Report {
    Json results = Json::object();
    std::vector<std::string> csv_columns;
    std::vector<std::vector<std::string>> csv_rows;
};

/// JSON: {"manifest": ..., "results": ...} with a trailing newline. CSV:
/// header and rows only; the manifest goes to a sidecar (manifest_document).
std::string emit_report(const Report& report, const RunManifest& manifest, ReportFormat format);
std::string manifest_document(const RunManifest& manifest);

std::string csv_escape(const std::string& field);

}  // namespace gitkit

#endif
