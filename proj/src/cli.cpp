#include "gitkit/cli.hpp"

#include "gitkit/envelope.hpp"
#include "gitkit/group_action.hpp"
#include "gitkit/io.hpp"
#include "gitkit/moment_flow.hpp"
#include "gitkit/nonreductive_git.hpp"
#include "gitkit/torus_git.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#ifndef GITKIT_VERSION
#define GITKIT_VERSION "0.0.0"
#endif

namespace gitkit::cli {

const char* tool_version() { return GITKIT_VERSION; }

namespace {

/// Options shared by every subcommand.
struct Common {
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    std::string format = "json";
    std::string output;
};

/// Thrown by handlers that completed but left undecided results.
struct Undecided {
    Report report;
};

class Context {
public:
    Context(CLI::App* sub, std::string name, const Common& common) : sub_(sub), name_(std::move(name)), common_(common)
    {
    }

    std::string read_input(const std::string& path)
    {
        std::string content = read_file(path);
        digests_[path] = sha256_hex(content);
        return content;
    }
    Json read_json(const std::string& path) { return parse_json(read_input(path), path); }

    RunManifest manifest() const
    {
        RunManifest m;
        m.subcommand = name_;
        m.seed = common_.seed;
        m.tool_version = tool_version();
        m.input_digests = digests_;
        for (const CLI::Option* opt : sub_->get_options()) {
            const auto& lnames = opt->get_lnames();
            if (lnames.empty()) continue;
            const std::string& key = lnames.front();
            if (key == "help" || key == "jobs" || key == "output" || key == "seed") continue;
            std::string value;
            if (opt->count() > 0) {
                const auto& res = opt->results();
                for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
            } else {
                value = opt->get_default_str();
            }
            m.parameters[key] = value;
        }
        return m;
    }

    const Common& common() const { return common_; }
    unsigned jobs() const
    {
        if (common_.jobs > 0) return common_.jobs;
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }

private:
    CLI::App* sub_;
    std::string name_;
    Common common_;
    std::map<std::string, std::string> digests_;
};

std::vector<std::size_t> parse_index_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("bad index '" + item + "' in list '" + text + "'");
        out.push_back(static_cast<std::size_t>(std::stoul(item)));
    }
    return out;
}

/// "w1;w2;..." with each w a comma list (one weight vector per coordinate),
/// or a plain comma list for rank 1.
std::vector<RationalVector> parse_weight_rows(const std::string& text)
{
    std::vector<RationalVector> rows;
    if (text.find(';') == std::string::npos) {
        for (const auto& q : parse_rational_list(text)) rows.push_back({q});
        return rows;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) rows.push_back(parse_rational_list(item));
    return rows;
}

TorusLinearisation lin_from_options(Context& ctx, const std::string& weights, const std::string& lin_file,
                                    const std::string& twist)
{
    TorusLinearisation lin;
    if (!lin_file.empty() && !weights.empty()) throw InputError("give either --weights or --lin, not both");
    if (!lin_file.empty()) {
        lin = linearisation_from_json(ctx.read_json(lin_file));
    } else if (!weights.empty()) {
        lin.weights = parse_weight_rows(weights);
        lin.rank = static_cast<int>(lin.weights.front().size());
        lin.twist.assign(static_cast<std::size_t>(lin.rank), Rational(0));
    } else {
        throw InputError("one of --weights or --lin is required");
    }
    if (!twist.empty()) lin.twist = parse_rational_list(twist);
    lin.validate();
    return lin;
}

Json support_json(const std::vector<std::size_t>& s)
{
    Json a = Json::array();
    for (auto i : s) a.push_back(i);
    return a;
}

std::string support_text(const std::vector<std::size_t>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out;
}

Json hull_vertices(const WeightPointSet& pts)
{
    Json a = Json::array();
    if (pts.dim == 1) {
        auto [lo, hi] = std::minmax_element(pts.points.begin(), pts.points.end(),
                                            [](const RationalVector& x, const RationalVector& y) { return x[0] < y[0]; });
        a.push_back(rational_vector_to_json(*lo));
        if ((*hi)[0] != (*lo)[0]) a.push_back(rational_vector_to_json(*hi));
    } else if (pts.dim == 2) {
        for (const auto& v : convex_hull_2d(pts.points)) a.push_back(rational_vector_to_json(v));
    }
    return a;
}

std::string cert_kind(const StabilityVerdict& v) { return v.certificate ? v.certificate->kind : ""; }

// ---------------------------------------------------------------- torus-test

struct TorusArgs {
    std::string weights, lin, twist, support;
    bool all_supports = false;
};

Report run_torus_test(Context& ctx, const TorusArgs& a)
{
    TorusLinearisation lin = lin_from_options(ctx, a.weights, a.lin, a.twist);
    Report rep;
    rep.results["linearisation"] = linearisation_to_json(lin);
    rep.csv_columns = {"support", "status", "certificate"};
    const std::size_t n = lin.weights.size();
    if (a.all_supports) {
        if (!a.support.empty()) throw InputError("--support and --all-supports are exclusive");
        if (n > 16) throw InputError("--all-supports is limited to 16 coordinates");
        Json rows = Json::array();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1U) s.push_back(i);
            StabilityVerdict v = torus_test(lin, s);
            rows.push_back(Json{{"support", support_json(s)}, {"verdict", verdict_to_json(v)}});
            rep.csv_rows.push_back({support_text(s), to_string(v.status), cert_kind(v)});
        }
        rep.results["supports"] = rows;
        return rep;
    }
    std::vector<std::size_t> s;
    if (a.support.empty()) {
        for (std::size_t i = 0; i < n; ++i) s.push_back(i);
    } else {
        s = parse_index_list(a.support);
    }
    StabilityVerdict v = torus_test(lin, s);
    rep.results["support"] = support_json(s);
    rep.results["verdict"] = verdict_to_json(v);
    rep.results["hull_vertices"] = hull_vertices(twisted_support(lin, s));
    rep.csv_rows.push_back({support_text(s), to_string(v.status), cert_kind(v)});
    return rep;
}

// ------------------------------------------------------------- vgit-chambers

Report run_vgit_chambers(Context& ctx, const TorusArgs& a)
{
    TorusLinearisation lin = lin_from_options(ctx, a.weights, a.lin, "");
    Report rep;
    rep.results["linearisation"] = linearisation_to_json(lin);
    if (lin.rank == 1) {
        ChamberDecomposition dec = vgit_chambers(lin);
        rep.results["walls"] = rational_vector_to_json(dec.walls);
        Json chambers = Json::array();
        rep.csv_columns = {"lo", "hi", "positive", "negative"};
        for (const auto& c : dec.chambers) {
            chambers.push_back(Json{{"lo", rational_to_json(c.lo)},
                                    {"hi", rational_to_json(c.hi)},
                                    {"positive", support_json(c.positive)},
                                    {"negative", support_json(c.negative)}});
            rep.csv_rows.push_back({to_string(c.lo), to_string(c.hi), support_text(c.positive), support_text(c.negative)});
        }
        rep.results["chambers"] = chambers;
    } else if (lin.rank == 2) {
        Json lines = Json::array();
        rep.csv_columns = {"normal0", "normal1", "offset"};
        for (const auto& w : rank_two_walls(lin)) {
            lines.push_back(Json{{"normal", integer_vector_to_json({w.normal[0], w.normal[1]})},
                                 {"offset", w.offset.get_str()}});
            rep.csv_rows.push_back({w.normal[0].get_str(), w.normal[1].get_str(), w.offset.get_str()});
        }
        rep.results["wall_lines"] = lines;
    } else {
        throw InputError("vgit-chambers supports rank 1 and rank 2 linearisations");
    }
    return rep;
}

// -------------------------------------------------------------- product-test

struct ProductArgs {
    std::string a, poly, ysupport, delta = "0";
    int iota = -1;
    int n = 1;
};

Report run_product_test(Context& ctx, const ProductArgs& args)
{
    P12Point pt;
    if (!args.a.empty() && args.iota >= 0) throw InputError("give either --a or --iota, not both");
    if (!args.a.empty()) {
        RationalVector v = parse_rational_list(args.a);
        if (v.size() != 13) throw InputError("--a needs 13 coordinates a0,a11..a14,a21..a24,a31..a34");
        pt.a0 = v[0];
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 4; ++c) pt.a[r][c] = v[1 + 4 * r + c];
    } else if (args.iota >= 0) {
        pt = args.iota == 0 ? P12Point::origin() : P12Point::iota(args.iota);
    } else {
        throw InputError("one of --a or --iota is required");
    }
    pt.validate();
    std::vector<YMonomial> ys;
    int d = -1;
    if (!args.poly.empty()) {
        WeightedPolynomial p = polynomial_from_json(ctx.read_json(args.poly));
        d = p.degree();
        for (const auto& [m, c] : embed_hat(p).terms) ys.push_back(m);
    } else if (!args.ysupport.empty()) {
        std::stringstream ss(args.ysupport);
        std::string item;
        while (std::getline(ss, item, ';')) {
            auto idx = parse_index_list(item);
            if (idx.size() != 4) throw InputError("each Y monomial needs 4 exponents i,j,k,l");
            ys.push_back({static_cast<int>(idx[0]), static_cast<int>(idx[1]), static_cast<int>(idx[2]),
                          static_cast<int>(idx[3])});
        }
        d = 2 * (ys.front()[0] + ys.front()[1] + ys.front()[2] + ys.front()[3]);
    } else {
        throw InputError("one of --poly or --y-support is required");
    }
    if (args.n < 0) throw InputError("--N must be non-negative");
    ProductTestResult res = product_torus_test(pt, ys, args.n, parse_rational(args.delta));
    Report rep;
    rep.results["rank_stratum"] = rank_stratum(pt);
    rep.results["N"] = args.n;
    rep.results["n_bound"] = product_n_bound(d);
    rep.results["n_below_bound"] = res.n_below_bound;
    rep.results["weight_count"] = res.weights.points.size();
    rep.results["verdict"] = verdict_to_json(res.verdict);
    rep.csv_columns = {"status", "certificate", "n_below_bound"};
    rep.csv_rows.push_back({to_string(res.verdict.status), cert_kind(res.verdict), res.n_below_bound ? "true" : "false"});
    return rep;
}

// --------------------------------------------------------- uhat-test, h-test

struct PolyArgs {
    std::string poly, text, delta = "0";
    int d = 0;
    int oracle_samples = 0;
};

WeightedPolynomial load_polynomial(Context& ctx, const PolyArgs& a)
{
    if (!a.poly.empty() && !a.text.empty()) throw InputError("give either --poly or --text, not both");
    if (!a.poly.empty()) {
        Json j = ctx.read_json(a.poly);
        if (j.is_array()) {
            if (j.size() != 1) throw InputError(a.poly + ": expected one polynomial object");
            j = j[0];
        }
        WeightedPolynomial p = polynomial_from_json(j);
        if (a.d != 0 && a.d != p.degree())
            throw InputError("--d " + std::to_string(a.d) + " does not match the file degree " + std::to_string(p.degree()));
        return p;
    }
    if (!a.text.empty()) {
        if (a.d <= 0) throw InputError("--text needs a positive --d");
        return parse_polynomial(a.text, a.d);
    }
    throw InputError("one of --poly or --text is required");
}

Report run_uhat_test(Context& ctx, const PolyArgs& a)
{
    WeightedPolynomial p = load_polynomial(ctx, a);
    HLinearisation lin{p.degree(), parse_rational(a.delta)};
    lin.validate();
    StabilityVerdict v = uhat_test(p, lin);
    Report rep;
    rep.results["polynomial"] = polynomial_to_json(p);
    rep.results["delta"] = rational_to_json(lin.delta);
    rep.results["verdict"] = verdict_to_json(v);
    if (v.status == Status::Unstable) rep.results["certificate_verified"] = verify_uhat_certificate(p, lin, v);
    rep.csv_columns = {"status", "certificate", "endpoint_caveat"};
    rep.csv_rows.push_back({to_string(v.status), cert_kind(v), v.endpoint_caveat ? "true" : "false"});
    if (a.oracle_samples > 0) {
        StabilityVerdict o = uhat_oracle(p, lin, OracleGrid{true, a.oracle_samples, ctx.common().seed});
        bool consistent = !(o.status == Status::Unstable && v.status != Status::Unstable);
        rep.results["oracle"] = Json{{"samples", a.oracle_samples}, {"status", to_string(o.status)}, {"consistent", consistent}};
        if (!consistent) throw Undecided{rep};
    }
    return rep;
}

Report run_h_test(Context& ctx, const PolyArgs& a)
{
    WeightedPolynomial p = load_polynomial(ctx, a);
    HLinearisation lin{p.degree(), parse_rational(a.delta)};
    lin.validate();
    HTestReport r = h_test_report(p, lin);
    Report rep;
    rep.results["polynomial"] = polynomial_to_json(p);
    rep.results["delta"] = rational_to_json(lin.delta);
    rep.results["verdict"] = verdict_to_json(r.verdict);
    rep.results["hm_prediction"] = r.hm_prediction ? Json(to_string(*r.hm_prediction)) : Json(nullptr);
    rep.results["systems_checked"] = r.systems_checked;
    if (r.verdict.status == Status::Unstable && r.verdict.certificate &&
        r.verdict.certificate->kind != "emptiness-range")
        rep.results["certificate_verified"] = verify_h_certificate(p, lin, r.verdict);
    rep.csv_columns = {"status", "certificate", "endpoint_caveat"};
    rep.csv_rows.push_back({to_string(r.verdict.status), cert_kind(r.verdict), r.verdict.endpoint_caveat ? "true" : "false"});
    if (a.oracle_samples > 0) {
        StabilityVerdict o = h_oracle(p, lin, a.oracle_samples, ctx.common().seed);
        bool consistent = !(o.status == Status::Unstable && r.verdict.status != Status::Unstable) &&
                          !(o.status == Status::StrictlySemistable && r.verdict.status == Status::Stable);
        rep.results["oracle"] = Json{{"samples", a.oracle_samples}, {"status", to_string(o.status)}, {"consistent", consistent}};
        if (!consistent) throw Undecided{rep};
    }
    return rep;
}

// --------------------------------------------------------------------- walls

Report run_walls(int d)
{
    HLinearisation{d, 0}.validate();
    WallTable t = h_walls(d);
    Report rep;
    rep.results["d"] = d;
    rep.results["walls"] = rational_vector_to_json(t.walls);
    rep.results["endpoints"] = rational_vector_to_json({t.endpoint_lo, t.endpoint_hi});
    rep.csv_columns = {"wall", "endpoint"};
    for (const auto& w : t.walls)
        rep.csv_rows.push_back({to_string(w), (w == t.endpoint_lo || w == t.endpoint_hi) ? "true" : "false"});
    return rep;
}

// ------------------------------------------------------------------ classify

struct ClassifyArgs {
    std::string corpus, deltas;
};

Report run_classify(Context& ctx, const ClassifyArgs& a)
{
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    if (fs::is_directory(a.corpus)) {
        for (const auto& e : fs::directory_iterator(a.corpus))
            if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw InputError("no .json files in " + a.corpus);
    } else {
        files.push_back(a.corpus);
    }
    std::vector<WeightedPolynomial> polys;
    std::vector<std::string> sources;
    for (const auto& f : files) {
        std::vector<WeightedPolynomial> part;
        try {
            part = corpus_from_json(ctx.read_json(f));
        } catch (const InputError& e) {
            throw InputError(f + ": " + e.what());
        }
        for (std::size_t i = 0; i < part.size(); ++i) {
            polys.push_back(std::move(part[i]));
            sources.push_back(fs::path(f).filename().string() + "#" + std::to_string(i));
        }
    }
    std::vector<Rational> deltas = parse_rational_list(a.deltas);
    if (deltas.empty()) throw InputError("--deltas is empty");
    ClassifyReport cr = classify_corpus(polys, deltas, ctx.jobs());

    Report rep;
    rep.results["deltas"] = rational_vector_to_json(deltas);
    Json counts = Json::array();
    for (std::size_t k = 0; k < deltas.size(); ++k)
        counts.push_back(Json{{"delta", rational_to_json(deltas[k])},
                              {"Unstable", cr.counts[k][0]},
                              {"StrictlySemistable", cr.counts[k][1]},
                              {"Stable", cr.counts[k][2]}});
    rep.results["counts"] = counts;
    rep.results["undecided"] = cr.undecided;
    rep.results["errors"] = cr.errors;
    rep.csv_columns = {"source", "delta", "uhat_status", "h_status", "certificate", "endpoint_caveat", "on_wall", "outcome"};
    Json rows = Json::array();
    for (std::size_t i = 0; i < polys.size(); ++i) {
        Json cells = Json::array();
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            const ClassifyCell& c = cr.cells[i][k];
            cells.push_back(Json{{"delta", rational_to_json(deltas[k])},
                                 {"uhat", c.uhat ? verdict_to_json(*c.uhat) : Json(nullptr)},
                                 {"h", c.h ? verdict_to_json(*c.h) : Json(nullptr)},
                                 {"hm_prediction", c.hm_prediction ? Json(to_string(*c.hm_prediction)) : Json(nullptr)},
                                 {"on_wall", c.on_wall},
                                 {"outcome", c.outcome}});
            rep.csv_rows.push_back({sources[i], to_string(deltas[k]), c.uhat ? to_string(c.uhat->status) : "",
                                    c.h ? to_string(c.h->status) : "", c.h ? cert_kind(*c.h) : "",
                                    c.h && c.h->endpoint_caveat ? "true" : "false", c.on_wall ? "true" : "false",
                                    c.outcome});
        }
        rows.push_back(Json{{"source", sources[i]}, {"polynomial", polynomial_to_json(polys[i])}, {"cells", cells}});
    }
    rep.results["matrix"] = rows;
    if (cr.undecided > 0 || cr.errors > 0) throw Undecided{rep};
    return rep;
}

// ---------------------------------------------------------------------- flow

struct LoadedRep {
    CompactRepresentation rep;
    std::vector<RationalVector> exact_weights;
};

LoadedRep load_compact_rep(const Json& j)
{
    if (!j.is_object() || !j.contains("dim")) throw InputError("rep file needs 'dim'");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw InputError("'dim' must be positive");
    const std::string mode = j.value("mode", j.contains("weights") ? "diagonal" : "generators");
    if (mode == "diagonal") {
        std::vector<RationalVector> exact;
        if (!j.contains("weights") || !j["weights"].is_array()) throw InputError("diagonal rep needs 'weights'");
        std::vector<std::vector<double>> w;
        for (const auto& e : j["weights"]) {
            RationalVector v = e.is_array() ? rational_vector_from_json(e) : RationalVector{rational_from_json(e)};
            exact.push_back(v);
            std::vector<double> dv;
            for (const auto& q : v) dv.push_back(q.get_d());
            w.push_back(dv);
        }
        if (static_cast<int>(w.size()) != dim) throw InputError("'weights' must have one entry per coordinate");
        for (const auto& v : w)
            if (v.size() != w.front().size()) throw InputError("weight vectors have different lengths");
        return {CompactRepresentation::diagonal(w), exact};
    }
    if (mode != "generators") throw InputError("unknown rep mode '" + mode + "'");
    if (!j.contains("generators") || !j["generators"].is_array()) throw InputError("rep needs 'generators'");
    std::vector<Eigen::MatrixXcd> gens;
    for (const auto& m : j["generators"]) {
        if (!m.is_array() || static_cast<int>(m.size()) != dim) throw InputError("generator must be dim x dim");
        Eigen::MatrixXcd g(dim, dim);
        for (int r = 0; r < dim; ++r) {
            if (!m[r].is_array() || static_cast<int>(m[r].size()) != dim) throw InputError("generator must be dim x dim");
            for (int c = 0; c < dim; ++c) g(r, c) = complex_from_json(m[r][c]);
        }
        gens.push_back(g);
    }
    try {
        return {CompactRepresentation::from_generators(gens), {}};
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

struct FlowArgs {
    std::string rep, point, twist, weights;
    double tol = 1e-8;
    double step = 0.5;
    int max_iter = 10000;
    bool trace = false;
    int samples = 100;
    double margin = 0.05;
};

Eigen::VectorXd twist_vector(const std::string& text, std::size_t rank)
{
    Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rank));
    if (text.empty()) return t;
    RationalVector v = parse_rational_list(text);
    if (v.size() != rank) throw InputError("--twist needs " + std::to_string(rank) + " entries");
    for (std::size_t i = 0; i < rank; ++i) t(static_cast<Eigen::Index>(i)) = v[i].get_d();
    return t;
}

Json complex_vector_json(const Eigen::VectorXcd& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(Json::array({v(i).real(), v(i).imag()}));
    return a;
}

Report run_flow(Context& ctx, const FlowArgs& a)
{
    if (a.rep.empty() || a.point.empty()) throw InputError("--rep and --point are required");
    LoadedRep lr = load_compact_rep(ctx.read_json(a.rep));
    Json pj = ctx.read_json(a.point);
    if (pj.is_object() && pj.contains("point")) pj = pj["point"];
    if (!pj.is_array() || static_cast<int>(pj.size()) != lr.rep.dim())
        throw InputError("point must be an array of " + std::to_string(lr.rep.dim()) + " entries");
    Eigen::VectorXcd x(lr.rep.dim());
    for (int i = 0; i < lr.rep.dim(); ++i) x(i) = complex_from_json(pj[static_cast<std::size_t>(i)]);
    if (x.norm() == 0) throw InputError("point must be nonzero");
    if (a.tol <= 0 || a.step <= 0 || a.max_iter <= 0) throw InputError("--tol, --step and --max-iter must be positive");
    FlowOptions opts;
    opts.tol = a.tol;
    opts.step = a.step;
    opts.max_iter = a.max_iter;
    opts.trace = a.trace;
    Eigen::VectorXd twist = twist_vector(a.twist, lr.rep.rank());
    FlowResult r = kempf_ness_flow(lr.rep, x, twist, opts);
    Report rep;
    rep.results["classification"] = to_string(r.classification);
    rep.results["residual"] = r.residual;
    rep.results["iterations"] = r.iterations;
    rep.results["lower_bound"] = r.lower_bound;
    Eigen::VectorXd mu = twist_moment(moment_value(lr.rep, r.endpoint), twist);
    Json mj = Json::array();
    for (Eigen::Index i = 0; i < mu.size(); ++i) mj.push_back(mu(i));
    rep.results["moment_at_endpoint"] = mj;
    rep.results["endpoint"] = complex_vector_json(r.endpoint);
    if (a.trace) rep.results["trace"] = r.trace;
    rep.csv_columns = {"classification", "residual", "iterations"};
    std::ostringstream res;
    res.precision(17);
    res << r.residual;
    rep.csv_rows.push_back({to_string(r.classification), res.str(), std::to_string(r.iterations)});
    if (r.classification == FlowClass::Inconclusive) throw Undecided{rep};
    return rep;
}

Report run_compare_flow(Context& ctx, const FlowArgs& a)
{
    std::vector<RationalVector> weights;
    if (!a.rep.empty() && !a.weights.empty()) throw InputError("give either --rep or --weights, not both");
    if (!a.rep.empty()) {
        weights = load_compact_rep(ctx.read_json(a.rep)).exact_weights;
        if (weights.empty()) throw InputError("compare-flow needs a diagonal rep");
    } else if (!a.weights.empty()) {
        weights = parse_weight_rows(a.weights);
    } else {
        throw InputError("one of --rep or --weights is required");
    }
    TorusLinearisation lin;
    lin.rank = static_cast<int>(weights.front().size());
    lin.weights = weights;
    lin.twist = a.twist.empty() ? RationalVector(static_cast<std::size_t>(lin.rank), Rational(0)) : parse_rational_list(a.twist);
    lin.validate();
    if (weights.size() > 20) throw InputError("compare-flow supports at most 20 coordinates");
    if (a.samples <= 0 || a.margin < 0) throw InputError("--samples must be positive and --margin non-negative");
    FlowOptions opts;
    opts.tol = a.tol;
    opts.step = a.step;
    opts.max_iter = a.max_iter;
    FlowComparison c = compare_flow_exact(lin.weights, lin.twist, a.samples, ctx.common().seed, a.margin, opts, ctx.jobs());
    Report rep;
    rep.results["linearisation"] = linearisation_to_json(lin);
    rep.results["samples"] = c.samples;
    rep.results["rejected_by_margin"] = c.rejected_by_margin;
    rep.results["agreements"] = c.agreements;
    rep.results["max_iterations_used"] = c.max_iterations_used;
    Json mm = Json::array();
    rep.csv_columns = {"support", "exact", "flow", "residual"};
    for (const auto& m : c.mismatches) {
        mm.push_back(Json{{"support", support_json(m.support)},
                          {"exact", to_string(m.exact)},
                          {"flow", to_string(m.flow)},
                          {"residual", m.residual}});
        std::ostringstream res;
        res.precision(17);
        res << m.residual;
        rep.csv_rows.push_back({support_text(m.support), to_string(m.exact), to_string(m.flow), res.str()});
    }
    rep.results["mismatches"] = mm;
    if (!c.mismatches.empty()) throw Undecided{rep};
    return rep;
}

// ------------------------------------------------------------------ envelope

struct EnvelopeArgs {
    std::string rep, matrix;
    int trials = 50;
    int size_guard = 6;
    int d = 4;
};

Report run_envelope_check(Context& ctx, const EnvelopeArgs& a)
{
    if (a.rep.empty()) throw InputError("--rep is required");
    NilpotentRep nr = nilpotent_rep_from_json(ctx.read_json(a.rep));
    if (a.trials <= 0) throw InputError("--trials must be positive");
    EquivarianceReport er = check_psi_equivariance(nr, a.trials, ctx.common().seed, a.size_guard);
    Report rep;
    rep.results["r"] = nr.r;
    rep.results["dimV"] = nr.dimV;
    rep.results["trials"] = er.trials;
    rep.results["checks"] = er.checks;
    rep.results["violations"] = er.violations;
    rep.csv_columns = {"trials", "checks", "violations"};
    rep.csv_rows.push_back({std::to_string(er.trials), std::to_string(er.checks), std::to_string(er.violations.size())});
    if (!er.violations.empty()) throw Undecided{rep};
    return rep;
}

Report run_envelope_dims(Context& ctx, const EnvelopeArgs& a)
{
    if (a.rep.empty()) throw InputError("--rep is required");
    NilpotentRep nr = nilpotent_rep_from_json(ctx.read_json(a.rep));
    WmDescriptor w = wm_descriptor(nr);
    Report rep;
    rep.results["r"] = nr.r;
    rep.results["dimV"] = nr.dimV;
    rep.results["flag_dims"] = w.flag_dims;
    rep.results["theta_dims"] = integer_vector_to_json(w.theta_dims);
    rep.results["component_dims"] = integer_vector_to_json(w.component_dims);
    rep.results["total"] = w.total.get_str();
    rep.csv_columns = {"j", "theta_dim", "flag_dim", "component_dim"};
    for (std::size_t j = 0; j < w.theta_dims.size(); ++j)
        rep.csv_rows.push_back({std::to_string(j), w.theta_dims[j].get_str(), std::to_string(w.flag_dims[j]),
                                w.component_dims[j].get_str()});
    return rep;
}

Report run_sl2(Context& ctx, const EnvelopeArgs& a)
{
    if (a.matrix.empty()) throw InputError("--matrix is required");
    Json j = ctx.read_json(a.matrix);
    if (j.is_object() && j.contains("matrix")) j = j["matrix"];
    RationalMatrix e = matrix_from_json(j);
    Sl2Triple t = sl2_complete(e);
    Report rep;
    rep.results["block_sizes"] = t.block_sizes;
    rep.results["e"] = matrix_to_json(t.e);
    rep.results["h"] = matrix_to_json(t.h);
    rep.results["f"] = matrix_to_json(t.f);
    rep.results["jordan_basis"] = matrix_to_json(t.jordan_basis);
    const bool ok = commutator(t.e, t.f) == t.h && commutator(t.h, t.e) == t.e * Rational(2) &&
                    commutator(t.h, t.f) == t.f * Rational(-2);
    rep.results["brackets_hold"] = ok;
    rep.csv_columns = {"block_sizes", "brackets_hold"};
    std::string sizes;
    for (std::size_t i = 0; i < t.block_sizes.size(); ++i) sizes += (i ? " " : "") + std::to_string(t.block_sizes[i]);
    rep.csv_rows.push_back({sizes, ok ? "true" : "false"});
    return rep;
}

Report run_matrix(int d)
{
    HLinearisation{d, 0}.validate();
    auto basis = monomial_basis(d);
    auto m = u_action_matrix(d);
    const std::vector<std::string> names{"lambda", "mu", "nu"};
    Report rep;
    Json labels = Json::array();
    for (const auto& b : basis) labels.push_back(b.to_string());
    rep.results["d"] = d;
    rep.results["basis"] = labels;
    Json rows = Json::array();
    rep.csv_columns = {"row"};
    for (const auto& b : basis) rep.csv_columns.push_back(b.to_string());
    for (std::size_t r = 0; r < m.size(); ++r) {
        Json row = Json::array();
        std::vector<std::string> csv{basis[r].to_string()};
        for (const auto& entry : m[r]) {
            row.push_back(entry.to_string(names));
            csv.push_back(entry.to_string(names));
        }
        rows.push_back(row);
        rep.csv_rows.push_back(csv);
    }
    rep.results["matrix"] = rows;
    return rep;
}

// ------------------------------------------------------------------ plumbing

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--seed", c.seed, "Seed for every randomized step")->default_val(0);
    sub->add_option("--jobs", c.jobs, "Worker threads (default: number of processors)");
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->default_val("json");
    sub->add_option("--output", c.output, "Write the report to this file instead of stdout");
}

int emit(const Report& report, const RunManifest& manifest, const Common& common, std::ostream& out, std::ostream& err)
{
    ReportFormat fmt = parse_report_format(common.format);
    std::string doc = emit_report(report, manifest, fmt);
    if (common.output.empty()) {
        out << doc;
        if (fmt == ReportFormat::Csv) err << manifest_document(manifest);
        return kExitOk;
    }
    std::ofstream f(common.output, std::ios::binary);
    if (!f) throw InputError("cannot write " + common.output);
    f << doc;
    if (fmt == ReportFormat::Csv) {
        std::ofstream m(common.output + ".manifest.json", std::ios::binary);
        if (!m) throw InputError("cannot write " + common.output + ".manifest.json");
        m << manifest_document(manifest);
    }
    return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact stability tests for linearised torus and non-reductive actions", "gitkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    Common common;
    TorusArgs torus;
    ProductArgs product;
    PolyArgs poly;
    ClassifyArgs classify;
    FlowArgs flow;
    EnvelopeArgs env;
    int walls_d = 0;
    int matrix_d = 4;

    std::vector<std::pair<CLI::App*, std::function<Report(Context&)>>> handlers;
    auto reg = [&](CLI::App* sub, std::function<Report(Context&)> fn) {
        add_common(sub, common);
        handlers.emplace_back(sub, std::move(fn));
    };

    auto* tt = app.add_subcommand("torus-test", "Hilbert-Mumford criterion for a torus acting linearly on P^n");
    tt->add_option("--weights", torus.weights, "Weights: 'a,b,c' (rank 1) or 'a1,a2;b1,b2;...'");
    tt->add_option("--lin", torus.lin, "Linearisation JSON {rank, weights, twist}");
    tt->add_option("--twist", torus.twist, "Character twist (comma list, one entry per rank)");
    tt->add_option("--support", torus.support, "Coordinate indices of the support (default: all)");
    tt->add_flag("--all-supports", torus.all_supports, "Classify every nonempty support");
    reg(tt, [&](Context& c) { return run_torus_test(c, torus); });

    auto* vc = app.add_subcommand("vgit-chambers", "Walls and chambers of the twist parameter (variation of GIT)");
    vc->add_option("--weights", torus.weights, "Weights: 'a,b,c' (rank 1) or 'a1,a2;b1,b2;...'");
    vc->add_option("--lin", torus.lin, "Linearisation JSON");
    reg(vc, [&](Context& c) { return run_vgit_chambers(c, torus); });

    auto* pt = app.add_subcommand("product-test", "Maximal torus test on P^12 x Y_d with O(N) x O(1)");
    pt->add_option("--a", product.a, "13 coordinates a0,a11..a14,a21..a24,a31..a34");
    pt->add_option("--iota", product.iota, "Use [1:iota_q] (q in 1..3) or the origin (q = 0)");
    pt->add_option("--poly", product.poly, "Polynomial JSON; its hat embedding gives the Y support");
    pt->add_option("--y-support", product.ysupport, "Y monomials 'i,j,k,l;...' for X^i Y^j W^k z^l");
    pt->add_option("--N", product.n, "Power N of the first factor")->default_val(1);
    pt->add_option("--delta", product.delta, "Twist")->default_val("0");
    reg(pt, [&](Context& c) { return run_product_test(c, product); });

    auto add_poly = [&](CLI::App* sub) {
        sub->add_option("--poly", poly.poly, "Polynomial JSON {d, terms:[{i,j,k,c}]}");
        sub->add_option("--text", poly.text, "Polynomial text, e.g. 'z^2 - x^2*y^2'");
        sub->add_option("--d", poly.d, "Weighted degree (required with --text)");
        sub->add_option("--delta", poly.delta, "Twist by the determinant character")->default_val("0");
        sub->add_option("--oracle-samples", poly.oracle_samples, "Also run the sampling oracle")->default_val(0);
    };
    auto* ut = app.add_subcommand("uhat-test", "Stability for the unipotent group extended by its central C^*");
    add_poly(ut);
    reg(ut, [&](Context& c) { return run_uhat_test(c, poly); });
    auto* ht = app.add_subcommand("h-test", "Stability for Aut P(1,1,2) acting on weighted hypersurfaces");
    add_poly(ht);
    reg(ht, [&](Context& c) { return run_h_test(c, poly); });

    auto* wl = app.add_subcommand("walls", "Wall values of the twist for degree d hypersurfaces in P(1,1,2)");
    wl->add_option("--d", walls_d, "Even degree")->required();
    reg(wl, [&](Context&) { return run_walls(walls_d); });

    auto* cl = app.add_subcommand("classify", "Classify a polynomial corpus over a list of twists");
    cl->add_option("--corpus", classify.corpus, "Corpus file or directory of .json files")->required();
    cl->add_option("--deltas", classify.deltas, "Comma list of twists")->required();
    reg(cl, [&](Context& c) { return run_classify(c, classify); });

    auto* fl = app.add_subcommand("flow", "Kempf-Ness gradient flow of the moment map norm square");
    fl->add_option("--rep", flow.rep, "Representation JSON {dim, mode, weights} or {dim, generators}");
    fl->add_option("--point", flow.point, "Point JSON: array of numbers or [re, im]");
    fl->add_option("--twist", flow.twist, "Twist in weight units (comma list)");
    fl->add_option("--tol", flow.tol, "Residual tolerance")->default_val(1e-8);
    fl->add_option("--step", flow.step, "Initial step")->default_val(0.5);
    fl->add_option("--max-iter", flow.max_iter, "Iteration cap")->default_val(10000);
    fl->add_flag("--trace", flow.trace, "Attach the residual series");
    reg(fl, [&](Context& c) { return run_flow(c, flow); });

    auto* cf = app.add_subcommand("compare-flow", "Compare flow outcomes with the exact torus verdict");
    cf->add_option("--rep", flow.rep, "Diagonal representation JSON");
    cf->add_option("--weights", flow.weights, "Weights: 'a,b,c' (rank 1) or 'a1,a2;b1,b2;...'");
    cf->add_option("--twist", flow.twist, "Twist (comma list)");
    cf->add_option("--samples", flow.samples, "Accepted samples")->default_val(100);
    cf->add_option("--margin", flow.margin, "Minimum distance from 0 to the hull boundary")->default_val(0.05);
    cf->add_option("--tol", flow.tol, "Residual tolerance")->default_val(1e-8);
    cf->add_option("--step", flow.step, "Initial step")->default_val(0.5);
    cf->add_option("--max-iter", flow.max_iter, "Iteration cap per sample")->default_val(10000);
    reg(cf, [&](Context& c) { return run_compare_flow(c, flow); });

    auto* en = app.add_subcommand("envelope", "Finite-dimensional skeleton of the reductive envelope");
    en->require_subcommand(1);
    auto* ec = en->add_subcommand("check", "Exact U-equivariance check of psi at random points");
    ec->add_option("--rep", env.rep, "Nilpotent rep JSON {r, dimV, generators}");
    ec->add_option("--trials", env.trials, "Random trials")->default_val(50);
    ec->add_option("--size-guard", env.size_guard, "Largest accepted dimV")->default_val(6);
    reg(ec, [&](Context& c) { return run_envelope_check(c, env); });
    auto* ed = en->add_subcommand("dims", "Dimensions of the components of W_m");
    ed->add_option("--rep", env.rep, "Nilpotent rep JSON {r, dimV, generators}");
    reg(ed, [&](Context& c) { return run_envelope_dims(c, env); });

    auto* sl = app.add_subcommand("sl2", "Complete a nilpotent matrix to an sl2 triple");
    sl->add_option("--matrix", env.matrix, "Matrix JSON (array of rows)");
    reg(sl, [&](Context& c) { return run_sl2(c, env); });

    auto* mx = app.add_subcommand("matrix", "Matrix of the unipotent action on degree d monomials");
    mx->add_option("--d", matrix_d, "Even degree")->default_val(4);
    reg(mx, [&](Context&) { return run_matrix(matrix_d); });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    for (auto& [sub, fn] : handlers) {
        if (!sub->parsed()) continue;
        std::string name = sub->get_name();
        if (sub->get_parent() != &app) name = sub->get_parent()->get_name() + " " + name;
        Context ctx(sub, name, common);
        try {
            Report report = fn(ctx);  // inputs are digested while running
            return emit(report, ctx.manifest(), common, out, err);
        } catch (Undecided& u) {
            emit(u.report, ctx.manifest(), common, out, err);
            err << "gitkit: undecided results present\n";
            return kExitUndecided;
        } catch (const UndecidedError& e) {
            err << "gitkit: " << e.what() << "\n";
            return kExitUndecided;
        } catch (const InputError& e) {
            err << "gitkit: input error: " << e.what() << "\n";
            return kExitInputError;
        } catch (const std::invalid_argument& e) {
            err << "gitkit: input error: " << e.what() << "\n";
            return kExitInputError;
        } catch (const std::exception& e) {
            err << "gitkit: error: " << e.what() << "\n";
            return kExitInputError;
        }
    }
    err << "gitkit: no subcommand\n";
    return kExitInputError;
}

}  // namespace gitkit::cli
