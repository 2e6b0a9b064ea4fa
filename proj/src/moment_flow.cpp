#include "gitkit/moment_flow.hpp"

#include "gitkit/torus_git.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace gitkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI(0.0, 1.0);

}  // namespace

CompactRepresentation CompactRepresentation::diagonal(const std::vector<std::vector<double>>& weights)
{
    if (weights.empty()) throw std::invalid_argument("diagonal representation needs at least one coordinate");
    const std::size_t rank = weights.front().size();
    CompactRepresentation rep;
    rep.dim_ = static_cast<int>(weights.size());
    rep.weights_ = weights;
    for (std::size_t j = 0; j < rank; ++j) {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(rep.dim_, rep.dim_);
        for (int k = 0; k < rep.dim_; ++k) {
            if (weights[static_cast<std::size_t>(k)].size() != rank)
                throw std::invalid_argument("weight vectors of different lengths");
            h(k, k) = weights[static_cast<std::size_t>(k)][j];
        }
        rep.hermitian_.push_back(h);
        rep.generators_.push_back(kI * h);
    }
    return rep;
}

CompactRepresentation CompactRepresentation::from_generators(std::vector<Eigen::MatrixXcd> generators, double tol)
{
    CompactRepresentation rep;
    if (generators.empty()) return rep;
    rep.dim_ = static_cast<int>(generators.front().rows());
    for (auto& g : generators) {
        if (g.rows() != rep.dim_ || g.cols() != rep.dim_) throw std::invalid_argument("generator has the wrong shape");
        if ((g + g.adjoint()).norm() > tol * std::max(1.0, g.norm()))
            throw std::invalid_argument("generator is not skew-hermitian");
        rep.hermitian_.push_back(-kI * g);
    }
    rep.generators_ = std::move(generators);
    return rep;
}

Eigen::VectorXd moment_value(const CompactRepresentation& rep, const Eigen::VectorXcd& x)
{
    const double n2 = x.squaredNorm();
    if (n2 == 0.0) throw std::invalid_argument("moment map of the zero vector");
    Eigen::VectorXd mu(static_cast<Eigen::Index>(rep.rank()));
    for (std::size_t j = 0; j < rep.rank(); ++j) {
        if (rep.is_diagonal()) {
            double s = 0;
            for (int k = 0; k < rep.dim(); ++k) s += rep.weights()[static_cast<std::size_t>(k)][j] * std::norm(x(k));
            mu(static_cast<Eigen::Index>(j)) = s / (kTwoPi * n2);
        } else {
            std::complex<double> v = x.dot(rep.generators()[j] * x);  // conjugates x
            mu(static_cast<Eigen::Index>(j)) = (v / (kTwoPi * kI * n2)).real();
        }
    }
    return mu;
}

Eigen::VectorXd product_moment_value(const CompactRepresentation& rep_a, const Eigen::VectorXcd& a,
                                     const CompactRepresentation& rep_y, const Eigen::VectorXcd& y, double n)
{
    Eigen::VectorXd ma = rep_a.rank() ? moment_value(rep_a, a) : Eigen::VectorXd();
    Eigen::VectorXd my = rep_y.rank() ? moment_value(rep_y, y) : Eigen::VectorXd();
    if (rep_a.rank() && rep_y.rank() && rep_a.rank() != rep_y.rank())
        throw std::invalid_argument("representations of groups of different dimension");
    if (!rep_y.rank()) return n * ma;
    if (!rep_a.rank()) return my;
    return n * ma + my;
}

Eigen::VectorXd twist_moment(const Eigen::VectorXd& mu, const Eigen::VectorXd& twist)
{
    if (twist.size() == 0) return mu;
    if (twist.size() != mu.size()) throw std::invalid_argument("twist length differs from the moment covector");
    return mu + twist / kTwoPi;
}

Eigen::VectorXd norm_square_gradient(const CompactRepresentation& rep, const Eigen::VectorXcd& x,
                                     const Eigen::VectorXd& twist)
{
    const double n2 = x.squaredNorm();
    const auto r = static_cast<Eigen::Index>(rep.rank());
    Eigen::VectorXd mu = twist_moment(moment_value(rep, x), twist);
    std::vector<Eigen::VectorXcd> hx;
    Eigen::VectorXd expect(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        hx.push_back(rep.hermitian(static_cast<std::size_t>(j)) * x);
        expect(j) = x.dot(hx.back()).real();
    }
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(r);
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index k = 0; k < r; ++k) {
            // x^* {H_j, H_k} x = 2 Re <H_j x, H_k x>
            double anti = 2.0 * hx[static_cast<std::size_t>(j)].dot(hx[static_cast<std::size_t>(k)]).real();
            double dmu = (-anti * n2 + 2.0 * expect(k) * expect(j)) / (kTwoPi * n2 * n2);
            grad(j) += 2.0 * mu(k) * dmu;
        }
    return grad;
}

std::string to_string(FlowClass c)
{
    switch (c) {
    case FlowClass::ZeroReached: return "ZeroReached";
    case FlowClass::PositiveInfimum: return "PositiveInfimum";
    case FlowClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

/// exp(-t A) x for hermitian A.
Eigen::VectorXcd exp_apply(const CompactRepresentation& rep, const Eigen::VectorXd& coeffs, double t,
                           const Eigen::VectorXcd& x)
{
    if (rep.is_diagonal()) {
        Eigen::VectorXcd y = x;
        for (int k = 0; k < rep.dim(); ++k) {
            double a = 0;
            for (std::size_t j = 0; j < rep.rank(); ++j)
                a += coeffs(static_cast<Eigen::Index>(j)) * rep.weights()[static_cast<std::size_t>(k)][j];
            y(k) *= std::exp(-t * a);
        }
        return y;
    }
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
    for (std::size_t j = 0; j < rep.rank(); ++j) a += coeffs(static_cast<Eigen::Index>(j)) * rep.hermitian(j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXd e = (-t * es.eigenvalues().array()).exp();
    return es.eigenvectors() * (e.asDiagonal() * (es.eigenvectors().adjoint() * x));
}

}  // namespace

double one_parameter_limit(const CompactRepresentation& rep, const Eigen::VectorXcd& x, const Eigen::VectorXd& beta,
                           const Eigen::VectorXd& twist)
{
    const double norm_sq = x.squaredNorm();
    if (norm_sq == 0) throw std::invalid_argument("one_parameter_limit at x = 0");
    const double shift = beta.dot(twist);
    // Components below this relative size are rounding noise of the eigenbasis.
    const double floor = 1e-20 * norm_sq;
    double lowest = std::numeric_limits<double>::infinity();
    if (rep.is_diagonal()) {
        // The torus preserves the support exactly, so every nonzero
        // coordinate counts however small it has become.
        for (int k = 0; k < rep.dim(); ++k) {
            if (x(k) == std::complex<double>(0.0, 0.0)) continue;
            double a = 0;
            for (std::size_t j = 0; j < rep.rank(); ++j)
                a += beta(static_cast<Eigen::Index>(j)) * rep.weights()[static_cast<std::size_t>(k)][j];
            lowest = std::min(lowest, a);
        }
    } else {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
        for (std::size_t j = 0; j < rep.rank(); ++j) a += beta(static_cast<Eigen::Index>(j)) * rep.hermitian(j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
        Eigen::VectorXcd c = es.eigenvectors().adjoint() * x;
        for (Eigen::Index k = 0; k < c.size(); ++k)
            if (std::norm(c(k)) > floor) lowest = std::min(lowest, es.eigenvalues()(k));
    }
    return (lowest + shift) / (2 * std::numbers::pi);
}

FlowResult kempf_ness_flow(const CompactRepresentation& rep, const Eigen::VectorXcd& x0, const Eigen::VectorXd& twist,
                           const FlowOptions& opts)
{
    if (opts.tol <= 0 || opts.step <= 0) throw std::invalid_argument("flow needs positive step and tolerance");
    if (x0.size() != rep.dim()) throw std::invalid_argument("point has the wrong dimension");
    FlowResult res;
    Eigen::VectorXcd x = x0 / x0.norm();
    Eigen::VectorXd mu = twist_moment(moment_value(rep, x), twist);
    double f = mu.squaredNorm();
    std::vector<double> history{f};
    if (opts.trace) res.trace.push_back(std::sqrt(f));
    res.classification = FlowClass::Inconclusive;
    // Along beta = mu the value <mu(exp(-s beta.H) x), beta> decreases to
    // one_parameter_limit; a positive limit shows x is unstable.
    auto certify = [&](const Eigen::VectorXcd& point, const Eigen::VectorXd& beta) {
        const double b = beta.norm();
        if (b == 0) return false;
        const double lim = one_parameter_limit(rep, point, beta, twist) / b;
        if (lim <= opts.tol) return false;
        res.classification = FlowClass::PositiveInfimum;
        res.lower_bound = lim;
        return true;
    };
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        if (std::sqrt(f) < opts.tol) {
            res.classification = FlowClass::ZeroReached;
            break;
        }
        const std::size_t n = history.size();
        if (certify(x, mu)) break;
        if (static_cast<int>(n) > opts.stagnation_window) {
            double old = history[n - 1 - static_cast<std::size_t>(opts.stagnation_window)];
            if (std::abs(old - f) <= opts.stagnation_rel * old) {
                certify(x, mu);
                break;
            }
        }
        // Line search on the ladder step * 2^k: move toward the better
        // neighbour until a rung beats both. Accepting merely the first
        // decreasing rung can bounce between two mirror points forever.
        struct Rung {
            double f;
            Eigen::VectorXcd y;
            Eigen::VectorXd mu;
        };
        auto eval = [&](double t) {
            Eigen::VectorXcd y = exp_apply(rep, mu, t, x);
            y /= y.norm();
            Eigen::VectorXd my = twist_moment(moment_value(rep, y), twist);
            double fy = my.squaredNorm();
            if (!std::isfinite(fy)) fy = std::numeric_limits<double>::infinity();
            return Rung{fy, std::move(y), std::move(my)};
        };
        // Cap t so no coordinate's relative scale moves by more than e^2.
        double spread = 0;
        if (rep.is_diagonal()) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (int k = 0; k < rep.dim(); ++k) {
                if (x(k) == std::complex<double>(0.0, 0.0)) continue;
                double a = 0;
                for (std::size_t j = 0; j < rep.rank(); ++j)
                    a += mu(static_cast<Eigen::Index>(j)) * rep.weights()[static_cast<std::size_t>(k)][j];
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
            spread = hi - lo;
        } else {
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
            for (std::size_t j = 0; j < rep.rank(); ++j) a += mu(static_cast<Eigen::Index>(j)) * rep.hermitian(j);
            Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a, Eigen::EigenvaluesOnly).eigenvalues();
            spread = ev.maxCoeff() - ev.minCoeff();
        }
        const double t_max = spread > 0 ? 2.0 / spread : opts.step;
        double t = std::min(opts.step, t_max);
        Rung cur = eval(t);
        Rung half = eval(t / 2);
        if (half.f < cur.f) {
            cur = std::move(half);
            t /= 2;
            for (int h = 0; h < 60; ++h) {
                Rung next = eval(t / 2);
                if (!(next.f < cur.f)) break;
                cur = std::move(next);
                t /= 2;
            }
        } else {
            for (int g = 0; g < 40 && 2 * t <= t_max; ++g) {
                Rung next = eval(2 * t);
                if (!(next.f < cur.f)) break;
                cur = std::move(next);
                t *= 2;
            }
        }
        const bool accepted = cur.f < f;
        Eigen::VectorXcd best_x = std::move(cur.y);
        Eigen::VectorXd best_mu = std::move(cur.mu);
        const double best_f = cur.f;
        if (accepted) {
            x = std::move(best_x);
            mu = std::move(best_mu);
            f = best_f;
        }
        if (!accepted) {
            // No decrease possible at double precision.
            if (std::sqrt(f) < opts.tol)
                res.classification = FlowClass::ZeroReached;
            else
                certify(x, mu);
            break;
        }
        history.push_back(f);
        if (opts.trace) res.trace.push_back(std::sqrt(f));
    }
    if (it == opts.max_iter && std::sqrt(f) < opts.tol) res.classification = FlowClass::ZeroReached;
    res.endpoint = x;
    res.residual = std::sqrt(f);
    res.iterations = it;
    return res;
}

namespace {

double segment_distance(const std::vector<double>& a, const std::vector<double>& b)
{
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? -(a[0] * dx + a[1] * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a[0] + t * dx, a[1] + t * dy);
}

}  // namespace

double hull_boundary_distance(const std::vector<std::vector<double>>& points)
{
    if (points.empty()) throw std::invalid_argument("empty point set");
    if (points.front().size() == 1) {
        double lo = points.front()[0], hi = lo;
        for (const auto& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return std::min(std::abs(lo), std::abs(hi));
    }
    // Hull in exact arithmetic on the double values (exactly representable).
    std::vector<RationalVector> pts;
    for (const auto& p : points) pts.push_back({Rational(p[0]), Rational(p[1])});
    auto hull = convex_hull_2d(pts);
    std::vector<std::vector<double>> v;
    for (const auto& h : hull) v.push_back({h[0].get_d(), h[1].get_d()});
    if (v.size() == 1) return std::hypot(v[0][0], v[0][1]);
    if (v.size() == 2) return segment_distance(v[0], v[1]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, segment_distance(v[i], v[(i + 1) % v.size()]));
    return best;
}

FlowComparison compare_flow_exact(const std::vector<RationalVector>& weights, const RationalVector& twist,
                                  int n_samples, std::uint64_t seed, double margin, const FlowOptions& opts,
                                  unsigned jobs)
{
    if (margin <= 0) throw InputError("margin must be positive");
    if (weights.empty()) throw InputError("no weights");
    const std::size_t rank = twist.size();
    if (rank < 1 || rank > 2) throw InputError("compare_flow_exact supports rank 1 and 2");
    TorusLinearisation lin;
    lin.rank = static_cast<int>(rank);
    lin.weights = weights;
    lin.twist = twist;
    lin.validate();
    std::vector<std::vector<double>> dw;
    for (const auto& w : weights) {
        std::vector<double> row;
        for (const auto& c : w) row.push_back(c.get_d());
        dw.push_back(row);
    }
    const auto rep = CompactRepresentation::diagonal(dw);
    Eigen::VectorXd tw(static_cast<Eigen::Index>(rank));
    for (std::size_t j = 0; j < rank; ++j) tw(static_cast<Eigen::Index>(j)) = twist[j].get_d();

    // Draw supports sequentially so the accepted sample list does not depend on jobs.
    std::mt19937_64 rng(seed);
    const std::size_t n = weights.size();
    FlowComparison out;
    std::vector<std::vector<std::size_t>> supports;
    const long max_draws = 1000L * std::max(n_samples, 1);
    for (long draw = 0; static_cast<int>(supports.size()) < n_samples && draw < max_draws; ++draw) {
        std::uint64_t mask = 0;
        while (mask == 0) mask = rng() & ((std::uint64_t{1} << n) - 1);
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) s.push_back(i);
        std::vector<std::vector<double>> pts;
        for (auto i : s) {
            std::vector<double> p;
            for (std::size_t j = 0; j < rank; ++j) p.push_back(Rational(weights[i][j] + twist[j]).get_d());
            pts.push_back(p);
        }
        if (hull_boundary_distance(pts) < margin) {
            ++out.rejected_by_margin;
            continue;
        }
        supports.push_back(std::move(s));
    }

    struct Row {
        Status exact;
        FlowResult flow;
    };
    std::vector<Row> rows(supports.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < supports.size(); k = next++) {
            std::mt19937_64 local(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
            std::normal_distribution<double> normal(0.0, 1.0);
            Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
            for (auto i : supports[k]) {
                std::complex<double> c(normal(local), normal(local));
                if (std::abs(c) < 1e-3) c = 1.0;
                x(static_cast<Eigen::Index>(i)) = c;
            }
            rows[k].exact = torus_test(lin, supports[k]).status;
            rows[k].flow = kempf_ness_flow(rep, x, tw, opts);
        }
    };
    const unsigned nt = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, supports.size()))));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < nt; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    for (std::size_t k = 0; k < rows.size(); ++k) {
        ++out.samples;
        const auto& r = rows[k];
        out.max_iterations_used = std::max(out.max_iterations_used, r.flow.iterations);
        bool agree = (r.exact == Status::Stable && r.flow.classification == FlowClass::ZeroReached) ||
                     (r.exact == Status::Unstable && r.flow.classification == FlowClass::PositiveInfimum);
        if (agree)
            ++out.agreements;
        else
            out.mismatches.push_back({supports[k], r.exact, r.flow.classification, r.flow.residual});
    }
    return out;
}

}  // namespace gitkit
