#ifndef GITKIT_MOMENT_FLOW_HPP
#define GITKIT_MOMENT_FLOW_HPP

#include "gitkit/rational.hpp"
#include "gitkit/verdict.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gitkit {

/// Representation of a compact group through skew-hermitian generators
/// rho_*(a_j). Diagonal (torus) representations store their integer
/// weights; the generator for direction j is then i * diag(weights[.][j]).
class CompactRepresentation {
public:
    /// weights[k] is the weight vector of coordinate k (length = rank).
    static CompactRepresentation diagonal(const std::vector<std::vector<double>>& weights);
    /// Throws std::invalid_argument unless every generator is dim x dim and skew-hermitian.
    static CompactRepresentation from_generators(std::vector<Eigen::MatrixXcd> generators, double tol = 1e-12);

    int dim() const { return dim_; }
    std::size_t rank() const { return generators_.size(); }
    const std::vector<Eigen::MatrixXcd>& generators() const { return generators_; }
    /// H_j = -i rho_*(a_j), hermitian.
    const Eigen::MatrixXcd& hermitian(std::size_t j) const { return hermitian_[j]; }
    bool is_diagonal() const { return !weights_.empty(); }
    const std::vector<std::vector<double>>& weights() const { return weights_; }

private:
    int dim_ = 0;
    std::vector<Eigen::MatrixXcd> generators_;
    std::vector<Eigen::MatrixXcd> hermitian_;
    std::vector<std::vector<double>> weights_;
};

/// Component j: Re(x^* rho_*(a_j) x / (2 pi i |x|^2)). Throws on x = 0.
Eigen::VectorXd moment_value(const CompactRepresentation& rep, const Eigen::VectorXcd& x);

/// N mu_A(a) + mu_Y(y). A representation without generators contributes 0.
Eigen::VectorXd product_moment_value(const CompactRepresentation& rep_a, const Eigen::VectorXcd& a,
                                     const CompactRepresentation& rep_y, const Eigen::VectorXcd& y, double n);

/// mu + twist / (2 pi): the twist is given in weight units, so a diagonal
/// representation twisted by t has the moment map of the weights w + t.
Eigen::VectorXd twist_moment(const Eigen::VectorXd& mu, const Eigen::VectorXd& twist);

/// Gradient of |mu + twist/2pi|^2 at t = 0 along x(t) = exp(-sum t_j H_j) x.
Eigen::VectorXd norm_square_gradient(const CompactRepresentation& rep, const Eigen::VectorXcd& x,
                                     const Eigen::VectorXd& twist);

enum class FlowClass { ZeroReached, PositiveInfimum, Inconclusive };
std::string to_string(FlowClass c);

struct FlowOptions {
    double step = 0.5;
    double tol = 1e-8;
    int max_iter = 10000;
    int stagnation_window = 100;
    double stagnation_rel = 1e-12;
    bool trace = false;
};

struct FlowResult {
    Eigen::VectorXcd endpoint;
    double residual = 0;
    int iterations = 0;
    FlowClass classification = FlowClass::Inconclusive;
    /// For PositiveInfimum: lower bound on |mu| certified by the 1-PS along the final mu.
    double lower_bound = 0;
    std::vector<double> trace;
};

/// lim_{s -> inf} <mu(exp(-s beta.H) x) + twist/2pi, beta>, the smallest
/// eigenvalue of beta.H over the components of x, shifted by the twist and
/// divided by 2 pi.
double one_parameter_limit(const CompactRepresentation& rep, const Eigen::VectorXcd& x, const Eigen::VectorXd& beta,
                           const Eigen::VectorXd& twist);

/// Norm-square descent x <- exp(-step sum_j mu_j H_j) x / |.|, halving the
/// step until |mu|^2 decreases. PositiveInfimum is reported only when the
/// direction of the current moment value passes one_parameter_limit with a
/// positive bound; stagnation without such a bound is Inconclusive.
FlowResult kempf_ness_flow(const CompactRepresentation& rep, const Eigen::VectorXcd& x0, const Eigen::VectorXd& twist,
                           const FlowOptions& opts = {});

/// Distance from 0 to the boundary of conv(points), points in R^1 or R^2.
double hull_boundary_distance(const std::vector<std::vector<double>>& points);

struct FlowComparison {
    int samples = 0;
    int rejected_by_margin = 0;
    int agreements = 0;
    struct Mismatch {
        std::vector<std::size_t> support;
        Status exact;
        FlowClass flow;
        double residual;
    };
    std::vector<Mismatch> mismatches;
    int max_iterations_used = 0;
};

/// Samples random points (random nonempty support, random complex
/// coordinates) whose twisted weight hull boundary stays at least `margin`
/// from 0, and compares the exact torus verdict with the flow outcome
/// (Stable <-> ZeroReached, Unstable <-> PositiveInfimum).
FlowComparison compare_flow_exact(const std::vector<RationalVector>& weights, const RationalVector& twist,
                                  int n_samples, std::uint64_t seed, double margin, const FlowOptions& opts = {},
                                  unsigned jobs = 1);

}  // namespace gitkit

#endif
