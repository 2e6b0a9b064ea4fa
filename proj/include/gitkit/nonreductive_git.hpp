#ifndef GITKIT_NONREDUCTIVE_GIT_HPP
#define GITKIT_NONREDUCTIVE_GIT_HPP

#include "gitkit/groebner.hpp"
#include "gitkit/group_action.hpp"
#include "gitkit/verdict.hpp"
#include "gitkit/weighted_polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gitkit {

/// Degree d (even, positive) and the rational twist delta by det.
struct HLinearisation {
    int d = 2;
    Rational delta;
    void validate() const;
};

struct WallTable {
    std::vector<Rational> walls;
    Rational endpoint_lo;
    Rational endpoint_hi;
};

/// Candidate walls {2m - d/2 : m = 0..d/2}, merged with the twists where an
/// edge or vertex of the full weight triangle passes through 0.
WallTable h_walls(int d);

/// Unipotent-plus-centre test: eliminates "for all u" through the largest
/// section multiplicity M and the z-degree k_max.
StabilityVerdict uhat_test(const WeightedPolynomial& p, const HLinearisation& lin,
                           const GroebnerBudget& budget = default_budget());

struct OracleGrid {
    /// Include all (alpha, beta, gamma) with entries in {0, +-1, +-2, +-1/2}.
    bool include_default_grid = true;
    int random_samples = 50;
    std::uint64_t seed = 0;
};

/// Worst central verdict over sampled u. A sampled Unstable is a proof; a
/// clean run is only evidence.
StabilityVerdict uhat_oracle(const WeightedPolynomial& p, const HLinearisation& lin, const OracleGrid& grid = {});

/// A normal direction and the set of monomials (indices into
/// monomial_basis(d)) whose coefficients must vanish for it to destabilize.
struct DestabilizationCandidate {
    enum class Kind { CentralOnly, SectionAndPoint };
    Kind kind = Kind::SectionAndPoint;
    std::optional<UnipotentElement> section;
    /// True when the system is solvable but no rational solution was found.
    bool nonrational = false;
    std::optional<GL2Element> point;
    std::vector<Integer> normal;
};

struct HTestReport {
    StabilityVerdict verdict;
    /// Outcome of the Hilbert-Mumford procedure at the endpoints +-d/2,
    /// where the reported verdict is Unstable regardless.
    std::optional<Status> hm_prediction;
    /// Number of ideal properness checks performed.
    std::size_t systems_checked = 0;
    std::vector<DestabilizationCandidate> destabilizers;
};

/// Full H = U x| GL(2) test.
HTestReport h_test_report(const WeightedPolynomial& p, const HLinearisation& lin,
                          const GroebnerBudget& budget = default_budget());
StabilityVerdict h_test(const WeightedPolynomial& p, const HLinearisation& lin,
                        const GroebnerBudget& budget = default_budget());

/// Worst T_c verdict over `samples` random h = u g (the first sample is the
/// identity).
StabilityVerdict h_oracle(const WeightedPolynomial& p, const HLinearisation& lin, int samples, std::uint64_t seed);

/// Numerical certificates are accepted when every coefficient of h p larger
/// than kNumericSupportTolerance times the largest one pairs correctly.
inline constexpr double kNumericSupportTolerance = 1e-8;

/// Checks an Unstable uhat verdict: the central weights of u p are one-sided
/// for the stored u (exact or numerical).
bool verify_uhat_certificate(const WeightedPolynomial& p, const HLinearisation& lin, const StabilityVerdict& v);

/// Recomputes h p from the certificate and checks that its T_c hull misses 0
/// (for Unstable) using the stored covector. Returns false when the
/// certificate carries no concrete group element or does not check out.
bool verify_h_certificate(const WeightedPolynomial& p, const HLinearisation& lin, const StabilityVerdict& v);

struct ClassifyCell {
    std::optional<StabilityVerdict> uhat;
    std::optional<StabilityVerdict> h;
    std::optional<Status> hm_prediction;
    /// "ok", "undecided: ..." or "error: ...".
    std::string outcome = "ok";
    bool on_wall = false;
};

struct ClassifyReport {
    std::vector<Rational> deltas;
    /// cells[poly][delta]
    std::vector<std::vector<ClassifyCell>> cells;
    /// counts[delta][status] for the H verdicts.
    std::vector<std::array<int, 3>> counts;
    int undecided = 0;
    int errors = 0;
};

ClassifyReport classify_corpus(const std::vector<WeightedPolynomial>& polys, const std::vector<Rational>& deltas,
                               unsigned jobs = 1, const GroebnerBudget& budget = default_budget());

}  // namespace gitkit

#endif
