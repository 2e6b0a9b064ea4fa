#ifndef GITKIT_ENVELOPE_HPP
#define GITKIT_ENVELOPE_HPP

#include "gitkit/linalg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gitkit {

/// Infinitesimal action of U = (C^+)^r on V through r commuting nilpotent matrices.
struct NilpotentRep {
    int r = 1;
    int dimV = 1;
    std::vector<RationalMatrix> generators;

    /// Throws InputError on shape errors, non-nilpotent or non-commuting generators.
    void validate() const;
    /// phi(u) = sum_a u_a X_a.
    RationalMatrix phi(const RationalVector& u) const;
};

/// Lie algebra generators (d/d lambda, d/d mu, d/d nu at 0) of the U-action
/// on weighted degree d polynomials, in the monomial basis.
NilpotentRep unipotent_lie_rep(int d);

struct FlagChain {
    /// bases[j] spans (U_V)^j(V); the last entry is empty.
    std::vector<std::vector<RationalVector>> bases;
    std::vector<int> dims;
};
FlagChain derived_flag(const NilpotentRep& rep);

struct ThetaSpec {
    int r = 1;
    int dimV = 1;
    int j = 0;
    /// r (dimV - 1) - (r - 1) j.
    int degree_h() const { return r * (dimV - 1) - (r - 1) * j; }
    void validate() const;
};
/// r^j * C(D + M - 1, M - 1) with M = r^2 (dimV - 1) and D = degree_h().
Integer theta_dim(const ThetaSpec& spec);

struct WmDescriptor {
    std::vector<Integer> theta_dims;
    std::vector<int> flag_dims;
    std::vector<Integer> component_dims;
    Integer total;
};
WmDescriptor wm_descriptor(const NilpotentRep& rep);

/// Element of W_m represented by evaluation: component j at (u_1..u_j,
/// h_1..h_{dimV-1}) returns a vector of V lying in (U_V)^j(V).
struct WmElement {
    int dimV = 1;
    std::function<RationalVector(int j, const std::vector<RationalVector>& us, const std::vector<RationalMatrix>& hs)>
        eval;
};

/// psi_j(v)(us, hs) = det(h_1)...det(h_{n-j-1}) phi(h_{n-1} u_1) ... phi(h_{n-j} u_j) v.
RationalVector psi_evaluate(const NilpotentRep& rep, const RationalVector& v, int j,
                            const std::vector<RationalVector>& us, const std::vector<RationalMatrix>& hs);
WmElement psi(const NilpotentRep& rep, const RationalVector& v);

/// adj(h) with h adj(h) = det(h) I; the 1x1 adjugate is 1.
RationalMatrix adjugate(const RationalMatrix& h);

/// (u alpha)_j(us, hs) = alpha_{j+1}(us, adj(h_{n-1-j}) u, hs); the top component is 0.
WmElement u_act_wm(const NilpotentRep& rep, const RationalVector& u, const WmElement& alpha);

/// (g alpha)_j(us, hs) = det(g)^j alpha_j(g u_i, g h_l g^{-1}). Composition
/// reads g1 (g2 alpha) = (g2 g1) alpha.
WmElement glr_act_wm(const NilpotentRep& rep, const RationalMatrix& g, const WmElement& alpha);

struct EquivarianceReport {
    int trials = 0;
    int checks = 0;
    /// One line per violating (trial, j).
    std::vector<std::string> violations;
};
/// Exact pointwise check of psi(phi(u) v) = u psi(v) at random rational points.
EquivarianceReport check_psi_equivariance(const NilpotentRep& rep, int trials, std::uint64_t seed, int size_guard = 6);

struct Sl2Triple {
    RationalMatrix e;
    RationalMatrix h;
    RationalMatrix f;
    /// Jordan block sizes, non-increasing.
    std::vector<int> block_sizes;
    /// Columns b with e b_{i+1} = b_i inside each block, blocks in order.
    RationalMatrix jordan_basis;
};
/// Rational Jordan basis of a nilpotent e and the completing h, f built
/// blockwise from Sym^k. Throws InputError for non-nilpotent input.
Sl2Triple sl2_complete(const RationalMatrix& e);

/// exp(t e) for nilpotent e (finite sum).
RationalMatrix nilpotent_exp(const RationalMatrix& e, const Rational& t);

}  // namespace gitkit

#endif
