#ifndef GITKIT_VERDICT_HPP
#define GITKIT_VERDICT_HPP

#include "gitkit/rational.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gitkit {

enum class Status { Unstable, StrictlySemistable, Stable };

std::string to_string(Status s);
Status parse_status(const std::string& s);

/// Unstable < StrictlySemistable < Stable.
inline Status worst(Status a, Status b) { return static_cast<int>(a) < static_cast<int>(b) ? a : b; }

/// Evidence attached to a verdict. Which fields are filled depends on `kind`:
///  - "covector": a separating functional on the weight lattice;
///  - "group-element": a unipotent triple and/or GL(2) element together with
///    the covector separating the transformed weights;
///  - "numeric-group-element": the destabilizing group element is irrational;
///    a floating-point approximation is stored in the numeric_* fields;
///  - "section-ideal": the destabilizing data exists only over the algebraic
///    closure (a proper ideal, no rational or numerical point found);
///  - "emptiness-range": the twist lies outside the open range where
///    semistable points exist;
///  - "one-parameter-subgroup": a 1-PS of a larger group after a basis change.
struct Certificate {
    std::string kind;
    std::vector<Integer> covector;
    std::optional<std::vector<Rational>> unipotent;  // alpha, beta, gamma
    std::optional<std::vector<Rational>> gl2;        // row-major 2x2
    std::string note;
    std::vector<std::complex<double>> numeric_unipotent;
    std::vector<std::complex<double>> numeric_gl2;
};

struct StabilityVerdict {
    Status status = Status::Unstable;
    std::optional<Certificate> certificate;
    bool endpoint_caveat = false;
};

}  // namespace gitkit

#endif
