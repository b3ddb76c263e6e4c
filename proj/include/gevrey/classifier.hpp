#pragma once

// Decision procedures for the two characterization theorems and the sector
// of analytic continuation, stated purely in terms of spectrum location:
//
//   Roumieu order beta:  there exist b_plus, b_minus > 0 such that
//       sigma(A) \ { Re <= -b_minus |Im|^(1/beta)  or  Re >= b_plus |Im|^(1/beta) }
//   is bounded.
//
//   Beurling order beta (beta > 1): there exists b_plus > 0 such that for
//   EVERY b_minus > 0 the same set is bounded.
//
//   Analyticity is the Roumieu case at beta = 1.

#include <cmath>
#include <optional>
#include <string>

#include "gevrey/operator_calculus.hpp"
#include "gevrey/region.hpp"

namespace gevrey {

enum class GevreyType { Roumieu, Beurling, Analytic };

inline const char* to_string(GevreyType t) {
    switch (t) {
        case GevreyType::Roumieu: return "roumieu";
        case GevreyType::Beurling: return "beurling";
        default: return "analytic";
    }
}

enum class VerdictMethod { Exact, HeuristicRefuted, Undecided };

inline const char* to_string(VerdictMethod m) {
    switch (m) {
        case VerdictMethod::Exact: return "exact";
        case VerdictMethod::HeuristicRefuted: return "heuristic-refuted";
        default: return "undecided";
    }
}

/// holds == true requires method == Exact. A Beurling witness carries b_plus
/// only (the theorem quantifies universally over b_minus).
struct ClassificationVerdict {
    bool holds = false;
    double beta = 1.0;
    GevreyType type = GevreyType::Roumieu;
    VerdictMethod method = VerdictMethod::Undecided;
    std::optional<double> witness_b_minus;
    std::optional<double> witness_b_plus;
    std::string refutation;
};

namespace detail {

inline ClassificationVerdict from_geometry(const GeometryResult& g, double beta, GevreyType type,
                                           bool heuristic_source) {
    ClassificationVerdict v;
    v.beta = beta;
    v.type = type;
    switch (g.decision) {
        case GeoDecision::Holds:
            v.holds = true;
            v.method = VerdictMethod::Exact;
            v.witness_b_minus = g.witness_b_minus;
            v.witness_b_plus = g.witness_b_plus;
            break;
        case GeoDecision::Fails:
            v.holds = false;
            v.method = heuristic_source ? VerdictMethod::HeuristicRefuted : VerdictMethod::Exact;
            v.refutation = g.refutation;
            break;
        default:
            v.holds = false;
            v.method = VerdictMethod::Undecided;
            v.refutation = g.refutation.empty() ? "neither certified nor refuted" : g.refutation;
    }
    return v;
}

inline bool heuristic_only(const SpectrumSpec& s) {
    return s.is_sampled() && !s.power_law_part();
}

}  // namespace detail

/// Do all weak solutions lie in the beta-order Roumieu class on (0, inf)?
inline ClassificationVerdict classify_roumieu(const DiagonalOperator& a, double beta) {
    auto g = roumieu_geometry(a.spectrum(), beta);
    return detail::from_geometry(g, beta, GevreyType::Roumieu,
                                 detail::heuristic_only(a.spectrum()));
}

/// Beurling counterpart; beta = 1 (entireness) is outside this theorem.
inline ClassificationVerdict classify_beurling(const DiagonalOperator& a, double beta) {
    auto g = beurling_geometry(a.spectrum(), beta);  // throws BetaOutOfRange for beta <= 1
    return detail::from_geometry(g, beta, GevreyType::Beurling,
                                 detail::heuristic_only(a.spectrum()));
}

/// Analyticity on (0, inf): exactly the Roumieu verdict at beta = 1.
inline ClassificationVerdict classify_analytic(const DiagonalOperator& a) {
    ClassificationVerdict v = classify_roumieu(a, 1.0);
    v.type = GevreyType::Analytic;
    return v;
}

/// Least beta >= 1 satisfying the Roumieu criterion; +inf when none does.
/// Closed form for power-law spectra, 1 for finite spectra.
inline double minimal_roumieu_order(const DiagonalOperator& a) {
    return minimal_roumieu_order_geometry(a.spectrum());
}

/// Bisection oracle against classify_roumieu, for cross-checking the closed
/// form. Monotone in beta by the class inclusions.
inline double minimal_roumieu_order_bisection(const DiagonalOperator& a, double tol = 1e-3,
                                              double beta_cap = 64.0) {
    if (classify_roumieu(a, 1.0).holds) return 1.0;
    double hi = 2.0;
    while (hi <= beta_cap && !classify_roumieu(a, hi).holds) hi *= 2.0;
    if (hi > beta_cap) return kInf;
    double lo = hi / 2.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (classify_roumieu(a, mid).holds ? hi : lo) = mid;
    }
    return hi;
}

/// Sector of analytic continuation. The proposition's hypothesis is the
/// analyticity of all weak solutions; without it the angle is meaningless.
inline double sector(const DiagonalOperator& a) {
    if (!classify_analytic(a).holds)
        throw HypothesisFailedError("sector: weak solutions are not all analytic on (0, inf)");
    return sector_angle(a.spectrum());
}

// ---------------------------------------------------------------------------
// Proof-parameter identities (the tuning constants of the two proofs).
// Evaluated through extended precision so the defining identities hold to a
// double ulp.
// ---------------------------------------------------------------------------

/// s with t = s * (1 + b_minus^-beta)^(1/beta): the Roumieu proof's choice.
inline double roumieu_tuning_s(double t, double b_minus, double beta) {
    long double b = b_minus, bl = beta;
    long double factor = std::pow(1.0L + std::pow(b, -bl), -1.0L / bl);
    return static_cast<double>(static_cast<long double>(t) * factor);
}

/// Residual t - s*(1 + b_minus^-beta)^(1/beta) evaluated in extended precision,
/// with the two powers computed independently.
inline double roumieu_tuning_residual(double t, double b_minus, double beta) {
    long double b = b_minus, bl = beta;
    long double base = 1.0L + std::pow(b, -bl);
    long double s = static_cast<long double>(t) * std::pow(base, -1.0L / bl);
    return static_cast<double>(static_cast<long double>(t) - s * std::pow(base, 1.0L / bl));
}

/// b_minus = 2^(1/beta) * s / t: the Beurling proof's choice.
inline double beurling_tuning_b_minus(double s, double t, double beta) {
    long double bl = beta;
    return static_cast<double>(std::pow(2.0L, 1.0L / bl) * static_cast<long double>(s) /
                               static_cast<long double>(t));
}

/// Residual t - s * 2^(1/beta) / b_minus with the b_minus above.
inline double beurling_tuning_residual(double s, double t, double beta) {
    long double bl = beta;
    long double b = std::pow(2.0L, 1.0L / bl) * static_cast<long double>(s) /
                    static_cast<long double>(t);
    return static_cast<double>(static_cast<long double>(t) -
                               static_cast<long double>(s) * std::pow(2.0L, 1.0L / bl) / b);
}

}  // namespace gevrey
