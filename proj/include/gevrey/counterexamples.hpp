#pragma once

// Adversarial (operator, initial vector) pairs from the three contrapositive
// branches of the characterization proofs: spectra chosen inside the escape
// strip  -n^-1 |Im|^(1/beta) < Re < n^-2 |Im|^(1/beta)  (Roumieu; the Beurling
// branch replaces the left bound by a fixed -b_minus |Im|^(1/beta)), with
// moduli growing past max(n, |lambda_{n-1}|), paired with vectors that stay
// admissible while  y(1) = e^A f  escapes every D(e^{s|A|^(1/beta)}).
//
// In the orthonormal sequence model the proof's Banach scaffolding collapses:
// the separating disks become the points themselves, the basis choice is the
// standard basis, the basis-to-span distances are 1, the measure bound is
// M = 1, and the Hahn-Banach functionals are the basis functionals. What
// survives -- the divergent series themselves -- is what gets verified here.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gevrey/classifier.hpp"
#include "gevrey/evolution.hpp"
#include "gevrey/operator_calculus.hpp"

namespace gevrey {

enum class AdversarialKind { BoundedRe, ReToPlusInfinity, ReToMinusInfinity };

inline const char* to_string(AdversarialKind k) {
    switch (k) {
        case AdversarialKind::BoundedRe: return "bounded_re";
        case AdversarialKind::ReToPlusInfinity: return "re_to_plus_infinity";
        default: return "re_to_minus_infinity";
    }
}

struct AdversarialCase {
    AdversarialKind kind = AdversarialKind::BoundedRe;
    GevreyType variant = GevreyType::Roumieu;
    double beta = 1.0;
    std::optional<double> b_minus;  // Beurling branch only
    SpectrumSpec eigenvalues;
    StateVector vector;
    StateVector witness_functional;  // h* = sum k^-2 e_k*
};

namespace detail {

inline constexpr double kStrictMargin = 1.1;  // keeps strict inequalities strict in floating point

/// Pointwise re-verification of the proof-branch selection constraints.
inline void check_selection(const AdversarialCase& c, std::int64_t n_max = 10000) {
    double prev_mod = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        Complex l = c.eigenvalues.lambda(n);
        double thr = std::pow(std::abs(l.imag()), 1.0 / c.beta);
        double x = static_cast<double>(n);
        double lower = (c.variant == GevreyType::Beurling && c.b_minus)
                           ? -(*c.b_minus) * thr
                           : -thr / x;
        double upper = thr / (x * x);
        std::ostringstream os;
        if (!(lower < l.real() && l.real() < upper)) {
            os << "selection strip violated at n=" << n << ": " << lower << " < " << l.real()
               << " < " << upper;
            throw ConstraintViolationError(os.str());
        }
        double mod = std::abs(l);
        if (!(mod > x && mod > prev_mod)) {
            os << "modulus growth violated at n=" << n;
            throw ConstraintViolationError(os.str());
        }
        if (c.kind == AdversarialKind::ReToPlusInfinity && !(l.real() >= x)) {
            os << "Re lambda_n >= n violated at n=" << n;
            throw ConstraintViolationError(os.str());
        }
        if (c.kind == AdversarialKind::ReToMinusInfinity && !(l.real() <= -x)) {
            os << "Re lambda_n <= -n violated at n=" << n;
            throw ConstraintViolationError(os.str());
        }
        prev_mod = mod;
    }
}

}  // namespace detail

/// Canonical adversarial pair for a proof branch.
///
///   BoundedRe:          lambda_n = i n^(beta+1),            f = sum k^-2 e_k
///   ReToPlusInfinity:   lambda_n = n + i (1.1 n^3)^beta,    f = sum e^(-k^2) e_k
///   ReToMinusInfinity:  Roumieu   lambda_n = -n + i (1.1 n^2)^beta,     f = sum k^-2 e_k
///                       Beurling  lambda_n = -n + i (1.1 n / b_minus)^beta, same f
inline AdversarialCase build_adversarial(AdversarialKind kind, double beta, GevreyType variant,
                                         std::optional<double> b_minus = std::nullopt) {
    if (variant == GevreyType::Analytic)
        throw PreconditionError("adversarial variants are roumieu or beurling");
    if (variant == GevreyType::Roumieu && !(beta >= 1.0))
        throw BetaOutOfRangeError("Roumieu branch requires beta >= 1");
    if (variant == GevreyType::Beurling) {
        if (!(beta > 1.0)) throw BetaOutOfRangeError("Beurling branch requires beta > 1");
        if (!b_minus || !(*b_minus > 0.0))
            throw PreconditionError("Beurling branch requires b_minus > 0");
    }

    AdversarialCase c;
    c.kind = kind;
    c.variant = variant;
    c.beta = beta;
    c.b_minus = variant == GevreyType::Beurling ? b_minus : std::nullopt;

    PowerLawSpectrum p;
    ClosedFormCoeffs f;
    switch (kind) {
        case AdversarialKind::BoundedRe:
            p.re_sign = 0;
            p.im_coef = detail::kStrictMargin;  // |lambda_1| > 1 strictly
            p.im_exp = beta + 1.0;
            f = {1.0, 2.0, 0.0, 1.0};  // k^-2
            break;
        case AdversarialKind::ReToPlusInfinity:
            p.re_sign = 1;
            p.re_coef = 1.0;
            p.re_exp = 1.0;
            p.im_coef = std::pow(detail::kStrictMargin, beta);
            p.im_exp = 3.0 * beta;
            f = {1.0, 0.0, 1.0, 2.0};  // e^(-k^2) = e^(-k * Re lambda_k)
            break;
        case AdversarialKind::ReToMinusInfinity:
            p.re_sign = -1;
            p.re_coef = 1.0;
            p.re_exp = 1.0;
            if (variant == GevreyType::Beurling) {
                p.im_coef = std::pow(detail::kStrictMargin / *b_minus, beta);
                p.im_exp = beta;
            } else {
                p.im_coef = std::pow(detail::kStrictMargin, beta);
                p.im_exp = 2.0 * beta;
            }
            f = {1.0, 2.0, 0.0, 1.0};  // k^-2
            break;
    }
    c.eigenvalues = SpectrumSpec::power_law(p);
    c.vector = StateVector::closed_form(f);
    c.witness_functional = StateVector::closed_form({1.0, 2.0, 0.0, 1.0});
    detail::check_selection(c);
    return c;
}

/// f in the domain of e^{tA} for every t >= 0 (symbolic certificate plus
/// numeric spot checks on the grid).
inline bool verify_admissible(const AdversarialCase& c, std::span<const double> t_grid) {
    try {
        weak_solution(DiagonalOperator(c.eigenvalues), c.vector, t_grid);
        return true;
    } catch (const NotAdmissibleError&) {
        return false;
    }
}

struct FailureReport {
    bool fails_roumieu = false;
    bool fails_beurling = false;
    GrowthTable partial_sum_trace;  // columns: n = index, t = s, norm = partial sum
};

namespace detail {

/// Does sum |e^{s|lambda|^(1/beta)} e^lambda f_k|^2 diverge for EVERY s > 0?
/// True when, on each strand, no potentially-negative term of the envelope
/// (without the s-term) grows at least as fast as |lambda|^(1/beta).
inline bool diverges_for_all_s(const SpectrumSpec& spec, const ClosedFormCoeffs& f, double beta) {
    auto strands = spec.strands();
    if (strands.empty()) return false;
    for (const auto& s : strands) {
        ModulusModel mm = modulus_model(s);
        if (mm.is_zero || mm.lead_exp <= 0.0) return false;
        double q = mm.lead_exp / beta;
        GrowthExpr base;  // envelope of 2[Re(lambda) + log|f|], no s-term
        if (s.re_lead != 0.0) base.add_exact(s.re_exp, 0, s.re_lead);
        base.add_exact(0.0, 0, s.re_off);
        base += f.log_expr();
        base.scale(2.0);
        base.normalize();
        for (const auto& t : base.terms)
            if (t.lo < 0.0 && t.log_pow == 0 && t.n_exp >= q) return false;
        // the s-term 2 s |lambda|^(1/beta) then dominates every decay for any s > 0
    }
    return true;
}

}  // namespace detail

/// Run the divergence checks of the "only if" branches over a grid of s > 0.
/// The recorded trace follows the paper's pairing route: partial sums of
/// sum_k e^{s|lambda_k|^(1/beta)} e^{Re lambda_k} |f_k| |h_k| against the
/// witness functional h* = sum k^-2 e_k*.
inline FailureReport verify_failure(const AdversarialCase& c, std::span<const double> s_grid) {
    DiagonalOperator a(c.eigenvalues);
    FailureReport rep;
    bool all_diverge = true;
    for (double s : s_grid) {
        if (!(s > 0.0)) throw PreconditionError("s-grid values must be > 0");
        auto weight = BorelFunctionSpec::gevrey_weight(s, c.beta);
        auto func = *weight.times(BorelFunctionSpec::exponential(1.0));
        auto dom = in_domain(func, a, c.vector);
        if (dom.in_domain == Decision::Undecided)
            throw InconclusiveDivergenceError(
                "partial sums neither certify convergence nor hit the divergence threshold");
        if (dom.in_domain == Decision::Yes) all_diverge = false;

        // pairing-route trace: tv partial sums against the witness functional
        double sum = 0.0;
        std::int64_t next_cp = 1;
        std::int64_t n_cap = 4096;
        if (auto lim = c.eigenvalues.iteration_limit()) n_cap = std::min(n_cap, *lim);
        for (std::int64_t k = 1; k <= n_cap; ++k) {
            double lt = func.log_abs(a.eigenvalue(k)) + c.vector.log_abs_coeff(k) +
                        c.witness_functional.log_abs_coeff(k);
            sum += std::exp(std::min(lt, 709.0));
            if (k == next_cp || sum > limits::kDivergenceThreshold) {
                rep.partial_sum_trace.rows.push_back({k, s, sum, 0.0});
                next_cp *= 2;
            }
            if (sum > limits::kDivergenceThreshold) break;
        }
    }
    const ClosedFormCoeffs* cf = c.vector.closed_form_part();
    bool symbolic_all_s = cf && detail::diverges_for_all_s(c.eigenvalues, *cf, c.beta);
    rep.fails_roumieu = all_diverge && symbolic_all_s;

    if (c.variant == GevreyType::Beurling && c.b_minus) {
        double s_star = 2.0 * (*c.b_minus);
        auto weight = BorelFunctionSpec::gevrey_weight(s_star, c.beta);
        auto func = *weight.times(BorelFunctionSpec::exponential(1.0));
        auto dom = in_domain(func, DiagonalOperator(c.eigenvalues), c.vector);
        rep.fails_beurling = dom.in_domain == Decision::No;
    } else {
        // escaping the Roumieu class escapes the smaller Beurling class
        rep.fails_beurling = rep.fails_roumieu;
    }
    return rep;
}

}  // namespace gevrey
