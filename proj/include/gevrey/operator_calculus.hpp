#pragma once

// Borel operational calculus on a diagonal operator over an orthonormal
// basis of the complex sequence space: F(A) acts coordinatewise by
// F(lambda_k). The spectral measure is coordinate masking, so its bound
// constant is M = 1 and total-variation weights are |f_k||g_k|.
//
// The domain criterion: f in D(F(A)) iff sum_k |F(lambda_k)|^2 |f_k|^2 < inf.
// (In this Hilbert-space model the uniform-tail condition of the general
// scalar-type criterion is automatic given summability, which is why a single
// summability test realizes both conditions.)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/borel_function.hpp"
#include "gevrey/complex_plane.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/growth.hpp"
#include "gevrey/spectrum.hpp"
#include "gevrey/state_vector.hpp"

namespace gevrey {

namespace limits {
inline constexpr double kDivergenceThreshold = 1e12;
inline constexpr std::int64_t kDivergenceN = 1000000;
inline constexpr std::int64_t kNonvanishingFrom = 100;  // any term > 1 beyond here diverges
}  // namespace limits

class DiagonalOperator {
  public:
    explicit DiagonalOperator(SpectrumSpec spectrum) : spectrum_(std::move(spectrum)) {}

    const SpectrumSpec& spectrum() const { return spectrum_; }
    Complex eigenvalue(std::int64_t k) const { return spectrum_.lambda(k); }
    std::optional<std::int64_t> dimension() const { return spectrum_.dimension(); }

    /// Index range shared by this operator and a vector: the spectrum's
    /// evaluable range if it is bounded, else the vector's explicit support.
    std::int64_t joint_limit(const StateVector& f) const {
        auto lim = spectrum_.iteration_limit();
        std::int64_t sup = f.support_limit();
        return lim ? std::min(*lim, sup) : sup;
    }

  private:
    SpectrumSpec spectrum_;
};

// ---------------------------------------------------------------------------
// Region predicates (Borel sets delta, decidable per eigenvalue)
// ---------------------------------------------------------------------------

class RegionPredicate {
  public:
    enum class Kind { All, Empty, Custom };

    static RegionPredicate all() { return RegionPredicate(Kind::All, nullptr); }
    static RegionPredicate empty() { return RegionPredicate(Kind::Empty, nullptr); }
    static RegionPredicate of(std::function<bool(Complex)> fn) {
        return RegionPredicate(Kind::Custom, std::move(fn));
    }
    static RegionPredicate left_half_plane() {
        return of([](Complex z) { return z.real() < 0.0; });
    }
    static RegionPredicate disk(double radius) {
        return of([radius](Complex z) { return std::abs(z) <= radius; });
    }

    bool operator()(Complex z) const {
        switch (kind_) {
            case Kind::All: return true;
            case Kind::Empty: return false;
            default: return fn_(z);
        }
    }
    Kind kind() const { return kind_; }

    friend RegionPredicate operator&(const RegionPredicate& a, const RegionPredicate& b) {
        if (a.kind_ == Kind::Empty || b.kind_ == Kind::Empty) return empty();
        if (a.kind_ == Kind::All) return b;
        if (b.kind_ == Kind::All) return a;
        return of([a, b](Complex z) { return a(z) && b(z); });
    }

  private:
    RegionPredicate(Kind k, std::function<bool(Complex)> fn) : kind_(k), fn_(std::move(fn)) {}
    Kind kind_;
    std::function<bool(Complex)> fn_;
};

// ---------------------------------------------------------------------------
// Domain criterion
// ---------------------------------------------------------------------------

enum class Decision { Yes, No, Undecided };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Yes: return "yes";
        case Decision::No: return "no";
        default: return "undecided";
    }
}

enum class DomainMethod { SymbolicTail, PartialSumDivergence, Finite };

inline const char* to_string(DomainMethod m) {
    switch (m) {
        case DomainMethod::SymbolicTail: return "symbolic-tail";
        case DomainMethod::PartialSumDivergence: return "partial-sum-divergence";
        default: return "finite";
    }
}

/// Membership is a three-valued verdict; "undecided" is reported, never
/// silently coerced. in_domain == Yes requires a symbolic tail certificate or
/// a finite index set; numeric divergence detection alone only refutes.
struct DomainVerdict {
    Decision in_domain = Decision::Undecided;
    DomainMethod method = DomainMethod::SymbolicTail;
    std::vector<double> partial_sums;
    std::string certificate;

    bool certified() const { return in_domain == Decision::Yes; }
};

namespace detail {

/// log of the squared series term at index k: 2[log|F(lambda_k)| + log|f_k|].
inline double log_sq_term(const BorelFunctionSpec& f, const DiagonalOperator& a,
                          const StateVector& x, std::int64_t k) {
    double lc = x.log_abs_coeff(k);
    if (lc == -kInf) return -kInf;
    double lf = f.log_abs(a.eigenvalue(k));
    if (lf == -kInf) return -kInf;
    return 2.0 * (lf + lc);
}

/// Envelope of the squared-term log series on one strand.
inline GrowthExpr domain_series_envelope(const Strand& s, const BorelFunctionSpec& f,
                                         const ClosedFormCoeffs& c) {
    GrowthExpr e;
    ModulusModel mm = modulus_model(s);
    if (f.degree > 0) {
        GrowthExpr lg = modulus_log_expr(mm);
        lg.scale(static_cast<double>(f.degree));
        e += lg;
    }
    // Re(z*lambda(n)) = x*Re(n) - y*Im(n): exact monomials
    double x = f.exp_z.real(), y = f.exp_z.imag();
    if (x != 0.0 || y != 0.0) {
        if (s.re_lead != 0.0) e.add_exact(s.re_exp, 0, x * s.re_lead);
        if (s.im_lead != 0.0) e.add_exact(s.im_exp, 0, -y * s.im_lead);
        e.add_exact(0.0, 0, x * s.re_off - y * s.im_off);
    }
    if (f.abs_coef != 0.0) {
        GrowthExpr w = modulus_power_expr(mm, 1.0 / f.abs_beta);
        w.scale(f.abs_coef);
        e += w;
    }
    e += c.log_expr();
    e.scale(2.0);
    e.valid_from = std::max(e.valid_from, mm.valid_from);
    return e;
}

struct NumericScan {
    bool diverged = false;
    std::vector<double> partial_sums;
    std::string detail;
};

inline NumericScan partial_sum_scan(const BorelFunctionSpec& f, const DiagonalOperator& a,
                                    const StateVector& x, const RegionPredicate& delta,
                                    std::int64_t n_max, bool detect_divergence = true) {
    NumericScan out;
    auto lim = a.spectrum().iteration_limit();
    std::int64_t stop = lim ? std::min(*lim, n_max) : n_max;
    if (x.is_finite_support()) stop = std::min(stop, x.support_limit());
    double sum = 0.0, comp = 0.0;
    std::int64_t next_checkpoint = 1;
    const double log_thr = std::log(limits::kDivergenceThreshold);
    for (std::int64_t k = 1; k <= stop; ++k) {
        if (!delta(a.eigenvalue(k))) continue;
        double lt = log_sq_term(f, a, x, k);
        std::ostringstream why;
        if (detect_divergence) {
            if (lt > log_thr) {
                out.diverged = true;
                why << "term at k=" << k << " alone exceeds threshold 1e12";
                out.detail = why.str();
            } else if (lt > 0.0 && k > limits::kNonvanishingFrom) {
                out.diverged = true;
                why << "terms fail to vanish (term > 1 at k=" << k << ")";
                out.detail = why.str();
            }
        }
        if (lt > -kInf) {
            double term = std::exp(lt);
            double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        if (k == next_checkpoint || out.diverged || k == stop) {
            out.partial_sums.push_back(sum + comp);
            next_checkpoint *= 2;
        }
        if (detect_divergence && !out.diverged && sum + comp > limits::kDivergenceThreshold) {
            out.diverged = true;
            std::ostringstream w2;
            w2 << "partial sum exceeds threshold 1e12 at k=" << k;
            out.detail = w2.str();
        }
        if (out.diverged) break;
    }
    return out;
}

}  // namespace detail

/// Domain criterion for F(A): symbolic tail certification first, numeric
/// divergence detection second, explicit "undecided" otherwise.
/// `delta` restricts the series to eigenvalues inside a Borel set; note that
/// a convergence certificate for the full series covers every restriction.
inline DomainVerdict in_domain(const BorelFunctionSpec& f, const DiagonalOperator& a,
                               const StateVector& x,
                               const RegionPredicate& delta = RegionPredicate::all()) {
    DomainVerdict v;
    // Finite index set: any finite sum is finite.
    if (a.dimension() || x.is_finite_support()) {
        auto scan = detail::partial_sum_scan(f, a, x, delta,
                                             a.dimension() ? *a.dimension() : x.support_limit(),
                                             /*detect_divergence=*/false);
        v.in_domain = Decision::Yes;
        v.method = DomainMethod::Finite;
        v.partial_sums = std::move(scan.partial_sums);
        v.certificate = "finite index set: the defining series is a finite sum";
        return v;
    }

    const ClosedFormCoeffs* cf = x.closed_form_part();
    bool delta_unrestricted = delta.kind() == RegionPredicate::Kind::All;
    if (cf) {
        auto strands = a.spectrum().strands();
        if (!strands.empty()) {
            bool all_converge = true, any_diverge = false;
            std::string why;
            for (const auto& s : strands) {
                GrowthExpr e = detail::domain_series_envelope(s, f, *cf);
                e.valid_from = std::max(e.valid_from, a.spectrum().analytic_from());
                auto d = decide_series(e);
                if (d.verdict != SeriesVerdict::Converges) all_converge = false;
                if (d.verdict == SeriesVerdict::Diverges) {
                    any_diverge = true;
                    why = d.why;
                }
                if (d.verdict == SeriesVerdict::Converges && why.empty()) why = d.why;
            }
            auto scan = detail::partial_sum_scan(f, a, x, delta, 4096);
            v.partial_sums = std::move(scan.partial_sums);
            if (all_converge) {
                v.in_domain = Decision::Yes;
                v.method = DomainMethod::SymbolicTail;
                v.certificate = "symbolic tail: " + why;
                return v;
            }
            if (any_diverge && delta_unrestricted) {
                v.in_domain = Decision::No;
                v.method = DomainMethod::SymbolicTail;
                v.certificate = "symbolic tail: " + why;
                return v;
            }
        }
    }

    auto scan = detail::partial_sum_scan(f, a, x, delta, limits::kDivergenceN);
    v.partial_sums = std::move(scan.partial_sums);
    if (scan.diverged) {
        v.in_domain = Decision::No;
        v.method = DomainMethod::PartialSumDivergence;
        v.certificate = scan.detail;
        return v;
    }
    v.in_domain = Decision::Undecided;
    v.certificate = "neither symbolic certification nor divergence detection fired";
    return v;
}

/// Coordinatewise functional calculus F(A)f with a certified truncation tail.
inline StateVector apply_function(const BorelFunctionSpec& f, const DiagonalOperator& a,
                                  const StateVector& x) {
    auto dom = in_domain(f, a, x);
    if (!dom.certified())
        throw NotInDomainError("apply_function: " + std::string(to_string(dom.in_domain)) +
                               " (" + dom.certificate + ")");
    std::int64_t lim = a.joint_limit(x);
    std::vector<Complex> vals(static_cast<std::size_t>(lim));
    for (std::int64_t k = 1; k <= lim; ++k)
        vals[static_cast<std::size_t>(k - 1)] = f.eval(a.eigenvalue(k)) * x.coeff(k);

    double tail = 0.0;
    if (!a.dimension() && !x.is_finite_support()) {
        const auto* cf = x.closed_form_part();
        double tail_sq = 0.0;
        for (const auto& s : a.spectrum().strands()) {
            GrowthExpr e = detail::domain_series_envelope(s, f, *cf);
            e.valid_from = std::max(e.valid_from, a.spectrum().analytic_from());
            tail_sq += tail_sum_upper(e, lim, [&](std::int64_t k) {
                return detail::log_sq_term(f, a, x, k);
            });
        }
        if (!std::isfinite(tail_sq))
            throw UnboundedTailError("apply_function: no symbolic bound on the truncation tail");
        tail = std::sqrt(tail_sq);
    }
    return StateVector::finite_with_tail(std::move(vals), lim, tail);
}

/// Spectral projection E_A(delta): zeroes coordinates outside delta.
/// Structurally empty sets yield the exact zero vector; otherwise the l2
/// tail bound survives (projections are contractions coordinatewise).
inline StateVector spectral_projection(const DiagonalOperator& a, const RegionPredicate& delta,
                                       const StateVector& x) {
    if (delta.kind() == RegionPredicate::Kind::Empty)
        return StateVector::finite({});
    std::int64_t lim = a.joint_limit(x);
    std::vector<Complex> vals(static_cast<std::size_t>(lim));
    for (std::int64_t k = 1; k <= lim; ++k) {
        Complex c = x.coeff(k);
        vals[static_cast<std::size_t>(k - 1)] = delta(a.eigenvalue(k)) ? c : Complex{0.0, 0.0};
    }
    // projections are coordinatewise contractions, so the l2 tail bound survives
    return StateVector::finite_with_tail(std::move(vals), x.truncation_n(), x.tail_bound_l2());
}

/// Total-variation weights w_k = |f_k| |g_k| of v(f, g*, .).
struct VariationMeasure {
    std::vector<double> weights;

    double total_mass() const {
        double s = 0.0, comp = 0.0;
        for (double w : weights) {
            double t = s + w;
            comp += (std::abs(s) >= std::abs(w)) ? (s - t) + w : (w - t) + s;
            s = t;
        }
        return s + comp;
    }
};

inline VariationMeasure variation_measure(const DiagonalOperator& a, const StateVector& f,
                                          const StateVector& g) {
    std::int64_t lim = std::min(a.joint_limit(f), a.joint_limit(g));
    VariationMeasure m;
    m.weights.resize(static_cast<std::size_t>(lim));
    for (std::int64_t k = 1; k <= lim; ++k)
        m.weights[static_cast<std::size_t>(k - 1)] = std::abs(f.coeff(k)) * std::abs(g.coeff(k));
    return m;
}

/// int_delta |F| dv(f,g*,lambda) over the truncated index range.
inline double tv_mass(const DiagonalOperator& a, const StateVector& f, const StateVector& g,
                      const RegionPredicate& delta, const BorelFunctionSpec& func) {
    auto dom = in_domain(func, a, f, delta);
    if (!dom.certified())
        throw NotInDomainError("tv_mass: integrand not certified integrable on delta (" +
                               dom.certificate + ")");
    std::int64_t lim = std::min(a.joint_limit(f), a.joint_limit(g));
    double s = 0.0, comp = 0.0;
    for (std::int64_t k = 1; k <= lim; ++k) {
        Complex lam = a.eigenvalue(k);
        if (!delta(lam)) continue;
        double term = std::abs(func.eval(lam)) * std::abs(f.coeff(k)) * std::abs(g.coeff(k));
        double t = s + term;
        comp += (std::abs(s) >= std::abs(term)) ? (s - t) + term : (term - t) + s;
        s = t;
    }
    return s + comp;
}

}  // namespace gevrey
