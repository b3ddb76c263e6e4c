#pragma once

// Spectra of diagonal operators: finite point lists, one- or two-strand
// power-law families lambda_n = reSign*aR*n^pR + i*(sigma*aI*n^pI) + offset,
// and finite samples with an optionally declared power-law tail.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "gevrey/complex_plane.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/growth.hpp"

namespace gevrey {

enum class ImSignPattern { Plus, Minus, Alternating };

/// One sign-resolved branch of a power-law family:
///   Re(n) = re_lead * n^re_exp + re_off,   Im(n) = im_lead * n^im_exp + im_off
/// Normal form: lead != 0 implies exp > 0; a constant component is stored
/// entirely in the offset with lead = exp = 0.
struct Strand {
    double re_lead = 0.0, re_exp = 0.0, re_off = 0.0;
    double im_lead = 0.0, im_exp = 0.0, im_off = 0.0;

    double re_at(double n) const { return re_lead * std::pow(n, re_exp) + re_off; }
    double im_at(double n) const { return im_lead * std::pow(n, im_exp) + im_off; }
};

/// Two-sided envelope  |lambda(n)| = lead_coef * n^lead_exp * (1 + theta(n))
/// with |theta(n)| <= theta_coef * n^theta_exp for n >= valid_from.
/// Derived from the plane triangle inequality: the offset vector moves the
/// modulus by at most hypot(re_off, im_off).
struct ModulusModel {
    bool is_zero = false;
    double lead_coef = 0.0;
    double lead_exp = 0.0;
    double theta_coef = 0.0;
    double theta_exp = 0.0;
    std::int64_t valid_from = 1;
};

inline ModulusModel modulus_model(double u_lead, double u_exp, double u_off,
                                  double v_lead, double v_exp, double v_off) {
    ModulusModel m;
    const double au = std::abs(u_lead), av = std::abs(v_lead);
    const double off = std::hypot(u_off, v_off);
    if (au == 0.0 && av == 0.0) {
        m.lead_coef = off;
        m.lead_exp = 0.0;
        m.is_zero = (off == 0.0);
        return m;
    }
    if (au != 0.0 && av != 0.0 && u_exp == v_exp) {
        m.lead_coef = std::hypot(au, av);
        m.lead_exp = u_exp;
        m.theta_coef = off / m.lead_coef;
        m.theta_exp = -u_exp;
    } else {
        // one growth dominates (or the other component is constant)
        double big_l = au, big_e = u_exp, small_l = av, small_e = v_exp;
        if (av != 0.0 && (au == 0.0 || v_exp > u_exp)) {
            std::swap(big_l, small_l);
            std::swap(big_e, small_e);
        }
        m.lead_coef = big_l;
        m.lead_exp = big_e;
        // |P(n)| <= big_l n^e sqrt(1 + (small/big)^2 n^{2(es-e)}) <= big(1 + q n^{2(es-e)})
        double q = 0.0, qe = -big_e;
        if (small_l != 0.0) {
            q = (small_l * small_l) / (2.0 * big_l * big_l);
            qe = 2.0 * (small_e - big_e);
        }
        double offc = off / big_l;
        // combine the two decays at the slower (larger) exponent
        m.theta_exp = std::max(qe, -big_e);
        m.theta_coef = q + offc;
    }
    if (m.theta_coef > 0.0) {
        constexpr double kCap = 4.0e15;  // beyond this the model is unusable anyway
        double n1 = std::pow(2.0 * m.theta_coef, 1.0 / (-m.theta_exp));
        if (!(n1 < kCap)) n1 = kCap;
        m.valid_from = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n1)) + 1);
    }
    return m;
}

inline ModulusModel modulus_model(const Strand& s) {
    return modulus_model(s.re_lead, s.re_exp, s.re_off, s.im_lead, s.im_exp, s.im_off);
}

/// Monomials of |lambda(n)|^{1/gamma}: exact leading term plus an interval
/// remainder. Uses |(1+theta)^{1/gamma} - 1| <= 4|theta|/gamma for
/// |theta| <= 1/2, gamma >= 1.
inline GrowthExpr modulus_power_expr(const ModulusModel& m, double inv_gamma_exp) {
    GrowthExpr e;
    e.valid_from = m.valid_from;
    if (m.is_zero) return e;  // identically zero modulus contributes nothing here
    const double g = 1.0 / inv_gamma_exp;  // gamma
    const double lead = std::pow(m.lead_coef, inv_gamma_exp);
    e.add_exact(m.lead_exp * inv_gamma_exp, 0, lead);
    if (m.theta_coef > 0.0) {
        e.add_uncertain(m.lead_exp * inv_gamma_exp + m.theta_exp, 0,
                        4.0 * m.theta_coef * lead / g);
    }
    return e;
}

/// Monomials of log|lambda(n)|: exact (lead_exp * log n + log lead_coef) plus
/// |log(1+theta)| <= 2|theta| interval remainder.
inline GrowthExpr modulus_log_expr(const ModulusModel& m) {
    GrowthExpr e;
    e.valid_from = m.valid_from;
    if (m.is_zero) return e;
    e.add_exact(0.0, 1, m.lead_exp);
    e.add_exact(0.0, 0, std::log(m.lead_coef));
    if (m.theta_coef > 0.0) e.add_uncertain(m.theta_exp, 0, 2.0 * m.theta_coef);
    return e;
}

struct FiniteSpectrum {
    std::vector<Complex> points;
};

struct PowerLawSpectrum {
    int re_sign = 0;      // -1, 0, +1
    double re_coef = 0.0; // a_R >= 0
    double re_exp = 0.0;  // p_R >= 0
    double im_coef = 0.0; // a_I >= 0
    double im_exp = 0.0;  // p_I >= 0
    ImSignPattern im_sign = ImSignPattern::Plus;
    Complex offset{0.0, 0.0};

    double im_sigma(std::int64_t n) const {
        switch (im_sign) {
            case ImSignPattern::Plus: return 1.0;
            case ImSignPattern::Minus: return -1.0;
            default: return (n % 2 == 1) ? 1.0 : -1.0;
        }
    }

    Complex lambda(std::int64_t n) const {
        double x = static_cast<double>(n);
        double re = re_sign * re_coef * std::pow(x, re_exp) + offset.real();
        double im = im_sigma(n) * im_coef * std::pow(x, im_exp) + offset.imag();
        return {re, im};
    }

    bool re_grows() const { return re_sign != 0 && re_coef > 0.0 && re_exp > 0.0; }
    bool im_grows() const { return im_coef > 0.0 && im_exp > 0.0; }

    std::vector<Strand> strands() const {
        auto make = [&](double sigma) {
            Strand s;
            if (re_grows()) {
                s.re_lead = re_sign * re_coef;
                s.re_exp = re_exp;
                s.re_off = offset.real();
            } else {
                s.re_off = re_sign * re_coef * (re_exp == 0.0 && re_sign != 0 ? 1.0 : 0.0) + offset.real();
            }
            if (im_grows()) {
                s.im_lead = sigma * im_coef;
                s.im_exp = im_exp;
                s.im_off = offset.imag();
            } else {
                s.im_off = sigma * im_coef * (im_exp == 0.0 ? 1.0 : 0.0) + offset.imag();
            }
            return s;
        };
        if (im_sign == ImSignPattern::Alternating && im_coef > 0.0)
            return {make(1.0), make(-1.0)};
        return {make(im_sign == ImSignPattern::Minus ? -1.0 : 1.0)};
    }

    void validate() const {
        if (re_sign < -1 || re_sign > 1) throw InvalidSpecError("re_sign must be -1, 0, or 1");
        if (re_coef < 0.0 || im_coef < 0.0) throw InvalidSpecError("power-law coefficients must be >= 0");
        if (re_exp < 0.0 || im_exp < 0.0) throw InvalidSpecError("power-law exponents must be >= 0");
        if (re_coef == 0.0 && re_sign != 0)
            throw InvalidSpecError("re_coef = 0 requires re_sign = 0");
        if (re_coef > 0.0 && re_sign == 0)
            throw InvalidSpecError("re_coef > 0 requires re_sign = +1 or -1");
        if (!is_finite(offset)) throw InvalidSpecError("offset must be finite");
        // |lambda_n| must eventually grow strictly; exponent comparison
        if (!re_grows() && !im_grows())
            throw InvalidSpecError("power-law spectrum has no growing component");
    }
};

struct SampledSpectrum {
    std::vector<Complex> points;
    std::optional<PowerLawSpectrum> tail;  // declared behavior for n > points.size()
};

class SpectrumSpec {
  public:
    using Variant = std::variant<FiniteSpectrum, PowerLawSpectrum, SampledSpectrum>;

    SpectrumSpec() : v_(FiniteSpectrum{}) {}
    explicit SpectrumSpec(FiniteSpectrum f) : v_(std::move(f)) { validate(); }
    explicit SpectrumSpec(PowerLawSpectrum p) : v_(std::move(p)) { validate(); }
    explicit SpectrumSpec(SampledSpectrum s) : v_(std::move(s)) { validate(); }

    static SpectrumSpec finite(std::vector<Complex> pts) {
        return SpectrumSpec(FiniteSpectrum{std::move(pts)});
    }
    static SpectrumSpec power_law(PowerLawSpectrum p) { return SpectrumSpec(std::move(p)); }
    static SpectrumSpec sampled(std::vector<Complex> pts,
                                std::optional<PowerLawSpectrum> tail = {}) {
        return SpectrumSpec(SampledSpectrum{std::move(pts), std::move(tail)});
    }

    const Variant& variant() const { return v_; }
    bool is_finite() const { return std::holds_alternative<FiniteSpectrum>(v_); }
    bool is_power_law() const { return std::holds_alternative<PowerLawSpectrum>(v_); }
    bool is_sampled() const { return std::holds_alternative<SampledSpectrum>(v_); }

    const PowerLawSpectrum* power_law_part() const {
        if (auto* p = std::get_if<PowerLawSpectrum>(&v_)) return p;
        if (auto* s = std::get_if<SampledSpectrum>(&v_))
            return s->tail ? &*s->tail : nullptr;
        return nullptr;
    }

    /// Number of eigenvalues if the spectrum IS a finite set. A sample is not:
    /// it stands for an infinite spectrum known through finitely many points.
    std::optional<std::int64_t> dimension() const {
        if (auto* f = std::get_if<FiniteSpectrum>(&v_))
            return static_cast<std::int64_t>(f->points.size());
        return std::nullopt;
    }

    /// Largest index at which lambda(n) is evaluable (finite set or sample
    /// without a declared tail); empty for generative spectra.
    std::optional<std::int64_t> iteration_limit() const {
        if (auto* f = std::get_if<FiniteSpectrum>(&v_))
            return static_cast<std::int64_t>(f->points.size());
        if (auto* s = std::get_if<SampledSpectrum>(&v_))
            if (!s->tail) return static_cast<std::int64_t>(s->points.size());
        return std::nullopt;
    }

    /// Index from which power-law strand analysis applies (past any sample).
    std::int64_t analytic_from() const {
        if (auto* s = std::get_if<SampledSpectrum>(&v_))
            return static_cast<std::int64_t>(s->points.size()) + 1;
        return 1;
    }

    Complex lambda(std::int64_t n) const {
        if (n < 1) throw PreconditionError("eigenvalue index must be >= 1");
        if (auto* f = std::get_if<FiniteSpectrum>(&v_)) {
            if (n > static_cast<std::int64_t>(f->points.size()))
                throw PreconditionError("eigenvalue index beyond finite spectrum");
            return f->points[static_cast<std::size_t>(n - 1)];
        }
        if (auto* p = std::get_if<PowerLawSpectrum>(&v_)) return p->lambda(n);
        const auto& s = std::get<SampledSpectrum>(v_);
        if (n <= static_cast<std::int64_t>(s.points.size()))
            return s.points[static_cast<std::size_t>(n - 1)];
        if (s.tail) return s.tail->lambda(n);
        throw PreconditionError("eigenvalue index beyond sample with no declared tail");
    }

    /// Strands of the asymptotic family, when one is declared.
    std::vector<Strand> strands() const {
        if (auto* p = power_law_part()) return p->strands();
        return {};
    }

  private:
    void validate() const {
        if (auto* f = std::get_if<FiniteSpectrum>(&v_)) {
            for (auto z : f->points)
                if (!gevrey::is_finite(z)) throw InvalidSpecError("finite spectrum has non-finite point");
            return;
        }
        if (auto* p = std::get_if<PowerLawSpectrum>(&v_)) {
            p->validate();
            return;
        }
        const auto& s = std::get<SampledSpectrum>(v_);
        for (auto z : s.points)
            if (!gevrey::is_finite(z)) throw InvalidSpecError("sampled spectrum has non-finite point");
        for (std::size_t i = 0; i < s.points.size(); ++i)
            for (std::size_t j = i + 1; j < s.points.size(); ++j)
                if (s.points[i] == s.points[j])
                    throw InvalidSpecError("sampled spectrum points must be pairwise distinct");
        if (s.tail) s.tail->validate();
    }

    Variant v_;
};

}  // namespace gevrey
