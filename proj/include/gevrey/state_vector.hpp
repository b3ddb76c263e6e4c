#pragma once

// Elements of the sequence space: explicit finite coefficient lists, or the
// closed-form family  c_k = amplitude * k^(-power) * exp(-exp_coef * k^exp_power)
// whose l2 tail mass beyond the truncation index is bounded symbolically at
// construction (never estimated from samples).

#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "gevrey/complex_plane.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/growth.hpp"

namespace gevrey {

inline constexpr std::int64_t kDefaultTruncation = 100000;

struct FiniteCoeffs {
    std::vector<Complex> values;  // c_1 .. c_m
};

struct ClosedFormCoeffs {
    double amplitude = 1.0;  // > 0
    double power = 0.0;      // k^(-power), power >= 0
    double exp_coef = 0.0;   // exp(-exp_coef * k^exp_power), exp_coef >= 0
    double exp_power = 1.0;  // > 0 when exp_coef > 0

    double log_abs(std::int64_t k) const {
        double x = static_cast<double>(k);
        return std::log(amplitude) - power * std::log(x) - exp_coef * std::pow(x, exp_power);
    }
    Complex value(std::int64_t k) const { return {std::exp(log_abs(k)), 0.0}; }

    /// Monomials of log|c_k|.
    GrowthExpr log_expr() const {
        GrowthExpr e;
        e.add_exact(0.0, 0, std::log(amplitude));
        if (power != 0.0) e.add_exact(0.0, 1, -power);
        if (exp_coef != 0.0) e.add_exact(exp_power, 0, -exp_coef);
        return e;
    }

    void validate() const {
        if (!(amplitude > 0.0)) throw InvalidSpecError("coefficient amplitude must be > 0");
        if (power < 0.0) throw InvalidSpecError("coefficient power must be >= 0");
        if (exp_coef < 0.0) throw InvalidSpecError("coefficient exp_coef must be >= 0");
        if (exp_coef > 0.0 && !(exp_power > 0.0))
            throw InvalidSpecError("coefficient exp_power must be > 0 when exp_coef > 0");
    }
};

class StateVector {
  public:
    using Variant = std::variant<FiniteCoeffs, ClosedFormCoeffs>;

    /// Zero vector (empty finite support).
    StateVector() = default;

    static StateVector finite(std::vector<Complex> values) {
        StateVector v;
        v.coeffs_ = FiniteCoeffs{std::move(values)};
        v.truncation_n_ = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::get<FiniteCoeffs>(v.coeffs_).values.size()));
        v.tail_bound_l2_ = 0.0;
        return v;
    }

    /// Finite vector carrying an externally certified tail bound (used when an
    /// operation truncates an infinite family).
    static StateVector finite_with_tail(std::vector<Complex> values, std::int64_t truncation,
                                        double tail_bound_l2) {
        StateVector v;
        v.coeffs_ = FiniteCoeffs{std::move(values)};
        v.truncation_n_ = truncation;
        v.tail_bound_l2_ = tail_bound_l2;
        return v;
    }

    static StateVector closed_form(ClosedFormCoeffs c, std::int64_t truncation = kDefaultTruncation) {
        c.validate();
        if (truncation < 1) throw InvalidSpecError("truncation must be >= 1");
        StateVector v;
        v.coeffs_ = c;
        v.truncation_n_ = truncation;
        GrowthExpr sq = c.log_expr();
        sq.scale(2.0);
        if (decide_series(sq).verdict != SeriesVerdict::Converges)
            throw InvalidSpecError("closed-form coefficients are not square-summable");
        double t2 = tail_sum_upper(sq, truncation,
                                   [&](std::int64_t k) { return 2.0 * c.log_abs(k); });
        v.tail_bound_l2_ = std::sqrt(t2);
        return v;
    }

    /// k-th standard basis vector.
    static StateVector basis(std::int64_t k) {
        if (k < 1) throw InvalidSpecError("basis index must be >= 1");
        std::vector<Complex> vals(static_cast<std::size_t>(k), Complex{0.0, 0.0});
        vals.back() = Complex{1.0, 0.0};
        return finite(std::move(vals));
    }

    const Variant& coeffs() const { return coeffs_; }
    bool is_finite_support() const { return std::holds_alternative<FiniteCoeffs>(coeffs_); }
    const ClosedFormCoeffs* closed_form_part() const {
        return std::get_if<ClosedFormCoeffs>(&coeffs_);
    }

    std::int64_t truncation_n() const { return truncation_n_; }
    double tail_bound_l2() const { return tail_bound_l2_; }

    /// Coefficient c_k (1-based). Defined by the closed-form rule for every k;
    /// zero beyond the stored list for finite vectors.
    Complex coeff(std::int64_t k) const {
        if (k < 1) throw PreconditionError("coefficient index must be >= 1");
        if (auto* f = std::get_if<FiniteCoeffs>(&coeffs_)) {
            if (k > static_cast<std::int64_t>(f->values.size())) return {0.0, 0.0};
            return f->values[static_cast<std::size_t>(k - 1)];
        }
        return std::get<ClosedFormCoeffs>(coeffs_).value(k);
    }

    double log_abs_coeff(std::int64_t k) const {
        if (auto* f = std::get_if<FiniteCoeffs>(&coeffs_)) {
            if (k > static_cast<std::int64_t>(f->values.size())) return -kInf;
            double a = std::abs(f->values[static_cast<std::size_t>(k - 1)]);
            return a == 0.0 ? -kInf : std::log(a);
        }
        return std::get<ClosedFormCoeffs>(coeffs_).log_abs(k);
    }

    /// Largest index that carries an explicit coefficient.
    std::int64_t support_limit() const {
        if (auto* f = std::get_if<FiniteCoeffs>(&coeffs_))
            return static_cast<std::int64_t>(f->values.size());
        return truncation_n_;
    }

    StateVector with_truncation(std::int64_t n) const {
        if (auto* c = std::get_if<ClosedFormCoeffs>(&coeffs_)) return closed_form(*c, n);
        return *this;  // finite support: truncation is immaterial
    }

    double norm_truncated() const {
        double s = 0.0, comp = 0.0;
        for (std::int64_t k = 1; k <= support_limit(); ++k) {
            double term = std::norm(coeff(k));
            double t = s + term;  // Neumaier compensation
            comp += (std::abs(s) >= std::abs(term)) ? (s - t) + term : (term - t) + s;
            s = t;
        }
        return std::sqrt(s + comp);
    }
    double norm_upper() const {
        double t = norm_truncated();
        return std::sqrt(t * t + tail_bound_l2_ * tail_bound_l2_);
    }

  private:
    Variant coeffs_{FiniteCoeffs{}};
    std::int64_t truncation_n_ = 1;
    double tail_bound_l2_ = 0.0;
};

}  // namespace gevrey
