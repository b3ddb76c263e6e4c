#pragma once

// Asymptotic analysis of positive series sum_n exp(V(n)).
//
// V(n) is kept as a finite sum of monomials  c * n^e * (log n)^l  with
// l in {0,1}. Coefficients are intervals [lo,hi]; a term is exact when
// lo == hi. Interval terms arise from sandwiching |lambda_n| between
// triangle-inequality envelopes; exact terms come straight from the
// closed forms of the spectrum and coefficient families.
//
// Two consumers:
//   decide_series  -- converge / diverge / undecided, with a certificate
//   tail_sum_upper -- a numeric upper bound on sum_{n > N} exp(V(n))
//
// Every inequality used by tail_sum_upper overestimates; the bound is an
// honest majorant of the true tail (up to ordinary floating-point noise).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gevrey/errors.hpp"

namespace gevrey {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LogMonomial {
    double n_exp = 0.0;
    int log_pow = 0;  // 0 or 1
    double lo = 0.0;
    double hi = 0.0;

    bool exact() const { return lo == hi; }
};

/// V(n) = sum of monomials, trusted for n >= valid_from.
struct GrowthExpr {
    std::vector<LogMonomial> terms;
    std::int64_t valid_from = 1;

    void add(double n_exp, int log_pow, double lo, double hi) {
        terms.push_back({n_exp, log_pow, lo, hi});
    }
    void add_exact(double n_exp, int log_pow, double c) { add(n_exp, log_pow, c, c); }
    void add_uncertain(double n_exp, int log_pow, double magnitude) {
        add(n_exp, log_pow, -magnitude, magnitude);
    }

    GrowthExpr& operator+=(const GrowthExpr& o) {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        valid_from = std::max(valid_from, o.valid_from);
        return *this;
    }

    /// Multiply by an exact scalar.
    void scale(double c) {
        for (auto& t : terms) {
            double a = t.lo * c, b = t.hi * c;
            t.lo = std::min(a, b);
            t.hi = std::max(a, b);
        }
    }

    /// Combine equal (n_exp, log_pow) keys, drop exact zeros, sort by
    /// descending (n_exp, log_pow).
    void normalize() {
        std::sort(terms.begin(), terms.end(), [](const LogMonomial& a, const LogMonomial& b) {
            if (a.n_exp != b.n_exp) return a.n_exp > b.n_exp;
            return a.log_pow > b.log_pow;
        });
        std::vector<LogMonomial> out;
        for (const auto& t : terms) {
            if (!out.empty() && out.back().n_exp == t.n_exp && out.back().log_pow == t.log_pow) {
                out.back().lo += t.lo;
                out.back().hi += t.hi;
            } else {
                out.push_back(t);
            }
        }
        std::erase_if(out, [](const LogMonomial& t) { return t.lo == 0.0 && t.hi == 0.0; });
        terms = std::move(out);
    }

    double upper_at(std::int64_t n) const { return eval(n, /*upper=*/true); }
    double lower_at(std::int64_t n) const { return eval(n, /*upper=*/false); }

  private:
    double eval(std::int64_t n, bool upper) const {
        double x = static_cast<double>(n);
        double ln = std::log(x);
        double s = 0.0;
        for (const auto& t : terms) {
            double base = std::pow(x, t.n_exp) * (t.log_pow ? ln : 1.0);
            // base >= 0 for n >= 1
            s += (upper ? t.hi : t.lo) * base;
        }
        return s;
    }
};

enum class SeriesVerdict { Converges, Diverges, Undecided };

inline const char* to_string(SeriesVerdict v) {
    switch (v) {
        case SeriesVerdict::Converges: return "converges";
        case SeriesVerdict::Diverges: return "diverges";
        default: return "undecided";
    }
}

struct SeriesDecision {
    SeriesVerdict verdict = SeriesVerdict::Undecided;
    std::string why;
};

/// Decide sum exp(V(n)) over any unbounded index set of integers n >= valid_from.
///
/// Scans term keys in decreasing growth order. The first key whose interval
/// coefficient has a definite sign settles the verdict; an interval that
/// straddles zero (or the -1 threshold for the pure log key) is reported as
/// undecided rather than guessed.
inline SeriesDecision decide_series(GrowthExpr e) {
    e.normalize();
    std::ostringstream why;
    for (const auto& t : e.terms) {
        const bool growing = t.n_exp > 0.0 || (t.n_exp == 0.0 && t.log_pow == 1);
        if (!growing) break;  // remaining terms are bounded
        if (t.n_exp > 0.0) {
            if (t.lo > 0.0) {
                why << "term " << t.lo << "*n^" << t.n_exp << " grows: terms unbounded";
                return {SeriesVerdict::Diverges, why.str()};
            }
            if (t.hi < 0.0) {
                why << "leading decay " << t.hi << "*n^" << t.n_exp;
                return {SeriesVerdict::Converges, why.str()};
            }
            return {SeriesVerdict::Undecided, "sign of leading growth not determined"};
        }
        // pure log key: terms behave like n^c up to bounded factors
        if (t.hi < -1.0) {
            why << "power tail n^" << t.hi << " summable";
            return {SeriesVerdict::Converges, why.str()};
        }
        if (t.lo >= -1.0) {
            why << "power tail n^" << t.lo << " not summable";
            return {SeriesVerdict::Diverges, why.str()};
        }
        return {SeriesVerdict::Undecided, "power-tail exponent interval straddles -1"};
    }
    return {SeriesVerdict::Diverges, "terms bounded away from zero"};
}

namespace detail {

/// Streaming log-sum-exp accumulator.
class LogSumExp {
  public:
    void add_log(double lt) {
        if (lt == -kInf) return;
        if (lt > m_) {
            acc_ = acc_ * std::exp(m_ - lt) + 1.0;
            m_ = lt;
        } else {
            acc_ += std::exp(lt - m_);
        }
    }
    double log_total() const {
        if (acc_ == 0.0) return -kInf;
        return m_ + std::log(acc_);
    }

  private:
    double m_ = -kInf;
    double acc_ = 0.0;
};

inline double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace detail

/// Upper bound on sum_{n > from} exp(V(n)), or +inf when no bound can be
/// certified. `exact_log_term`, when given, evaluates the true log term and
/// is used on the explicit head region (it is also the only way to cover
/// indices below expr.valid_from).
///
/// Shape of the bound: with upper envelope V(n) <= -c n^e + b log n + K,
/// sub-leading positive powers are absorbed into -(c/2) n^e beyond their
/// crossover points, the head is summed explicitly, and the remainder is
/// dominated by an incomplete-gamma integral
///     int_Z^inf x^b exp(-g x^e) dx = Gamma(a, gZ^e) / (e g^a),  a=(b+1)/e,
/// using Gamma(a,z) <= 2 z^(a-1) e^(-z) for z >= max(2a, 2) (a >= 1) and
/// Gamma(a,z) <= z^(a-1) e^(-z) for a <= 1.
inline double tail_sum_upper(const GrowthExpr& expr0, std::int64_t from,
                             const std::function<double(std::int64_t)>& exact_log_term = nullptr) {
    // every inequality below overestimates in exact arithmetic; the final
    // inflation absorbs accumulated floating-point rounding
    constexpr double kFloatSlack = 1.0 + 1e-9;
    if (from < 1) return kInf;
    GrowthExpr e = expr0;
    e.normalize();
    if (decide_series(e).verdict != SeriesVerdict::Converges) return kInf;

    struct Pow {
        double c, e;
    };
    double log_coef = 0.0;  // coefficient of log n
    double K = 0.0;         // constant offset
    std::vector<Pow> pos;   // positive-coefficient power terms (upper envelope)
    double c_star = 0.0, e_star = 0.0;
    for (const auto& t : e.terms) {
        if (t.log_pow == 1) {
            if (t.n_exp != 0.0) return kInf;  // n^e log n shapes are never produced
            log_coef += t.hi;
            continue;
        }
        if (t.n_exp == 0.0) {
            K += t.hi;
            continue;
        }
        if (t.n_exp > e_star && t.hi < 0.0) {
            // candidate leading decay; previous candidate becomes droppable
            c_star = -t.hi;
            e_star = t.n_exp;
        } else if (t.hi > 0.0) {
            pos.push_back({t.hi, t.n_exp});
        }
        // negative sub-leading terms are dropped (upper bound)
    }

    const double kMaxExplicit = 4.0e6;
    detail::LogSumExp head;

    auto head_log_term = [&](std::int64_t n) -> double {
        if (exact_log_term) return exact_log_term(n);
        if (n < e.valid_from) return kInf;  // cannot evaluate -> poisons the bound
        return e.upper_at(n);
    };

    if (e_star > 0.0) {
        // absorb sub-leading positive powers into -(c/2) n^{e*}; keep the
        // full decay rate when there is nothing to absorb
        double n_cross = 1.0;
        std::size_t m = 0;
        for (const auto& p : pos)
            if (p.e > 0.0) ++m;
        for (const auto& p : pos) {
            if (p.e >= e_star) return kInf;  // cannot happen after a Converges verdict
            if (p.e <= 0.0) continue;        // handled below, after N* is fixed
            double x = std::pow(2.0 * static_cast<double>(m) * p.c / c_star,
                                1.0 / (e_star - p.e));
            n_cross = std::max(n_cross, x);
        }
        const double g = (m > 0) ? c_star / 2.0 : c_star;
        const double b = log_coef;
        const double a = (b + 1.0) / e_star;
        // integrand x^b exp(-g x^e) decreasing for x >= peak
        double n_peak = (b > 0.0) ? std::pow(b / (g * e_star), 1.0 / e_star) : 1.0;
        double zmin = std::max(2.0, 2.0 * std::abs(a));
        double n_z = std::pow(zmin / g, 1.0 / e_star);
        double n_star_d = std::max({static_cast<double>(from), n_cross, n_peak, n_z,
                                    static_cast<double>(e.valid_from)});
        if (!(n_star_d < kMaxExplicit + static_cast<double>(from))) return kInf;
        std::int64_t n_star = static_cast<std::int64_t>(std::ceil(n_star_d));

        for (std::int64_t n = from + 1; n <= n_star; ++n) {
            double lt = head_log_term(n);
            if (lt == kInf) return kInf;
            head.add_log(lt);
        }
        // decaying positive powers contribute at most their value at N*+1
        double Kc = K;
        for (const auto& p : pos)
            if (p.e <= 0.0) Kc += p.c * std::pow(static_cast<double>(n_star + 1), p.e);

        double z = g * std::pow(static_cast<double>(n_star), e_star);
        double log_gamma_bound = (a - 1.0) * std::log(z) - z + (a > 1.0 ? std::log(2.0) : 0.0);
        double log_tail = Kc - std::log(e_star) - a * std::log(g) + log_gamma_bound;
        return kFloatSlack * std::exp(detail::log_add(head.log_total(), log_tail));
    }

    // Pure power tail: V(n) <= delta log n + K with delta < -1.
    const double delta = log_coef;
    double Kc = K;
    // Walk the head until the envelope itself is trusted, then integrate.
    std::int64_t start = std::max(from, e.valid_from - 1);
    if (start > from) {
        if (static_cast<double>(start - from) > kMaxExplicit) return kInf;
        for (std::int64_t n = from + 1; n <= start; ++n) {
            double lt = head_log_term(n);
            if (lt == kInf) return kInf;
            head.add_log(lt);
        }
    }
    for (const auto& p : pos)
        Kc += p.c * std::pow(static_cast<double>(start + 1), p.e);  // p.e < 0 here
    double log_tail = Kc + (delta + 1.0) * std::log(static_cast<double>(start)) - std::log(-delta - 1.0);
    return kFloatSlack * std::exp(detail::log_add(head.log_total(), log_tail));
}

}  // namespace gevrey
