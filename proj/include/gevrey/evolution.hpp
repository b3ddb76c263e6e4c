#pragma once

// Weak solutions y(t) = e^{tA} f of y' = Ay, represented exactly through the
// operational calculus: coefficients e^{t lambda_k} f_k. Strong derivatives
// are y^(n)(t) = A^n y(t); their norms drive the empirical Gevrey-order
// estimator (least-squares fit of log||y^(n)(t)|| against {1, n, n log n},
// the n log n regressor standing in for beta log(n!) by Stirling).

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gevrey/operator_calculus.hpp"

namespace gevrey {

namespace detail {

/// Admissibility of f for every t >= 0 at once: sup over t of the defining
/// series must be finite for each t. Decided per strand from the closed
/// forms; sampling a t-grid cannot certify the infinite intersection, so a
/// grid is only used for corroborating spot checks.
struct AdmissibilityRule {
    Decision decision = Decision::Undecided;
    std::string detail;
    double failing_t = 0.0;
};

inline AdmissibilityRule admissible_all_time(const DiagonalOperator& a, const StateVector& f) {
    AdmissibilityRule r;
    if (a.dimension() || f.is_finite_support()) {
        r.decision = Decision::Yes;
        r.detail = "finite index set";
        return r;
    }
    const ClosedFormCoeffs* cf = f.closed_form_part();
    auto strands = a.spectrum().strands();
    if (!cf || strands.empty()) {
        r.decision = Decision::Undecided;
        r.detail = "no closed form available for the tail";
        return r;
    }
    for (const auto& s : strands) {
        if (s.re_lead <= 0.0) continue;  // Re bounded above on this strand: harmless for all t
        // Re -> +inf with rate n^re_exp: the coefficient decay must win for every t
        if (cf->exp_coef > 0.0 && cf->exp_power > s.re_exp) continue;
        r.decision = Decision::No;
        if (cf->exp_coef > 0.0 && cf->exp_power == s.re_exp) {
            r.failing_t = 2.0 * cf->exp_coef / s.re_lead;
            std::ostringstream os;
            os << "coefficient decay exp(-" << cf->exp_coef << "*k^" << cf->exp_power
               << ") loses to exp(t*" << s.re_lead << "*k^" << s.re_exp << ") at t = "
               << r.failing_t;
            r.detail = os.str();
        } else {
            r.failing_t = 1.0;
            r.detail = "real parts grow to +infinity faster than the coefficient decay";
        }
        return r;
    }
    r.decision = Decision::Yes;
    r.detail = "real parts bounded above or dominated by coefficient decay for every t";
    return r;
}

}  // namespace detail

struct GrowthTable {
    struct Row {
        std::int64_t n = 0;
        double t = 0.0;
        double norm = 0.0;
        double tail_bound = 0.0;
    };
    std::vector<Row> rows;

    void write_csv(std::ostream& os) const;
};

struct OrderEstimate {
    double beta_hat = std::numeric_limits<double>::quiet_NaN();
    std::int64_t window_lo = 0;
    std::int64_t window_hi = 0;
    double regression_residual = std::numeric_limits<double>::quiet_NaN();
    bool divergent = false;
};

struct ExtensionResult {
    Decision in_domain = Decision::Undecided;
    std::optional<StateVector> value;
    std::string certificate;
};

class WeakSolution {
  public:
    const DiagonalOperator& op() const { return op_; }
    const StateVector& initial() const { return initial_; }
    const DomainVerdict& admissibility_certificate() const { return cert_; }

    /// y(t) = e^{tA} f, with the truncation tail propagated.
    StateVector evaluate(double t) const {
        if (t < 0.0) throw PreconditionError("evaluate: t must be >= 0");
        if (t == 0.0) return initial_;  // y(0) = f exactly
        return apply_function(BorelFunctionSpec::exponential(t), op_, initial_);
    }

    /// log ||A^n y(t)||; throws NotInDomainError when the membership is not
    /// certified (which itself signals y(t) is not n-times differentiable).
    double log_derivative_norm(double t, std::int64_t n, double* log_tail_sq = nullptr) const {
        if (!(t > 0.0)) throw PreconditionError("derivative_norm: t must be > 0");
        if (n < 0) throw PreconditionError("derivative_norm: n must be >= 0");
        BorelFunctionSpec f = BorelFunctionSpec::power(static_cast<int>(n));
        f.exp_z = Complex{t, 0.0};
        auto dom = in_domain(f, op_, initial_);
        if (!dom.certified())
            throw NotInDomainError("derivative_norm: membership " +
                                   std::string(to_string(dom.in_domain)) + " (" +
                                   dom.certificate + ")");
        std::int64_t lim = op_.joint_limit(initial_);
        detail::LogSumExp acc;
        for (std::int64_t k = 1; k <= lim; ++k)
            acc.add_log(detail::log_sq_term(f, op_, initial_, k));
        double tail_sq = 0.0;
        if (!op_.dimension() && !initial_.is_finite_support()) {
            const auto* cf = initial_.closed_form_part();
            for (const auto& s : op_.spectrum().strands()) {
                GrowthExpr e = detail::domain_series_envelope(s, f, *cf);
                e.valid_from = std::max(e.valid_from, op_.spectrum().analytic_from());
                tail_sq += tail_sum_upper(e, lim, [&](std::int64_t k) {
                    return detail::log_sq_term(f, op_, initial_, k);
                });
            }
        }
        if (log_tail_sq)
            *log_tail_sq = tail_sq > 0.0 ? std::log(tail_sq) : -kInf;
        return 0.5 * acc.log_total();
    }

    /// ||A^n y(t)|| with a rigorous truncation tail bound on the norm.
    std::pair<double, double> derivative_norm(double t, std::int64_t n) const {
        double log_tail_sq = -kInf;
        double ln = log_derivative_norm(t, n, &log_tail_sq);
        double tail = log_tail_sq == -kInf ? 0.0 : std::exp(0.5 * log_tail_sq);
        return {std::exp(ln), tail};
    }

    /// Least-squares Gevrey order over an integer window of derivative orders.
    OrderEstimate estimate_gevrey_order(double t, std::int64_t n_lo, std::int64_t n_hi) const {
        if (n_hi - n_lo < 4) throw WindowTooSmallError("estimate window needs n_hi - n_lo >= 4");
        if (n_lo < 1) throw PreconditionError("estimate window must start at n >= 1");
        OrderEstimate est;
        est.window_lo = n_lo;
        est.window_hi = n_hi;
        std::vector<double> xs, ys;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            double l;
            try {
                l = log_derivative_norm(t, n);
            } catch (const NotInDomainError&) {
                est.divergent = true;
                return est;
            }
            if (!std::isfinite(l)) {
                est.divergent = true;
                return est;
            }
            xs.push_back(static_cast<double>(n));
            ys.push_back(l);
        }
        // fit y = c0 + c1*n + c2*n*log n; c2 is the order estimate
        double m[3][4] = {};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double r[3] = {1.0, xs[i], xs[i] * std::log(xs[i])};
            for (int p = 0; p < 3; ++p) {
                for (int q = 0; q < 3; ++q) m[p][q] += r[p] * r[q];
                m[p][3] += r[p] * ys[i];
            }
        }
        for (int col = 0; col < 3; ++col) {  // Gaussian elimination, partial pivot
            int piv = col;
            for (int row = col + 1; row < 3; ++row)
                if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
            std::swap(m[col], m[piv]);
            for (int row = 0; row < 3; ++row) {
                if (row == col) continue;
                double f = m[row][col] / m[col][col];
                for (int q = col; q < 4; ++q) m[row][q] -= f * m[col][q];
            }
        }
        double c0 = m[0][3] / m[0][0], c1 = m[1][3] / m[1][1], c2 = m[2][3] / m[2][2];
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double fit = c0 + c1 * xs[i] + c2 * xs[i] * std::log(xs[i]);
            ss += (ys[i] - fit) * (ys[i] - fit);
        }
        est.beta_hat = c2;
        est.regression_residual = std::sqrt(ss / static_cast<double>(xs.size()));
        return est;
    }

    /// Membership of f in D(e^{zA}) for Re z > 0, with the continued value.
    ExtensionResult analytic_extension_check(Complex z) const {
        if (!(z.real() > 0.0))
            throw PreconditionError("analytic_extension_check: Re z must be > 0");
        ExtensionResult r;
        BorelFunctionSpec f = BorelFunctionSpec::exponential(z);
        auto dom = in_domain(f, op_, initial_);
        r.in_domain = dom.in_domain;
        r.certificate = dom.certificate;
        if (dom.certified()) r.value = apply_function(f, op_, initial_);
        return r;
    }

    GrowthTable growth_table(std::span<const std::int64_t> ns, std::span<const double> ts) const {
        GrowthTable g;
        for (double t : ts)
            for (std::int64_t n : ns) {
                auto [norm, tail] = derivative_norm(t, n);
                g.rows.push_back({n, t, norm, tail});
            }
        return g;
    }

    friend WeakSolution weak_solution(DiagonalOperator a, StateVector f,
                                      std::span<const double> t_probe);

  private:
    WeakSolution(DiagonalOperator a, StateVector f, DomainVerdict cert)
        : op_(std::move(a)), initial_(std::move(f)), cert_(std::move(cert)) {}

    DiagonalOperator op_;
    StateVector initial_;
    DomainVerdict cert_;
};

inline constexpr std::array<double, 3> kDefaultTimeProbe = {0.1, 1.0, 10.0};

/// Construct the weak solution y(t) = e^{tA} f. Fails (NotAdmissibleError)
/// unless f is certified to lie in the domain of e^{tA} for every t >= 0;
/// the t-grid adds numeric spot checks on top of the symbolic certificate.
inline WeakSolution weak_solution(DiagonalOperator a, StateVector f,
                                  std::span<const double> t_probe = kDefaultTimeProbe) {
    auto rule = detail::admissible_all_time(a, f);
    if (rule.decision == Decision::No) {
        std::ostringstream os;
        os << "initial vector not admissible: " << rule.detail;
        throw NotAdmissibleError(os.str());
    }
    if (rule.decision == Decision::Undecided)
        throw NotAdmissibleError("admissibility undecided: " + rule.detail);
    DomainVerdict cert;
    cert.in_domain = Decision::Yes;
    cert.method = (a.dimension() || f.is_finite_support()) ? DomainMethod::Finite
                                                           : DomainMethod::SymbolicTail;
    cert.certificate = "for all t >= 0: " + rule.detail;
    for (double t : t_probe) {
        if (t < 0.0) throw PreconditionError("t-grid values must be >= 0");
        auto spot = in_domain(BorelFunctionSpec::exponential(t), a, f);
        if (spot.in_domain == Decision::No) {
            std::ostringstream os;
            os << "numeric spot check failed at t = " << t << ": " << spot.certificate;
            throw NotAdmissibleError(os.str());
        }
        if (!spot.partial_sums.empty())
            cert.partial_sums.push_back(spot.partial_sums.back());
    }
    return WeakSolution(std::move(a), std::move(f), std::move(cert));
}

inline void GrowthTable::write_csv(std::ostream& os) const {
    os << "n,t,norm,tail_bound\n";
    for (const auto& r : rows) {
        os << r.n << ',';
        char buf[64];
        auto put = [&](double v) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
            os.write(buf, p - buf);
        };
        put(r.t);
        os << ',';
        put(r.norm);
        os << ',';
        put(r.tail_bound);
        os << '\n';
    }
}

}  // namespace gevrey
