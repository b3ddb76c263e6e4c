#pragma once

// The enumerated Borel function family
//     F(lambda) = lambda^degree * exp(z*lambda) * exp(s*|lambda|^(1/beta))
// closed under products (when the |lambda|-exponent orders agree). Structure,
// not closures: the symbolic tail analysis needs the factors.

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>

#include "gevrey/complex_plane.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/growth.hpp"

namespace gevrey {

struct BorelFunctionSpec {
    int degree = 0;        // lambda^degree, degree >= 0
    Complex exp_z{0, 0};   // exp(z*lambda)
    double abs_coef = 0.0; // s >= 0 in exp(s*|lambda|^(1/beta))
    double abs_beta = 1.0; // beta >= 1; meaningful only when abs_coef != 0

    static BorelFunctionSpec one() { return {}; }
    static BorelFunctionSpec identity() { return {.degree = 1}; }
    static BorelFunctionSpec power(int d) {
        if (d < 0) throw InvalidSpecError("polynomial degree must be >= 0");
        return {.degree = d};
    }
    static BorelFunctionSpec exponential(Complex z) { return {.exp_z = z}; }
    static BorelFunctionSpec exponential(double t) { return {.exp_z = Complex{t, 0.0}}; }
    /// exp(s*|lambda|^(1/beta))
    static BorelFunctionSpec gevrey_weight(double s, double beta) {
        if (!(s >= 0.0)) throw InvalidSpecError("gevrey weight s must be >= 0");
        if (!(beta >= 1.0)) throw InvalidSpecError("gevrey weight beta must be >= 1");
        return {.abs_coef = s, .abs_beta = beta};
    }

    bool has_abs_factor() const { return abs_coef != 0.0; }

    /// Product of two specs; empty when their |lambda|-orders conflict.
    std::optional<BorelFunctionSpec> times(const BorelFunctionSpec& o) const {
        BorelFunctionSpec r = *this;
        r.degree += o.degree;
        r.exp_z += o.exp_z;
        if (has_abs_factor() && o.has_abs_factor()) {
            if (abs_beta != o.abs_beta) return std::nullopt;
            r.abs_coef += o.abs_coef;
        } else if (o.has_abs_factor()) {
            r.abs_coef = o.abs_coef;
            r.abs_beta = o.abs_beta;
        }
        return r;
    }

    Complex eval(Complex lambda) const {
        Complex v{1.0, 0.0};
        for (int i = 0; i < degree; ++i) v *= lambda;
        if (exp_z != Complex{0.0, 0.0}) v *= std::exp(exp_z * lambda);
        if (abs_coef != 0.0) v *= std::exp(abs_coef * std::pow(std::abs(lambda), 1.0 / abs_beta));
        return v;
    }

    /// log|F(lambda)|; -inf at a zero of F.
    double log_abs(Complex lambda) const {
        double a = std::abs(lambda);
        double s = 0.0;
        if (degree > 0) {
            if (a == 0.0) return -kInf;
            s += degree * std::log(a);
        }
        s += exp_z.real() * lambda.real() - exp_z.imag() * lambda.imag();
        if (abs_coef != 0.0) s += abs_coef * std::pow(a, 1.0 / abs_beta);
        return s;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "lambda^" << degree;
        if (exp_z != Complex{0.0, 0.0})
            os << " * exp((" << exp_z.real() << (exp_z.imag() < 0 ? "" : "+") << exp_z.imag()
               << "i)*lambda)";
        if (abs_coef != 0.0)
            os << " * exp(" << abs_coef << "*|lambda|^(1/" << abs_beta << "))";
        return os.str();
    }
};

}  // namespace gevrey
