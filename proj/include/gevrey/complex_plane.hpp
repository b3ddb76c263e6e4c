#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace gevrey {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Principal argument in (-pi, pi], with arg 0 := 0.
inline double principal_arg(Complex z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
    double a = std::atan2(z.imag(), z.real());
    // atan2 returns values in [-pi, pi]; fold -pi onto +pi.
    if (a == -std::numbers::pi) a = std::numbers::pi;
    return a;
}

}  // namespace gevrey
