#ifndef GRWHIT_SPECIAL_FUNCTIONS_HPP
#define GRWHIT_SPECIAL_FUNCTIONS_HPP

#include "errors.hpp"
#include "log_complex.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

namespace grwhit {

using cplx = std::complex<double>;

/// Pole detection tolerance, in units of the gamma argument (i.e. of hbar for Gamma_1).
inline constexpr double pole_tolerance = 1e-12;

/// Planck-like deformation parameter; only hbar > 0 is accepted.
class HbarParam {
public:
    explicit HbarParam(double hbar = 1.0) : value_(hbar)
    {
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw config_error("hbar must be a finite real > 0 (got " + std::to_string(hbar) + ")");
    }

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] double log() const noexcept { return std::log(value_); }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

namespace detail {

// Godfrey's coefficients for g = 607/128, 15 terms; ~1e-15 relative in Re z >= 1/2.
inline constexpr double lanczos_g = 607.0 / 128.0;
inline constexpr std::array<double, 15> lanczos_coef = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
};

inline const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);

/// Nearest nonpositive integer n with |z - n| <= tol, or 1 if none.
inline long nearby_pole(cplx z, double tol) noexcept
{
    if (z.real() > 0.5 || std::abs(z.imag()) > tol)
        return 1;
    const double n = std::round(z.real());
    if (n > 0.0 || std::abs(z - cplx(n, 0.0)) > tol)
        return 1;
    return static_cast<long>(n);
}

/// log Gamma(z) for Re z >= 1/2 (Lanczos).
inline cplx log_gamma_right(cplx z) noexcept
{
    z -= 1.0;
    cplx series = lanczos_coef[0];
    for (std::size_t k = 1; k < lanczos_coef.size(); ++k)
        series += lanczos_coef[k] / (z + static_cast<double>(k));
    const cplx t = z + lanczos_g + 0.5;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

/// log sin(pi z) modulo 2 pi i, stable for large |Im z|.
inline cplx log_sin_pi(cplx z) noexcept
{
    constexpr double pi = std::numbers::pi;
    // Reduce the real part to [-1/2, 1/2]; sin(pi (z + n)) = (-1)^n sin(pi z).
    const double n = std::round(z.real());
    const cplx r{z.real() - n, z.imag()};
    const double sign_phase = (static_cast<long long>(n) % 2 != 0) ? pi : 0.0;
    const double y = r.imag();
    cplx out;
    if (std::abs(y) < 1.0) {
        out = std::log(std::sin(pi * r));
    } else if (y > 0.0) {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i), |e^{2iw}| = e^{-2 pi y} < 1
        const cplx w = pi * r;
        const cplx i{0.0, 1.0};
        out = -i * w + std::log((std::exp(2.0 * i * w) - 1.0) / (2.0 * i));
    } else {
        out = std::conj(log_sin_pi(std::conj(r)));
    }
    return out + cplx(0.0, sign_phase);
}

/// log Gamma(z) without the pole check.
inline cplx log_gamma_right_or_reflect(cplx z) noexcept
{
    if (z.real() >= 0.5)
        return log_gamma_right(z);
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

inline std::string format_complex(cplx z)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
    return os.str();
}

} // namespace detail

/**
 * Complex log-gamma, log Gamma(z), returned as the complex logarithm
 * (real part log|Gamma|, imaginary part an argument of Gamma, not wrapped).
 *
 * Throws pole_error when z lies within 1e-12 of 0, -1, -2, ...
 */
inline cplx log_gamma_complex(cplx z)
{
    if (const long n = detail::nearby_pole(z, pole_tolerance); n <= 0)
        throw pole_error("log_gamma: argument " + detail::format_complex(z) + " is at the pole " +
                         std::to_string(n));
    return detail::log_gamma_right_or_reflect(z);
}

/// log Gamma(z) as a LogComplex (phase wrapped to (-pi, pi]).
inline LogComplex log_gamma(cplx z) { return LogComplex::from_log(log_gamma_complex(z)); }

/// Gamma_1(z|hbar) = hbar^{z/hbar} Gamma(z/hbar), in log form.
inline LogComplex gamma1(cplx z, HbarParam hbar)
{
    const cplx s = z / hbar.value();
    if (const long n = detail::nearby_pole(s, pole_tolerance); n <= 0)
        throw pole_error("gamma1: argument " + detail::format_complex(z) + " is at the pole " +
                         std::to_string(n) + "*hbar (hbar = " + std::to_string(hbar.value()) + ")");
    return LogComplex::from_log(s * hbar.log() + detail::log_gamma_right_or_reflect(s));
}

/// 1 / Gamma_1(z|hbar) in log form; exactly zero at z = -n hbar (n = 0, 1, ...).
inline LogComplex recip_gamma1_log(cplx z, HbarParam hbar)
{
    const cplx s = z / hbar.value();
    if (detail::nearby_pole(s, pole_tolerance) <= 0)
        return LogComplex::zero();
    return LogComplex::from_log(-(s * hbar.log() + detail::log_gamma_right_or_reflect(s)));
}

/// 1 / Gamma_1(z|hbar); an entire function, exactly 0 on z = -n hbar.
inline cplx recip_gamma1(cplx z, HbarParam hbar) { return recip_gamma1_log(z, hbar).value(); }

} // namespace grwhit

#endif // GRWHIT_SPECIAL_FUNCTIONS_HPP
