#ifndef GRWHIT_LOG_COMPLEX_HPP
#define GRWHIT_LOG_COMPLEX_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace grwhit {

/// Wrap an angle into (-pi, pi].
inline double wrap_phase(double phi) noexcept
{
    constexpr double pi = std::numbers::pi;
    if (phi > -pi && phi <= pi)
        return phi;
    double r = std::remainder(phi, 2.0 * pi);
    if (r <= -pi)
        r += 2.0 * pi;
    return r;
}

/**
 * Complex number stored as (log|z|, arg z).
 *
 * Values of Psi and of gamma products routinely leave the double range
 * (e^{±|x|lambda/hbar} at moderate |x|), so everything is carried in
 * log-magnitude form and only converted back at the end. Zero is
 * represented by log_mag = -inf.
 */
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    constexpr LogComplex() = default;
    LogComplex(double lm, double ph) noexcept : log_mag(lm), phase(is_zero_mag(lm) ? 0.0 : wrap_phase(ph)) {}

    static LogComplex zero() noexcept { return {}; }
    static LogComplex one() noexcept { return {0.0, 0.0}; }

    /// From the complex logarithm w = log z (any branch).
    static LogComplex from_log(std::complex<double> w) noexcept { return {w.real(), w.imag()}; }

    static LogComplex from_complex(std::complex<double> z) noexcept
    {
        if (z == std::complex<double>(0.0, 0.0))
            return {};
        return {std::log(std::abs(z)), std::arg(z)};
    }

    static LogComplex from_real(double v) noexcept { return from_complex({v, 0.0}); }

    [[nodiscard]] bool is_zero() const noexcept { return is_zero_mag(log_mag); }

    /// Complex logarithm with the stored (principal) phase. -inf real part for zero.
    [[nodiscard]] std::complex<double> log() const noexcept { return {log_mag, phase}; }

    /// Ordinary complex value; overflows to inf beyond |log_mag| ~ 709.
    [[nodiscard]] std::complex<double> value() const noexcept
    {
        if (is_zero())
            return {0.0, 0.0};
        return std::polar(std::exp(log_mag), phase);
    }

    /// Value scaled by e^{-shift}; used when summing with a common rescaling.
    [[nodiscard]] std::complex<double> scaled_value(double shift) const noexcept
    {
        if (is_zero())
            return {0.0, 0.0};
        return std::polar(std::exp(log_mag - shift), phase);
    }

    /// True when value() is representable as a finite double pair.
    [[nodiscard]] bool representable() const noexcept { return is_zero() || std::abs(log_mag) < 700.0; }

    [[nodiscard]] LogComplex conj() const noexcept { return {log_mag, -phase}; }

    LogComplex& operator*=(const LogComplex& o) noexcept
    {
        if (is_zero() || o.is_zero())
            return *this = LogComplex{};
        log_mag += o.log_mag;
        phase = wrap_phase(phase + o.phase);
        return *this;
    }

    LogComplex& operator/=(const LogComplex& o) noexcept
    {
        if (is_zero())
            return *this;
        log_mag -= o.log_mag;
        phase = wrap_phase(phase - o.phase);
        return *this;
    }

    friend LogComplex operator*(LogComplex a, const LogComplex& b) noexcept { return a *= b; }
    friend LogComplex operator/(LogComplex a, const LogComplex& b) noexcept { return a /= b; }
    friend LogComplex operator-(const LogComplex& a) noexcept
    {
        if (a.is_zero())
            return a;
        return {a.log_mag, a.phase + std::numbers::pi};
    }

    friend LogComplex operator+(const LogComplex& a, const LogComplex& b) noexcept
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        const double shift = std::max(a.log_mag, b.log_mag);
        const auto s = a.scaled_value(shift) + b.scaled_value(shift);
        LogComplex r = from_complex(s);
        if (!r.is_zero())
            r.log_mag += shift;
        return r;
    }

    friend LogComplex operator-(const LogComplex& a, const LogComplex& b) noexcept { return a + (-b); }

    friend bool operator==(const LogComplex&, const LogComplex&) = default;

private:
    static constexpr bool is_zero_mag(double lm) noexcept
    {
        return lm == -std::numeric_limits<double>::infinity();
    }
};

/// Relative distance |a - b| / max(|a|, |b|), computed without leaving log space.
inline double relative_difference(const LogComplex& a, const LogComplex& b) noexcept
{
    if (a.is_zero() && b.is_zero())
        return 0.0;
    const double shift = std::max(a.log_mag, b.log_mag);
    const auto av = a.scaled_value(shift);
    const auto bv = b.scaled_value(shift);
    return std::abs(av - bv) / std::max(std::abs(av), std::abs(bv));
}

/**
 * Compensated (Neumaier) accumulator for complex terms given in log form.
 *
 * The running sum is kept relative to the largest log-magnitude seen so far
 * and rescaled when a larger term arrives, so the result does not depend on
 * any a-priori bound. Deterministic for a fixed insertion order.
 */
class LogSum {
public:
    void add(const LogComplex& t) noexcept
    {
        if (t.is_zero())
            return;
        if (t.log_mag > shift_) {
            if (std::isfinite(shift_)) {
                const double f = std::exp(shift_ - t.log_mag);
                re_ *= f;
                im_ *= f;
                cre_ *= f;
                cim_ *= f;
                abs_sum_ *= f;
            }
            shift_ = t.log_mag;
        }
        const auto v = t.scaled_value(shift_);
        kahan(v);
        abs_sum_ += std::abs(v);
    }

    void add(const LogSum& o) noexcept
    {
        if (!std::isfinite(o.shift_))
            return;
        if (o.shift_ > shift_) {
            if (std::isfinite(shift_)) {
                const double f = std::exp(shift_ - o.shift_);
                re_ *= f;
                im_ *= f;
                cre_ *= f;
                cim_ *= f;
                abs_sum_ *= f;
            }
            shift_ = o.shift_;
        }
        const double f = std::exp(o.shift_ - shift_);
        kahan({o.re_ * f, o.im_ * f});
        kahan({o.cre_ * f, o.cim_ * f});
        abs_sum_ += o.abs_sum_ * f;
    }

    [[nodiscard]] LogComplex result() const noexcept
    {
        if (!std::isfinite(shift_))
            return {};
        LogComplex r = LogComplex::from_complex({re_ + cre_, im_ + cim_});
        if (!r.is_zero())
            r.log_mag += shift_;
        return r;
    }

    /// log of the sum of magnitudes (roundoff scale); -inf when empty.
    [[nodiscard]] double log_abs_sum() const noexcept
    {
        if (!std::isfinite(shift_) || abs_sum_ == 0.0)
            return -std::numeric_limits<double>::infinity();
        return std::log(abs_sum_) + shift_;
    }

private:
    static void neumaier(double& sum, double& comp, double v) noexcept
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    void kahan(std::complex<double> v) noexcept
    {
        neumaier(re_, cre_, v.real());
        neumaier(im_, cim_, v.imag());
    }

    double shift_ = -std::numeric_limits<double>::infinity();
    double re_ = 0.0, im_ = 0.0;
    double cre_ = 0.0, cim_ = 0.0;
    double abs_sum_ = 0.0;
};

} // namespace grwhit

#endif // GRWHIT_LOG_COMPLEX_HPP
