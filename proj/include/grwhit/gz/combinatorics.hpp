#ifndef GRWHIT_GZ_COMBINATORICS_HPP
#define GRWHIT_GZ_COMBINATORICS_HPP

/**
 * Partial-fraction identities over distinct points gamma_1..gamma_n:
 *
 *   sum_i gamma_i^p / prod_{k != i} (gamma_i - gamma_k) = h_{p-n+1}(gamma)
 *
 * with h_d the complete homogeneous symmetric polynomial (h_0 = 1, h_d = 0 for d < 0),
 * so the sum is delta_{p,n-1} for p < n; and
 *
 *   sum_i prod_{k != i} (c - gamma_k) / (gamma_i - gamma_k) = 1   for every c.
 *
 * The second is Lagrange interpolation of the constant 1 evaluated at c.
 * In elementary/complete notation (sigma_k, chi_k) the first reads
 * chi_{p+1-n}(gamma) Theta(p+1-n).
 */

#include "../errors.hpp"

#include <complex>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace grwhit::gz {

using cplx = std::complex<double>;

namespace detail {

inline void check_distinct(std::span<const cplx> g, const char* who)
{
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t k = i + 1; k < g.size(); ++k)
            if (std::abs(g[i] - g[k]) <= 1e-14 * (1.0 + std::abs(g[i])))
                throw config_error(std::string(who) + ": coincident points gamma_" + std::to_string(i + 1) +
                                   " and gamma_" + std::to_string(k + 1));
}

inline cplx vandermonde_at(std::span<const cplx> g, std::size_t i)
{
    cplx d{1.0, 0.0};
    for (std::size_t k = 0; k < g.size(); ++k)
        if (k != i)
            d *= g[i] - g[k];
    return d;
}

} // namespace detail

/// h_d(gamma) by the recurrence h_d(x_1..x_n) = h_d(x_1..x_{n-1}) + x_n h_{d-1}(x_1..x_n).
inline cplx complete_homogeneous(std::span<const cplx> g, int d)
{
    if (d < 0)
        return {0.0, 0.0};
    std::vector<cplx> h(static_cast<std::size_t>(d) + 1, cplx{0.0, 0.0});
    h[0] = 1.0;
    for (const cplx& x : g)
        for (int k = 1; k <= d; ++k)
            h[static_cast<std::size_t>(k)] += x * h[static_cast<std::size_t>(k - 1)];
    return h[static_cast<std::size_t>(d)];
}

inline cplx combin1(std::span<const cplx> g, int p)
{
    if (p < 0)
        throw config_error("combin1: power must be >= 0");
    detail::check_distinct(g, "combin1");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i)
        s += std::pow(g[i], p) / detail::vandermonde_at(g, i);
    return s;
}

/// Closed form of combin1.
inline cplx combin1_expected(std::span<const cplx> g, int p)
{
    return complete_homogeneous(g, p - static_cast<int>(g.size()) + 1);
}

inline cplx combin2(std::span<const cplx> g, cplx c)
{
    detail::check_distinct(g, "combin2");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        cplx num{1.0, 0.0};
        for (std::size_t k = 0; k < g.size(); ++k)
            if (k != i)
                num *= c - g[k];
        s += num / detail::vandermonde_at(g, i);
    }
    return s;
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_COMBINATORICS_HPP
