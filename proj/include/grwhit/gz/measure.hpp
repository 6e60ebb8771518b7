#ifndef GRWHIT_GZ_MEASURE_HPP
#define GRWHIT_GZ_MEASURE_HPP

#include "../log_complex.hpp"
#include "../special_functions.hpp"
#include "difference_operator.hpp"

namespace grwhit::gz {

/**
 * GZ measure on rows 2..N-1:
 *
 *   mu(gamma) = prod_{n=2}^{N-1} prod_{i != j} 1 / Gamma((gamma_{n,i} - gamma_{n,j}) / hbar).
 *
 * Rows 1 and N (lambda) do not enter.
 */
class GZMeasureFn {
public:
    GZMeasureFn(int N, double hbar) : N_(N), hbar_(hbar) {}

    [[nodiscard]] LogComplex value(const TriangularArray& g) const
    {
        const HbarParam unit{1.0};
        LogComplex acc = LogComplex::one();
        for (int n = 2; n <= N_ - 1; ++n)
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (i != j)
                        acc *= recip_gamma1_log((g(n, i) - g(n, j)) / hbar_, unit);
        return acc;
    }

    /// mu(gamma + hbar t) / mu(gamma) = prod_n prod_{i<j} (-1)^k (u + k) / u, u = (gamma_ni - gamma_nj)/hbar, k = t_ni - t_nj.
    [[nodiscard]] cplx shift_ratio(const TriangularArray& g, const Shift& t) const
    {
        cplx r{1.0, 0.0};
        for (int n = 2; n <= N_ - 1; ++n)
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) {
                    const int k = t.at(n, i) - t.at(n, j);
                    if (k == 0)
                        continue;
                    const cplx u = (g(n, i) - g(n, j)) / hbar_;
                    r *= (u + static_cast<double>(k)) / u;
                    if (k % 2 != 0)
                        r = -r;
                }
        return r;
    }

    [[nodiscard]] int rows() const noexcept { return N_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }

private:
    int N_;
    double hbar_;
};

/**
 * Transpose with respect to the pairing <f, g> = sum_gamma mu(gamma) f(gamma) g(gamma)
 * over gamma + hbar Z-lattices: the term c(gamma) T^s maps to
 *
 *   c(gamma - hbar s) mu(gamma - hbar s) / mu(gamma) T^{-s}.
 *
 * Applying it twice returns the original operator.
 */
inline DifferenceOperator adjoint(const DifferenceOperator& A)
{
    const GZMeasureFn mu(A.rows(), A.hbar());
    const double hb = A.hbar();
    DifferenceOperator out(A.rows(), hb);
    for (const auto& t : A.terms()) {
        const Shift back = -t.shift;
        out.add_term(
            [c = t.coeff, back, mu, hb](const TriangularArray& g) {
                return c(back.apply(g, hb)) * mu.shift_ratio(g, back);
            },
            back);
    }
    return out;
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_MEASURE_HPP
