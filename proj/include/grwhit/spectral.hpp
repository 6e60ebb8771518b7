#ifndef GRWHIT_SPECTRAL_HPP
#define GRWHIT_SPECTRAL_HPP

#include "errors.hpp"
#include "special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace grwhit {

/// Problem instance: Psi^{(m,N)}_lambda(x, 0, ..., 0) with deformation hbar.
struct SpectralData {
    int m = 1;
    int N = 2;
    std::vector<double> lambda{0.0, 0.0};
    HbarParam hbar{1.0};
    double x = 0.0;

    /// Throws config_error unless 1 <= m < N, |lambda| = N and everything is finite.
    void validate() const
    {
        if (m < 1 || m >= N)
            throw config_error("require 1 <= m < N (got m = " + std::to_string(m) + ", N = " + std::to_string(N) + ")");
        if (static_cast<int>(lambda.size()) != N)
            throw config_error("lambda must have N = " + std::to_string(N) + " entries (got " +
                               std::to_string(lambda.size()) + ")");
        for (double l : lambda)
            if (!std::isfinite(l))
                throw config_error("lambda entries must be finite");
        if (!std::isfinite(x))
            throw config_error("x must be finite");
    }

    [[nodiscard]] double lambda_max() const { return *std::max_element(lambda.begin(), lambda.end()); }

    /// Sum of the m largest lambda_j.
    [[nodiscard]] double top_lambda_sum() const
    {
        auto sorted = lambda;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            s += sorted[static_cast<std::size_t>(i)];
        return s;
    }
};

/// Minimal relative margin dist(lambda_i - lambda_j, hbar Z) / hbar for generic mode.
inline constexpr double genericity_margin = 1e-6;

/**
 * Throws genericity_error naming the first pair (1-based) whose difference lies
 * within genericity_margin * hbar of hbar * Z. Double poles are out of scope.
 */
inline void check_generic(const SpectralData& s)
{
    const double h = s.hbar.value();
    for (int i = 0; i < s.N; ++i) {
        for (int j = i + 1; j < s.N; ++j) {
            const double d = (s.lambda[static_cast<std::size_t>(i)] - s.lambda[static_cast<std::size_t>(j)]) / h;
            if (std::abs(d - std::round(d)) < genericity_margin)
                throw genericity_error("lambda is not generic: lambda_" + std::to_string(i + 1) + " - lambda_" +
                                       std::to_string(j + 1) + " = " + std::to_string(d * h) +
                                       " lies in hbar*Z (hbar = " + std::to_string(h) + ")");
        }
    }
}

} // namespace grwhit

#endif // GRWHIT_SPECTRAL_HPP
