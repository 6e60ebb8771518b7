#ifndef GRWHIT_GZ_SAMPLING_HPP
#define GRWHIT_GZ_SAMPLING_HPP

// Random arrays and test functions for pointwise operator identities.
// Every sample draws from its own stream seeded by (seed, suite, index),
// so results do not depend on evaluation order.

#include "difference_operator.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace grwhit::gz {

inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t suite, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

inline cplx random_complex(std::mt19937_64& rng, double radius)
{
    std::uniform_real_distribution<double> u(-radius, radius);
    const double re = u(rng);
    const double im = u(rng);
    return {re, im};
}

/// True if no two entries of a row differ by k hbar (|k| <= 3) up to `gap`.
inline bool rows_separated(const TriangularArray& g, double hbar, double gap, int first_row, int last_row)
{
    for (int n = first_row; n <= last_row; ++n)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = -3; k <= 3; ++k)
                    if (std::abs(g(n, i) - g(n, j) + static_cast<double>(k) * hbar) < gap)
                        return false;
    return true;
}

/// Array with entries uniform in [-1.5, 1.5] + i[-1.5, 1.5], rows separated.
inline TriangularArray random_array(int N, double hbar, std::mt19937_64& rng)
{
    for (;;) {
        TriangularArray g(N);
        for (cplx& v : g.flat())
            v = random_complex(rng, 1.5);
        if (rows_separated(g, hbar, 0.05, 1, N))
            return g;
    }
}

/**
 * f(gamma) = exp(sum a_{n,i} gamma_{n,i}) / ((gamma_{p1} + b_1)(gamma_{p2} + b_2)),
 * with |Im b| >= 2.5 so that shifted arguments stay away from the poles.
 */
struct RandomTestFunction {
    std::vector<cplx> a;
    std::size_t p1 = 0, p2 = 0;
    cplx b1, b2;

    cplx operator()(const TriangularArray& g) const
    {
        const auto v = g.flat();
        cplx e{0.0, 0.0};
        for (std::size_t k = 0; k < v.size(); ++k)
            e += a[k] * v[k];
        return std::exp(e) / ((v[p1] + b1) * (v[p2] + b2));
    }
};

inline RandomTestFunction random_test_function(int N, std::mt19937_64& rng)
{
    RandomTestFunction f;
    const std::size_t sz = triangle_size(N);
    for (std::size_t k = 0; k < sz; ++k)
        f.a.push_back(random_complex(rng, 0.3));
    std::uniform_int_distribution<std::size_t> pick(0, sz - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution sign(0.5);
    f.p1 = pick(rng);
    f.p2 = pick(rng);
    const double im1 = (2.5 + std::abs(u(rng))) * (sign(rng) ? 1.0 : -1.0);
    const double im2 = (2.5 + std::abs(u(rng))) * (sign(rng) ? 1.0 : -1.0);
    f.b1 = {u(rng), im1};
    f.b2 = {u(rng), im2};
    return f;
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_SAMPLING_HPP
