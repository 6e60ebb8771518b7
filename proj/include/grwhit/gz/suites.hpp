#ifndef GRWHIT_GZ_SUITES_HPP
#define GRWHIT_GZ_SUITES_HPP

// Randomized identity suites over the GZ layer. Each suite returns the
// largest deviation it saw and whether it stayed under its tolerance.

#include "combinatorics.hpp"
#include "generators.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace grwhit::gz {

inline constexpr double combin_tol = 1e-11;
inline constexpr double algebra_tol = 1e-9;

struct SuiteResult {
    std::string name;
    double max_deviation = 0.0;
    std::size_t checks = 0;
    double tolerance = 0.0;
    bool pass = false;
};

/// n distinct points in [-2, 2] + i[-2, 2], pairwise at least 0.3 apart.
inline std::vector<cplx> random_points(int n, std::mt19937_64& rng)
{
    std::vector<cplx> g;
    while (static_cast<int>(g.size()) < n) {
        const cplx z = random_complex(rng, 2.0);
        if (std::all_of(g.begin(), g.end(), [&](const cplx& w) { return std::abs(z - w) >= 0.3; }))
            g.push_back(z);
    }
    return g;
}

/// combin1 against delta_{p,n-1} (p < n) and h_{p-n+1} (n <= p < n+3); combin2 against 1.
inline std::vector<SuiteResult> combin_suite(int max_n, int points, std::uint64_t seed)
{
    SuiteResult c1{"combin1", 0.0, 0, combin_tol, false};
    SuiteResult c1h{"combin1_high", 0.0, 0, combin_tol, false};
    SuiteResult c2{"combin2", 0.0, 0, combin_tol, false};
    for (int n = 1; n <= max_n; ++n)
        for (int k = 0; k < points; ++k) {
            auto rng = sample_rng(seed, 300 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
            const auto g = random_points(n, rng);
            for (int p = 0; p < n; ++p) {
                const cplx want = (p == n - 1) ? 1.0 : 0.0;
                c1.max_deviation = std::max(c1.max_deviation, std::abs(combin1(g, p) - want));
                ++c1.checks;
            }
            for (int p = n; p < n + 3; ++p) {
                const cplx want = complete_homogeneous(g, p - n + 1);
                c1h.max_deviation =
                    std::max(c1h.max_deviation, std::abs(combin1(g, p) - want) / std::max(1.0, std::abs(want)));
                ++c1h.checks;
            }
            const cplx c = random_complex(rng, 2.0);
            c2.max_deviation = std::max(c2.max_deviation, std::abs(combin2(g, c) - 1.0));
            ++c2.checks;
        }
    std::vector<SuiteResult> out{c1, c1h, c2};
    for (auto& r : out)
        r.pass = r.max_deviation <= r.tolerance;
    return out;
}

/// [[...[E_{n,n+1}, E_{n+1,n+2}], ...], E_{N-1,N}]
inline DifferenceOperator nested_commutator_EnN(int n, int N, double hbar)
{
    DifferenceOperator acc = gen(GenKind::raise, n, N, hbar);
    for (int k = n + 1; k <= N - 1; ++k)
        acc = commutator(acc, gen(GenKind::raise, k, N, hbar));
    return acc;
}

/**
 * For each n < N: [E_{n,n+1}, E_{n+1,n}] = E_nn - E_{n+1,n+1} and
 * build_EnN(n, N) = nested commutator, on `functions` random test functions
 * times `arrays` random arrays.
 */
inline std::vector<SuiteResult> algebra_suite(int N, int functions, int arrays, std::uint64_t seed, double hbar = 1.0)
{
    SuiteResult gl{"gl_relation", 0.0, 0, algebra_tol, false};
    SuiteResult en{"EnN_closed_form", 0.0, 0, algebra_tol, false};
    std::vector<DifferenceOperator> lhs, rhs, closed, nested;
    for (int n = 1; n <= N - 1; ++n) {
        lhs.push_back(commutator(gen(GenKind::raise, n, N, hbar), gen(GenKind::lower, n, N, hbar)));
        rhs.push_back(gen(GenKind::cartan, n, N, hbar) - gen(GenKind::cartan, n + 1, N, hbar));
        closed.push_back(build_EnN(n, N, hbar));
        nested.push_back(nested_commutator_EnN(n, N, hbar));
    }
    for (int f = 0; f < functions; ++f) {
        auto frng = sample_rng(seed, 400 + static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(f));
        const RandomTestFunction tf = random_test_function(N, frng);
        const TestFunction fn = tf;
        for (int a = 0; a < arrays; ++a) {
            auto arng = sample_rng(seed, 500 + static_cast<std::uint64_t>(N),
                                   static_cast<std::uint64_t>(f) * 100000u + static_cast<std::uint64_t>(a));
            const TriangularArray g = random_array(N, hbar, arng);
            for (std::size_t k = 0; k < lhs.size(); ++k) {
                gl.max_deviation = std::max(gl.max_deviation, operator_deviation(lhs[k], rhs[k], fn, g));
                en.max_deviation = std::max(en.max_deviation, operator_deviation(closed[k], nested[k], fn, g));
                ++gl.checks;
                ++en.checks;
            }
        }
    }
    gl.pass = gl.max_deviation <= gl.tolerance;
    en.pass = en.max_deviation <= en.tolerance;
    return {gl, en};
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_SUITES_HPP
