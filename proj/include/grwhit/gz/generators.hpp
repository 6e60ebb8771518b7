#ifndef GRWHIT_GZ_GENERATORS_HPP
#define GRWHIT_GZ_GENERATORS_HPP

// gl_N action on functions of a GZ pattern: Cartan, raising and lowering
// generators as difference operators, the remaining E_ab by commutators.

#include "difference_operator.hpp"

#include <string>
#include <utility>
#include <vector>

namespace grwhit::gz {

enum class GenKind { cartan, raise, lower };

namespace detail {

inline void check_N(int N)
{
    if (N < 2)
        throw config_error("GZ operators need N >= 2 (got " + std::to_string(N) + ")");
}

/// prod_{s != i} (gamma_{n,i} - gamma_{n,s})
inline cplx row_vandermonde(const TriangularArray& g, int n, int i)
{
    cplx d{1.0, 0.0};
    for (int s = 1; s <= n; ++s)
        if (s != i)
            d *= g(n, i) - g(n, s);
    return d;
}

} // namespace detail

/**
 * Generator of gl_N:
 *   cartan n: E_nn = (sum_i gamma_{n,i} - sum_i gamma_{n-1,i}) / hbar
 *   raise n:  E_{n,n+1} = -(1/hbar) sum_i prod_{j<=n+1}(gamma_{n,i} - gamma_{n+1,j} - hbar/2)
 *                          / prod_{s!=i}(gamma_{n,i} - gamma_{n,s}) e^{-hbar d_{n,i}}
 *   lower n:  E_{n+1,n} = (1/hbar) sum_i prod_{j<=n-1}(gamma_{n,i} - gamma_{n-1,j} + hbar/2)
 *                          / prod_{s!=i}(gamma_{n,i} - gamma_{n,s}) e^{+hbar d_{n,i}}
 */
inline DifferenceOperator gen(GenKind kind, int n, int N, double hbar)
{
    detail::check_N(N);
    const int hi = kind == GenKind::cartan ? N : N - 1;
    if (n < 1 || n > hi)
        throw config_error("generator index " + std::to_string(n) + " out of range [1, " + std::to_string(hi) + "]");

    DifferenceOperator op(N, hbar);
    switch (kind) {
    case GenKind::cartan:
        op.add_term(
            [n, hbar](const TriangularArray& g) {
                cplx s{0.0, 0.0};
                for (int i = 1; i <= n; ++i)
                    s += g(n, i);
                for (int i = 1; i < n; ++i)
                    s -= g(n - 1, i);
                return s / hbar;
            },
            Shift(N));
        break;
    case GenKind::raise:
        for (int i = 1; i <= n; ++i)
            op.add_term(
                [n, i, hbar](const TriangularArray& g) {
                    cplx num{1.0, 0.0};
                    for (int j = 1; j <= n + 1; ++j)
                        num *= g(n, i) - g(n + 1, j) - hbar / 2;
                    return -num / (hbar * detail::row_vandermonde(g, n, i));
                },
                Shift::unit(N, n, i, -1));
        break;
    case GenKind::lower:
        for (int i = 1; i <= n; ++i)
            op.add_term(
                [n, i, hbar](const TriangularArray& g) {
                    cplx num{1.0, 0.0};
                    for (int j = 1; j <= n - 1; ++j)
                        num *= g(n, i) - g(n - 1, j) + hbar / 2;
                    return num / (hbar * detail::row_vandermonde(g, n, i));
                },
                Shift::unit(N, n, i, +1));
        break;
    }
    return op;
}

/// E_ab for 1 <= a, b <= N. Off-diagonal entries beyond the first
/// off-diagonals come from E_ab = [E_{a,b-1}, E_{b-1,b}] (a < b)
/// and E_ab = [E_{a,a-1}, E_{a-1,b}] (a > b).
inline DifferenceOperator elementary(int a, int b, int N, double hbar)
{
    detail::check_N(N);
    if (a < 1 || a > N || b < 1 || b > N)
        throw config_error("E(" + std::to_string(a) + "," + std::to_string(b) + ") out of range for N = " +
                           std::to_string(N));
    if (a == b)
        return gen(GenKind::cartan, a, N, hbar);
    if (b == a + 1)
        return gen(GenKind::raise, a, N, hbar);
    if (a == b + 1)
        return gen(GenKind::lower, b, N, hbar);
    if (a < b)
        return commutator(elementary(a, b - 1, N, hbar), elementary(b - 1, b, N, hbar));
    return commutator(elementary(a, a - 1, N, hbar), elementary(a - 1, b, N, hbar));
}

/**
 * Closed form of E_{n,N} (n < N) as nested sums over one index per row
 * N-1, N-2, ..., n:
 *
 *   E_{n,N} = -(1/hbar) sum_{i_{N-1},...,i_n}
 *     prod_{r=n}^{N-1} [ prod_{j <= r+1, j != i_{r+1}} (gamma_{r,i_r} - gamma_{r+1,j} - hbar/2)
 *                         / prod_{s != i_r} (gamma_{r,i_r} - gamma_{r,s}) ]
 *     e^{-hbar (d_{N-1,i_{N-1}} + ... + d_{n,i_n})}
 *
 * where row N carries no excluded index.
 */
inline DifferenceOperator build_EnN(int n, int N, double hbar)
{
    detail::check_N(N);
    if (n < 1 || n >= N)
        throw config_error("build_EnN: require 1 <= n < N (got n = " + std::to_string(n) + ")");
    DifferenceOperator op(N, hbar);
    std::vector<int> idx; // idx[t] is the index chosen in row N-1-t
    auto rec = [&](auto&& self, int r) -> void {
        if (r < n) {
            Shift sh(N);
            for (std::size_t t = 0; t < idx.size(); ++t)
                sh.at(N - 1 - static_cast<int>(t), idx[t]) = -1;
            op.add_term(
                [chosen = idx, n, N, hbar](const TriangularArray& g) {
                    cplx c{-1.0 / hbar, 0.0};
                    int excluded = 0;
                    for (int r2 = N - 1; r2 >= n; --r2) {
                        const int i = chosen[static_cast<std::size_t>(N - 1 - r2)];
                        cplx num{1.0, 0.0};
                        for (int j = 1; j <= r2 + 1; ++j)
                            if (j != excluded)
                                num *= g(r2, i) - g(r2 + 1, j) - hbar / 2;
                        c *= num / detail::row_vandermonde(g, r2, i);
                        excluded = i;
                    }
                    return c;
                },
                std::move(sh));
            return;
        }
        for (int i = 1; i <= r; ++i) {
            idx.push_back(i);
            self(self, r - 1);
            idx.pop_back();
        }
    };
    rec(rec, N - 1);
    return op;
}

/// Permutation of {1..N}; image[i-1] = w(i).
struct Permutation {
    std::vector<int> image;

    static Permutation identity(int N)
    {
        Permutation p;
        for (int i = 1; i <= N; ++i)
            p.image.push_back(i);
        return p;
    }

    /// Simple transposition s_i = (i, i+1).
    static Permutation simple(int i, int N)
    {
        if (i < 1 || i >= N)
            throw config_error("simple reflection index out of range");
        Permutation p = identity(N);
        std::swap(p.image[static_cast<std::size_t>(i - 1)], p.image[static_cast<std::size_t>(i)]);
        return p;
    }

    [[nodiscard]] int size() const noexcept { return static_cast<int>(image.size()); }
    [[nodiscard]] int operator()(int i) const { return image.at(static_cast<std::size_t>(i - 1)); }

    [[nodiscard]] Permutation inverse() const
    {
        Permutation p;
        p.image.resize(image.size());
        for (std::size_t k = 0; k < image.size(); ++k)
            p.image[static_cast<std::size_t>(image[k] - 1)] = static_cast<int>(k) + 1;
        return p;
    }

    /// (a * b)(i) = a(b(i))
    friend Permutation operator*(const Permutation& a, const Permutation& b)
    {
        Permutation p;
        for (int v : b.image)
            p.image.push_back(a(v));
        return p;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// c_n = s_1 s_2 ... s_n: i -> i+1 (i <= n), n+1 -> 1.
inline Permutation coxeter_element(int n, int N)
{
    Permutation w = Permutation::identity(N);
    for (int i = 1; i <= n; ++i)
        w = w * Permutation::simple(i, N);
    return w;
}

struct TwistedGenerator {
    std::pair<int, int> label;    ///< (i, j) before twisting
    std::pair<int, int> resolved; ///< (w^{-1}(i), w^{-1}(j))
    DifferenceOperator op;
};

/// E^w_ij = E_{w^{-1}(i), w^{-1}(j)}.
inline TwistedGenerator twist(int i, int j, const Permutation& w, double hbar)
{
    const int N = w.size();
    const Permutation wi = w.inverse();
    const int a = wi(i);
    const int b = wi(j);
    return {{i, j}, {a, b}, elementary(a, b, N, hbar)};
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_GENERATORS_HPP
