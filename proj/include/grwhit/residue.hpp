#ifndef GRWHIT_RESIDUE_HPP
#define GRWHIT_RESIDUE_HPP

/**
 * Residue-lattice series for Psi at x < 0.
 *
 * Closing each gamma_k contour to the left picks up the simple poles of
 * Gamma_1(gamma_k - lambda_j | hbar) at gamma_k = lambda_j - n hbar, with
 *
 *   Res_{z = -n hbar} Gamma_1(z | hbar) = (-1)^n hbar^{1-n} / n!.
 *
 * Poles with a repeated j are cancelled by zeros of the measure
 * 1/Gamma_1(gamma_k - gamma_l), so only assignments with distinct j
 * contribute. The term for assignment (j, n), gamma*_k = lambda_{j_k} - n_k hbar, is
 *
 *   e^{-(x/hbar) sum_k gamma*_k}
 *     prod_k [ (-1)^{n_k} hbar^{1-n_k} / n_k!  prod_{j != j_k} Gamma_1(gamma*_k - lambda_j) ]
 *     prod_{k != l} 1/Gamma_1(gamma*_k - gamma*_l).
 *
 * At order zero the numerator factors with j in the image of the assignment
 * cancel the measure, leaving hbar^m prod_k prod_{j not in image} Gamma_1(lambda_{j_k} - lambda_j),
 * i.e. the summand of the coset sum in asymptotics.hpp.
 */

#include "errors.hpp"
#include "log_complex.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace grwhit {

/// One pole of the m-fold residue sum (indices are 0-based).
struct PoleAssignment {
    std::vector<int> j; ///< distinct lambda indices, one per gamma_k
    std::vector<int> n; ///< lattice depths n_k >= 0

    [[nodiscard]] int order() const
    {
        int o = 0;
        for (int v : n)
            o += v;
        return o;
    }

    friend bool operator==(const PoleAssignment&, const PoleAssignment&) = default;
};

struct SeriesConfig {
    int max_order = 40;
    double tol = 1e-15; ///< stop once two consecutive orders are below tol * |partial sum|

    static constexpr int order_cap = 60;

    void validate() const
    {
        if (max_order < 0 || max_order > order_cap)
            throw config_error("series max_order must lie in [0, " + std::to_string(order_cap) + "] (got " +
                               std::to_string(max_order) + ")");
        if (!(tol > 0.0))
            throw config_error("series tol must be > 0");
    }
};

struct SeriesResult {
    LogComplex value;
    double tail_estimate = 0.0;  ///< |last order's sum| / |value|
    int orders_used = 0;         ///< highest order included
    std::size_t terms = 0;
    std::vector<LogComplex> order_sums; ///< partial contribution of each order
};

namespace detail {

/// Ordered m-tuples of distinct indices in [0, N), lexicographic.
inline std::vector<std::vector<int>> distinct_tuples(int m, int N)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(N), false);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (int j = 0; j < N; ++j) {
            if (used[static_cast<std::size_t>(j)])
                continue;
            used[static_cast<std::size_t>(j)] = true;
            cur.push_back(j);
            self(self);
            cur.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    rec(rec);
    return out;
}

/// Weak compositions of `total` into m nonnegative parts, lexicographic.
inline std::vector<std::vector<int>> compositions(int total, int m)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left) -> void {
        if (static_cast<int>(cur.size()) == m - 1) {
            cur.push_back(left);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur.push_back(v);
            self(self, left - v);
            cur.pop_back();
        }
    };
    rec(rec, total);
    return out;
}

/// Residue of Gamma_1 at -n hbar: (-1)^n hbar^{1-n} / n!.
inline LogComplex gamma1_residue(int n, const HbarParam& hbar)
{
    return {(1.0 - n) * hbar.log() - std::lgamma(n + 1.0), (n % 2 != 0) ? std::numbers::pi : 0.0};
}

} // namespace detail

/// All assignments of order `order` (distinct j), ordered lexicographically by (j, n).
inline std::vector<PoleAssignment> terms_of_order(int m, int N, int order)
{
    std::vector<PoleAssignment> out;
    const auto js = detail::distinct_tuples(m, N);
    const auto ns = detail::compositions(order, m);
    out.reserve(js.size() * ns.size());
    for (const auto& j : js)
        for (const auto& n : ns)
            out.push_back({j, n});
    return out;
}

/**
 * All pole assignments with distinct j and total order <= cfg.max_order,
 * by increasing order, then lexicographic in (j, n).
 */
inline std::vector<PoleAssignment> enumerate_terms(const SpectralData& s, const SeriesConfig& cfg)
{
    s.validate();
    cfg.validate();
    check_generic(s);
    std::vector<PoleAssignment> out;
    for (int o = 0; o <= cfg.max_order; ++o) {
        auto t = terms_of_order(s.m, s.N, o);
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

/// Iterated residue of the (2 pi i)^{-m}-normalized MB integrand at the assignment.
inline LogComplex residue_term(const PoleAssignment& a, const SpectralData& s)
{
    const int m = s.m;
    if (static_cast<int>(a.j.size()) != m || static_cast<int>(a.n.size()) != m)
        throw config_error("residue_term: assignment must have m = " + std::to_string(m) + " entries");
    const double hb = s.hbar.value();
    std::vector<double> pole(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const int jk = a.j[static_cast<std::size_t>(k)];
        const int nk = a.n[static_cast<std::size_t>(k)];
        if (jk < 0 || jk >= s.N || nk < 0)
            throw config_error("residue_term: index out of range");
        pole[static_cast<std::size_t>(k)] = s.lambda[static_cast<std::size_t>(jk)] - nk * hb;
    }

    double sum = 0.0;
    for (double g : pole)
        sum += g;
    LogComplex acc{-(s.x / hb) * sum, 0.0};

    for (int k = 0; k < m; ++k) {
        const int jk = a.j[static_cast<std::size_t>(k)];
        acc *= detail::gamma1_residue(a.n[static_cast<std::size_t>(k)], s.hbar);
        for (int j = 0; j < s.N; ++j) {
            if (j == jk)
                continue;
            const double arg = pole[static_cast<std::size_t>(k)] - s.lambda[static_cast<std::size_t>(j)];
            try {
                acc *= gamma1(arg, s.hbar);
            } catch (const pole_error&) {
                throw pole_error("residue_term: Gamma_1(lambda_" + std::to_string(jk + 1) + " - " +
                                 std::to_string(a.n[static_cast<std::size_t>(k)]) + " hbar - lambda_" +
                                 std::to_string(j + 1) + ") is singular (double pole; lambda not generic)");
            }
        }
    }
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
            if (k != l)
                acc *= recip_gamma1_log(pole[static_cast<std::size_t>(k)] - pole[static_cast<std::size_t>(l)], s.hbar);
    return acc;
}

/**
 * Sum of residue_term over all distinct-j assignments, order by order.
 *
 * Stops after order 3 once two consecutive orders fall below cfg.tol relative
 * to the running total, or at cfg.max_order. Requires x < 0 and generic lambda.
 */
inline SeriesResult eval_residue_series(const SpectralData& s, const SeriesConfig& cfg = {})
{
    s.validate();
    cfg.validate();
    if (!(s.x < 0.0))
        throw domain_error("residue series requires x < 0 (got x = " + std::to_string(s.x) +
                           "); the pole sum is only used for the x -> -infinity side");
    check_generic(s);

    SeriesResult r;
    LogSum total;
    int small_run = 0;
    for (int o = 0; o <= cfg.max_order; ++o) {
        LogSum order_sum;
        for (const auto& a : terms_of_order(s.m, s.N, o)) {
            order_sum.add(residue_term(a, s));
            ++r.terms;
        }
        const LogComplex os = order_sum.result();
        r.order_sums.push_back(os);
        total.add(order_sum);
        r.orders_used = o;

        const LogComplex cur = total.result();
        const bool small = os.is_zero() || (!cur.is_zero() && os.log_mag - cur.log_mag < std::log(cfg.tol));
        small_run = small ? small_run + 1 : 0;
        if (o >= 3 && small_run >= 2)
            break;
    }
    r.value = total.result();
    const LogComplex& last = r.order_sums.back();
    r.tail_estimate = (last.is_zero() || r.value.is_zero()) ? 0.0 : std::exp(last.log_mag - r.value.log_mag);
    return r;
}

} // namespace grwhit

#endif // GRWHIT_RESIDUE_HPP
