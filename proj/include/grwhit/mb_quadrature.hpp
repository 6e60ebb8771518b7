#ifndef GRWHIT_MB_QUADRATURE_HPP
#define GRWHIT_MB_QUADRATURE_HPP

/**
 * Direct evaluation of the Mellin-Barnes representation
 *
 *   Psi(x) = (2 pi i)^{-m} \int_{(eps + iR)^m} d^m gamma  e^{-(x/hbar) sum gamma_i}
 *            prod_{i,j} Gamma_1(gamma_i - lambda_j | hbar) / prod_{i != k} Gamma_1(gamma_i - gamma_k | hbar)
 *
 * by the uniform trapezoid rule on [eps - iT, eps + iT]^m.
 *
 * Note the measure d gamma / (2 pi i) per variable. With it the residue
 * expansion and the x -> -infinity coset sum hold with exactly the
 * coefficients used in residue.hpp and asymptotics.hpp.
 */

#include "errors.hpp"
#include "log_complex.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace grwhit {

/// Largest m handled by the tensor-product quadrature.
inline constexpr int max_quadrature_dim = 3;

struct ContourConfig {
    double epsilon = 1.0;     ///< Re gamma on the contour
    double half_extent = 10.; ///< T: Im gamma in [-T, T]
    int nodes_per_dim = 81;

    [[nodiscard]] double step() const { return 2.0 * half_extent / (nodes_per_dim - 1); }

    void validate(const SpectralData& s) const
    {
        if (!(epsilon > s.lambda_max()))
            throw config_error("contour offset epsilon = " + std::to_string(epsilon) +
                               " must exceed max lambda = " + std::to_string(s.lambda_max()));
        if (!(half_extent > 0.0) || !std::isfinite(half_extent))
            throw config_error("contour half extent T must be > 0");
        if (nodes_per_dim < 16)
            throw config_error("nodes_per_dim must be >= 16 (got " + std::to_string(nodes_per_dim) + ")");
        if (step() > s.hbar.value() / 4.0 * (1.0 + 1e-12))
            throw config_error("trapezoid step 2T/(nodes-1) = " + std::to_string(step()) +
                               " exceeds hbar/4 = " + std::to_string(s.hbar.value() / 4.0));
    }
};

/// Outcome of a contour quadrature. Error figures are relative to |value|.
struct MBResult {
    LogComplex value;
    double truncation_bound = 0.0;        ///< tail beyond |Im gamma| = T
    double discretization_estimate = 0.0; ///< (|I_h - I_{2h}| / |I_h|)^2 from the nested grid
    double roundoff_estimate = 0.0;
    double error_estimate = 0.0; ///< sum of the three above
    bool converged = true;       ///< truncation_bound <= tol
    std::size_t nodes_evaluated = 0;
    ContourConfig contour;
};

struct MBOptions {
    double tol = 1e-8;    ///< non-convergence threshold on truncation_bound
    unsigned threads = 0; ///< 0: hardware concurrency
};

namespace detail {

inline void check_quadrature_dim(int m)
{
    if (m > max_quadrature_dim)
        throw config_error("desk-scale limit: contour quadrature supports m <= " +
                           std::to_string(max_quadrature_dim) + " (got m = " + std::to_string(m) + ")");
}

/// log of the one-variable factor e^{-(x/hbar) g} prod_j Gamma_1(g - lambda_j).
inline cplx log_single_factor(cplx g, const SpectralData& s)
{
    cplx acc = -(s.x / s.hbar.value()) * g;
    for (double l : s.lambda)
        acc += gamma1(g - l, s.hbar).log();
    return acc;
}

/// log of 1/(Gamma_1(d) Gamma_1(-d)) for a gamma difference d; -inf at d = 0.
inline double log_pair_measure(cplx d, const SpectralData& s)
{
    return (recip_gamma1_log(d, s.hbar) * recip_gamma1_log(-d, s.hbar)).log_mag;
}

/// Integrand tables on a uniform grid y_a = -T + a h along the contour.
struct GridTables {
    std::vector<cplx> single;  // log single factor at node a
    std::vector<cplx> pair;    // log pair measure at index offset d (d >= 0)

    GridTables(const SpectralData& s, double epsilon, double T, double h, int n)
        : single(static_cast<std::size_t>(n)), pair(static_cast<std::size_t>(n))
    {
        for (int a = 0; a < n; ++a)
            single[static_cast<std::size_t>(a)] = log_single_factor({epsilon, -T + a * h}, s);
        if (s.m > 1) {
            for (int d = 0; d < n; ++d) {
                // Gamma_1(iy)Gamma_1(-iy) is real positive for real y; only the magnitude matters.
                const cplx diff{0.0, d * h};
                pair[static_cast<std::size_t>(d)] = {d == 0 ? -std::numeric_limits<double>::infinity()
                                                            : log_pair_measure(diff, s),
                                                     0.0};
            }
        }
    }
};

} // namespace detail

/**
 * The MB integrand at gamma (m complex values), assembled in log space.
 * Coincident gamma's give exact zero through the reciprocal gamma.
 */
inline LogComplex integrand(std::span<const cplx> gamma, const SpectralData& s)
{
    s.validate();
    if (static_cast<int>(gamma.size()) != s.m)
        throw config_error("integrand: expected m = " + std::to_string(s.m) + " gamma values");
    LogComplex acc = LogComplex::one();
    cplx sum{0.0, 0.0};
    for (const cplx g : gamma) {
        sum += g;
        for (double l : s.lambda)
            acc *= gamma1(g - l, s.hbar);
    }
    acc *= LogComplex::from_log(-(s.x / s.hbar.value()) * sum);
    for (std::size_t i = 0; i < gamma.size(); ++i)
        for (std::size_t k = 0; k < gamma.size(); ++k)
            if (i != k)
                acc *= recip_gamma1_log(gamma[i] - gamma[k], s.hbar);
    return acc;
}

namespace detail {

/// Compensated complex accumulator in linear space.
struct LinearSum {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;

    static void add1(double& s, double& c, double v) noexcept
    {
        const double t = s + v;
        c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    void add(cplx v) noexcept
    {
        add1(re, cre, v.real());
        add1(im, cim, v.imag());
    }
    void add(const LinearSum& o) noexcept
    {
        add(cplx{o.re, o.im});
        add(cplx{o.cre, o.cim});
    }
    [[nodiscard]] cplx value() const noexcept { return {re + cre, im + cim}; }
};

inline double l1(cplx z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

} // namespace detail

/**
 * Trapezoid approximation of the MB integral on the given contour.
 *
 * The integrand is symmetric in the gamma_i and vanishes on coincident
 * nodes, so only strictly increasing index tuples are visited and the sum
 * is multiplied by m!. Work is split by the leading index and reduced in
 * index order, so the result does not depend on the thread count.
 *
 * Summation runs in linear space. The pair measure grows like
 * e^{pi |y_i - y_k| / hbar}; for a sorted tuple its linear part equals
 * (pi h / hbar) sum_k (2k - m - 1) i_k, which is moved into one table per
 * tuple position. Those tables decay at both ends when N > 2m - 2, and each
 * is rescaled by its maximum, so every factor lies in the unit disc.
 */
inline MBResult eval_mb(const SpectralData& s, const ContourConfig& c, const MBOptions& opt = {})
{
    s.validate();
    detail::check_quadrature_dim(s.m);
    c.validate(s);

    const int n = c.nodes_per_dim;
    const int m = s.m;
    const double h = c.step();
    const double T = c.half_extent;
    const double hb = s.hbar.value();
    const detail::GridTables tab(s, c.epsilon, T, h, n);
    const auto un = static_cast<std::size_t>(n);

    double log_scale = 0.0;
    const double slope = std::numbers::pi * h / hb;
    std::vector<std::vector<cplx>> E(static_cast<std::size_t>(m), std::vector<cplx>(un));
    for (int k = 0; k < m; ++k) {
        const double coef = 2.0 * k - m + 1.0;
        std::vector<cplx> lk(un);
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < un; ++a) {
            lk[a] = tab.single[a] + slope * coef * static_cast<double>(a);
            mx = std::max(mx, lk[a].real());
        }
        for (std::size_t a = 0; a < un; ++a)
            E[static_cast<std::size_t>(k)][a] = std::exp(lk[a] - mx);
        log_scale += mx;
    }
    std::vector<double> ER(un, 0.0);
    if (m > 1) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t d = 1; d < un; ++d)
            mx = std::max(mx, tab.pair[d].real() - slope * static_cast<double>(d));
        for (std::size_t d = 1; d < un; ++d)
            ER[d] = std::exp(tab.pair[d].real() - slope * static_cast<double>(d) - mx);
        log_scale += 0.5 * m * (m - 1) * mx;
    }

    const int last_even = ((n - 1) % 2 == 0) ? n - 1 : n - 2;
    std::vector<double> wf(un, 1.0), wc(un, 0.0);
    wf.front() = wf.back() = 0.5;
    for (int a = 0; a <= last_even; a += 2)
        wc[static_cast<std::size_t>(a)] = (a == 0 || a == last_even) ? 1.0 : 2.0;

    struct Slice {
        detail::LinearSum fine, coarse;
        double abs_sum = 0.0;
        double boundary = 0.0;
    };
    std::vector<Slice> slices(un);

    auto run_slice = [&](int a) {
        Slice& sl = slices[static_cast<std::size_t>(a)];
        const auto ua = static_cast<std::size_t>(a);
        const cplx ea = E[0][ua];
        if (m == 1) {
            sl.fine.add(wf[ua] * ea);
            sl.coarse.add(wc[ua] * ea);
            sl.abs_sum = wf[ua] * detail::l1(ea);
            if (a == 0 || a == n - 1)
                sl.boundary = std::abs(ea);
            return;
        }
        for (std::size_t b = ua + 1; b < un; ++b) {
            const cplx eab = ea * E[1][b] * ER[b - ua];
            if (m == 2) {
                const double w = wf[ua] * wf[b];
                sl.fine.add(w * eab);
                sl.coarse.add(wc[ua] * wc[b] * eab);
                sl.abs_sum += w * detail::l1(eab);
                if (a == 0 || b == un - 1)
                    sl.boundary = std::max(sl.boundary, std::abs(eab));
                continue;
            }
            cplx f{0.0, 0.0}, cs{0.0, 0.0};
            double ab = 0.0;
            const auto& E2 = E[2];
            for (std::size_t d = b + 1; d < un; ++d) {
                const cplx t = eab * E2[d] * (ER[d - ua] * ER[d - b]);
                f += wf[d] * t;
                cs += wc[d] * t;
                ab += wf[d] * detail::l1(t);
                if (a == 0)
                    sl.boundary = std::max(sl.boundary, std::abs(t));
            }
            if (b + 1 < un)
                sl.boundary = std::max(sl.boundary, std::abs(eab * E2[un - 1] * (ER[un - 1 - ua] * ER[un - 1 - b])));
            const double w = wf[ua] * wf[b];
            sl.fine.add(w * f);
            sl.coarse.add(wc[ua] * wc[b] * cs);
            sl.abs_sum += w * ab;
        }
    };

    unsigned nthreads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(n));
    if (m == 1 || nthreads <= 1) {
        for (int a = 0; a < n; ++a)
            run_slice(a);
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (int a = next.fetch_add(1); a < n; a = next.fetch_add(1))
                    run_slice(a);
            });
    }

    detail::LinearSum fine, coarse;
    double abs_sum = 0.0, boundary = 0.0;
    for (const auto& sl : slices) {
        fine.add(sl.fine);
        coarse.add(sl.coarse);
        abs_sum += sl.abs_sum;
        boundary = std::max(boundary, sl.boundary);
    }

    // (h / 2 pi)^m * m!  (the i^m from d gamma = i dy cancels (2 pi i)^{-m} up to (2 pi)^{-m})
    const double log_norm = m * std::log(h / (2.0 * std::numbers::pi)) + std::lgamma(m + 1.0) + log_scale;

    MBResult r;
    r.contour = c;
    double tuples = 1.0;
    for (int i = 0; i < m; ++i)
        tuples = tuples * (n - i) / (i + 1);
    r.nodes_evaluated = static_cast<std::size_t>(tuples);
    r.value = LogComplex::from_complex(fine.value()) * LogComplex(log_norm, 0.0);
    const LogComplex coarse_val = LogComplex::from_complex(coarse.value()) * LogComplex(log_norm, 0.0);

    if (r.value.is_zero()) {
        r.truncation_bound = r.discretization_estimate = r.roundoff_estimate = r.error_estimate =
            std::numeric_limits<double>::infinity();
        r.converged = false;
        return r;
    }

    // Tail beyond T: boundary magnitude times an e-folding length 2 hbar / pi per
    // escaping coordinate, over the 2m faces of extent (2T)^{m-1}.
    const double log_boundary = boundary > 0.0 ? std::log(boundary) + log_scale : -std::numeric_limits<double>::infinity();
    const double log_tail = log_boundary + std::log(2.0 * hb / std::numbers::pi) + (m - 1) * std::log(2.0 * T) +
                            std::log(2.0 * m) - m * std::log(2.0 * std::numbers::pi) + std::lgamma(m + 1.0);
    r.truncation_bound = std::exp(log_tail - r.value.log_mag);
    // Trapezoid error for a strip-analytic integrand is ~e^{-2 pi d / h}, so the
    // step-h error is about the square of the step-2h discrepancy.
    const double delta = relative_difference(r.value, coarse_val) *
                         std::max(1.0, std::exp(coarse_val.log_mag - r.value.log_mag));
    r.discretization_estimate = delta < 0.1 ? delta * delta : delta;
    r.roundoff_estimate = 16.0 * std::numeric_limits<double>::epsilon() *
                          std::exp(std::log(abs_sum) + log_norm - r.value.log_mag);
    r.error_estimate = r.truncation_bound + r.discretization_estimate + r.roundoff_estimate;
    r.converged = r.truncation_bound <= opt.tol;
    return r;
}

/**
 * Choose a contour for the instance.
 *
 * epsilon = max lambda + delta with delta = hbar, except for x < 0 where the
 * integrand on the line exceeds the result by e^{|x| (m epsilon - top-m lambda sum) / hbar};
 * there delta shrinks to 3 hbar / (m |x|) (floor hbar / 10) to keep that loss small.
 * T grows by 25% steps from 4 hbar until the integrand on the boundary of
 * [-T, T]^m falls below tol times the peak near the centre (tightened by the
 * cancellation factor), and the step resolves the strip of width delta
 * between the contour and the nearest pole (h <= hbar/4 always).
 */
inline ContourConfig auto_contour(const SpectralData& s, double tol = 1e-12)
{
    s.validate();
    detail::check_quadrature_dim(s.m);
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw config_error("auto_contour: tol must be > 0");

    const int m = s.m;
    const double hb = s.hbar.value();
    const double xneg = std::max(0.0, -s.x);
    const double offset = xneg > 0.0 ? std::clamp(3.0 * hb / (m * xneg), 0.1 * hb, hb) : hb;
    const double eps = s.lambda_max() + offset;
    const double cancel = xneg * (m * eps - s.top_lambda_sum()) / hb;
    const double log_tol = std::log(tol) - cancel;

    // Reference: peak of |integrand| on a coarse grid of [-2 hbar, 2 hbar]^m.
    double ref = -std::numeric_limits<double>::infinity();
    {
        const int K = 8;
        const double g = hb / 2.0;
        const detail::GridTables tab(s, eps, 2.0 * hb, g, K + 1);
        for (int a = 0; a <= K; ++a) {
            if (m == 1) {
                ref = std::max(ref, tab.single[a].real());
                continue;
            }
            for (int b = a + 1; b <= K; ++b) {
                const double lab = (tab.single[a] + tab.single[b]).real() + tab.pair[b - a].real();
                if (m == 2) {
                    ref = std::max(ref, lab);
                    continue;
                }
                for (int d = b + 1; d <= K; ++d)
                    ref = std::max(ref, lab + tab.single[d].real() + tab.pair[d - a].real() + tab.pair[d - b].real());
            }
        }
    }

    // Max |integrand| over the faces of [-T, T]^m, sampled at spacing <= hbar/2.
    auto boundary_max = [&](double T) {
        const int K = std::max(2, static_cast<int>(std::ceil(2.0 * T / (hb / 2.0))));
        const double g = 2.0 * T / K;
        const detail::GridTables tab(s, eps, T, g, K + 1);
        double best = -std::numeric_limits<double>::infinity();
        for (int face : {0, K}) {
            const double lf = tab.single[face].real();
            if (m == 1) {
                best = std::max(best, lf);
                continue;
            }
            for (int b = 0; b <= K; ++b) {
                if (b == face)
                    continue;
                const double lb = lf + tab.single[b].real() + tab.pair[std::abs(b - face)].real();
                if (m == 2) {
                    best = std::max(best, lb);
                    continue;
                }
                for (int d = b + 1; d <= K; ++d) {
                    if (d == face)
                        continue;
                    best = std::max(best, lb + tab.single[d].real() + tab.pair[std::abs(d - face)].real() +
                                              tab.pair[d - b].real());
                }
            }
        }
        return best;
    };

    const double T_limit = 200.0 * hb * s.N;
    double T = 4.0 * hb;
    double last = 0.0;
    while (true) {
        last = boundary_max(T);
        if (last - ref < log_tol)
            break;
        T *= 1.25;
        if (T > T_limit)
            throw convergence_error("auto_contour: integrand on |Im gamma| = " + std::to_string(T / 1.25) +
                                    " is still e^" + std::to_string(last - ref) +
                                    " of its peak (target e^" + std::to_string(log_tol) + "); gave up at T > " +
                                    std::to_string(T_limit) +
                                    ". The line integral decays only when N >= 2m - 1.");
    }

    const double h_acc =
        2.0 * std::numbers::pi * offset / (cancel + m * xneg * offset / hb + std::log(1.0 / tol) + 3.0);
    const double h = std::min(hb / 4.0, h_acc);
    int n = static_cast<int>(std::ceil(2.0 * T / h)) + 1;
    if ((n - 1) % 2 != 0)
        ++n;
    n = std::max(n, 17);

    double tuples = 1.0;
    for (int i = 0; i < m; ++i)
        tuples *= static_cast<double>(n - i) / (i + 1);
    if (tuples > 4e9)
        throw config_error("desk-scale limit: contour needs " + std::to_string(n) + " nodes per dimension (" +
                           std::to_string(tuples) + " node tuples)");
    return {eps, T, n};
}

} // namespace grwhit

#endif // GRWHIT_MB_QUADRATURE_HPP
