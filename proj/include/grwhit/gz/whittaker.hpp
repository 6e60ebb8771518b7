#ifndef GRWHIT_GZ_WHITTAKER_HPP
#define GRWHIT_GZ_WHITTAKER_HPP

#include "../log_complex.hpp"
#include "../special_functions.hpp"
#include "combinatorics.hpp"
#include "generators.hpp"
#include "measure.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace grwhit::gz {

inline constexpr double whittaker_tol = 1e-9;
inline constexpr int max_resample = 200;

/**
 * Left vector e^{i pi gamma_11 / hbar} prod_{i <= m-1, j <= m} 1/Gamma_1(gamma_{m-1,i} - gamma_{m,j} + hbar/2).
 * `perturb` is added to the (1,1) gamma argument; it exists only to test
 * that the verifier detects a broken vector.
 */
inline cplx psi_L(int m, const TriangularArray& g, double hbar, double perturb = 0.0)
{
    if (m < 2 || m > g.rows())
        throw config_error("psi_L: require 2 <= m <= N");
    const HbarParam hb{hbar};
    LogComplex acc = LogComplex::from_log(cplx{0.0, std::numbers::pi} * g(1, 1) / hbar);
    for (int i = 1; i <= m - 1; ++i)
        for (int j = 1; j <= m; ++j) {
            cplx arg = g(m - 1, i) - g(m, j) + hbar / 2;
            if (i == 1 && j == 1)
                arg += perturb;
            acc *= recip_gamma1_log(arg, hb);
        }
    return acc.value();
}

struct LeftRelation {
    int k = 0;                          ///< relation for E^w_{k+1,k}
    std::pair<int, int> resolved{0, 0}; ///< the untwisted E_ab actually applied
    int sign = 0;                       ///< observed ratio sign (+1 / -1), 0 if undetermined
    double max_deviation = 0.0;         ///< max |ratio - sign|
    bool pass = false;
};

struct LeftWhittakerReport {
    int m = 0, N = 0, samples = 0;
    std::uint64_t seed = 0;
    double hbar = 1.0;
    std::vector<LeftRelation> relations;
    bool pass = false;

    [[nodiscard]] double max_deviation() const
    {
        double d = 0.0;
        for (const auto& r : relations)
            d = std::max(d, r.max_deviation);
        return d;
    }
};

/**
 * For k = 1..N-1 applies (E^{c_{m-1}}_{k+1,k})^dagger to psi_L at random arrays
 * and compares against psi_L / hbar. The ratio must be a sign constant in k;
 * the sign is recorded, not prescribed.
 */
inline LeftWhittakerReport verify_left_whittaker(int m, int N, int samples, std::uint64_t seed, double hbar = 1.0,
                                                 double perturb = 0.0)
{
    if (m < 2 || m >= N)
        throw config_error("verify_left_whittaker: require 2 <= m < N");
    if (samples < 1)
        throw config_error("verify_left_whittaker: samples must be >= 1");
    (void)HbarParam{hbar};

    LeftWhittakerReport rep{m, N, samples, seed, hbar, {}, true};
    const Permutation w = coxeter_element(m - 1, N);
    const TestFunction psi = [m, hbar, perturb](const TriangularArray& g) { return psi_L(m, g, hbar, perturb); };

    for (int k = 1; k <= N - 1; ++k) {
        const auto tw = twist(k + 1, k, w, hbar);
        const DifferenceOperator op = adjoint(tw.op);
        LeftRelation rel;
        rel.k = k;
        rel.resolved = tw.resolved;
        bool ok = true;
        for (int s = 0; s < samples; ++s) {
            auto rng = sample_rng(seed, 100 + static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(s));
            cplx ratio{};
            int tries = 0;
            for (;; ++tries) {
                if (tries >= max_resample)
                    throw convergence_error("verify_left_whittaker: no non-singular sample after " +
                                            std::to_string(max_resample) + " draws");
                const TriangularArray g = random_array(N, hbar, rng);
                const cplx base = psi(g);
                if (!std::isfinite(std::abs(base)) || std::abs(base) < 1e-100)
                    continue;
                ratio = op.apply(psi, g) / (base / hbar);
                if (std::isfinite(ratio.real()) && std::isfinite(ratio.imag()))
                    break;
            }
            const int sg = ratio.real() >= 0.0 ? 1 : -1;
            if (rel.sign == 0)
                rel.sign = sg;
            else if (sg != rel.sign)
                ok = false;
            rel.max_deviation = std::max(rel.max_deviation, std::abs(ratio - static_cast<double>(rel.sign)));
        }
        rel.pass = ok && rel.max_deviation <= whittaker_tol;
        rep.pass = rep.pass && rel.pass;
        rep.relations.push_back(rel);
    }
    return rep;
}

/// gamma_{n,i} = sum coef * gamma_{n',i'} + offset * hbar
struct AffineRelation {
    struct Entry {
        int n, i;
        double coef;
    };
    int n = 0, i = 0;
    std::vector<Entry> rhs;
    double offset = 0.0;
};

/**
 * Support of the right vector: gamma_11 = 0 and, for each row n in [2, N-1]
 * other than m, the interlacing collapse gamma_{n-1,k} = gamma_{n,k} - hbar/2
 * (k < n) together with gamma_{n,n} = -(n-1) hbar/2. The free coordinates
 * are gamma_{N-1,1..m}; row N is lambda.
 */
class SupportConstraints {
public:
    SupportConstraints(int m, int N) : m_(m), N_(N)
    {
        if (m < 1 || m >= N)
            throw config_error("SupportConstraints: require 1 <= m < N");
        rel_.push_back({1, 1, {}, 0.0});
        for (int n = 2; n <= N - 1; ++n) {
            if (n == m)
                continue;
            for (int k = 1; k < n; ++k)
                rel_.push_back({n - 1, k, {{n, k, 1.0}}, -0.5});
            rel_.push_back({n, n, {}, -0.5 * (n - 1)});
        }
    }

    [[nodiscard]] const std::vector<AffineRelation>& relations() const noexcept { return rel_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] int rows() const noexcept { return N_; }

    /**
     * Solves for rows 1..N-1 given lambda (row N) and the free coordinates.
     * Throws config_error if the relations are inconsistent or leave an
     * entry undetermined.
     */
    [[nodiscard]] TriangularArray solve(std::span<const cplx> lambda, std::span<const cplx> free_vals, double hbar) const
    {
        if (static_cast<int>(lambda.size()) != N_ || static_cast<int>(free_vals.size()) != m_)
            throw config_error("SupportConstraints::solve: wrong input sizes");
        const int U = static_cast<int>(triangle_size(N_ - 1));
        std::vector<std::vector<cplx>> A; // augmented rows, U + 1 columns
        auto unknown = [](int n, int i) { return static_cast<int>(flat_index(n, i)); };
        for (const auto& r : rel_) {
            std::vector<cplx> row(static_cast<std::size_t>(U + 1), 0.0);
            row[static_cast<std::size_t>(unknown(r.n, r.i))] += 1.0;
            cplx rhs = r.offset * hbar;
            for (const auto& e : r.rhs) {
                if (e.n == N_)
                    rhs += e.coef * lambda[static_cast<std::size_t>(e.i - 1)];
                else
                    row[static_cast<std::size_t>(unknown(e.n, e.i))] -= e.coef;
            }
            row[static_cast<std::size_t>(U)] = rhs;
            A.push_back(std::move(row));
        }
        for (int i = 1; i <= m_; ++i) {
            std::vector<cplx> row(static_cast<std::size_t>(U + 1), 0.0);
            row[static_cast<std::size_t>(unknown(N_ - 1, i))] = 1.0;
            row[static_cast<std::size_t>(U)] = free_vals[static_cast<std::size_t>(i - 1)];
            A.push_back(std::move(row));
        }

        // Gauss-Jordan with partial pivoting.
        const std::size_t R = A.size();
        std::size_t prow = 0;
        std::vector<int> pivot_col;
        for (int c = 0; c < U && prow < R; ++c) {
            std::size_t best = prow;
            for (std::size_t r = prow + 1; r < R; ++r)
                if (std::abs(A[r][static_cast<std::size_t>(c)]) > std::abs(A[best][static_cast<std::size_t>(c)]))
                    best = r;
            if (std::abs(A[best][static_cast<std::size_t>(c)]) < 1e-12)
                continue;
            std::swap(A[prow], A[best]);
            const cplx piv = A[prow][static_cast<std::size_t>(c)];
            for (auto& v : A[prow])
                v /= piv;
            for (std::size_t r = 0; r < R; ++r) {
                if (r == prow)
                    continue;
                const cplx f = A[r][static_cast<std::size_t>(c)];
                if (f == cplx{0.0, 0.0})
                    continue;
                for (std::size_t q = 0; q <= static_cast<std::size_t>(U); ++q)
                    A[r][q] -= f * A[prow][q];
            }
            pivot_col.push_back(c);
            ++prow;
        }
        for (std::size_t r = prow; r < R; ++r)
            if (std::abs(A[r][static_cast<std::size_t>(U)]) > 1e-9 * (1.0 + hbar))
                throw config_error("support constraints are inconsistent");
        if (static_cast<int>(pivot_col.size()) != U)
            throw config_error("support constraints leave entries undetermined");

        TriangularArray g(N_);
        auto flat = g.flat();
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            flat[static_cast<std::size_t>(pivot_col[r])] = A[r][static_cast<std::size_t>(U)];
        for (int j = 1; j <= N_; ++j)
            g(N_, j) = lambda[static_cast<std::size_t>(j - 1)];
        return g;
    }

private:
    int m_, N_;
    std::vector<AffineRelation> rel_;
};

/**
 * -(1/hbar) sum_i prod_r (gamma_{m-1,r} - gamma_{m,i} - hbar/2) / prod_{k != i}(gamma_{m,i} - gamma_{m,k}).
 * By the partial-fraction identity this is (-1)^m / hbar for any rows.
 */
inline cplx right_eigen_sum(std::span<const cplx> upper, std::span<const cplx> row_m, double hbar)
{
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < row_m.size(); ++i) {
        cplx num{1.0, 0.0};
        for (const cplx& u : upper)
            num *= u - row_m[i] - hbar / 2;
        s += num / detail::vandermonde_at(row_m, i);
    }
    return -s / hbar;
}

struct SupportCheck {
    std::string name;
    double max_deviation = 0.0;
    std::size_t evaluations = 0;
    bool pass = false;
};

struct RightSupportReport {
    int m = 0, N = 0, samples = 0;
    std::uint64_t seed = 0;
    double hbar = 1.0;
    std::vector<SupportCheck> checks;
    int eigen_sign = 0;             ///< observed sign of hbar * eigenvalue
    bool sign_matches_parity = false; ///< eigen_sign == (-1)^m
    bool pass = false;

    [[nodiscard]] double max_deviation() const
    {
        double d = 0.0;
        for (const auto& c : checks)
            d = std::max(d, c.max_deviation);
        return d;
    }
};

namespace detail {

/// prod_{a <= rows_a, b <= rows_b} Gamma_1(g(ra, a) - g(rb, b) + hbar/2)
inline LogComplex gamma_block(const TriangularArray& g, int ra, int na, int rb, int nb, HbarParam hb)
{
    LogComplex acc = LogComplex::one();
    for (int a = 1; a <= na; ++a)
        for (int b = 1; b <= nb; ++b)
            acc *= gamma1(g(ra, a) - g(rb, b) + hb.value() / 2, hb);
    return acc;
}

inline double rel_dev(cplx a, cplx b)
{
    const double d = std::max(std::abs(a), std::abs(b));
    return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

} // namespace detail

/**
 * Pointwise identities behind the right-vector equations, on the support:
 *   a1: Gamma_1 block of rows (N-1, N) under gamma_{N-1,i} -> gamma_{N-1,i} - hbar
 *   a2: Gamma_1 block of rows (m-1, m) under gamma_{m,i} -> gamma_{m,i} - hbar
 *   a3: same block under the joint shift of gamma_{m-1,j} and gamma_{m,i}
 *   b:  prod_{j != i}(gamma_{r-1,i} - gamma_{r,j} - hbar/2) = prod_{k != i}(gamma_{r,i} - gamma_{r,k} - hbar), m < r < N
 *   c:  hbar * right_eigen_sum = +-1 (sign recorded)
 *   c2: sum_i prod_{r != r'}(gamma_{m-1,r} - gamma_{m,i} + hbar/2) / prod_{k != i}(gamma_{m,i} - gamma_{m,k}) = 0
 */
inline RightSupportReport verify_right_support_relations(int m, int N, int samples, std::uint64_t seed,
                                                         double hbar = 1.0)
{
    if (m < 2 || m >= N)
        throw config_error("verify_right_support_relations: require 2 <= m < N");
    if (samples < 1)
        throw config_error("verify_right_support_relations: samples must be >= 1");
    const HbarParam hb{hbar};
    const SupportConstraints sc(m, N);

    RightSupportReport rep{m, N, samples, seed, hbar, {}, 0, false, true};
    SupportCheck a1{"shift_gamma_1"}, a2{"shift_gamma_2"}, a3{"shift_gamma_3"}, b{"delta_measure"},
        c{"eigenvalue"}, c2{"eigen_vanishing"};
    bool sign_consistent = true;

    for (int s = 0; s < samples; ++s) {
        auto rng = sample_rng(seed, 200, static_cast<std::uint64_t>(s));
        for (int tries = 0;; ++tries) {
            if (tries >= max_resample)
                throw convergence_error("verify_right_support_relations: no non-singular sample");
            std::vector<cplx> lambda, fv;
            std::uniform_real_distribution<double> u(-1.5, 1.5);
            for (int j = 0; j < N; ++j)
                lambda.emplace_back(u(rng), 0.0);
            for (int i = 0; i < m; ++i)
                fv.push_back(random_complex(rng, 1.5));
            const TriangularArray g = sc.solve(lambda, fv, hbar);
            if (!rows_separated(g, hbar, 0.05, m, m))
                continue;

            SupportCheck ta1 = a1, ta2 = a2, ta3 = a3, tb = b, tc = c, tc2 = c2;
            int sg = 0;
            try {
                const LogComplex G1 = detail::gamma_block(g, N - 1, m, N, N, hb);
                for (int i = 1; i <= m; ++i) {
                    const TriangularArray gs = Shift::unit(N, N - 1, i, -1).apply(g, hbar);
                    cplx f{1.0, 0.0};
                    for (int j = 1; j <= N; ++j)
                        f /= g(N - 1, i) - g(N, j) - hbar / 2;
                    const LogComplex lhs = detail::gamma_block(gs, N - 1, m, N, N, hb) / G1;
                    ta1.max_deviation = std::max(ta1.max_deviation, relative_difference(lhs, LogComplex::from_complex(f)));
                    ++ta1.evaluations;
                }

                const LogComplex G2 = detail::gamma_block(g, m - 1, m - 1, m, m, hb);
                for (int i = 1; i <= m; ++i) {
                    const TriangularArray gs = Shift::unit(N, m, i, -1).apply(g, hbar);
                    cplx f{1.0, 0.0};
                    for (int r = 1; r <= m - 1; ++r)
                        f *= g(m - 1, r) - g(m, i) + hbar / 2;
                    const LogComplex lhs = detail::gamma_block(gs, m - 1, m - 1, m, m, hb) / G2;
                    ta2.max_deviation = std::max(ta2.max_deviation, relative_difference(lhs, LogComplex::from_complex(f)));
                    ++ta2.evaluations;
                }
                for (int j = 1; j <= m - 1; ++j)
                    for (int i = 1; i <= m; ++i) {
                        const TriangularArray gs =
                            (Shift::unit(N, m - 1, j, -1) + Shift::unit(N, m, i, -1)).apply(g, hbar);
                        cplx f{1.0, 0.0};
                        for (int r = 1; r <= m - 1; ++r)
                            if (r != j)
                                f *= g(m - 1, r) - g(m, i) + hbar / 2;
                        for (int p = 1; p <= m; ++p)
                            if (p != i)
                                f /= g(m - 1, j) - g(m, p) - hbar / 2;
                        const LogComplex lhs = detail::gamma_block(gs, m - 1, m - 1, m, m, hb) / G2;
                        ta3.max_deviation =
                            std::max(ta3.max_deviation, relative_difference(lhs, LogComplex::from_complex(f)));
                        ++ta3.evaluations;
                    }
            } catch (const pole_error&) {
                continue;
            }

            for (int r = m + 1; r <= N - 1; ++r)
                for (int i = 1; i <= r - 1; ++i) {
                    cplx lhs{1.0, 0.0}, rhs{1.0, 0.0};
                    for (int j = 1; j <= r; ++j)
                        if (j != i) {
                            lhs *= g(r - 1, i) - g(r, j) - hbar / 2;
                            rhs *= g(r, i) - g(r, j) - hbar;
                        }
                    tb.max_deviation = std::max(tb.max_deviation, detail::rel_dev(lhs, rhs));
                    ++tb.evaluations;
                }

            const cplx ev = right_eigen_sum(g.row(m - 1), g.row(m), hbar) * hbar;
            sg = ev.real() >= 0.0 ? 1 : -1;
            tc.max_deviation = std::max(tc.max_deviation, std::abs(ev - static_cast<double>(sg)));
            ++tc.evaluations;

            for (int rp = 1; rp <= m - 1; ++rp) {
                cplx sum{0.0, 0.0};
                double scale = 0.0;
                const auto row_m = g.row(m);
                for (int i = 1; i <= m; ++i) {
                    cplx num{1.0, 0.0};
                    for (int r = 1; r <= m - 1; ++r)
                        if (r != rp)
                            num *= g(m - 1, r) - g(m, i) + hbar / 2;
                    const cplx t = num / detail::vandermonde_at(row_m, static_cast<std::size_t>(i - 1));
                    sum += t;
                    scale += std::abs(t);
                }
                tc2.max_deviation = std::max(tc2.max_deviation, scale == 0.0 ? 0.0 : std::abs(sum) / scale);
                ++tc2.evaluations;
            }

            a1 = ta1, a2 = ta2, a3 = ta3, b = tb, c = tc, c2 = tc2;
            if (rep.eigen_sign == 0)
                rep.eigen_sign = sg;
            else if (sg != rep.eigen_sign)
                sign_consistent = false;
            break;
        }
    }

    for (auto* ck : {&a1, &a2, &a3, &b, &c, &c2}) {
        ck->pass = ck->max_deviation <= whittaker_tol;
        if (ck == &c)
            ck->pass = ck->pass && sign_consistent;
        rep.pass = rep.pass && ck->pass;
        rep.checks.push_back(*ck);
    }
    rep.sign_matches_parity = rep.eigen_sign == ((m % 2 == 0) ? 1 : -1);
    return rep;
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_WHITTAKER_HPP
