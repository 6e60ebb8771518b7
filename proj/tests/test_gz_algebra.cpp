#include "grwhit/gz.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace grwhit::gz;
using grwhit::HbarParam;

namespace {

constexpr double hbar = 1.0;

struct Fixture {
    std::vector<TestFunction> fns;
    std::vector<TriangularArray> arrays;
};

Fixture fixture(int N, int nf, int na, std::uint64_t seed, double hb = hbar)
{
    Fixture f;
    for (int k = 0; k < nf; ++k) {
        auto rng = sample_rng(seed, 1, static_cast<std::uint64_t>(k));
        f.fns.emplace_back(random_test_function(N, rng));
    }
    for (int k = 0; k < na; ++k) {
        auto rng = sample_rng(seed, 2, static_cast<std::uint64_t>(k));
        f.arrays.push_back(random_array(N, hb, rng));
    }
    return f;
}

double max_deviation(const DifferenceOperator& A, const DifferenceOperator& B, const Fixture& fx)
{
    double d = 0.0;
    for (const auto& f : fx.fns)
        for (const auto& g : fx.arrays)
            d = std::max(d, operator_deviation(A, B, f, g));
    return d;
}

TriangularArray array_of(int N, const std::vector<cplx>& flat)
{
    TriangularArray g(N);
    std::copy(flat.begin(), flat.end(), g.flat().begin());
    return g;
}

const TestFunction one = [](const TriangularArray&) { return cplx{1.0, 0.0}; };

} // namespace

TEST(Generators, Examples)
{
    const auto g = array_of(2, {cplx{0.3, 0.1}, cplx{-0.7, 0.2}, cplx{0.9, -0.4}});
    const auto fx = fixture(2, 1, 1, 3);
    const auto& f = fx.fns[0];
    EXPECT_LT(oracle::rel(gen(GenKind::cartan, 1, 2, hbar).apply(f, g), g(1, 1) / hbar * f(g)), 1e-14);

    const cplx want = -(g(1, 1) - g(2, 1) - hbar / 2) * (g(1, 1) - g(2, 2) - hbar / 2) / hbar;
    EXPECT_LT(oracle::rel(gen(GenKind::raise, 1, 2, hbar).apply(one, g), want), 1e-14);
    EXPECT_LT(oracle::rel(gen(GenKind::lower, 1, 2, hbar).apply(one, g), 1.0 / hbar), 1e-14);
    EXPECT_THROW(gen(GenKind::raise, 2, 2, hbar), grwhit::config_error);
}

TEST(Generators, CommutatorOfItselfVanishes)
{
    const auto fx = fixture(3, 5, 5, 4);
    const auto A = gen(GenKind::raise, 1, 3, hbar);
    for (const auto& f : fx.fns)
        for (const auto& g : fx.arrays) {
            const auto r = commutator(A, A).apply_scaled(f, g);
            EXPECT_LE(std::abs(r.value), 1e-14 * r.scale);
        }
    const auto B = gen(GenKind::lower, 2, 3, hbar);
    EXPECT_LT(max_deviation(commutator(B, B), multiplication(3, hbar, [](const TriangularArray&) { return cplx{}; }),
                            fx),
              1e-13);
}

TEST(Generators, GlRelations)
{
    for (int N = 2; N <= 4; ++N) {
        const auto fx = fixture(N, 6, 6, 10 + static_cast<std::uint64_t>(N));
        for (int n = 1; n < N; ++n) {
            const auto lhs = commutator(gen(GenKind::raise, n, N, hbar), gen(GenKind::lower, n, N, hbar));
            const auto rhs = gen(GenKind::cartan, n, N, hbar) - gen(GenKind::cartan, n + 1, N, hbar);
            EXPECT_LT(max_deviation(lhs, rhs, fx), 1e-10) << "N = " << N << " n = " << n;
        }
    }
}

TEST(Generators, SerreFarCommute)
{
    const int N = 4;
    const auto fx = fixture(N, 6, 6, 12);
    const auto Z = multiplication(N, hbar, [](const TriangularArray&) { return cplx{}; });
    EXPECT_LT(max_deviation(commutator(gen(GenKind::raise, 1, N, hbar), gen(GenKind::raise, 3, N, hbar)), Z, fx),
              1e-10);
    EXPECT_LT(max_deviation(commutator(gen(GenKind::lower, 1, N, hbar), gen(GenKind::lower, 3, N, hbar)), Z, fx),
              1e-10);
    EXPECT_LT(max_deviation(commutator(gen(GenKind::raise, 1, N, hbar), gen(GenKind::lower, 3, N, hbar)), Z, fx),
              1e-10);
}

TEST(Generators, CartanActsByWeight)
{
    // [E_nn, E_{n,n+1}] = E_{n,n+1}
    const int N = 3;
    const auto fx = fixture(N, 4, 4, 13);
    for (int n = 1; n < N; ++n) {
        const auto e = gen(GenKind::raise, n, N, hbar);
        EXPECT_LT(max_deviation(commutator(gen(GenKind::cartan, n, N, hbar), e), e, fx), 1e-10);
    }
}

TEST(BuildEnN, Examples)
{
    for (int N = 2; N <= 5; ++N) {
        const auto fx = fixture(N, 4, 4, 20 + static_cast<std::uint64_t>(N));
        EXPECT_LT(max_deviation(build_EnN(N - 1, N, hbar), gen(GenKind::raise, N - 1, N, hbar), fx), 1e-10);
    }
    const auto fx3 = fixture(3, 6, 6, 30);
    EXPECT_LT(max_deviation(build_EnN(1, 3, hbar),
                            commutator(gen(GenKind::raise, 1, 3, hbar), gen(GenKind::raise, 2, 3, hbar)), fx3),
              1e-10);
    const auto fx4 = fixture(4, 6, 6, 31);
    EXPECT_LT(max_deviation(build_EnN(2, 4, hbar),
                            commutator(gen(GenKind::raise, 2, 4, hbar), gen(GenKind::raise, 3, 4, hbar)), fx4),
              1e-10);
    EXPECT_THROW(build_EnN(3, 3, hbar), grwhit::config_error);
}

TEST(BuildEnN, AllLayersOtherHbar)
{
    const double hb = 0.7;
    for (int N = 3; N <= 5; ++N) {
        const auto fx = fixture(N, 3, 3, 40 + static_cast<std::uint64_t>(N), hb);
        for (int n = 1; n < N; ++n)
            EXPECT_LT(max_deviation(build_EnN(n, N, hb), nested_commutator_EnN(n, N, hb), fx), 1e-9)
                << "N = " << N << " n = " << n;
    }
}

TEST(Twist, Examples)
{
    const auto id = Permutation::identity(4);
    EXPECT_EQ(twist(2, 3, id, hbar).resolved, std::make_pair(2, 3));

    for (int N = 4; N <= 5; ++N) {
        const int m = 3;
        const auto w = coxeter_element(m - 1, N);
        EXPECT_EQ(twist(2, 1, w, hbar).resolved, std::make_pair(1, m));
        EXPECT_EQ(twist(m + 1, m, w, hbar).resolved, std::make_pair(m + 1, m - 1));
        EXPECT_EQ(twist(1, N, w, hbar).resolved, std::make_pair(m, N));
        EXPECT_EQ(twist(m, N, w, hbar).resolved, std::make_pair(m - 1, N));
    }
    const auto c = coxeter_element(2, 4);
    EXPECT_EQ(c.image, (std::vector<int>{2, 3, 1, 4}));
    EXPECT_EQ(c * c.inverse(), Permutation::identity(4));
}

TEST(Twist, OperatorMatchesElementary)
{
    const int N = 4;
    const auto fx = fixture(N, 3, 3, 50);
    const auto w = coxeter_element(2, N);
    EXPECT_LT(max_deviation(twist(2, 1, w, hbar).op, elementary(1, 3, N, hbar), fx), 1e-12);
}

TEST(Measure, AdjointOfMultiplicationIsItself)
{
    const int N = 4;
    const auto fx = fixture(N, 3, 3, 60);
    const auto M = multiplication(N, hbar, [](const TriangularArray& g) { return g(2, 1) * g(3, 2) + 1.0; });
    EXPECT_LT(max_deviation(adjoint(M), M, fx), 1e-15);
}

TEST(Measure, AdjointIsInvolution)
{
    const int N = 4;
    const auto fx = fixture(N, 4, 4, 61);
    for (int n = 1; n < N; ++n) {
        const auto E = gen(GenKind::raise, n, N, hbar);
        EXPECT_LT(max_deviation(adjoint(adjoint(E)), E, fx), 1e-12);
        const auto F = gen(GenKind::lower, n, N, hbar);
        EXPECT_LT(max_deviation(adjoint(adjoint(F)), F, fx), 1e-12);
    }
}

TEST(Measure, ShiftRatioMatchesDirectQuotient)
{
    const int N = 4;
    const double hb = 0.8;
    const GZMeasureFn mu(N, hb);
    for (int k = 0; k < 20; ++k) {
        auto rng = sample_rng(62, 0, static_cast<std::uint64_t>(k));
        const auto g = random_array(N, hb, rng);
        Shift t(N);
        t.at(2, 1) = 1;
        t.at(3, 2) = -2;
        t.at(3, 3) = 1;
        const cplx direct = (mu.value(t.apply(g, hb)) / mu.value(g)).value();
        EXPECT_LT(oracle::rel(mu.shift_ratio(g, t), direct), 1e-11);
    }
}

TEST(Measure, ZeroStructure)
{
    const int N = 3;
    const GZMeasureFn mu(N, hbar);
    auto rng = sample_rng(63, 0, 0);
    auto g = random_array(N, hbar, rng);
    EXPECT_FALSE(mu.value(g).is_zero());
    g(2, 2) = g(2, 1) + 2.0 * hbar; // gamma_21 - gamma_22 = -2 hbar
    EXPECT_TRUE(mu.value(g).is_zero());
    g(2, 2) = g(2, 1) - 2.0 * hbar; // the mirrored ordered pair hits -2 hbar
    EXPECT_TRUE(mu.value(g).is_zero());
    g(2, 2) = g(2, 1) - 2.5 * hbar;
    EXPECT_FALSE(mu.value(g).is_zero());
}

TEST(PsiL, ZeroAndValue)
{
    TriangularArray g(3);
    g(1, 1) = 0.0;
    g(2, 1) = 0.3;
    g(2, 2) = -0.4;
    const cplx want = 1.0 / (std::tgamma(0.2) * std::tgamma(0.9));
    EXPECT_LT(oracle::rel(psi_L(2, g, hbar), want), 1e-13);

    g(2, 1) = g(1, 1) + hbar / 2;
    EXPECT_EQ(psi_L(2, g, hbar), cplx(0.0, 0.0));
}

TEST(LeftWhittaker, PassesAndRecordsSigns)
{
    const auto r23 = verify_left_whittaker(2, 3, 10, 7);
    EXPECT_TRUE(r23.pass);
    for (const auto& rel : r23.relations)
        EXPECT_EQ(rel.sign, 1) << "k = " << rel.k;
    for (auto [m, N] : {std::pair{2, 4}, {3, 4}, {2, 5}}) {
        const auto r = verify_left_whittaker(m, N, 10, 7);
        EXPECT_TRUE(r.pass) << m << "," << N;
        EXPECT_LT(r.max_deviation(), whittaker_tol);
    }
}

TEST(LeftWhittaker, OtherHbar)
{
    EXPECT_TRUE(verify_left_whittaker(2, 4, 5, 8, 0.6).pass);
}

TEST(LeftWhittaker, DetectsPerturbation)
{
    EXPECT_FALSE(verify_left_whittaker(2, 4, 5, 7, hbar, 1e-6).pass);
}

TEST(RightSupport, ConstraintsSolve)
{
    const SupportConstraints sc(2, 5);
    const std::vector<cplx> lambda{0.9, 0.3, -0.2, -0.8, 0.1};
    const std::vector<cplx> free_vals{cplx{0.2, 0.3}, cplx{-0.5, 0.1}};
    const auto g = sc.solve(lambda, free_vals, hbar);
    for (const auto& r : sc.relations()) {
        cplx rhs = r.offset * hbar;
        for (const auto& e : r.rhs)
            rhs += e.coef * g(e.n, e.i);
        EXPECT_LT(std::abs(g(r.n, r.i) - rhs), 1e-14);
    }
    EXPECT_EQ(g(4, 1), free_vals[0]);
    EXPECT_EQ(g(5, 3), lambda[2]);
}

TEST(RightSupport, EigenSumIsSignedInverseHbar)
{
    std::mt19937_64 rng(64);
    for (int m = 1; m <= 5; ++m) {
        const auto upper = random_points(m - 1, rng);
        const auto row = random_points(m, rng);
        const cplx v = right_eigen_sum(upper, row, 0.9);
        EXPECT_LT(std::abs(v * 0.9 - ((m % 2 == 0) ? 1.0 : -1.0)), 1e-12) << "m = " << m;
    }
}

TEST(RightSupport, Passes)
{
    for (auto [m, N] : {std::pair{2, 4}, {2, 5}, {2, 3}, {3, 4}}) {
        const auto r = verify_right_support_relations(m, N, 50, 9);
        EXPECT_TRUE(r.pass) << m << "," << N;
        EXPECT_TRUE(r.sign_matches_parity);
    }
}

TEST(Combin, Examples)
{
    const std::vector<cplx> g12{1.0, 2.0};
    EXPECT_LT(std::abs(combin1(g12, 1) - 1.0), 1e-15);
    EXPECT_LT(std::abs(combin1(g12, 0)), 1e-15);
    EXPECT_LT(std::abs(combin2(std::vector<cplx>{0.7}, 3.0) - 1.0), 1e-15);
    EXPECT_LT(std::abs(combin2(g12, 3.0) - 1.0), 1e-15);

    std::mt19937_64 rng(70);
    const auto g3 = random_points(3, rng);
    EXPECT_LT(oracle::rel(combin1(g3, 3), g3[0] + g3[1] + g3[2]), 1e-12);
    const auto g4 = random_points(4, rng);
    EXPECT_LT(std::abs(combin2(g4, random_complex(rng, 2.0)) - 1.0), 1e-11);
    EXPECT_THROW(combin1(std::vector<cplx>{1.0, 1.0}, 1), grwhit::config_error);
}

TEST(Combin, HigherPowersAgainstBruteForce)
{
    std::mt19937_64 rng(71);
    for (int n = 1; n <= 5; ++n) {
        const auto g = random_points(n, rng);
        for (int p = 0; p < n + 4; ++p) {
            const cplx want = p < n - 1 ? cplx{0.0, 0.0} : oracle::complete_homogeneous_brute(g, p - n + 1);
            EXPECT_LT(std::abs(combin1(g, p) - want), 1e-11 * std::max(1.0, std::abs(want)))
                << "n = " << n << " p = " << p;
            EXPECT_LT(std::abs(complete_homogeneous(g, p) - oracle::complete_homogeneous_brute(g, p)),
                      1e-11 * std::max(1.0, std::abs(complete_homogeneous(g, p))));
        }
    }
}

TEST(Suites, DefaultsPass)
{
    for (const auto& r : combin_suite(8, 20, 1))
        EXPECT_TRUE(r.pass) << r.name << " " << r.max_deviation;
    for (int N = 2; N <= 4; ++N)
        for (const auto& r : algebra_suite(N, 5, 5, 1))
            EXPECT_TRUE(r.pass) << r.name << " N = " << N << " " << r.max_deviation;
}
