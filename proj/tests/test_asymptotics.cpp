#include "grwhit/asymptotics.hpp"
#include "grwhit/mb_quadrature.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using grwhit::CosetRep;
using grwhit::HbarParam;
using grwhit::SpectralData;

namespace {

SpectralData make(int m, int N, std::vector<double> lambda, double x, double hbar = 1.0)
{
    SpectralData s;
    s.m = m;
    s.N = N;
    s.lambda = std::move(lambda);
    s.x = x;
    s.hbar = HbarParam{hbar};
    return s;
}

const double sqrt_pi = std::sqrt(std::numbers::pi);

} // namespace

TEST(Cosets, Enumeration)
{
    const auto c12 = grwhit::enumerate_cosets(1, 2);
    ASSERT_EQ(c12.size(), 2u);
    EXPECT_EQ(c12[0].subset, std::vector<int>{0});
    EXPECT_EQ(c12[1].subset, std::vector<int>{1});
    const auto c23 = grwhit::enumerate_cosets(2, 3);
    ASSERT_EQ(c23.size(), 3u);
    EXPECT_EQ(c23[0].subset, (std::vector<int>{0, 1}));
    EXPECT_EQ(c23[1].subset, (std::vector<int>{0, 2}));
    EXPECT_EQ(c23[2].subset, (std::vector<int>{1, 2}));
    EXPECT_EQ(grwhit::enumerate_cosets(2, 4).size(), 6u);
    EXPECT_EQ(grwhit::roots_of(c23[0], 3).size(), 2u);
}

TEST(Cosets, Coefficients)
{
    const HbarParam h{1.0};
    const std::vector<double> l{0.5, 0.0};
    EXPECT_LT(oracle::rel(grwhit::coset_coefficient({{0}}, l, h).value(), sqrt_pi), 1e-14);
    EXPECT_LT(oracle::rel(grwhit::coset_coefficient({{1}}, l, h).value(), -2.0 * sqrt_pi), 1e-14);
    EXPECT_NEAR(grwhit::coset_coefficient({{0}}, {1.0, 0.0}, h).value().real(), 1.0, 1e-14);
    EXPECT_THROW(grwhit::coset_coefficient({{0}}, {0.0, 1.0}, h), grwhit::pole_error);
}

TEST(LeadingAsymptotic, Examples)
{
    const auto a = grwhit::leading_asymptotic(make(1, 2, {0.5, 0.0}, -5.0)).value();
    EXPECT_LT(oracle::rel(a, sqrt_pi * (std::exp(2.5) - 2.0)), 1e-13);
    EXPECT_NEAR(a.real(), 18.048, 1e-3);
    const auto b = grwhit::leading_asymptotic(make(1, 2, {0.5, 0.0}, 0.0)).value();
    EXPECT_LT(oracle::rel(b, -sqrt_pi), 1e-13);
}

TEST(LeadingAsymptotic, PermutationInvariant)
{
    std::vector<double> l{0.9, 0.3, -0.2, -0.8};
    const auto ref = grwhit::leading_asymptotic(make(2, 4, l, -2.0));
    std::sort(l.begin(), l.end());
    do {
        EXPECT_LT(grwhit::relative_difference(grwhit::leading_asymptotic(make(2, 4, l, -2.0)), ref), 1e-14);
    } while (std::next_permutation(l.begin(), l.end()));
}

TEST(LeadingAsymptotic, RatioApproachesOne)
{
    const auto s = make(1, 2, {0.3, -0.4}, -12.0);
    const auto v = grwhit::eval_mb(s, grwhit::auto_contour(s, 1e-12)).value;
    EXPECT_LT(std::abs((v / grwhit::leading_asymptotic(s)).value() - 1.0), 1e-3);
}
