#ifndef GRWHIT_ASYMPTOTICS_HPP
#define GRWHIT_ASYMPTOTICS_HPP

// Leading x -> -infinity behaviour: a sum over S_N / (S_m x S_{N-m}), realized
// as m-subsets S of {0..N-1} (the minimal-length coset representatives).

#include "errors.hpp"
#include "log_complex.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace grwhit {

/// One coset of S_N / W_m, stored as the sorted subset {sigma(1), ..., sigma(m)} (0-based).
struct CosetRep {
    std::vector<int> subset;

    [[nodiscard]] bool contains(int j) const
    {
        for (int v : subset)
            if (v == j)
                return true;
        return false;
    }

    friend bool operator==(const CosetRep&, const CosetRep&) = default;
};

/// Pairs (i, j), i in S, j not in S: the image of the roots x_i - x_j, i <= m < j.
using RootSet = std::vector<std::pair<int, int>>;

inline RootSet roots_of(const CosetRep& S, int N)
{
    RootSet r;
    for (int i : S.subset)
        for (int j = 0; j < N; ++j)
            if (!S.contains(j))
                r.emplace_back(i, j);
    return r;
}

/// All m-subsets of {0..N-1} in lexicographic order; C(N, m) entries.
inline std::vector<CosetRep> enumerate_cosets(int m, int N)
{
    if (m < 1 || m >= N)
        throw config_error("enumerate_cosets: require 1 <= m < N");
    std::vector<CosetRep> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back({cur});
            return;
        }
        for (int j = start; j < N; ++j) {
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// prod_{i in S, j not in S} Gamma_1(lambda_i - lambda_j | hbar).
inline LogComplex coset_coefficient(const CosetRep& S, const std::vector<double>& lambda, HbarParam hbar)
{
    const int N = static_cast<int>(lambda.size());
    LogComplex acc = LogComplex::one();
    for (const auto& [i, j] : roots_of(S, N)) {
        try {
            acc *= gamma1(lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)], hbar);
        } catch (const pole_error&) {
            throw pole_error("coset coefficient: Gamma_1(lambda_" + std::to_string(i + 1) + " - lambda_" +
                             std::to_string(j + 1) + ") is at a pole");
        }
    }
    return acc;
}

/**
 * hbar^m m! sum_S e^{-(x/hbar) sum_{i in S} lambda_i} coset_coefficient(S).
 *
 * The hbar^m is the residue normalization of the (2 pi i)^{-m} measure; at
 * hbar = 1 this is exactly m! sum_sigma e^{-x sigma.omega_m(lambda)} (sigma.c_m)(lambda).
 */
inline LogComplex leading_asymptotic(const SpectralData& s)
{
    s.validate();
    const double hb = s.hbar.value();
    LogSum sum;
    for (const auto& S : enumerate_cosets(s.m, s.N)) {
        double omega = 0.0;
        for (int i : S.subset)
            omega += s.lambda[static_cast<std::size_t>(i)];
        sum.add(LogComplex(-(s.x / hb) * omega, 0.0) * coset_coefficient(S, s.lambda, s.hbar));
    }
    return sum.result() * LogComplex(s.m * s.hbar.log() + std::lgamma(s.m + 1.0), 0.0);
}

} // namespace grwhit

#endif // GRWHIT_ASYMPTOTICS_HPP
