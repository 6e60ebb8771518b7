#ifndef GRWHIT_GZ_TRIANGULAR_ARRAY_HPP
#define GRWHIT_GZ_TRIANGULAR_ARRAY_HPP

#include "../errors.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace grwhit::gz {

using cplx = std::complex<double>;

/// Flat position of gamma_{n,i} (1 <= i <= n) in row-major triangular storage.
constexpr std::size_t flat_index(int n, int i) noexcept
{
    return static_cast<std::size_t>((n - 1) * n / 2 + (i - 1));
}

constexpr std::size_t triangle_size(int N) noexcept { return static_cast<std::size_t>(N * (N + 1) / 2); }

/**
 * Gelfand-Zetlin pattern gamma_{n,i}, 1 <= i <= n <= N, complex entries.
 * Row N holds lambda. Indices are 1-based to match the usual GZ notation.
 */
class TriangularArray {
public:
    explicit TriangularArray(int N = 1) : N_(N), data_(triangle_size(N)) {}

    [[nodiscard]] int rows() const noexcept { return N_; }

    cplx& operator()(int n, int i)
    {
        check(n, i);
        return data_[flat_index(n, i)];
    }
    [[nodiscard]] cplx operator()(int n, int i) const
    {
        check(n, i);
        return data_[flat_index(n, i)];
    }

    [[nodiscard]] std::span<const cplx> row(int n) const
    {
        check(n, 1);
        return {data_.data() + flat_index(n, 1), static_cast<std::size_t>(n)};
    }

    [[nodiscard]] std::span<const cplx> flat() const noexcept { return data_; }
    [[nodiscard]] std::span<cplx> flat() noexcept { return data_; }

private:
    void check(int n, int i) const
    {
        if (n < 1 || n > N_ || i < 1 || i > n)
            throw config_error("triangular array index (" + std::to_string(n) + "," + std::to_string(i) +
                               ") out of range for N = " + std::to_string(N_));
    }

    int N_;
    std::vector<cplx> data_;
};

/// Integer shift over array positions: gamma_{n,i} -> gamma_{n,i} + shift_{n,i} hbar.
class Shift {
public:
    explicit Shift(int N = 1) : N_(N), v_(triangle_size(N), 0) {}

    static Shift unit(int N, int n, int i, int amount)
    {
        Shift s(N);
        s.at(n, i) = amount;
        return s;
    }

    [[nodiscard]] int rows() const noexcept { return N_; }
    int& at(int n, int i) { return v_[flat_index(n, i)]; }
    [[nodiscard]] int at(int n, int i) const { return v_[flat_index(n, i)]; }

    [[nodiscard]] bool is_zero() const noexcept
    {
        for (int x : v_)
            if (x != 0)
                return false;
        return true;
    }

    friend Shift operator+(Shift a, const Shift& b)
    {
        for (std::size_t k = 0; k < a.v_.size(); ++k)
            a.v_[k] += b.v_[k];
        return a;
    }
    friend Shift operator-(Shift a)
    {
        for (int& x : a.v_)
            x = -x;
        return a;
    }
    friend bool operator==(const Shift&, const Shift&) = default;

    /// gamma + hbar * shift
    [[nodiscard]] TriangularArray apply(const TriangularArray& g, double hbar) const
    {
        TriangularArray out = g;
        auto dst = out.flat();
        for (std::size_t k = 0; k < v_.size(); ++k)
            if (v_[k] != 0)
                dst[k] += hbar * static_cast<double>(v_[k]);
        return out;
    }

private:
    int N_;
    std::vector<int> v_;
};

} // namespace grwhit::gz

#endif // GRWHIT_GZ_TRIANGULAR_ARRAY_HPP
