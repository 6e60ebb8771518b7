#ifndef GRWHIT_GZ_DIFFERENCE_OPERATOR_HPP
#define GRWHIT_GZ_DIFFERENCE_OPERATOR_HPP

#include "triangular_array.hpp"

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace grwhit::gz {

using Coefficient = std::function<cplx(const TriangularArray&)>;
using TestFunction = std::function<cplx(const TriangularArray&)>;

struct Term {
    Coefficient coeff;
    Shift shift;
};

/// Value of an operator applied to a function, with the roundoff scale sum |term|.
struct Application {
    cplx value{0.0, 0.0};
    double scale = 0.0;
};

/**
 * Finite sum of terms coeff(gamma) * e^{hbar shift . d/dgamma}:
 *
 *   (A f)(gamma) = sum_t coeff_t(gamma) f(gamma + hbar shift_t).
 *
 * Composition multiplies coefficients with the right factor evaluated at
 * the shifted point, which realizes the operator algebra without symbolic
 * manipulation. Terms sharing a shift are not merged; evaluation sums them.
 */
class DifferenceOperator {
public:
    DifferenceOperator(int N, double hbar) : N_(N), hbar_(hbar) {}
    DifferenceOperator(int N, double hbar, std::vector<Term> terms) : N_(N), hbar_(hbar), terms_(std::move(terms)) {}

    [[nodiscard]] int rows() const noexcept { return N_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }

    void add_term(Coefficient c, Shift s) { terms_.push_back({std::move(c), std::move(s)}); }

    [[nodiscard]] Application apply_scaled(const TestFunction& f, const TriangularArray& g) const
    {
        Application r;
        for (const auto& t : terms_) {
            const cplx v = t.coeff(g) * f(t.shift.apply(g, hbar_));
            r.value += v;
            r.scale += std::abs(v);
        }
        return r;
    }

    [[nodiscard]] cplx apply(const TestFunction& f, const TriangularArray& g) const { return apply_scaled(f, g).value; }

    [[nodiscard]] DifferenceOperator scaled(cplx k) const
    {
        DifferenceOperator out(N_, hbar_);
        for (const auto& t : terms_)
            out.add_term([c = t.coeff, k](const TriangularArray& g) { return k * c(g); }, t.shift);
        return out;
    }

    /// (A o B) f = A (B f)
    friend DifferenceOperator compose(const DifferenceOperator& A, const DifferenceOperator& B)
    {
        DifferenceOperator out(A.N_, A.hbar_);
        const double hb = A.hbar_;
        for (const auto& ta : A.terms_)
            for (const auto& tb : B.terms_)
                out.add_term(
                    [ca = ta.coeff, cb = tb.coeff, sa = ta.shift, hb](const TriangularArray& g) {
                        return ca(g) * cb(sa.apply(g, hb));
                    },
                    ta.shift + tb.shift);
        return out;
    }

    friend DifferenceOperator operator+(const DifferenceOperator& A, const DifferenceOperator& B)
    {
        DifferenceOperator out = A;
        out.terms_.insert(out.terms_.end(), B.terms_.begin(), B.terms_.end());
        return out;
    }

    friend DifferenceOperator operator-(const DifferenceOperator& A, const DifferenceOperator& B)
    {
        return A + B.scaled(-1.0);
    }

private:
    int N_;
    double hbar_;
    std::vector<Term> terms_;
};

/// [A, B] = A o B - B o A
inline DifferenceOperator commutator(const DifferenceOperator& A, const DifferenceOperator& B)
{
    return compose(A, B) - compose(B, A);
}

/// Operator with a single multiplication term.
inline DifferenceOperator multiplication(int N, double hbar, Coefficient c)
{
    DifferenceOperator op(N, hbar);
    op.add_term(std::move(c), Shift(N));
    return op;
}

/**
 * Deviation between A f and B f at gamma, relative to max(|Af|, |Bf|), or to
 * the term scale when both sides are (near) zero, as for vanishing commutators.
 */
inline double operator_deviation(const DifferenceOperator& A, const DifferenceOperator& B, const TestFunction& f,
                                 const TriangularArray& g)
{
    const auto a = A.apply_scaled(f, g);
    const auto b = B.apply_scaled(f, g);
    const double diff = std::abs(a.value - b.value);
    double denom = std::max(std::abs(a.value), std::abs(b.value));
    const double scale = a.scale + b.scale;
    if (denom < 1e-6 * scale)
        denom = scale;
    if (denom == 0.0)
        return diff;
    return diff / denom;
}

} // namespace grwhit::gz

#endif // GRWHIT_GZ_DIFFERENCE_OPERATOR_HPP
