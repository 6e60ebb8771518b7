#ifndef GRWHIT_ERRORS_HPP
#define GRWHIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace grwhit {

/// Invalid parameters or configuration (maps to CLI exit status 2).
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base of all numerical-domain failures (CLI exit status 3).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A gamma argument hit (or came within tolerance of) a pole.
class pole_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Evaluation requested outside the domain of a method.
class domain_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Spectral parameters violate the genericity assumption.
class genericity_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// An iterative procedure (contour growth, quadrature) failed to converge.
class convergence_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

} // namespace grwhit

#endif // GRWHIT_ERRORS_HPP
