#ifndef GRWHIT_GRWHIT_HPP
#define GRWHIT_GRWHIT_HPP

// Numerical core; the CLI layer lives under cli/ and needs the vendored JSON header.

#include "asymptotics.hpp"
#include "errors.hpp"
#include "gz.hpp"
#include "log_complex.hpp"
#include "mb_quadrature.hpp"
#include "residue.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"
#include "version.hpp"

#endif // GRWHIT_GRWHIT_HPP
