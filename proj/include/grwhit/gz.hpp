#ifndef GRWHIT_GZ_HPP
#define GRWHIT_GZ_HPP

#include "gz/combinatorics.hpp"
#include "gz/difference_operator.hpp"
#include "gz/generators.hpp"
#include "gz/measure.hpp"
#include "gz/sampling.hpp"
#include "gz/suites.hpp"
#include "gz/triangular_array.hpp"
#include "gz/whittaker.hpp"

#endif // GRWHIT_GZ_HPP
