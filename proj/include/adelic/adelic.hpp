#pragma once

#include "adelic/error.hpp"
#include "adelic/number_core.hpp"
#include "adelic/quadrature.hpp"
#include "adelic/special.hpp"
#include "adelic/schwartz_profile.hpp"
#include "adelic/groupoid.hpp"
#include "adelic/semilocal.hpp"
#include "adelic/summation.hpp"
#include "adelic/valuation_thermo.hpp"
#include "adelic/finite_field.hpp"
#include "adelic/function_field.hpp"
#include "adelic/test_function.hpp"
#include "adelic/zeros.hpp"
#include "adelic/trace_formula.hpp"
#include "adelic/pairing.hpp"
#include "adelic/bc_endomotive.hpp"
