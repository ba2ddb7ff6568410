#pragma once

#include "baire.hpp"
#include "completion.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "extended_real.hpp"
#include "grid.hpp"
#include "hausdorff.hpp"
#include "interval.hpp"
#include "json_io.hpp"
#include "pde.hpp"
#include "piecewise.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "roots.hpp"
