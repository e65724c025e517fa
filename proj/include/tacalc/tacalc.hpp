#pragma once

#include "tacalc/error.hpp"
#include "tacalc/scalars.hpp"
#include "tacalc/polynomial.hpp"
#include "tacalc/algebra.hpp"
#include "tacalc/homology.hpp"
#include "tacalc/complexes.hpp"
#include "tacalc/quadratic_dual.hpp"
#include "tacalc/homotopy_lie.hpp"
#include "tacalc/pfaffian_complex.hpp"
#include "tacalc/io.hpp"
#include "tacalc/report.hpp"
