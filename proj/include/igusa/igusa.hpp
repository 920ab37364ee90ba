#pragma once

// Igusa local zeta functions of non-degenerate polynomial mappings and rational functions.

#include "types.hpp"
#include "polynomial.hpp"
#include "parser.hpp"
#include "mapping.hpp"
#include "linalg.hpp"
#include "polyhedron.hpp"
#include "fan.hpp"
#include "torus.hpp"
#include "laurent.hpp"
#include "rational.hpp"
#include "zeta.hpp"
#include "poles.hpp"
#include "oracle.hpp"
#include "problem.hpp"
#include "report.hpp"
