#pragma once

#include "logzono/bitmatrix.hpp"
#include "logzono/bitvec.hpp"
#include "logzono/dsl.hpp"
#include "logzono/errors.hpp"
#include "logzono/exact_reach.hpp"
#include "logzono/explicit_set.hpp"
#include "logzono/intersection.hpp"
#include "logzono/lfsr.hpp"
#include "logzono/matrix_zonotope.hpp"
#include "logzono/reach.hpp"
#include "logzono/serialization.hpp"
#include "logzono/zonotope.hpp"
