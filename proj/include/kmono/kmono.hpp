#pragma once

#include "kmono/bounds.hpp"
#include "kmono/coloring.hpp"
#include "kmono/combinatorics.hpp"
#include "kmono/construction.hpp"
#include "kmono/erdos_rado.hpp"
#include "kmono/errors.hpp"
#include "kmono/geometry.hpp"
#include "kmono/lifts.hpp"
#include "kmono/linalg.hpp"
#include "kmono/monotone_search.hpp"
#include "kmono/polynomial.hpp"
#include "kmono/rational.hpp"
