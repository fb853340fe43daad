#pragma once

// Umbrella header for the whole library.

#include "zml/util.hpp"
#include "zml/parallel.hpp"
#include "zml/gauss.hpp"
#include "zml/chebyshev.hpp"
#include "zml/special_functions.hpp"
#include "zml/zero_store.hpp"
#include "zml/dirichlet_poly.hpp"
#include "zml/approx.hpp"
#include "zml/gap_stats.hpp"
#include "zml/moments.hpp"
#include "zml/experiments.hpp"
