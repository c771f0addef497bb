#pragma once

// Convenience header pulling in the whole library.

#include "region_median/errors.hpp"
#include "region_median/geometry.hpp"
#include "region_median/io.hpp"
#include "region_median/kernels.hpp"
#include "region_median/nelder_mead.hpp"
#include "region_median/oracle.hpp"
#include "region_median/residuals.hpp"
#include "region_median/solver.hpp"
#include "region_median/svg.hpp"
#include "region_median/triangle_rules.hpp"
#include "region_median/triangulation.hpp"
#include "region_median/weiszfeld.hpp"
