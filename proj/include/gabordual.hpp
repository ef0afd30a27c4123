#pragma once

#include "gabordual/csv.hpp"
#include "gabordual/dual_synthesis.hpp"
#include "gabordual/errors.hpp"
#include "gabordual/finite_frames.hpp"
#include "gabordual/gabor_core.hpp"
#include "gabordual/grid.hpp"
#include "gabordual/quadrature.hpp"
#include "gabordual/rational.hpp"
#include "gabordual/windows.hpp"
