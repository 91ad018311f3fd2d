#pragma once

// Compactly supported C-infinity radial basis function toolkit: exact
// derivative-sign certification and sparse scattered-data interpolation.

#include <cinfrbf/bench.hpp>
#include <cinfrbf/bivar_poly.hpp>
#include <cinfrbf/cholesky.hpp>
#include <cinfrbf/csv_io.hpp>
#include <cinfrbf/gram.hpp>
#include <cinfrbf/interpolate.hpp>
#include <cinfrbf/kernel.hpp>
#include <cinfrbf/point_set.hpp>
#include <cinfrbf/positivity.hpp>
#include <cinfrbf/rational.hpp>
#include <cinfrbf/spatial_grid.hpp>
#include <cinfrbf/sturm.hpp>
