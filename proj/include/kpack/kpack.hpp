#pragma once

// Umbrella header: extremal packings on non-orientable hyperbolic surfaces.

#include "catalog.hpp"
#include "complex.hpp"
#include "covers.hpp"
#include "errors.hpp"
#include "feasibility.hpp"
#include "grafting.hpp"
#include "hyper_geom.hpp"
#include "json_io.hpp"
#include "tri_group.hpp"
