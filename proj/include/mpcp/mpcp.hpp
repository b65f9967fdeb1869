#pragma once

// Core-periphery detection in multiplex networks: nonlinear spectral solver,
// QUBO-style quality scoring, random-walk persistence profiles, baselines,
// generators and the experiment harness. Header-only; everything lives in
// namespace mpcp.

#include "baselines.hpp"
#include "components.hpp"
#include "csv.hpp"
#include "edge_list_io.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "harness.hpp"
#include "multiplex.hpp"
#include "numeric.hpp"
#include "quality.hpp"
#include "rng.hpp"
#include "solver.hpp"
