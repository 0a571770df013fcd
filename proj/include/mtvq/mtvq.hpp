#pragma once

// Umbrella header.

#include "error.hpp"
#include "exact_solver.hpp"
#include "graph_io.hpp"
#include "hamiltonian.hpp"
#include "presets.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "spsa.hpp"
#include "statevector.hpp"
#include "topology.hpp"
#include "vqe.hpp"
