#pragma once

// Umbrella header: witness construction, detector-loophole thresholds and
// click simulation for bipartite entanglement detection.

#include "entwit/basis.hpp"
#include "entwit/eig.hpp"
#include "entwit/errors.hpp"
#include "entwit/io.hpp"
#include "entwit/loophole.hpp"
#include "entwit/matrix.hpp"
#include "entwit/rng.hpp"
#include "entwit/states.hpp"
#include "entwit/tolerances.hpp"
#include "entwit/version.hpp"
#include "entwit/witness.hpp"
