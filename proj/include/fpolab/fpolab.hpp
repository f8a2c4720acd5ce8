#pragma once

// Umbrella header: the whole library.

#include "fpolab/canon.hpp"
#include "fpolab/core.hpp"
#include "fpolab/diagram.hpp"
#include "fpolab/dot.hpp"
#include "fpolab/enumerate.hpp"
#include "fpolab/json_io.hpp"
#include "fpolab/quantum.hpp"
#include "fpolab/random.hpp"
#include "fpolab/search.hpp"
#include "fpolab/spacetime.hpp"
#include "fpolab/version.hpp"
