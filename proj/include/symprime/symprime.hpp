#pragma once

#include "symprime/diagnostics.hpp"
#include "symprime/error.hpp"
#include "symprime/gcdsets.hpp"
#include "symprime/graph.hpp"
#include "symprime/number_theory.hpp"
#include "symprime/sieve.hpp"
#include "symprime/sieve_cache.hpp"
#include "symprime/symmetry.hpp"
