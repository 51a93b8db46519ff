#pragma once

#include "tightpoly/bit_kernel.hpp"
#include "tightpoly/cache.hpp"
#include "tightpoly/coeff_vector.hpp"
#include "tightpoly/criterion.hpp"
#include "tightpoly/escalation.hpp"
#include "tightpoly/parallel.hpp"
#include "tightpoly/polygonal.hpp"
#include "tightpoly/prefix_chain.hpp"
#include "tightpoly/reference.hpp"
#include "tightpoly/run_config.hpp"
#include "tightpoly/serialize.hpp"
#include "tightpoly/tables.hpp"
