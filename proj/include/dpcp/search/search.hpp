#pragma once

#include "dpcp/search/astar.hpp"
#include "dpcp/search/cabs.hpp"
#include "dpcp/search/propagation.hpp"
#include "dpcp/search/registry.hpp"
