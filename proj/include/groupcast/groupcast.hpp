#pragma once

#include "cli.hpp"
#include "cutset.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "lattice.hpp"
#include "lp.hpp"
#include "network.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "regions.hpp"
#include "verify.hpp"
