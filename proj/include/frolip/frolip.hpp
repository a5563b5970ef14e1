#pragma once

#include "frolip/cones.hpp"
#include "frolip/equivalence.hpp"
#include "frolip/exponent_lattice.hpp"
#include "frolip/frobenius.hpp"
#include "frolip/growth.hpp"
#include "frolip/io.hpp"
#include "frolip/selfsimilar.hpp"
