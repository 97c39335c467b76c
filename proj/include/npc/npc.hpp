#pragma once

#include "bits.hpp"
#include "bounds.hpp"
#include "cover.hpp"
#include "heuristics.hpp"
#include "instance.hpp"
#include "milp.hpp"
#include "oracle.hpp"
#include "pcenter.hpp"
#include "solver.hpp"
