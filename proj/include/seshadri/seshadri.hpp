#pragma once

#include "seshadri/bounds.hpp"
#include "seshadri/engine.hpp"
#include "seshadri/error.hpp"
#include "seshadri/exact_arith.hpp"
#include "seshadri/family.hpp"
#include "seshadri/lattice.hpp"
#include "seshadri/models.hpp"
#include "seshadri/report.hpp"
#include "seshadri/surface.hpp"
