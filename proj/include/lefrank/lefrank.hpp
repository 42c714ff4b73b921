#pragma once

#include "lefrank/cohomology.hpp"
#include "lefrank/constructions.hpp"
#include "lefrank/error.hpp"
#include "lefrank/filtration.hpp"
#include "lefrank/graded.hpp"
#include "lefrank/json_io.hpp"
#include "lefrank/matrix.hpp"
#include "lefrank/rational.hpp"
#include "lefrank/spectral.hpp"
#include "lefrank/subspace.hpp"
