#pragma once

#include "pdmwell/complexity.hpp"
#include "pdmwell/deformed_space.hpp"
#include "pdmwell/errors.hpp"
#include "pdmwell/info_measures.hpp"
#include "pdmwell/numerics.hpp"
#include "pdmwell/special_functions.hpp"
#include "pdmwell/well_model.hpp"
