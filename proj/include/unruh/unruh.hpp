#pragma once

#include "unruh/amplitudes.hpp"
#include "unruh/config.hpp"
#include "unruh/constants.hpp"
#include "unruh/error.hpp"
#include "unruh/estimates.hpp"
#include "unruh/fields.hpp"
#include "unruh/labframe.hpp"
#include "unruh/parallel.hpp"
#include "unruh/quantum_optics.hpp"
#include "unruh/resonant_table.hpp"
#include "unruh/trajectory.hpp"
#include "unruh/vec3.hpp"
