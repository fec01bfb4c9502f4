#pragma once

#include "curve_families.hpp"
#include "curves.hpp"
#include "diffgeo.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "null_curves.hpp"
#include "pea.hpp"
#include "random.hpp"
#include "report.hpp"
#include "surfaces.hpp"
