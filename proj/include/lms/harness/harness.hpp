#pragma once

#include "export.hpp"
#include "json_io.hpp"
#include "spec.hpp"
#include "sweep.hpp"
#include "verify.hpp"
