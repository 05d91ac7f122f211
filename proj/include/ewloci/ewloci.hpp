#pragma once

#include "ewloci/error.hpp"
#include "ewloci/perm.hpp"
#include "ewloci/cyclic_data.hpp"
#include "ewloci/flat_surface.hpp"
#include "ewloci/surface_io.hpp"
#include "ewloci/affine.hpp"
#include "ewloci/cylinders.hpp"
#include "ewloci/cover_builder.hpp"
#include "ewloci/blocking.hpp"
#include "ewloci/geminal.hpp"
