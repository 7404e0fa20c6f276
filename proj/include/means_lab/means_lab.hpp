#pragma once

// Umbrella header.

#include "means_lab/certify.hpp"
#include "means_lab/means.hpp"
#include "means_lab/numerics.hpp"
#include "means_lab/ratio_functions.hpp"
#include "means_lab/series.hpp"
#include "means_lab/sweep.hpp"
