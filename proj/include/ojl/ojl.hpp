#pragma once

#include "ojl/anticoncentration.hpp"
#include "ojl/confidence.hpp"
#include "ojl/distortion.hpp"
#include "ojl/distributions.hpp"
#include "ojl/error.hpp"
#include "ojl/montecarlo.hpp"
#include "ojl/projector.hpp"
#include "ojl/random.hpp"
#include "ojl/serialization.hpp"
#include "ojl/specfun.hpp"
#include "ojl/stats.hpp"
