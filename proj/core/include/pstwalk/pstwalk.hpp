// pstwalk.hpp
// Umbrella header.

#pragma once

#include "pstwalk/analysis.hpp"
#include "pstwalk/dense_oracle.hpp"
#include "pstwalk/io.hpp"
#include "pstwalk/params.hpp"
#include "pstwalk/reduced.hpp"
#include "pstwalk/step.hpp"
#include "pstwalk/walk_state.hpp"
