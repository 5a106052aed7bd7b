#pragma once

#include "slopekit/bounds.hpp"
#include "slopekit/bundle.hpp"
#include "slopekit/chow.hpp"
#include "slopekit/commands.hpp"
#include "slopekit/config.hpp"
#include "slopekit/error.hpp"
#include "slopekit/families.hpp"
#include "slopekit/fibration.hpp"
#include "slopekit/rational.hpp"
#include "slopekit/render.hpp"
