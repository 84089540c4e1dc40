#pragma once

#include "channel/band_sampler.hpp"
#include "channel/bands.hpp"
#include "channel/classical.hpp"
#include "channel/commutator.hpp"
#include "channel/errors.hpp"
#include "channel/export.hpp"
#include "channel/fiber.hpp"
#include "channel/hermite.hpp"
#include "channel/hill.hpp"
#include "channel/linalg.hpp"
#include "channel/mourre.hpp"
#include "channel/params.hpp"
#include "channel/potential.hpp"
#include "channel/potential_io.hpp"
#include "channel/projection.hpp"
