#pragma once

#include "srsim/abstract_game.hpp"
#include "srsim/actions.hpp"
#include "srsim/channel.hpp"
#include "srsim/cli.hpp"
#include "srsim/config.hpp"
#include "srsim/deployment.hpp"
#include "srsim/engine.hpp"
#include "srsim/estimator.hpp"
#include "srsim/learning.hpp"
#include "srsim/mac.hpp"
#include "srsim/output.hpp"
#include "srsim/rng.hpp"
