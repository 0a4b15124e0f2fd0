// Umbrella header.
#pragma once

#include "alist.hpp"
#include "channel.hpp"
#include "cn_updates.hpp"
#include "decoder.hpp"
#include "errors.hpp"
#include "neurons.hpp"
#include "rng.hpp"
#include "scnu.hpp"
#include "simulation.hpp"
#include "stats.hpp"
#include "sweep.hpp"
#include "tanner_graph.hpp"
#include "version.hpp"
