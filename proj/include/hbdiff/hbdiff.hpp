#pragma once

#include "hbdiff/hbgraph.hpp"
#include "hbdiff/bias.hpp"
#include "hbdiff/diffusion.hpp"
#include "hbdiff/generator.hpp"
#include "hbdiff/metrics.hpp"
#include "hbdiff/io.hpp"
#include "hbdiff/experiment.hpp"
