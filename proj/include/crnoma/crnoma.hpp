#pragma once

#include "crnoma/asymptotic.hpp"
#include "crnoma/channel_cdf.hpp"
#include "crnoma/config.hpp"
#include "crnoma/effective_power.hpp"
#include "crnoma/interference.hpp"
#include "crnoma/outage.hpp"
#include "crnoma/params.hpp"
#include "crnoma/quadrature.hpp"
#include "crnoma/sim.hpp"
#include "crnoma/special.hpp"
#include "crnoma/sweep.hpp"
#include "crnoma/validate.hpp"
