#pragma once

#include "fibspdc/dispersion.hpp"
#include "fibspdc/error.hpp"
#include "fibspdc/metrics.hpp"
#include "fibspdc/modecoupling.hpp"
#include "fibspdc/phasematch.hpp"
#include "fibspdc/report.hpp"
#include "fibspdc/simulator.hpp"
#include "fibspdc/tcspc.hpp"
#include "fibspdc/timestamp_io.hpp"
#include "fibspdc/units.hpp"
