#pragma once

#include "stochorder/error.hpp"
#include "stochorder/estimators.hpp"
#include "stochorder/example4.hpp"
#include "stochorder/grid.hpp"
#include "stochorder/io.hpp"
#include "stochorder/joint.hpp"
#include "stochorder/paired_sample.hpp"
#include "stochorder/partial_order.hpp"
#include "stochorder/precedence.hpp"
#include "stochorder/random.hpp"
#include "stochorder/reproduce.hpp"
#include "stochorder/scenarios.hpp"
#include "stochorder/verdict.hpp"
