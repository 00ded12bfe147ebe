#pragma once

#include "lcdt/errors.hpp"
#include "lcdt/special_functions.hpp"
#include "lcdt/signal.hpp"
#include "lcdt/quadrature.hpp"
#include "lcdt/measure_norms.hpp"
#include "lcdt/transform.hpp"
#include "lcdt/corpus.hpp"
#include "lcdt/harness.hpp"
#include "lcdt/report_json.hpp"
