#pragma once

#include "permrow/errors.hpp"
#include "permrow/estimators.hpp"
#include "permrow/matrix_core.hpp"
#include "permrow/random.hpp"
#include "permrow/report_io.hpp"
#include "permrow/simulation.hpp"
#include "permrow/stats.hpp"
#include "permrow/table_io.hpp"
#include "permrow/theory.hpp"
