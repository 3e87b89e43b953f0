#pragma once

#include "fhmdp/builtin.hpp"
#include "fhmdp/errors.hpp"
#include "fhmdp/model.hpp"
#include "fhmdp/model_io.hpp"
#include "fhmdp/oracle.hpp"
#include "fhmdp/report.hpp"
#include "fhmdp/solver.hpp"
