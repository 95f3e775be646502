#pragma once

#include "sisqsd/approx.hpp"
#include "sisqsd/distribution.hpp"
#include "sisqsd/error_analysis.hpp"
#include "sisqsd/errors.hpp"
#include "sisqsd/model.hpp"
#include "sisqsd/numerics/precision.hpp"
#include "sisqsd/numerics/real.hpp"
#include "sisqsd/numerics/summation.hpp"
#include "sisqsd/qsd.hpp"
