#pragma once

#include "sisqsd/approx/auxiliary.hpp"
#include "sisqsd/approx/beta_binomial.hpp"
#include "sisqsd/approx/geometric.hpp"
#include "sisqsd/approx/ovaskainen.hpp"
#include "sisqsd/approx/weights.hpp"
