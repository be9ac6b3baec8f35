// SPDX-License-Identifier: Apache-2.0

#ifndef SCLP_SCLP_HPP_
#define SCLP_SCLP_HPP_

#include "sclp/bb_solver.hpp"
#include "sclp/bounds.hpp"
#include "sclp/coverage_oracle.hpp"
#include "sclp/coverage_search.hpp"
#include "sclp/csp_model.hpp"
#include "sclp/cut_enum.hpp"
#include "sclp/errors.hpp"
#include "sclp/network.hpp"
#include "sclp/pool_io.hpp"
#include "sclp/simplex.hpp"
#include "sclp/sioux_falls.hpp"
#include "sclp/solve.hpp"

#endif  // SCLP_SCLP_HPP_
