// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_ENPACK_HPP
#define ENPACK_ENPACK_HPP

#include "enpack/benchmark.hpp"
#include "enpack/branch_and_bound.hpp"
#include "enpack/brute_force.hpp"
#include "enpack/component_order.hpp"
#include "enpack/generator.hpp"
#include "enpack/greedy.hpp"
#include "enpack/instance.hpp"
#include "enpack/json_io.hpp"
#include "enpack/lp_format.hpp"
#include "enpack/search_bound.hpp"
#include "enpack/solve_report.hpp"
#include "enpack/standard_form.hpp"

#endif  // ENPACK_ENPACK_HPP
