//
// Project molbench - Copyright 2026 molbench contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLBENCH_MOLBENCH_HPP
#define MOLBENCH_MOLBENCH_HPP

#include "molbench/builtin_tables.hpp"
#include "molbench/curation.hpp"
#include "molbench/deviation.hpp"
#include "molbench/element.hpp"
#include "molbench/error.hpp"
#include "molbench/graph.hpp"
#include "molbench/kekulize.hpp"
#include "molbench/molecule.hpp"
#include "molbench/optimizer.hpp"
#include "molbench/parallel.hpp"
#include "molbench/report.hpp"
#include "molbench/sdf.hpp"
#include "molbench/stats.hpp"
#include "molbench/valency.hpp"
#include "molbench/vec3.hpp"
#include "molbench/xyz.hpp"

#endif // MOLBENCH_MOLBENCH_HPP
