// Copyright 2026 The phnu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phnu/default_registry.hpp"
#include "phnu/error.hpp"
#include "phnu/levenberg_marquardt.hpp"
#include "phnu/molecules.hpp"
#include "phnu/nu_engine.hpp"
#include "phnu/numeric.hpp"
#include "phnu/output_table.hpp"
#include "phnu/polynomial.hpp"
#include "phnu/pseudoharmonic.hpp"
#include "phnu/special.hpp"
#include "phnu/units.hpp"
