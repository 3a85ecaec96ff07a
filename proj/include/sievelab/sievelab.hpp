// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arith.hpp"
#include "bounds.hpp"
#include "compensated.hpp"
#include "counterexample.hpp"
#include "dls.hpp"
#include "expsum.hpp"
#include "farey.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "report.hpp"
#include "version.hpp"
