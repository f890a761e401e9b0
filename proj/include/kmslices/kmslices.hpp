#pragma once

// Umbrella header: everything except the command-line layer.

#include "errors.hpp"
#include "rational.hpp"
#include "mpoly.hpp"
#include "gcd.hpp"
#include "ratfunc.hpp"
#include "parse.hpp"
#include "quiver.hpp"
#include "partial_sym.hpp"
#include "gklo.hpp"
#include "defect.hpp"
#include "km_chain.hpp"
#include "monopole.hpp"
#include "suite.hpp"
