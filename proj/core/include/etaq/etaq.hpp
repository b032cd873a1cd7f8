#pragma once

#include "etaq/arith.hpp"
#include "etaq/congruence.hpp"
#include "etaq/eisenstein.hpp"
#include "etaq/error.hpp"
#include "etaq/expand.hpp"
#include "etaq/filtration.hpp"
#include "etaq/product_spec.hpp"
#include "etaq/series.hpp"
