#pragma once

#include "rings.hpp"
#include "matrix.hpp"
#include "quadratic_space.hpp"
#include "generators.hpp"
#include "transvections.hpp"
#include "decompose.hpp"
#include "json_io.hpp"
#include "random.hpp"
#include "identity_suite.hpp"
