#pragma once

#include "error.hpp"
#include "typeset.hpp"
#include "graph.hpp"
#include "switching.hpp"
#include "search.hpp"
#include "hom.hpp"
#include "oracle.hpp"
#include "category.hpp"
#include "chromatic.hpp"
#include "random.hpp"
#include "io.hpp"

namespace switchhom {

inline constexpr const char *version = "1.0.0";

}
