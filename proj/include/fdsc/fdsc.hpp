#pragma once

#include "fdsc/cuts.hpp"
#include "fdsc/error.hpp"
#include "fdsc/graph.hpp"
#include "fdsc/io.hpp"
#include "fdsc/label.hpp"
#include "fdsc/lemmas.hpp"
#include "fdsc/oracle.hpp"

namespace fdsc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fdsc
