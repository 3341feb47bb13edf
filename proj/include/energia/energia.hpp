#pragma once

#include "energia/error.hpp"
#include "energia/numeric.hpp"
#include "energia/set_core.hpp"
#include "energia/energy.hpp"
#include "energia/inequalities.hpp"
#include "energia/suites.hpp"
#include "energia/bsg.hpp"
#include "energia/kp.hpp"
#include "energia/decompose.hpp"
#include "energia/constants.hpp"

namespace energia {

inline constexpr std::string_view version = "0.1.0";

} // namespace energia
