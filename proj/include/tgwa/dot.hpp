#pragma once

#include "tgwa/module_spec.hpp"

namespace tgwa {

// Weight diagram of the module on the window: one node per support point,
// solid arrows for the X_1 action, double-styled arrows for X_2.
std::string emit_dot(const WeightModuleSpec& m, long window);

} // namespace tgwa
