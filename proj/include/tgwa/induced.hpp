#pragma once

#include "tgwa/qwa_modules.hpp"

namespace tgwa {

// Generic induced-module construction: basis {a_g v_i | g in S, i in I},
// action computed entirely from the word calculus (normalization, pairing
// inverses) and the torus-module structure of the weight space. No
// per-family constants enter; this is the independent oracle for
// build_module.
WeightModuleSpec build_generic_induced(const WeightPoint& pt, const QwaSystem& sys,
                                       const BuildOptions& opts = {});

// The same construction with an explicit weight-space module (for parameter
// layouts other than the default (rho, mu) filling).
WeightModuleSpec build_generic_induced_with(const WeightPoint& pt, const QwaSystem& sys,
                                            const TorusModuleSpec& weight_space,
                                            const BuildOptions& opts = {});

} // namespace tgwa
