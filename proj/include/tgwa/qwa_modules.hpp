#pragma once

#include "tgwa/module_spec.hpp"

namespace tgwa {

// Dispatch of a rank-two weight point into the classification case list.
CaseTag classify_case(const WeightPoint& pt, const QwaSystem& sys);

struct BuildOptions {
    Scalar rho = Scalar::parameter("rho");
    Scalar mu = Scalar::parameter("mu");
    // Optional explicit basis override for the rank-two isotropy case.
    std::optional<std::pair<std::array<long, 2>, std::array<long, 2>>> rank2_basis;
};

// Construct the module of the given case over the orbit of pt; the point is
// shifted to the family's normal position internally.
WeightModuleSpec build_module(CaseTag tag, const WeightPoint& pt, const QwaSystem& sys,
                              const BuildOptions& opts = {});

// Scalar data of the rank-two isotropy construction: the commutation scalar
// nu, the transversal box, the wrap constants, and the pairing-inverse table,
// every entry certified against the word-calculus oracle.
struct InducedConstants {
    std::array<long, 2> a, b;
    BoxReps box;
    Scalar nu;
    long nu_order = 0; // 0 when nu is not a root of unity
    Scalar c1, c2;
    Scalar x2_wrap; // (1-q1)^s (lam^2 q2)^{-d2} of the X_2 wrap reduction
    std::map<std::pair<long, long>, Scalar> r_table;
};

InducedConstants induced_constants(const std::array<long, 2>& a, const std::array<long, 2>& b,
                                   const WeightPoint& pt, const QwaSystem& sys, long r_window = 4);

// r_g of the gamma_1 = 0 family: (1-q1)^{|g1|} (lam^{-1} q2^{(g2-1)/2})^{|g2|}.
Scalar rg_closed_form(const std::array<long, 2>& g, const Scalar& lam, const QwaSystem& sys);

// The Euclidean reductions k - a2/d2 = r k' + k'' (0 <= k'' < r) and friends.
std::pair<long, long> k_reduction(long value, long r);

// The two fixture modules: the sign-flip presentation module on {v, w}, and
// the proper-inner-break module at n_0 with q1*l12 of finite order.
WeightModuleSpec fixture_sign_flip();
WeightModuleSpec fixture_inner_break_at_n0(const QwaSystem& sys);
std::vector<WeightModuleSpec> fixture_modules(const QwaSystem& sys);

} // namespace tgwa
