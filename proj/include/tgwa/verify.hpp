#pragma once

#include "tgwa/module_spec.hpp"

namespace tgwa {

// A defining relation sum_i coeff_i * word_i == scalar-function-of-point,
// checked as operators on every basis vector.
struct RelationFailure {
    std::string relation;
    BasisIndex at;
    Scalar difference; // evaluated mismatch on the offending basis vector
};

struct GradingFailure {
    GenId gen;
    BasisIndex at;
};

enum class Simplicity { Simple, NotSimple, Undecided };

struct InnerBreak {
    std::array<long, 2> support; // support index of the point
    int direction;               // +i for t_i, -i for the sigma_i(t_i) mirror (1-based)
};

struct ProperInnerBreak {
    std::array<long, 2> support;
    std::array<long, 2> degree;
};

struct VerificationReport {
    std::vector<RelationFailure> relation_failures;
    bool grading_ok = true;
    std::vector<GradingFailure> grading_failures;
    Simplicity simplicity = Simplicity::Undecided;
    std::string simplicity_witness; // description of an invariant subspace if not simple
    std::vector<InnerBreak> inner_breaks;
    std::vector<ProperInnerBreak> proper_inner_breaks;

    bool relations_ok() const { return relation_failures.empty(); }
    bool npib_ok() const { return proper_inner_breaks.empty(); }
};

// Evaluate the defining relations of the presentation on every basis vector
// in the window: the pairwise X/Y commutations and the diagonal identities
// Y_iX_i = t_i, X_iY_i = sigma_i(t_i) at each weight point.
std::vector<RelationFailure> check_relations(const WeightModuleSpec& m, long window);

// The literal quantized-Weyl relation set (rank two), including
// x_iy_i - q_iy_ix_i = 1 + sum_{k<i}(q_k-1)y_kx_k.
std::vector<RelationFailure> check_qwa_relations(const WeightModuleSpec& m, long window);

// Every X_i edge must land in the sigma_i-shifted weight space and every Y_i
// edge in the sigma_i^{-1}-shifted one.
std::vector<GradingFailure> check_weight_grading(const WeightModuleSpec& m, long window);

// Finite modules only. Weight-graph criterion first, matrix-algebra span as
// the sufficient-only fallback, honest Undecided otherwise.
std::pair<Simplicity, std::string> check_simplicity(const WeightModuleSpec& m);

// Inner breaks and proper inner breaks over the support window, degrees g in
// the [-box, box]^2 window for the pairing scan.
std::pair<std::vector<InnerBreak>, std::vector<ProperInnerBreak>>
check_inner_breaks(const WeightModuleSpec& m, long window, long degree_box);

VerificationReport verify_module(const WeightModuleSpec& m, long window, long degree_box);

// Default degree box for the proper-inner-break scan: twice the largest
// finite interval bound plus one, or 8 when every axis is unbounded.
long default_npib_box(const WeightModuleSpec& m);

std::string report_text(const VerificationReport& r);

} // namespace tgwa
