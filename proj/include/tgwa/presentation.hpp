#pragma once

#include "tgwa/param_env.hpp"
#include "tgwa/tpoly.hpp"

#include <optional>
#include <vector>

namespace tgwa {

// Presentation data (R, sigma, t, mu) of a twisted generalized Weyl
// construction, with sigma_i restricted to affine maps on the t-generators.
// For scalar-graded presentations (every graded component of the quotient is
// one-dimensional) the optional matrices cx, cy record the commutation
// X_i X_j = cx_ij X_j X_i and Y_i Y_j = cy_ij Y_j Y_i valid in the quotient.
struct TgwaPresentation {
    int n = 0;
    std::vector<AffineAut> sigma;
    std::vector<AffineAut> sigma_inv;
    std::vector<TPoly> t;
    std::vector<std::vector<Scalar>> mu; // off-diagonal entries used
    std::optional<std::vector<std::vector<Scalar>>> cx, cy;

    bool scalar_graded() const { return cx.has_value() && cy.has_value(); }

    const AffineAut& sig(int i) const { return sigma.at(i); }
    const AffineAut& sig_inv(int i) const { return sigma_inv.at(i); }

    // sigma_1^{g_1} ... sigma_n^{g_n} as one affine map.
    AffineAut sigma_power(const std::vector<long>& g) const;
};

struct ConsistencyIssue {
    int i, j;          // 1-based pair
    std::string kind;  // "commutation" or "consistency"
};

struct ConsistencyReport {
    std::vector<ConsistencyIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Checks that the sigma_i commute pairwise and that
// t_i t_j = mu_ij mu_ji sigma_i^{-1}(t_j) sigma_j^{-1}(t_i) for i != j.
ConsistencyReport check_consistency(const TgwaPresentation& p);

// Rank-n quantized Weyl algebra preset.
TgwaPresentation qwa_presentation(const QwaParams& params);

// Q_ij-CCR preset: q_matrix with Q_ij Q_ji = 1 off-diagonal.
TgwaPresentation ccr_presentation(const std::vector<std::vector<Scalar>>& q_matrix);

// The rank-two presentation with sigma_i(t_j) = -t_j and mu = ones;
// quotient relations X1X2 = -X2X1, Y1Y2 = -Y2Y1.
TgwaPresentation sign_flip_presentation();

} // namespace tgwa
