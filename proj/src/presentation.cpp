#include "tgwa/presentation.hpp"

namespace tgwa {

AffineAut TgwaPresentation::sigma_power(const std::vector<long>& g) const {
    AffineAut acc = AffineAut::identity(n);
    for (int i = 0; i < n; ++i) {
        long e = g.at(i);
        const AffineAut& step = e >= 0 ? sigma[i] : sigma_inv[i];
        for (long k = 0; k < (e >= 0 ? e : -e); ++k) acc = acc.compose(step);
    }
    return acc;
}

ConsistencyReport check_consistency(const TgwaPresentation& p) {
    ConsistencyReport rep;
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j) {
            if (!(p.sigma[i].compose(p.sigma[j]) == p.sigma[j].compose(p.sigma[i])))
                rep.issues.push_back({i + 1, j + 1, "commutation"});
        }
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j) {
            TPoly lhs = p.t[i] * p.t[j];
            TPoly rhs = (p.sigma_inv[i].apply(p.t[j]) * p.sigma_inv[j].apply(p.t[i])) *
                        (p.mu[i][j] * p.mu[j][i]);
            if (lhs != rhs) rep.issues.push_back({i + 1, j + 1, "consistency"});
        }
    return rep;
}

TgwaPresentation qwa_presentation(const QwaParams& params) {
    int n = params.n;
    TgwaPresentation p;
    p.n = n;
    Scalar one = Scalar::integer(1), zero = Scalar::integer(0);
    for (int i = 0; i < n; ++i) {
        AffineAut s = AffineAut::identity(n);
        // sigma_i(t_j) = t_j (j < i), 1 + q_i t_i + sum_{k<i} (q_k - 1) t_k (j = i), q_i t_j (j > i)
        s.lin[i][i] = params.q[i];
        s.off[i] = one;
        for (int k = 0; k < i; ++k) s.lin[i][k] = params.q[k] - one;
        for (int j = i + 1; j < n; ++j) s.lin[j][j] = params.q[i];
        p.sigma.push_back(s);
        p.sigma_inv.push_back(s.inverse());
        p.t.push_back(TPoly::generator(n, i));
    }
    p.mu = params.mu;
    // Quotient commutation: X_i X_j = q_i lambda_ij X_j X_i and
    // Y_i Y_j = lambda_ij Y_j Y_i for i < j.
    std::vector<std::vector<Scalar>> cx(n, std::vector<Scalar>(n, one));
    std::vector<std::vector<Scalar>> cy(n, std::vector<Scalar>(n, one));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (i < j) {
                cx[i][j] = params.q[i] * params.lambda[i][j];
                cy[i][j] = params.lambda[i][j];
            } else {
                cx[i][j] = (params.q[j] * params.lambda[j][i]).inverse();
                cy[i][j] = params.lambda[i][j];
            }
        }
    p.cx = cx;
    p.cy = cy;
    return p;
}

TgwaPresentation ccr_presentation(const std::vector<std::vector<Scalar>>& q_matrix) {
    int n = static_cast<int>(q_matrix.size());
    TgwaPresentation p;
    p.n = n;
    Scalar one = Scalar::integer(1);
    for (int i = 0; i < n; ++i) {
        AffineAut s = AffineAut::identity(n);
        s.lin[i][i] = q_matrix[i][i];
        s.off[i] = one;
        p.sigma.push_back(s);
        p.sigma_inv.push_back(s.inverse());
        p.t.push_back(TPoly::generator(n, i));
    }
    p.mu.assign(n, std::vector<Scalar>(n, one));
    std::vector<std::vector<Scalar>> cx(n, std::vector<Scalar>(n, one));
    std::vector<std::vector<Scalar>> cy(n, std::vector<Scalar>(n, one));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            p.mu[i][j] = q_matrix[j][i];
            cx[i][j] = q_matrix[j][i];
            cy[i][j] = q_matrix[i][j];
        }
    p.cx = cx;
    p.cy = cy;
    return p;
}

TgwaPresentation sign_flip_presentation() {
    int n = 2;
    TgwaPresentation p;
    p.n = n;
    Scalar one = Scalar::integer(1), minus = Scalar::integer(-1);
    for (int i = 0; i < n; ++i) {
        AffineAut s = AffineAut::identity(n);
        s.lin[0][0] = minus;
        s.lin[1][1] = minus;
        p.sigma.push_back(s);
        p.sigma_inv.push_back(s.inverse());
        p.t.push_back(TPoly::generator(n, i));
    }
    p.mu.assign(n, std::vector<Scalar>(n, one));
    std::vector<std::vector<Scalar>> c(n, std::vector<Scalar>(n, minus));
    c[0][0] = c[1][1] = one;
    p.cx = c;
    p.cy = c;
    return p;
}

} // namespace tgwa
