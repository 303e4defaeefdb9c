#pragma once

#include "tgwa/orbit.hpp"

namespace tgwa {

// Dense matrix over the scalar field.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(int rows, int cols)
        : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, Scalar::integer(0)) {}
    static ScalarMatrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    ScalarMatrix operator*(const ScalarMatrix& o) const;
    ScalarMatrix operator*(const Scalar& s) const;
    ScalarMatrix operator+(const ScalarMatrix& o) const;
    ScalarMatrix operator-(const ScalarMatrix& o) const;
    bool operator==(const ScalarMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;
    ScalarMatrix inverse() const;
    ScalarMatrix pow(long e) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

// Presentation of the invertible part of the weight-space-preserving
// subalgebra at a point: a basis of the degree group and the commutation
// scalars b_i b_j = lambda_ij b_j b_i, with the annihilated complement kept
// as a lattice certificate.
struct BmPresentation {
    std::vector<std::vector<long>> basis;    // rows s_1..s_k of the degree group
    std::vector<std::vector<Scalar>> lambda; // k x k
    Lattice isotropy_lattice;                // Z^n_omega
    Lattice degree_group;                    // G_m; B^(0) covers isotropy \ G_m
};

// lambda_ij from the canonical words of the basis rows, evaluated at pt.
std::vector<std::vector<Scalar>> commutation_scalars(const std::vector<std::vector<long>>& basis,
                                                     const WeightPoint& pt, const TgwaPresentation& p);

BmPresentation bm_presentation(const WeightPoint& pt, const QwaSystem& sys);

// Tensor decomposition of the invertible part into noncommutative tori.
struct TorusDecomposition {
    int k = 0;             // number of generators
    Scalar lambda_root;    // primitive root epsilon'^{theta_1}
    Scalar eps_prime;      // the primitive p-th root used for the dlog
    std::vector<long> p;   // p_i = theta_i / theta_1, p_1 = 1
    std::vector<Int> thetas;
    int laurent_rank = 0;
    IntMatrix u;           // change of generators, U^T Theta U normal
    std::vector<long> torus_orders; // n_i = order of lambda_root^{p_i}
};

TorusDecomposition torus_decompose(const std::vector<std::vector<Scalar>>& lambda, int session_order);

// Parameters of one finite-dimensional simple module: (rho_i, mu_i) per torus
// factor and a character value per Laurent generator.
struct TorusModuleSpec {
    std::vector<std::pair<Scalar, Scalar>> factor_params;
    std::vector<Scalar> laurent_chars;
};

// Matrices of the original generators b_1..b_k acting on the simple module of
// dimension prod n_i; diagonal/cyclic convention per torus factor.
struct TorusModule {
    long dim = 1;
    std::vector<ScalarMatrix> b;      // original generators
    std::vector<ScalarMatrix> primed; // torus-form generators (pairs a_i, b_i, then characters)
};

TorusModule simple_torus_module(const TorusDecomposition& dec, const TorusModuleSpec& params);

} // namespace tgwa
