#pragma once

#include "tgwa/bigint.hpp"
#include "tgwa/errors.hpp"

#include <string>
#include <vector>

namespace tgwa {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool is_zero() const;

    std::vector<Int> row(int i) const;
    void set_row(int i, const std::vector<Int>& v);
    IntMatrix take_rows(const std::vector<int>& idx) const;
    void append_row(const std::vector<Int>& v);

    Int det() const; // fraction-free Gaussian elimination, square only

    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// Canonical row Hermite normal form: H = U*A with U unimodular; pivots
// positive, zeros below pivots, entries above a pivot reduced into [0, pivot);
// zero rows at the bottom.
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
    int rank = 0;
};
HnfResult hnf_transform(const IntMatrix& a);

// Subgroup of Z^n held as its canonical HNF basis (possibly 0 rows).
class Lattice {
public:
    Lattice() = default;
    Lattice(int ambient, const IntMatrix& generators);
    static Lattice full(int ambient);
    static Lattice zero(int ambient) { return Lattice(ambient, IntMatrix(0, ambient)); }
    static Lattice from_rows(int ambient, const std::vector<std::vector<long>>& rows);

    int ambient_rank() const { return n_; }
    int rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }

    bool contains(const std::vector<Int>& v) const;
    bool contains(const std::vector<long>& v) const;
    bool operator==(const Lattice& o) const { return n_ == o.n_ && basis_ == o.basis_; }

    // Coordinates of v in the basis, when v is a member.
    std::vector<Int> coordinates(const std::vector<Int>& v) const;

    std::string str() const;

private:
    int n_ = 0;
    IntMatrix basis_; // HNF, rank many rows
};

Lattice intersect(const Lattice& a, const Lattice& b);

// {g in Z^n : torsion_rows*g == 0 mod N and free_rows*g == 0}.
// torsion_rows is p x n (p may be 0), free_rows is m x n (m may be 0).
Lattice kernel_of_unit_map(const IntMatrix& torsion_rows, long modulus, const IntMatrix& free_rows);

// Congruence normal form of a skew-symmetric integer matrix:
// U^T * theta * U consists of 2x2 blocks [[0, t_i], [-t_i, 0]] followed by a
// zero block; t_i > 0 and t_i | t_{i+1}.
struct SkewNormalForm {
    IntMatrix u;
    std::vector<Int> thetas;
    int laurent_rank = 0;
    IntMatrix normal; // U^T * theta * U
};
SkewNormalForm skew_normal_form(const IntMatrix& theta);

// Coset data for Z^2 / (Z*a + Z*b) per the rank-two transversal construction:
// box {0..d1-1} x {0..d2-1}, with d2 = gcd(a2,b2), d1*d2 = a1*b2 - b1*a2,
// a2p*a2 + b2p*b2 = d2 and s = -a2p*a1 - b2p*b1 in [0, d1).
struct BoxReps {
    long d1 = 0, d2 = 0, s = 0;
    long a2p = 0, b2p = 0;
};
BoxReps box_reps(long a1, long a2, long b1, long b2);

} // namespace tgwa
