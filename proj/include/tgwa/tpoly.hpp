#pragma once

#include "tgwa/scalar.hpp"

#include <map>
#include <vector>

namespace tgwa {

// Polynomial in the base-ring generators t_1..t_n with Scalar coefficients.
// Exponent vectors are dense (n is small).
class TPoly {
public:
    TPoly() : n_(0) {}
    explicit TPoly(int n) : n_(n) {}
    static TPoly constant(int n, const Scalar& c);
    static TPoly generator(int n, int i); // t_{i+1}, 0-based i

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_value() const;

    const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
    void add_term(const std::vector<int>& e, const Scalar& c);

    TPoly operator-() const;
    TPoly operator+(const TPoly& o) const;
    TPoly operator-(const TPoly& o) const;
    TPoly operator*(const TPoly& o) const;
    TPoly operator*(const Scalar& c) const;
    bool operator==(const TPoly& o) const;
    bool operator!=(const TPoly& o) const { return !(*this == o); }

    // Substitute t_i -> images[i] (an algebra map).
    TPoly substitute(const std::vector<TPoly>& images) const;
    // Evaluate at a point alpha in Scalar^n.
    Scalar eval(const std::vector<Scalar>& alpha) const;

    std::string str() const;

private:
    int n_;
    std::map<std::vector<int>, Scalar> terms_;
};

// Affine automorphism of F[t_1..t_n] given on generators:
// t_j -> sum_k L[j][k] t_k + c[j], with invertible L.
struct AffineAut {
    std::vector<std::vector<Scalar>> lin;
    std::vector<Scalar> off;

    int nvars() const { return static_cast<int>(off.size()); }
    static AffineAut identity(int n);
    TPoly image_of_generator(int j) const;
    TPoly apply(const TPoly& p) const;
    AffineAut compose(const AffineAut& inner) const; // this after inner
    AffineAut inverse() const;
    bool operator==(const AffineAut& o) const { return lin == o.lin && off == o.off; }
};

} // namespace tgwa
