#pragma once

#include "tgwa/bigint.hpp"
#include "tgwa/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tgwa {

// Element of the cyclotomic field Q(e) where e is a primitive N-th root of unity.
// Stored in the power basis 1, e, ..., e^{phi(N)-1}, fully reduced mod Phi_N.
// N = 1 degenerates to plain rationals.
class Cyclo {
public:
    Cyclo() : n_(1), c_(1, Rat(0)) {}
    Cyclo(int order, const Rat& value);
    // e^k in Q(e_order)
    static Cyclo root(int order, long k = 1);

    int order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // Value as a rational, when is_rational().
    Rat rational_value() const;

    Cyclo operator-() const;
    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo inverse() const;
    Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }
    Cyclo pow(long e) const;

    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    // If this equals zeta^t where zeta generates the group of roots of unity
    // in Q(e_N) (order lcm(2,N)), return t in [0, lcm(2,N)).
    std::optional<long> unit_dlog() const;
    // Least d >= 1 with this^d == 1, when the value is a root of unity.
    std::optional<long> root_of_unity_order() const;

    // The generator zeta of the root-of-unity group: -e for odd N, e for even N.
    static Cyclo unit_group_generator(int order);
    static long unit_group_order(int order);

    std::string str() const; // e.g. "1/2 + 3*e^2"

private:
    int n_;
    std::vector<Rat> c_; // size phi(N)

    friend struct CycloTables;
    void reduce_from(std::vector<Rat>& raw); // raw has arbitrary degree
    void check_same_order(const Cyclo& o) const;
};

int euler_phi(int n);

// Coefficients of the N-th cyclotomic polynomial, ascending degree, length phi(N)+1.
const std::vector<Int>& cyclotomic_poly(int n);

} // namespace tgwa
