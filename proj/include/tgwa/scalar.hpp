#pragma once

#include "tgwa/multipoly.hpp"

#include <map>
#include <optional>
#include <string>

namespace tgwa {

// Element of F = Frac(Q(e_N)[params]): cyclotomic constants plus transcendental
// parameters. Always kept in canonical form: gcd(num, den) = 1 and den monic
// under grlex.
class Scalar {
public:
    Scalar() : num_(), den_(MPoly(Cyclo(1, Rat(1)))) {}
    Scalar(const MPoly& num, const MPoly& den);
    explicit Scalar(const Cyclo& c) : num_(MPoly(c)), den_(MPoly(Cyclo(c.order(), Rat(1)))) {}

    static Scalar integer(long v) { return Scalar(Cyclo(1, Rat(v))); }
    static Scalar rational(const Rat& r) { return Scalar(Cyclo(1, r)); }
    static Scalar root(int order, long k = 1) { return Scalar(Cyclo::root(order, k)); }
    static Scalar parameter(const std::string& name) { return Scalar(MPoly::variable(var_id(name)), MPoly(Cyclo(1, Rat(1)))); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    // Constant (parameter-free) value, when is_constant().
    Cyclo constant_value() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Unit monomial decomposition: this = zeta^t * prod params^e, where zeta
    // generates the root-of-unity group of Q(e_N). nullopt when the value is
    // not of that shape (e.g. sums, or non-unit rational factors).
    struct UnitMonomial {
        int order;                              // cyclotomic order N
        long zeta_exp;                          // exponent of the unit group generator
        std::vector<std::pair<int, int>> exps;  // parameter exponents (var id, exp), may be negative
    };
    std::optional<UnitMonomial> as_unit_monomial() const;

    // Least d with this^d == 1, or nullopt when the value is not +-e^k.
    // Errors on zero input.
    std::optional<long> root_of_unity_order() const;

    // Exact substitution of parameters by scalars; parameters not mentioned stay.
    Scalar substitute(const std::map<std::string, Scalar>& assignment) const;

    std::string str() const;

private:
    MPoly num_, den_;
    void reduce();
};

Scalar operator*(long a, const Scalar& s);

// [k]_q = (q^k - 1)/(q - 1) for any integer k; requires q != 1.
Scalar q_integer(long k, const Scalar& q);

// Parse the canonical scalar grammar: rationals, `e`, parameter names,
// `^` (integer exponents), `*`, `/`, `+`, `-`, parentheses.
// `order` is the session cyclotomic order used for `e`.
Scalar parse_scalar(const std::string& text, int order);

} // namespace tgwa
