#pragma once

#include "tgwa/cyclotomic.hpp"

#include <map>
#include <string>
#include <vector>

namespace tgwa {

// Interned transcendental parameter names (q1, l12, lam, rho, mu, ...).
int var_id(const std::string& name);
const std::string& var_name(int id);

// Sparse exponent vector, entries sorted by variable id, exponents > 0.
struct Monomial {
    std::vector<std::pair<int, int>> e;

    int exponent(int var) const;
    long total_degree() const;
    bool empty() const { return e.empty(); }
    Monomial operator*(const Monomial& o) const;
    // Exact quotient; fails if not divisible.
    Monomial operator/(const Monomial& o) const;
    static Monomial gcd(const Monomial& a, const Monomial& b);
    bool divides(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return e == o.e; }
    std::string str() const;
};

// Graded lexicographic order.
struct MonoCmp {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Multivariate polynomial over Q(e_N) in the interned parameters.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(const Cyclo& c);
    static MPoly variable(int var);
    static MPoly constant(int order, const Rat& r) { return MPoly(Cyclo(order, r)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const Cyclo& coeff(const Monomial& m) const;
    Cyclo constant_value() const; // 0 if zero poly

    const std::map<Monomial, Cyclo, MonoCmp>& terms() const { return terms_; }
    long total_degree() const;
    int max_order() const; // cyclotomic order seen in coefficients (1 if none)

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly mul_term(const Monomial& m, const Cyclo& c) const;
    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // Leading term under grlex.
    const Monomial& lead_monomial() const;
    const Cyclo& lead_coeff() const;

    // Exact division; fails internally if not divisible.
    MPoly divexact(const MPoly& d) const;

    // All variables that occur.
    std::vector<int> variables() const;

    std::string str() const;

    void add_term(const Monomial& m, const Cyclo& c); // in-place accumulate

private:
    std::map<Monomial, Cyclo, MonoCmp> terms_;
};

// GCD over the field Q(e); result is monic under grlex (deterministic canonical
// representative), gcd(0,0) = 0.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

} // namespace tgwa
