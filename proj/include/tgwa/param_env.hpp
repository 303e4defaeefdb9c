#pragma once

#include "tgwa/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tgwa {

// Session parameter environment: the cyclotomic order N plus bindings of
// named parameters to unit monomials (+-e^k times a monomial in the
// transcendental parameters). Unbound parameters are transcendental.
class ParameterEnv {
public:
    explicit ParameterEnv(int order) : order_(order) {}

    int order() const { return order_; }

    // value must be a unit monomial; enforced at bind time.
    void bind(const std::string& name, const Scalar& value);
    void declare_transcendental(const std::string& name);

    bool is_bound(const std::string& name) const { return bindings_.count(name) > 0; }
    // The resolved value: the binding, or the parameter itself.
    Scalar value(const std::string& name) const;
    // Parse an expression in this session's order and resolve bindings in it.
    Scalar eval(const std::string& expr) const;

    std::vector<std::string> bound_names() const;

private:
    int order_;
    std::map<std::string, Scalar> bindings_;
    std::vector<std::string> transcendentals_;
};

// Quantized Weyl algebra parameter pack of rank n: q_i and Lambda = (lambda_ij)
// with lambda_ij * lambda_ji = 1, plus the derived mu matrix
// (mu_ij = lambda_ji and mu_ji = q_i lambda_ij for i < j).
struct QwaParams {
    int n = 2;
    std::vector<Scalar> q;                   // q_1..q_n
    std::vector<std::vector<Scalar>> lambda; // n x n, lambda_ii = 1
    std::vector<std::vector<Scalar>> mu;     // n x n (diagonal unused)

    static QwaParams from_env(const ParameterEnv& env, int n);
    const Scalar& q1() const { return q[0]; }
    const Scalar& q2() const { return q[1]; }
    const Scalar& l12() const { return lambda[0][1]; }
    const Scalar& l21() const { return lambda[1][0]; }
};

} // namespace tgwa
