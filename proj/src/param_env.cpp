#include "tgwa/param_env.hpp"

namespace tgwa {

void ParameterEnv::bind(const std::string& name, const Scalar& value) {
    if (value.is_zero()) fail(errc::zero_input, "parameter '" + name + "' bound to zero");
    if (!value.as_unit_monomial())
        fail(errc::config_parse,
             "parameter '" + name + "' must be bound to a unit monomial (+-e^k times a parameter monomial)");
    bindings_[name] = value;
}

void ParameterEnv::declare_transcendental(const std::string& name) {
    transcendentals_.push_back(name);
    var_id(name);
}

Scalar ParameterEnv::value(const std::string& name) const {
    auto it = bindings_.find(name);
    if (it != bindings_.end()) return it->second;
    return Scalar::parameter(name);
}

Scalar ParameterEnv::eval(const std::string& expr) const {
    Scalar raw = parse_scalar(expr, order_);
    std::map<std::string, Scalar> asn(bindings_.begin(), bindings_.end());
    return raw.substitute(asn);
}

std::vector<std::string> ParameterEnv::bound_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : bindings_) out.push_back(k);
    return out;
}

QwaParams QwaParams::from_env(const ParameterEnv& env, int n) {
    QwaParams p;
    p.n = n;
    Scalar one = Scalar::integer(1);
    for (int i = 1; i <= n; ++i) {
        Scalar qi = env.value("q" + std::to_string(i));
        if (qi.is_zero() || qi.is_one()) fail(errc::config_parse, "q parameters must avoid 0 and 1");
        p.q.push_back(qi);
    }
    p.lambda.assign(n, std::vector<Scalar>(n, one));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::string nm = "l" + std::to_string(i) + std::to_string(j);
            Scalar lij = env.is_bound(nm) ? env.value(nm) : Scalar::parameter(nm);
            p.lambda[i - 1][j - 1] = lij;
            p.lambda[j - 1][i - 1] = lij.inverse();
        }
    p.mu.assign(n, std::vector<Scalar>(n, one));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            p.mu[i][j] = p.lambda[j][i];
            p.mu[j][i] = p.q[i] * p.lambda[i][j];
        }
    return p;
}

} // namespace tgwa
