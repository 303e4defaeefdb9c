#include "tgwa/scalar.hpp"

#include <cctype>
#include <sstream>

namespace tgwa {

Scalar::Scalar(const MPoly& num, const MPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) fail(errc::division_by_zero, "zero denominator");
    reduce();
}

void Scalar::reduce() {
    if (num_.is_zero()) {
        den_ = MPoly(Cyclo(den_.max_order(), Rat(1)));
        return;
    }
    if (!den_.is_constant()) {
        MPoly g = mpoly_gcd(num_, den_);
        if (!(g.is_constant() && !g.is_zero() && g.constant_value().is_rational() &&
              g.constant_value().rational_value() == 1)) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    // Make denominator monic.
    Cyclo lc = den_.lead_coeff();
    if (!(lc.is_rational() && lc.rational_value() == 1)) {
        Cyclo inv = lc.inverse();
        MPoly n2, d2;
        for (const auto& [m, c] : num_.terms()) n2.add_term(m, c * inv);
        for (const auto& [m, c] : den_.terms()) d2.add_term(m, c * inv);
        num_ = std::move(n2);
        den_ = std::move(d2);
    }
}

bool Scalar::is_one() const {
    return num_ == den_;
}

Cyclo Scalar::constant_value() const {
    Cyclo n = num_.constant_value();
    Cyclo d = den_.constant_value();
    return n / d;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    // a/b + c/d = (ad + cb) / bd, with a gcd pass on the denominators first.
    MPoly g = mpoly_gcd(den_, o.den_);
    MPoly b1 = den_.divexact(g), d1 = o.den_.divexact(g);
    return Scalar(num_ * d1 + o.num_ * b1, b1 * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    // Cross-reduce before multiplying to keep factor sizes down.
    MPoly g1 = mpoly_gcd(num_, o.den_);
    MPoly g2 = mpoly_gcd(o.num_, den_);
    MPoly a = num_.divexact(g1), d = o.den_.divexact(g1);
    MPoly c = o.num_.divexact(g2), b = den_.divexact(g2);
    return Scalar(a * c, b * d);
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
    return Scalar(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) fail(errc::division_by_zero, "division by zero");
    return *this * o.inverse();
}

Scalar Scalar::pow(long e) const {
    if (e == 0) return Scalar::integer(1);
    Scalar base = e > 0 ? *this : inverse();
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Scalar acc = Scalar::integer(1);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    // Canonical forms compare directly.
    return num_ == o.num_ && den_ == o.den_;
}

std::optional<Scalar::UnitMonomial> Scalar::as_unit_monomial() const {
    if (is_zero()) return std::nullopt;
    if (!num_.is_monomial() || !den_.is_monomial()) return std::nullopt;
    Cyclo c = num_.lead_coeff() / den_.lead_coeff();
    auto t = c.unit_dlog();
    if (!t) return std::nullopt;
    UnitMonomial u;
    u.order = c.order();
    u.zeta_exp = *t;
    // Reduced fraction of monomials has disjoint supports.
    for (const auto& [v, x] : num_.lead_monomial().e) u.exps.emplace_back(v, x);
    for (const auto& [v, x] : den_.lead_monomial().e) u.exps.emplace_back(v, -x);
    std::sort(u.exps.begin(), u.exps.end());
    return u;
}

std::optional<long> Scalar::root_of_unity_order() const {
    if (is_zero()) fail(errc::zero_input, "root_of_unity_order of zero");
    auto u = as_unit_monomial();
    if (!u || !u->exps.empty()) return std::nullopt;
    Cyclo c = num_.lead_coeff() / den_.lead_coeff();
    return c.root_of_unity_order();
}

Scalar Scalar::substitute(const std::map<std::string, Scalar>& assignment) const {
    std::map<int, Scalar> by_id;
    for (const auto& [name, val] : assignment) by_id.emplace(var_id(name), val);
    auto eval_poly = [&](const MPoly& p) {
        Scalar acc = Scalar::integer(0);
        for (const auto& [m, c] : p.terms()) {
            Scalar term{Cyclo(c)};
            for (const auto& [v, x] : m.e) {
                auto it = by_id.find(v);
                Scalar base = it == by_id.end() ? Scalar::parameter(var_name(v)) : it->second;
                term = term * base.pow(x);
            }
            acc = acc + term;
        }
        return acc;
    };
    Scalar n = eval_poly(num_), d = eval_poly(den_);
    if (d.is_zero()) fail(errc::denominator_vanishes, "substitution makes denominator vanish");
    return n / d;
}

std::string Scalar::str() const {
    std::ostringstream os;
    bool den_one = den_.is_constant() && den_.constant_value().is_rational() &&
                   den_.constant_value().rational_value() == 1;
    if (den_one) {
        os << num_.str();
    } else {
        bool n_paren = num_.terms().size() > 1;
        bool d_paren = den_.terms().size() > 1 || !den_.is_monomial() || den_.lead_monomial().e.size() > 1;
        os << (n_paren ? "(" + num_.str() + ")" : num_.str());
        os << " / ";
        os << (d_paren ? "(" + den_.str() + ")" : den_.str());
    }
    return os.str();
}

Scalar operator*(long a, const Scalar& s) { return Scalar::integer(a) * s; }

Scalar q_integer(long k, const Scalar& q) {
    if (q.is_one()) fail(errc::q_equals_one, "[k]_q needs q != 1");
    return (q.pow(k) - Scalar::integer(1)) / (q - Scalar::integer(1));
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    int order;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void err(const std::string& what) {
        fail(errc::parse_error, what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    Scalar parse_expr() {
        Scalar v = parse_term();
        while (true) {
            skip_ws();
            if (eat('+')) v = v + parse_term();
            else if (eat('-')) v = v - parse_term();
            else return v;
        }
    }

    Scalar parse_term() {
        Scalar v = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) v = v * parse_factor();
            else if (eat('/')) v = v / parse_factor();
            else return v;
        }
    }

    Scalar parse_factor() {
        skip_ws();
        if (eat('-')) return -parse_factor();
        if (eat('+')) return parse_factor();
        Scalar base = parse_atom();
        skip_ws();
        if (eat('^')) {
            long e = parse_int_exponent();
            return base.pow(e);
        }
        return base;
    }

    long parse_int_exponent() {
        skip_ws();
        bool paren = eat('(');
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) err("expected integer exponent");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
        if (paren && !eat(')')) err("expected ')'");
        return neg ? -v : v;
    }

    Scalar parse_atom() {
        skip_ws();
        if (pos >= s.size()) err("unexpected end of input");
        if (eat('(')) {
            Scalar v = parse_expr();
            if (!eat(')')) err("expected ')'");
            return v;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
            return Scalar::rational(Rat(Int(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                name += s[pos++];
            if (name == "e") return Scalar::root(order, 1);
            return Scalar::parameter(name);
        }
        err("unexpected character");
    }
};

} // namespace

Scalar parse_scalar(const std::string& text, int order) {
    Parser p{text, 0, order};
    Scalar v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.err("trailing input");
    return v;
}

} // namespace tgwa
