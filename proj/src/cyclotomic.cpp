#include "tgwa/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace tgwa {

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Exact division of integer polynomials (ascending coefficients), remainder must be zero.
std::vector<Int> zpoly_divexact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (num.size() >= den.size()) {
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (num.size() < den.size()) break;
        Int lead = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
    }
    for (const auto& c : num)
        if (c != 0) fail(errc::internal, "cyclotomic polynomial division not exact");
    return q;
}

std::vector<Int> cyclotomic_poly_impl(int n, std::map<int, std::vector<Int>>& cache);

const std::vector<Int>& cyclotomic_cached(int n, std::map<int, std::vector<Int>>& cache) {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, cyclotomic_poly_impl(n, cache)).first;
    return it->second;
}

std::vector<Int> cyclotomic_poly_impl(int n, std::map<int, std::vector<Int>>& cache) {
    if (n == 1) return {Int(-1), Int(1)};
    // (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = zpoly_divexact(std::move(num), cyclotomic_cached(d, cache));
    }
    return num;
}

struct CycloTable {
    int phi = 1;
    std::vector<Int> phi_poly; // Phi_N, ascending, monic, length phi+1
    std::vector<Rat> xphi;     // x^phi reduced to the power basis
};

const CycloTable& table_for(int n) {
    static std::map<int, CycloTable> tables;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = tables.find(n);
    if (it != tables.end()) return it->second;
    if (n < 1) fail(errc::zero_input, "cyclotomic order must be positive");

    CycloTable t;
    t.phi = euler_phi(n);
    {
        static std::map<int, std::vector<Int>> cache;
        t.phi_poly = cyclotomic_cached(n, cache);
    }
    // x^phi = -(Phi_N - x^phi)
    int phi = t.phi;
    t.xphi.assign(phi, Rat(0));
    for (int i = 0; i < phi; ++i) t.xphi[i] = Rat(-t.phi_poly[i]);
    return tables.emplace(n, std::move(t)).first->second;
}

} // namespace

const std::vector<Int>& cyclotomic_poly(int n) { return table_for(n).phi_poly; }

Cyclo::Cyclo(int order, const Rat& value) : n_(order) {
    const CycloTable& t = table_for(order);
    c_.assign(t.phi, Rat(0));
    c_[0] = value;
}

Cyclo Cyclo::root(int order, long k) {
    const CycloTable& t = table_for(order);
    k = floormod(k, order);
    std::vector<Rat> raw(static_cast<size_t>(k) + 1, Rat(0));
    raw.back() = 1;
    Cyclo r;
    r.n_ = order;
    r.c_.assign(t.phi, Rat(0));
    r.reduce_from(raw);
    return r;
}

void Cyclo::reduce_from(std::vector<Rat>& raw) {
    const CycloTable& t = table_for(n_);
    int phi = t.phi;
    // Fold degrees >= phi down using x^phi = t.xphi, highest degree first.
    for (size_t d = raw.size(); d-- > static_cast<size_t>(phi);) {
        if (raw[d] == 0) continue;
        Rat c = raw[d];
        raw[d] = 0;
        for (int i = 0; i < phi; ++i) raw[d - phi + i] += c * t.xphi[i];
    }
    std::fill(c_.begin(), c_.end(), Rat(0));
    for (int i = 0; i < phi && i < static_cast<int>(raw.size()); ++i) c_[i] = raw[i];
}

void Cyclo::check_same_order(const Cyclo& o) const {
    if (n_ != o.n_) fail(errc::mixed_cyclotomic_orders, "cannot mix cyclotomic orders");
}

bool Cyclo::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclo::rational_value() const {
    if (!is_rational()) fail(errc::internal, "not a rational value");
    return c_[0];
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    if (n_ != o.n_ && is_rational()) return Cyclo(o.n_, rational_value()) + o;
    if (n_ != o.n_ && o.is_rational()) return *this + Cyclo(n_, o.rational_value());
    check_same_order(o);
    Cyclo r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    if (n_ != o.n_ && is_rational()) return Cyclo(o.n_, rational_value()) * o;
    if (n_ != o.n_ && o.is_rational()) return *this * Cyclo(n_, o.rational_value());
    check_same_order(o);
    size_t phi = c_.size();
    std::vector<Rat> raw(2 * phi - 1, Rat(0));
    for (size_t i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < phi; ++j) {
            if (o.c_[j] == 0) continue;
            raw[i + j] += c_[i] * o.c_[j];
        }
    }
    Cyclo r;
    r.n_ = n_;
    r.c_.assign(phi, Rat(0));
    r.reduce_from(raw);
    return r;
}

namespace {
// Rational univariate polynomial helpers for the extended Euclid inverse.
using QP = std::vector<Rat>;

void qp_trim(QP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QP qp_mul(const QP& a, const QP& b) {
    if (a.empty() || b.empty()) return {};
    QP r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}

QP qp_sub(QP a, const QP& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qp_trim(a);
    return a;
}

// a = q*b + r
void qp_divmod(QP a, const QP& b, QP& q, QP& r) {
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat lead = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] += lead;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
        qp_trim(a);
    }
    r = a;
}
} // namespace

Cyclo Cyclo::inverse() const {
    if (is_zero()) fail(errc::division_by_zero, "inverse of zero cyclotomic");
    if (is_rational()) {
        Cyclo r = *this;
        r.c_[0] = 1 / c_[0];
        return r;
    }
    const CycloTable& t = table_for(n_);
    QP a(c_.begin(), c_.end());
    qp_trim(a);
    QP m(t.phi_poly.size());
    for (size_t i = 0; i < t.phi_poly.size(); ++i) m[i] = Rat(t.phi_poly[i]);
    // Extended Euclid: find u with u*a == g mod m, g constant (a invertible mod Phi_N).
    QP r0 = m, r1 = a, u0 = {}, u1 = {Rat(1)};
    while (!r1.empty()) {
        QP q, r2;
        qp_divmod(r0, r1, q, r2);
        QP u2 = qp_sub(u0, qp_mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (r0.size() != 1) fail(errc::internal, "cyclotomic inverse: gcd not constant");
    Rat g = r0[0];
    Cyclo res;
    res.n_ = n_;
    res.c_.assign(t.phi, Rat(0));
    QP raw;
    for (auto& x : u0) raw.push_back(x / g);
    raw.resize(std::max<size_t>(raw.size(), 1), Rat(0));
    res.reduce_from(raw);
    return res;
}

Cyclo Cyclo::pow(long e) const {
    if (e == 0) return Cyclo(n_, Rat(1));
    Cyclo base = e > 0 ? *this : inverse();
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Cyclo acc(n_, Rat(1));
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool Cyclo::operator==(const Cyclo& o) const {
    if (n_ != o.n_) {
        if (is_rational() && o.is_rational()) return rational_value() == o.rational_value();
        return false;
    }
    return c_ == o.c_;
}

Cyclo Cyclo::unit_group_generator(int order) {
    return (order % 2 == 1) ? -root(order, 1) : root(order, 1);
}

long Cyclo::unit_group_order(int order) { return (order % 2 == 1) ? 2L * order : order; }

std::optional<long> Cyclo::unit_dlog() const {
    long m = unit_group_order(n_);
    Cyclo zeta = unit_group_generator(n_);
    Cyclo p(n_, Rat(1));
    for (long t = 0; t < m; ++t) {
        if (*this == p) return t;
        p = p * zeta;
    }
    return std::nullopt;
}

std::optional<long> Cyclo::root_of_unity_order() const {
    auto t = unit_dlog();
    if (!t) return std::nullopt;
    long m = unit_group_order(n_);
    return m / int_gcd(Int(*t), Int(m)).get_si();
}

std::string Cyclo::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rat a = c_[i];
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool coeff_one = (a == 1) && i > 0;
        if (!coeff_one) os << rat_str(a);
        if (i > 0) {
            if (!coeff_one) os << "*";
            os << "e";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace tgwa
