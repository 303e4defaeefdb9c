#include "tgwa/multipoly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace tgwa {

namespace {
std::vector<std::string>& names_table() {
    static std::vector<std::string> names;
    return names;
}
std::unordered_map<std::string, int>& ids_table() {
    static std::unordered_map<std::string, int> ids;
    return ids;
}
std::mutex& var_mtx() {
    static std::mutex m;
    return m;
}
} // namespace

int var_id(const std::string& name) {
    std::lock_guard<std::mutex> lock(var_mtx());
    auto it = ids_table().find(name);
    if (it != ids_table().end()) return it->second;
    int id = static_cast<int>(names_table().size());
    names_table().push_back(name);
    ids_table().emplace(name, id);
    return id;
}

const std::string& var_name(int id) {
    std::lock_guard<std::mutex> lock(var_mtx());
    return names_table().at(static_cast<size_t>(id));
}

int Monomial::exponent(int var) const {
    for (const auto& [v, x] : e)
        if (v == var) return x;
    return 0;
}

long Monomial::total_degree() const {
    long d = 0;
    for (const auto& [v, x] : e) d += x;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
        if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
            r.e.push_back(e[i++]);
        } else if (i == e.size() || o.e[j].first < e[i].first) {
            r.e.push_back(o.e[j++]);
        } else {
            r.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
            ++i, ++j;
        }
    }
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < e.size()) {
        if (j < o.e.size() && o.e[j].first == e[i].first) {
            int d = e[i].second - o.e[j].second;
            if (d < 0) fail(errc::internal, "monomial division not exact");
            if (d > 0) r.e.emplace_back(e[i].first, d);
            ++i, ++j;
        } else if (j < o.e.size() && o.e[j].first < e[i].first) {
            fail(errc::internal, "monomial division not exact");
        } else {
            r.e.push_back(e[i++]);
        }
    }
    if (j != o.e.size()) fail(errc::internal, "monomial division not exact");
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    size_t i = 0;
    for (const auto& [v, x] : e) {
        while (i < o.e.size() && o.e[i].first < v) ++i;
        if (i == o.e.size() || o.e[i].first != v || o.e[i].second < x) return false;
    }
    return true;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.e.size() && j < b.e.size()) {
        if (a.e[i].first < b.e[j].first) ++i;
        else if (b.e[j].first < a.e[i].first) ++j;
        else {
            r.e.emplace_back(a.e[i].first, std::min(a.e[i].second, b.e[j].second));
            ++i, ++j;
        }
    }
    return r;
}

std::string Monomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, x] : e) {
        if (!first) os << "*";
        first = false;
        os << var_name(v);
        if (x != 1) os << "^" << x;
    }
    return os.str();
}

bool MonoCmp::operator()(const Monomial& a, const Monomial& b) const {
    long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    // Lex on ascending variable ids: higher exponent on the earliest
    // differing variable wins (compares greater).
    size_t i = 0, j = 0;
    while (i < a.e.size() && j < b.e.size()) {
        if (a.e[i].first != b.e[j].first)
            // The one holding the smaller variable id has positive exponent there.
            return a.e[i].first > b.e[j].first ? true : false;
        if (a.e[i].second != b.e[j].second) return a.e[i].second < b.e[j].second;
        ++i, ++j;
    }
    return false; // equal
}

MPoly::MPoly(const Cyclo& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

MPoly MPoly::variable(int var) {
    MPoly p;
    Monomial m;
    m.e.emplace_back(var, 1);
    p.terms_.emplace(std::move(m), Cyclo(1, Rat(1)));
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

const Cyclo& MPoly::coeff(const Monomial& m) const {
    static const Cyclo zero;
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
}

Cyclo MPoly::constant_value() const {
    if (terms_.empty()) return Cyclo();
    if (!is_constant()) fail(errc::internal, "not a constant polynomial");
    return terms_.begin()->second;
}

long MPoly::total_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.total_degree();
}

int MPoly::max_order() const {
    int n = 1;
    for (const auto& [m, c] : terms_) n = std::max(n, c.order());
    return n;
}

void MPoly::add_term(const Monomial& m, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

MPoly MPoly::mul_term(const Monomial& m, const Cyclo& c) const {
    MPoly r;
    if (c.is_zero()) return r;
    for (const auto& [m1, c1] : terms_) r.terms_.emplace(m1 * m, c1 * c);
    return r;
}

const Monomial& MPoly::lead_monomial() const {
    if (terms_.empty()) fail(errc::internal, "lead term of zero polynomial");
    return terms_.rbegin()->first;
}

const Cyclo& MPoly::lead_coeff() const {
    if (terms_.empty()) fail(errc::internal, "lead term of zero polynomial");
    return terms_.rbegin()->second;
}

MPoly MPoly::divexact(const MPoly& d) const {
    if (d.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    MPoly r = *this, q;
    while (!r.is_zero()) {
        const Monomial& rm = r.lead_monomial();
        if (!d.lead_monomial().divides(rm)) fail(errc::internal, "polynomial division not exact");
        Monomial qm = rm / d.lead_monomial();
        Cyclo qc = r.lead_coeff() / d.lead_coeff();
        q.add_term(qm, qc);
        r = r - d.mul_term(qm, qc);
    }
    return q;
}

std::vector<int> MPoly::variables() const {
    std::vector<int> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, x] : m.e)
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    return vs;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print from the leading term down.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool simple_coeff = c.is_rational() || cs.find(' ') == std::string::npos;
        if (!first) os << " + ";
        first = false;
        if (m.empty()) {
            os << (simple_coeff ? cs : "(" + cs + ")");
            continue;
        }
        if (c.is_rational() && c.rational_value() == 1) {
            os << m.str();
        } else if (c.is_rational() && c.rational_value() == -1) {
            os << "-" << m.str();
        } else {
            os << (simple_coeff ? cs : "(" + cs + ")") << "*" << m.str();
        }
    }
    return os.str();
}

namespace {

// Univariate view of p in variable v: degree -> coefficient polynomial.
std::map<int, MPoly> uni_view(const MPoly& p, int v) {
    std::map<int, MPoly> out;
    for (const auto& [m, c] : p.terms()) {
        int d = m.exponent(v);
        Monomial rest;
        for (const auto& [var, x] : m.e)
            if (var != v) rest.e.emplace_back(var, x);
        out[d].add_term(rest, c);
    }
    return out;
}

MPoly from_uni_view(const std::map<int, MPoly>& view, int v) {
    MPoly p;
    for (const auto& [d, coeff] : view) {
        Monomial vm;
        if (d > 0) vm.e.emplace_back(v, d);
        for (const auto& [m, c] : coeff.terms()) p.add_term(vm * m, c);
    }
    return p;
}

int uni_degree(const std::map<int, MPoly>& view) {
    return view.empty() ? -1 : view.rbegin()->first;
}

MPoly make_monic(const MPoly& p) {
    if (p.is_zero()) return p;
    Cyclo lc = p.lead_coeff();
    MPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m, c / lc);
    return r;
}

// Pseudo-remainder of a by b in variable v (degrees in v: da >= db > 0).
MPoly pseudo_rem(const MPoly& a, const MPoly& b, int v) {
    auto av = uni_view(a, v);
    auto bv = uni_view(b, v);
    int db = uni_degree(bv);
    MPoly lb = bv.rbegin()->second;
    auto r = av;
    while (uni_degree(r) >= db && uni_degree(r) >= 0) {
        int dr = uni_degree(r);
        MPoly lr = r.rbegin()->second;
        // r = lb*r - lr*x^(dr-db)*b
        std::map<int, MPoly> nr;
        for (const auto& [d, c] : r) {
            if (d == dr) continue;
            nr[d] = c * lb;
        }
        for (const auto& [d, c] : bv) {
            if (d == db) continue;
            int nd = d + dr - db;
            auto it = nr.find(nd);
            if (it == nr.end()) nr[nd] = -(lr * c);
            else it->second = it->second - lr * c;
        }
        for (auto it = nr.begin(); it != nr.end();) {
            if (it->second.is_zero()) it = nr.erase(it);
            else ++it;
        }
        r = std::move(nr);
    }
    return from_uni_view(r, v);
}

MPoly content_in(const MPoly& p, int v) {
    auto view = uni_view(p, v);
    MPoly g;
    for (const auto& [d, c] : view) {
        g = mpoly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

// Univariate gcd over the coefficient field, monic each step.
std::map<int, Cyclo> uni_field_gcd(std::map<int, Cyclo> a, std::map<int, Cyclo> b) {
    auto trim = [](std::map<int, Cyclo>& p) {
        for (auto it = p.begin(); it != p.end();) {
            if (it->second.is_zero()) it = p.erase(it);
            else ++it;
        }
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        int db = b.rbegin()->first;
        Cyclo lb = b.rbegin()->second;
        while (!a.empty() && a.rbegin()->first >= db) {
            int da = a.rbegin()->first;
            Cyclo f = a.rbegin()->second / lb;
            for (const auto& [d, c] : b) {
                int nd = d + da - db;
                auto it = a.find(nd);
                Cyclo nv = (it == a.end() ? Cyclo() : it->second) - f * c;
                if (nv.is_zero()) {
                    if (it != a.end()) a.erase(it);
                } else {
                    a[nd] = nv;
                }
            }
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Cyclo lc = a.rbegin()->second;
        for (auto& [d, c] : a) c = c / lc;
    }
    return a;
}

std::map<int, Cyclo> specialize_to_uni(const MPoly& p, int v, const std::map<int, Rat>& pts, int order) {
    std::map<int, Cyclo> out;
    for (const auto& [m, c] : p.terms()) {
        Cyclo val = c.order() == order ? c : Cyclo(order, Rat(0)) + c;
        int d = 0;
        for (const auto& [var, x] : m.e) {
            if (var == v) {
                d = x;
                continue;
            }
            Rat pt = pts.at(var);
            Rat f(1);
            for (int i = 0; i < x; ++i) f *= pt;
            val = val * Cyclo(order, f);
        }
        auto it = out.find(d);
        if (it == out.end()) out.emplace(d, val);
        else it->second = it->second + val;
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

int degree_in(const MPoly& p, int v) {
    int d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.exponent(v));
    return d;
}

MPoly lead_coeff_in(const MPoly& p, int v) {
    int d = degree_in(p, v);
    MPoly lc;
    for (const auto& [m, c] : p.terms()) {
        if (m.exponent(v) != d) continue;
        Monomial rest;
        for (const auto& [var, x] : m.e)
            if (var != v) rest.e.emplace_back(var, x);
        lc.add_term(rest, c);
    }
    return lc;
}

// Sound coprimality certificate: for each variable v, specialize the other
// variables at points where a leading coefficient survives; a constant
// univariate gcd then bounds deg_v(gcd) by 0. All variables constant means
// the gcd is a unit. Returns false on any failure (fall through to the PRS).
bool certified_coprime(const MPoly& a, const MPoly& b, const std::vector<int>& vars) {
    int order = std::max(a.max_order(), b.max_order());
    for (int v : vars) {
        if (degree_in(a, v) == 0 || degree_in(b, v) == 0) continue;
        bool certified = false;
        for (int attempt = 0; attempt < 3 && !certified; ++attempt) {
            std::map<int, Rat> pts;
            for (int w : vars)
                if (w != v) pts[w] = Rat(3 + 2 * w + 11 * attempt);
            const MPoly& lead_src = degree_in(a, v) > 0 ? a : b;
            auto lc = specialize_to_uni(lead_coeff_in(lead_src, v), -1, pts, order);
            if (lc.empty()) continue; // unlucky point, leading coeff vanished
            auto au = specialize_to_uni(a, v, pts, order);
            auto bu = specialize_to_uni(b, v, pts, order);
            if (au.empty() || bu.empty()) continue;
            auto g = uni_field_gcd(au, bu);
            if (!g.empty() && g.rbegin()->first == 0) certified = true;
        }
        if (!certified) return false;
    }
    return true;
}

} // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant()) return MPoly(Cyclo(std::max(a.max_order(), b.max_order()), Rat(1)));

    // Monomial fast path.
    if (a.is_monomial() && b.is_monomial()) {
        MPoly r;
        r.add_term(Monomial::gcd(a.lead_monomial(), b.lead_monomial()),
                   Cyclo(std::max(a.max_order(), b.max_order()), Rat(1)));
        return r;
    }
    if (a.is_monomial() || b.is_monomial()) {
        const MPoly& mono = a.is_monomial() ? a : b;
        const MPoly& poly = a.is_monomial() ? b : a;
        Monomial g = mono.lead_monomial();
        for (const auto& [m, c] : poly.terms()) {
            g = Monomial::gcd(g, m);
            if (g.empty()) break;
        }
        MPoly r;
        r.add_term(g, Cyclo(std::max(a.max_order(), b.max_order()), Rat(1)));
        return r;
    }
    if (a == b) return make_monic(a);

    std::vector<int> vars = a.variables();
    for (int v : b.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());

    int order = std::max(a.max_order(), b.max_order());
    if (vars.size() == 1) {
        auto g = uni_field_gcd(specialize_to_uni(a, vars[0], {}, order),
                               specialize_to_uni(b, vars[0], {}, order));
        MPoly r;
        for (const auto& [d, c] : g) {
            Monomial m;
            if (d > 0) m.e.emplace_back(vars[0], d);
            r.add_term(m, c);
        }
        return r;
    }
    if (certified_coprime(a, b, vars)) return MPoly(Cyclo(order, Rat(1)));

    // Main variable: highest id present.
    int v = vars.back();

    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly cg = mpoly_gcd(ca, cb);
    MPoly pa = a.divexact(ca), pb = b.divexact(cb);

    // Primitive PRS in v.
    auto deg = [v](const MPoly& p) {
        int d = 0;
        for (const auto& [m, c] : p.terms()) d = std::max(d, m.exponent(v));
        return d;
    };
    if (deg(pa) < deg(pb)) std::swap(pa, pb);
    while (true) {
        if (pb.is_zero()) break;
        if (deg(pb) == 0) {
            // Coprime in v; the gcd is the content part only.
            return make_monic(cg);
        }
        MPoly r = pseudo_rem(pa, pb, v);
        if (!r.is_zero()) r = r.divexact(content_in(r, v));
        pa = std::move(pb);
        pb = std::move(r);
    }
    return make_monic(cg * pa);
}

} // namespace tgwa
