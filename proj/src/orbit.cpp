#include "tgwa/orbit.hpp"

#include <sstream>

namespace tgwa {

std::string WeightPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < alpha.size(); ++i) os << (i ? ", " : "") << alpha[i].str();
    os << ")";
    return os.str();
}

QwaSystem QwaSystem::make(const ParameterEnv& env, int n) {
    QwaSystem s;
    s.order = env.order();
    s.params = QwaParams::from_env(env, n);
    s.pres = qwa_presentation(s.params);
    return s;
}

WeightPoint QwaSystem::point_n0() const {
    WeightPoint pt;
    pt.alpha.assign(n(), Scalar::integer(0));
    pt.alpha[0] = (Scalar::integer(1) - params.q[0]).inverse();
    return pt;
}

WeightPoint QwaSystem::point_n1(const Scalar& lam) const {
    if (n() != 2) fail(errc::internal, "named point families are rank-two");
    Scalar one = Scalar::integer(1);
    WeightPoint pt;
    pt.alpha = {(one - lam) / (one - params.q[0]), lam / (one - params.q[1])};
    return pt;
}

WeightPoint QwaSystem::point_n2(const Scalar& lam) const {
    if (n() != 2) fail(errc::internal, "named point families are rank-two");
    Scalar one = Scalar::integer(1);
    WeightPoint pt;
    pt.alpha = {(one - params.q[0]).inverse(), lam};
    return pt;
}

WeightPoint QwaSystem::point_generic(const Scalar& a1, const Scalar& a2) const {
    if (n() != 2) fail(errc::internal, "named point families are rank-two");
    WeightPoint pt;
    pt.alpha = {a1, a2};
    return pt;
}

GammaSequence gamma_sequence(const WeightPoint& pt, const QwaSystem& sys) {
    GammaSequence g;
    Scalar acc = Scalar::integer(1);
    g.gamma.push_back(acc);
    for (int j = 0; j < sys.n(); ++j) {
        acc = acc + (sys.params.q[j] - Scalar::integer(1)) * pt.alpha[j];
        g.gamma.push_back(acc);
    }
    return g;
}

WeightPoint sigma_action(const std::vector<long>& g, const WeightPoint& pt, const QwaSystem& sys) {
    GammaSequence gam = gamma_sequence(pt, sys);
    WeightPoint out;
    Scalar qprod = Scalar::integer(1);
    for (int j = 0; j < sys.n(); ++j) {
        qprod = qprod * sys.params.q[j].pow(g[j]);
        Scalar aj = (pt.alpha[j] - q_integer(g[j], sys.params.q[j]) * gam.gamma[j]) * qprod.inverse();
        out.alpha.push_back(aj);
    }
    return out;
}

WeightPoint sigma_action_slow(const std::vector<long>& g, const WeightPoint& pt, const QwaSystem& sys) {
    return point_move(g, pt, sys.pres);
}

WeightPoint point_move(const std::vector<long>& g, const WeightPoint& pt, const TgwaPresentation& pres) {
    // t_j - alpha'_j generates sigma^g(m) iff sigma^{-g}(t_j) - alpha'_j is in m.
    std::vector<long> neg(g.size());
    for (size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
    AffineAut inv = pres.sigma_power(neg);
    WeightPoint out;
    for (int j = 0; j < pres.n; ++j) out.alpha.push_back(inv.image_of_generator(j).eval(pt.alpha));
    return out;
}

bool BreakSolutions::has_nonnegative() const { return min_nonnegative().has_value(); }
bool BreakSolutions::has_negative() const { return max_negative().has_value(); }

std::optional<long> BreakSolutions::min_nonnegative() const {
    switch (kind) {
    case Kind::None: return std::nullopt;
    case Kind::All: return 0;
    case Kind::Single: return value >= 0 ? std::optional<long>(value) : std::nullopt;
    case Kind::Progression: return value; // representative already in [0, period)
    }
    return std::nullopt;
}

std::optional<long> BreakSolutions::max_negative() const {
    switch (kind) {
    case Kind::None: return std::nullopt;
    case Kind::All: return -1;
    case Kind::Single: return value < 0 ? std::optional<long>(value) : std::nullopt;
    case Kind::Progression: return value - period;
    }
    return std::nullopt;
}

bool BreakSolutions::contains(long i) const {
    switch (kind) {
    case Kind::None: return false;
    case Kind::All: return true;
    case Kind::Single: return i == value;
    case Kind::Progression: return floormod(i - value, period) == 0;
    }
    return false;
}

BreakSolutions break_exponents(const WeightPoint& pt, int j, const QwaSystem& sys) {
    if (j < 1 || j > sys.n()) fail(errc::internal, "break coordinate out of range");
    GammaSequence gam = gamma_sequence(pt, sys);
    const Scalar& prev = gam.gamma[j - 1];
    const Scalar& cur = gam.gamma[j];
    const Scalar& q = sys.params.q[j - 1];
    BreakSolutions out;
    if (prev.is_zero()) {
        out.kind = cur.is_zero() ? BreakSolutions::Kind::All : BreakSolutions::Kind::None;
        return out;
    }
    Scalar rho = cur / prev;
    if (rho.is_zero()) {
        out.kind = BreakSolutions::Kind::None;
        return out;
    }
    if (auto o = q.root_of_unity_order()) {
        Scalar p = Scalar::integer(1);
        for (long i = 0; i < *o; ++i) {
            if (p == rho) {
                out.kind = BreakSolutions::Kind::Progression;
                out.value = i;
                out.period = *o;
                return out;
            }
            p = p * q;
        }
        out.kind = BreakSolutions::Kind::None;
        return out;
    }
    // q has transcendental support: compare monomial exponents.
    auto qm = q.as_unit_monomial();
    auto rm = rho.as_unit_monomial();
    if (!qm || !rm) {
        out.kind = BreakSolutions::Kind::None;
        return out;
    }
    long cand = 0;
    bool have = false;
    for (const auto& [v, e] : qm->exps) {
        long re = 0;
        for (const auto& [rv, rex] : rm->exps)
            if (rv == v) re = rex;
        if (e == 0) continue;
        if (re % e != 0) {
            out.kind = BreakSolutions::Kind::None;
            return out;
        }
        cand = re / e;
        have = true;
        break;
    }
    if (!have) {
        out.kind = BreakSolutions::Kind::None; // q constant unit: handled above
        return out;
    }
    if (q.pow(cand) == rho) {
        out.kind = BreakSolutions::Kind::Single;
        out.value = cand;
    }
    return out;
}

namespace {

long session_unit_dlog(const Scalar& u, int order) {
    auto um = u.as_unit_monomial();
    if (!um) fail(errc::internal, "expected unit monomial");
    Cyclo c = u.num().lead_coeff() / u.den().lead_coeff();
    Cyclo promoted = c;
    if (c.order() != order) {
        if (!c.is_rational()) fail(errc::mixed_cyclotomic_orders, "unit from a different cyclotomic order");
        promoted = Cyclo(order, c.rational_value());
    }
    auto t = promoted.unit_dlog();
    if (!t) fail(errc::internal, "unit part is not a root of unity");
    return *t;
}

// {g in Z^n : prod_i chars[i]^{g_i} = 1}, each char a unit monomial.
Lattice unit_constraint_lattice(const std::vector<Scalar>& chars, int order) {
    int n = static_cast<int>(chars.size());
    long m = Cyclo::unit_group_order(order);
    IntMatrix torsion(1, n);
    std::map<int, std::vector<long>> var_rows; // var id -> exponent row
    for (int i = 0; i < n; ++i) {
        auto um = chars[i].as_unit_monomial();
        if (!um) fail(errc::internal, "character is not a unit monomial");
        torsion.at(0, i) = session_unit_dlog(chars[i], order);
        for (const auto& [v, e] : um->exps) {
            auto& row = var_rows[v];
            row.resize(n, 0);
            row[i] = e;
        }
    }
    IntMatrix free_rows(0, n);
    for (auto& [v, row] : var_rows) {
        row.resize(n, 0);
        std::vector<Int> r(row.begin(), row.end());
        free_rows.append_row(r);
    }
    if (free_rows.rows() == 0) free_rows = IntMatrix(0, n);
    return kernel_of_unit_map(torsion, m, free_rows);
}

} // namespace

Lattice isotropy(const WeightPoint& pt, const QwaSystem& sys) {
    int n = sys.n();
    GammaSequence gam = gamma_sequence(pt, sys);
    Lattice acc = Lattice::full(n);
    for (int j = 1; j <= n; ++j) {
        if (gam.gamma[j].is_zero()) continue;
        std::vector<Scalar> chars(n, Scalar::integer(1));
        for (int i = 0; i < j; ++i) chars[i] = sys.params.q[i];
        acc = intersect(acc, unit_constraint_lattice(chars, sys.order));
    }
    return acc;
}

bool RayIntervals::contains(const std::vector<long>& g) const {
    for (size_t j = 0; j < rays.size(); ++j) {
        if (rays[j].lo && g[j] < *rays[j].lo) return false;
        if (rays[j].hi && g[j] > *rays[j].hi) return false;
    }
    return true;
}

RayIntervals g_tilde(const WeightPoint& pt, const QwaSystem& sys) {
    RayIntervals out;
    for (int j = 1; j <= sys.n(); ++j) {
        BreakSolutions sol = break_exponents(pt, j, sys);
        RayIntervals::Ray ray;
        if (auto i0 = sol.min_nonnegative()) ray.hi = *i0;
        if (auto i1 = sol.max_negative()) ray.lo = *i1 + 1;
        out.rays.push_back(ray);
    }
    return out;
}

Lattice g_m(const WeightPoint& pt, const QwaSystem& sys) {
    int n = sys.n();
    Lattice iso = isotropy(pt, sys);
    RayIntervals rays = g_tilde(pt, sys);
    IntMatrix axes(0, n);
    for (int j = 0; j < n; ++j) {
        if (!rays.axis_is_all(j)) continue;
        std::vector<Int> row(n, Int(0));
        row[j] = 1;
        axes.append_row(row);
    }
    if (axes.rows() == 0) axes = IntMatrix(0, n);
    Lattice result = intersect(iso, Lattice(n, axes));
    // A subgroup must fit inside the interval box together with its negations.
    for (int i = 0; i < result.rank(); ++i) {
        std::vector<Int> b = result.basis().row(i);
        std::vector<long> v(n), w(n);
        for (int j = 0; j < n; ++j) {
            v[j] = to_long(b[j]);
            w[j] = -v[j];
        }
        if (!rays.contains(v) || !rays.contains(w))
            fail(errc::groupness_violated, "g_m basis escapes the interval box");
    }
    return result;
}

Lattice kernel_k1(const QwaSystem& sys) {
    std::vector<Scalar> chars(sys.n(), Scalar::integer(1));
    chars[0] = sys.params.q[0];
    return unit_constraint_lattice(chars, sys.order);
}

Lattice kernel_k2(const QwaSystem& sys) {
    std::vector<Scalar> chars(sys.n(), Scalar::integer(1));
    chars[0] = sys.params.q[0];
    chars[1] = sys.params.q[1];
    return unit_constraint_lattice(chars, sys.order);
}

Lattice kernel_q(const QwaSystem& sys) {
    int n = sys.n();
    Lattice acc = Lattice::full(n);
    for (int j = 0; j < n; ++j) {
        std::vector<Scalar> chars(n, Scalar::integer(1));
        chars[j] = sys.params.q[j];
        acc = intersect(acc, unit_constraint_lattice(chars, sys.order));
    }
    return acc;
}

} // namespace tgwa
