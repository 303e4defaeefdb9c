#include "tgwa/qwa_modules.hpp"

#include <memory>

namespace tgwa {

namespace {

Scalar one() { return Scalar::integer(1); }
Scalar zero() { return Scalar::integer(0); }

long sgn(long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
long absl(long v) { return v < 0 ? -v : v; }

// ---- operator calculus on the gamma_1 = 0 orbit (base point n_lam^(2)) ----
// All identities below act on the weight space of n_lam^(2); lam is the value
// of t_2 there and t_1 is (1-q1)^{-1} on the whole orbit.

struct N2Calc {
    Scalar q1, q2, l12, lam;

    // Z_1^k Z_2^l = q1^{k*max(0,l)} l12^{k l} Z_2^l Z_1^k
    Scalar swap_factor(long k, long l) const { return q1.pow(k * std::max(0L, l)) * l12.pow(k * l); }

    // Z_1^k Z_1^l = f * Z_1^{k+l}
    Scalar z1_merge(long k, long l) const {
        if (k * l >= 0) return one();
        long m = std::min(absl(k), absl(l));
        return (one() - q1).pow(-m);
    }

    // Z_2^k Z_2^l = f * Z_2^{k+l}
    Scalar z2_merge(long k, long l) const {
        if (k * l >= 0) return one();
        long m = std::min(absl(k), absl(l));
        return lam.pow(m) * q2.pow((1 - 2 * l + sgn(l) * m) * m / 2);
    }

    // Z_2^k Z_2^l = c(k,l) Z_2^l Z_2^k
    Scalar c_swap(long k, long l) const {
        if (k * l >= 0) return one();
        long m = std::min(absl(k), absl(l));
        return q2.pow((k - l) * m - (sgn(k) - sgn(l)) * m * m / 2);
    }

    // r_g = (1-q1)^{|g1|} (lam^{-1} q2^{(g2-1)/2})^{|g2|}
    Scalar rg(long g1, long g2) const {
        return (one() - q1).pow(absl(g1)) * lam.pow(-absl(g2)) * q2.pow((g2 - 1) * absl(g2) / 2);
    }

    // nu = l12^d q1^{a1*max(0,b2) - b1*max(0,a2)} c(a2, b2)
    Scalar nu(const std::array<long, 2>& a, const std::array<long, 2>& b) const {
        long d = a[0] * b[1] - b[0] * a[1];
        return l12.pow(d) * q1.pow(a[0] * std::max(0L, b[1]) - b[0] * std::max(0L, a[1])) *
               c_swap(a[1], b[1]);
    }

    // (Z^v)^B = f * Z_1^{v1 B} Z_2^{v2 B}
    Scalar power_reduce(const std::array<long, 2>& v, long B) const {
        if (B >= 0) {
            Scalar base = q1.pow(-v[0] * std::max(0L, v[1])) * l12.pow(-v[0] * v[1]);
            return base.pow(B * (B - 1) / 2);
        }
        long m = -B;
        Scalar base = q1.pow(v[0] * std::max(0L, -v[1])) * l12.pow(-v[0] * v[1]);
        return rg(v[0], v[1]).pow(m) * base.pow(m * (m + 1) / 2);
    }

    // (Z^a)^B (Z^b)^{-A} = C * Z_1^{a1 B - b1 A} Z_2^{a2 B - b2 A} with B, A any integers
    Scalar two_power_product(const std::array<long, 2>& a, long B, const std::array<long, 2>& b, long A) const {
        Scalar f = power_reduce(a, B) * power_reduce(b, -A);
        // swap Z_2^{a2 B} past Z_1^{-b1 A}
        long K = a[1] * B, L = -b[0] * A;
        f = f * q1.pow(-L * std::max(0L, K)) * l12.pow(-L * K);
        f = f * z1_merge(a[0] * B, -b[0] * A);
        f = f * z2_merge(a[1] * B, -b[1] * A);
        return f;
    }
};

N2Calc n2_calc(const QwaSystem& sys, const Scalar& lam) {
    return N2Calc{sys.params.q1(), sys.params.q2(), sys.params.l12(), lam};
}

long require_order(const Scalar& s, const char* what) {
    auto d = s.root_of_unity_order();
    if (!d)
        fail(errc::no_finite_dimensional_weight_spaces,
             std::string(what) + " is not a root of unity; no finite-dimensional weight spaces");
    return *d;
}

// Two-phase action assembly: X actions are explicit, Y actions derived from
// the inverse-edge rule unless a family provides them.
WeightModuleSpec with_derived_y(WeightModuleSpec spec) {
    auto snap = std::make_shared<WeightModuleSpec>(spec);
    spec.act = [snap](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        if (g.is_x) return snap->act(g, idx);
        return derived_y_action(*snap, g.idx, idx);
    };
    return spec;
}

std::function<std::optional<std::array<long, 2>>(const std::array<long, 2>&)>
axis_reduce(const std::array<Axis, 2>& axes) {
    return [axes](const std::array<long, 2>& s) -> std::optional<std::array<long, 2>> {
        std::array<long, 2> out = s;
        for (int j = 0; j < 2; ++j) {
            if (axes[j].kind == Axis::Kind::Finite && axes[j].wraps) {
                out[j] = floormod(s[j], axes[j].d);
            } else if (!axes[j].contains(s[j])) {
                return std::nullopt;
            }
        }
        return out;
    };
}

} // namespace

CaseTag classify_case(const WeightPoint& pt, const QwaSystem& sys) {
    if (sys.n() != 2) fail(errc::internal, "classification is rank-two");
    GammaSequence gam = gamma_sequence(pt, sys);
    bool g1_zero = gam.gamma[1].is_zero();
    bool g2_zero = gam.gamma[2].is_zero();
    auto o1 = sys.params.q1().root_of_unity_order();
    auto o2 = sys.params.q2().root_of_unity_order();
    if (g1_zero && g2_zero) return CaseTag::N0;
    if (g2_zero) {
        BreakSolutions sol = break_exponents(pt, 1, sys);
        if (sol.kind == BreakSolutions::Kind::None)
            return o1 ? CaseTag::N1_NOBREAK_ROU : CaseTag::N1_NOBREAK_GENERIC;
        if (o1) return CaseTag::N1_BREAK_ROU;
        return sol.value >= 0 ? CaseTag::N1_BREAK_HIGHEST : CaseTag::N1_BREAK_LOWEST;
    }
    if (g1_zero) {
        int rank = kernel_k2(sys).rank();
        if (rank == 0) return CaseTag::N2_RANK0;
        if (rank == 1) return CaseTag::N2_RANK1;
        return CaseTag::N2_RANK2;
    }
    bool no_break1 = break_exponents(pt, 1, sys).kind == BreakSolutions::Kind::None;
    bool no_break2 = break_exponents(pt, 2, sys).kind == BreakSolutions::Kind::None;
    if (o1 && o2 && no_break1 && no_break2) return CaseTag::GENERIC_BOTH_ROU;
    return CaseTag::GENERIC_OTHER;
}

std::pair<long, long> k_reduction(long value, long r) {
    long kpp = floormod(value, r);
    return {(value - kpp) / r, kpp};
}

Scalar rg_closed_form(const std::array<long, 2>& g, const Scalar& lam, const QwaSystem& sys) {
    return n2_calc(sys, lam).rg(g[0], g[1]);
}

InducedConstants induced_constants(const std::array<long, 2>& a, const std::array<long, 2>& b,
                                   const WeightPoint& pt, const QwaSystem& sys, long r_window) {
    GammaSequence gam = gamma_sequence(pt, sys);
    if (!gam.gamma[1].is_zero())
        fail(errc::internal, "induced constants live on the gamma_1 = 0 family");
    Scalar lam = pt.alpha[1];
    N2Calc calc = n2_calc(sys, lam);
    InducedConstants out;
    out.a = a;
    out.b = b;
    out.box = box_reps(a[0], a[1], b[0], b[1]);

    // r_g table, certified against the pairing oracle.
    for (long x = -r_window; x <= r_window; ++x)
        for (long y = -r_window; y <= r_window; ++y) {
            Scalar rg = calc.rg(x, y);
            Scalar pv = pair_at({x, y}, pt.alpha, sys.pres);
            if (!(rg * pv == one()))
                fail(errc::certification_failed, "r_g formula disagrees with the pairing oracle");
            out.r_table[{x, y}] = rg;
        }

    // nu, certified against the brute-force commutation scalar.
    out.nu = calc.nu(a, b);
    {
        auto lamm = commutation_scalars({{a[0], a[1]}, {b[0], b[1]}}, pt, sys.pres);
        if (!(lamm[0][1] == out.nu))
            fail(errc::certification_failed, "nu formula disagrees with the commutation oracle");
    }
    if (auto d = out.nu.root_of_unity_order()) out.nu_order = *d;

    long d1 = out.box.d1, d2 = out.box.d2, s = out.box.s;
    long B = b[1] / d2, A = a[1] / d2;

    // Oracle for operator identities W = C * Z^g on the weight space:
    // C = r_g^{pair} * value(a_g^* W).
    auto operator_scalar = [&](const Word& w, const std::array<long, 2>& g) {
        Word probe = star(canonical_letters({g[0], g[1]}));
        probe.insert(probe.end(), w.begin(), w.end());
        Scalar pv = pair_at({g[0], g[1]}, pt.alpha, sys.pres);
        return word_value_at(probe, pt.alpha, sys.pres) / pv;
    };
    auto power_word = [&](const std::array<long, 2>& v, long m, Word& w, Scalar& coeff) {
        Word base = canonical_letters({v[0], v[1]});
        if (m >= 0) {
            for (long i = 0; i < m; ++i) w.insert(w.end(), base.begin(), base.end());
        } else {
            Word inv = star(base);
            Scalar rv = pair_at({v[0], v[1]}, pt.alpha, sys.pres).inverse();
            for (long i = 0; i < -m; ++i) {
                w.insert(w.end(), inv.begin(), inv.end());
                coeff = coeff * rv;
            }
        }
    };

    // C1^{-1}: (Z^a)^{B} (Z^b)^{-A} = C1^{-1} X_1^{d1}
    Scalar c1_inv = calc.two_power_product(a, B, b, A);
    {
        Word w;
        Scalar coeff = one();
        power_word(a, B, w, coeff);
        power_word(b, -A, w, coeff);
        Scalar oracle = coeff * operator_scalar(w, {d1, 0});
        if (!(oracle == c1_inv)) fail(errc::certification_failed, "C1 formula disagrees with the word oracle");
    }
    out.c1 = c1_inv.inverse();

    // C2^{-1}: (Z^a)^{a2'} (Z^b)^{b2'} = C2^{-1} Z_1^{-s} Z_2^{d2}
    Scalar c2_inv = calc.two_power_product(a, out.box.a2p, b, -out.box.b2p);
    {
        Word w;
        Scalar coeff = one();
        power_word(a, out.box.a2p, w, coeff);
        power_word(b, out.box.b2p, w, coeff);
        Scalar oracle = coeff * operator_scalar(w, {-s, d2});
        if (!(oracle == c2_inv)) fail(errc::certification_failed, "C2 formula disagrees with the word oracle");
    }
    out.c2 = c2_inv.inverse();

    // X_2^{d2} r_{(-s,d2)} Z_2^{-d2} Z_1^{s} = (1-q1)^s q1^{-s d2} q2^{d2^2} Z_1^s
    // on the weight space of the base point. The lam-dependence of the two
    // pairing inverses cancels and the Z_1^s conjugation contributes q1^{-s d2}.
    out.x2_wrap = (one() - calc.q1).pow(s) * calc.q1.pow(-s * d2) * calc.q2.pow(d2 * d2);
    {
        Word w = canonical_letters({0, d2});
        Word inv = star(canonical_letters({-s, d2}));
        w.insert(w.end(), inv.begin(), inv.end());
        Scalar coeff = pair_at({-s, d2}, pt.alpha, sys.pres).inverse();
        Scalar oracle = coeff * operator_scalar(w, {s, 0});
        if (!(oracle == out.x2_wrap))
            fail(errc::certification_failed, "X2 wrap reduction disagrees with the word oracle");
    }
    return out;
}

namespace {

// ---------- family builders ----------

WeightModuleSpec base_spec(CaseTag tag, const QwaSystem& sys, const WeightPoint& base) {
    WeightModuleSpec spec;
    spec.tag = tag;
    spec.pres = sys.pres;
    spec.qwa = sys.params;
    spec.base = base;
    return spec;
}

WeightModuleSpec build_n0(const QwaSystem& sys, const BuildOptions& opts) {
    WeightModuleSpec spec = base_spec(CaseTag::N0, sys, sys.point_n0());
    spec.axes = {Axis{Axis::Kind::Finite, 1, true}, Axis{Axis::Kind::Finite, 1, true}};
    spec.params["rho"] = opts.rho;
    Scalar rho = opts.rho, q1 = sys.params.q1();
    Scalar y1coeff = rho.inverse() * (one() - q1).inverse();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [rho, y1coeff](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        if (g.idx == 1) return std::nullopt; // X2 = Y2 = 0
        return std::make_pair(idx, g.is_x ? rho : y1coeff);
    };
    return spec;
}

// Shared N1 data: base point n_lam^(1) after normalization; X2/Y2 diagonal.
struct N1Diag {
    Scalar x2, y2; // at s1 = 0; powers of step applied per index
    Scalar x2_step, y2_step;
};

WeightModuleSpec build_n1_break_rou(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    BreakSolutions sol = break_exponents(pt, 1, sys);
    long o1 = *sys.params.q1().root_of_unity_order();
    WeightPoint base = sigma_action({sol.value, 0}, pt, sys); // lam -> 1
    WeightModuleSpec spec = base_spec(CaseTag::N1_BREAK_ROU, sys, base);
    spec.axes = {Axis{Axis::Kind::FiniteNeg, o1, false}, Axis{Axis::Kind::Finite, 1, true}};
    spec.params["rho"] = opts.rho;
    Scalar rho = opts.rho, q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12(),
           l21 = sys.params.l21();
    Scalar y2base = (one() - q2).inverse() * rho.inverse();
    spec.reduce_support = axis_reduce(spec.axes);
    long lo = -(o1 - 1);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long j = -idx.s[0]; // v_j = a_{(-j,0)} v_0
        if (g.idx == 0) {
            if (g.is_x) {
                if (j == 0) return std::nullopt;
                return std::make_pair(BasisIndex{{idx.s[0] + 1, 0}, 0}, q_integer(j, q1));
            }
            if (idx.s[0] - 1 < lo) return std::nullopt;
            return std::make_pair(BasisIndex{{idx.s[0] - 1, 0}, 0}, one());
        }
        if (g.is_x) return std::make_pair(idx, rho * l12.pow(j) * q1.pow(j));
        return std::make_pair(idx, y2base * l21.pow(j));
    };
    return spec;
}

WeightModuleSpec build_n1_break_highest(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    BreakSolutions sol = break_exponents(pt, 1, sys);
    WeightPoint base = sigma_action({sol.value, 0}, pt, sys); // lam -> 1
    WeightModuleSpec spec = base_spec(CaseTag::N1_BREAK_HIGHEST, sys, base);
    spec.axes = {Axis{Axis::Kind::ZMinus, 1, false}, Axis{Axis::Kind::Finite, 1, true}};
    spec.params["rho"] = opts.rho;
    Scalar rho = opts.rho, q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12(),
           l21 = sys.params.l21();
    Scalar y2base = (one() - q2).inverse() * rho.inverse();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long j = -idx.s[0];
        if (g.idx == 0) {
            if (g.is_x) {
                if (j == 0) return std::nullopt;
                return std::make_pair(BasisIndex{{idx.s[0] + 1, 0}, 0}, q_integer(j, q1));
            }
            return std::make_pair(BasisIndex{{idx.s[0] - 1, 0}, 0}, one());
        }
        if (g.is_x) return std::make_pair(idx, rho * l12.pow(j) * q1.pow(j));
        return std::make_pair(idx, y2base * l21.pow(j));
    };
    return spec;
}

WeightModuleSpec build_n1_break_lowest(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    BreakSolutions sol = break_exponents(pt, 1, sys);
    WeightPoint base = sigma_action({sol.value + 1, 0}, pt, sys); // lam -> q1^{-1}
    WeightModuleSpec spec = base_spec(CaseTag::N1_BREAK_LOWEST, sys, base);
    spec.axes = {Axis{Axis::Kind::ZPlus, 1, false}, Axis{Axis::Kind::Finite, 1, true}};
    spec.params["rho"] = opts.rho;
    Scalar rho = opts.rho, q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12();
    Scalar y2base = (one() - q2).inverse() * rho.inverse();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long j = idx.s[0]; // v_j = a_{(j,0)} v_0 = X_1^j v_0
        if (g.idx == 0) {
            if (g.is_x) return std::make_pair(BasisIndex{{j + 1, 0}, 0}, one());
            if (j == 0) return std::nullopt;
            return std::make_pair(BasisIndex{{j - 1, 0}, 0}, q_integer(-j, q1));
        }
        if (g.is_x) return std::make_pair(idx, (q1 * l12).pow(-j) * rho);
        // t_2 carries the base parameter lam = q1^{-1} here
        return std::make_pair(idx, q1.inverse() * l12.pow(j) * (one() - q2).inverse() * rho.inverse());
    };
    return spec;
}

WeightModuleSpec build_n1_nobreak_rou(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    long o1 = *sys.params.q1().root_of_unity_order();
    Scalar lam = gamma_sequence(pt, sys).gamma[1];
    long r = require_order(sys.params.l12().pow(o1), "l12^{o1}");
    WeightModuleSpec spec = base_spec(CaseTag::N1_NOBREAK_ROU, sys, pt);
    spec.axes = {Axis{Axis::Kind::Finite, o1, true}, Axis{Axis::Kind::Finite, 1, true}};
    spec.fiber_dim = r;
    spec.params["rho"] = opts.rho;
    spec.params["mu"] = opts.mu;
    spec.params["lam"] = lam;
    spec.params["nu"] = sys.params.l12().pow(o1);
    spec.fiber_torus = std::make_pair(sys.params.l12().pow(o1), r);
    Scalar rho = opts.rho, mu = opts.mu, q1 = sys.params.q1(), q2 = sys.params.q2(),
           l12 = sys.params.l12(), l21 = sys.params.l21();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long i = idx.s[0], j = idx.k;
        if (g.idx == 0) {
            if (g.is_x) {
                if (i < o1 - 1) return std::make_pair(BasisIndex{{i + 1, 0}, j}, one());
                return std::make_pair(BasisIndex{{0, 0}, j}, l12.pow(o1 * j) * rho);
            }
            // Y_1 carries the t_1 value of the source index i - 1, that is
            // (1 - lam q1^{-i+1})/(1 - q1); the wrap source is i = o1 - 1.
            if (i == 0)
                return std::make_pair(BasisIndex{{o1 - 1, 0}, j},
                                      (one() - lam * q1) * (one() - q1).inverse() * l12.pow(-o1 * j) *
                                          rho.inverse());
            return std::make_pair(BasisIndex{{i - 1, 0}, j},
                                  (one() - lam * q1.pow(-i + 1)) * (one() - q1).inverse());
        }
        if (g.is_x) {
            Scalar f = q1.pow(-i) * l21.pow(i);
            if (j < r - 1) return std::make_pair(BasisIndex{{i, 0}, j + 1}, f);
            return std::make_pair(BasisIndex{{i, 0}, 0}, f * mu);
        }
        Scalar f = l12.pow(i) * lam * (one() - q2).inverse();
        if (j == 0) return std::make_pair(BasisIndex{{i, 0}, r - 1}, f * mu.inverse());
        return std::make_pair(BasisIndex{{i, 0}, j - 1}, f);
    };
    return spec;
}

WeightModuleSpec build_n1_nobreak_generic(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    Scalar lam = gamma_sequence(pt, sys).gamma[1];
    WeightModuleSpec spec = base_spec(CaseTag::N1_NOBREAK_GENERIC, sys, pt);
    spec.axes = {Axis{Axis::Kind::ZAll, 1, false}, Axis{Axis::Kind::Finite, 1, true}};
    spec.params["rho"] = opts.rho;
    spec.params["lam"] = lam;
    Scalar rho = opts.rho, q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long j = idx.s[0];
        if (g.idx == 0) {
            if (g.is_x) return std::make_pair(BasisIndex{{j + 1, 0}, 0}, one());
            return std::make_pair(BasisIndex{{j - 1, 0}, 0},
                                  (one() - lam * q1.pow(-j + 1)) * (one() - q1).inverse());
        }
        if (g.is_x) return std::make_pair(idx, q1.pow(-j) * l12.pow(-j) * rho);
        return std::make_pair(idx, l12.pow(j) * lam * (one() - q2).inverse() * rho.inverse());
    };
    return spec;
}

WeightModuleSpec build_n2_rank0(const QwaSystem& sys, const WeightPoint& pt) {
    Scalar lam = pt.alpha[1];
    WeightModuleSpec spec = base_spec(CaseTag::N2_RANK0, sys, pt);
    spec.axes = {Axis{Axis::Kind::ZAll, 1, false}, Axis{Axis::Kind::ZAll, 1, false}};
    spec.params["lam"] = lam;
    Scalar q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long g1 = idx.s[0], g2 = idx.s[1];
        if (!g.is_x) return std::nullopt; // derived
        if (g.idx == 0) {
            Scalar f = g1 >= 0 ? one() : (one() - q1).inverse();
            return std::make_pair(BasisIndex{{g1 + 1, g2}, 0}, f);
        }
        Scalar f = (q1 * l12).pow(-g1);
        if (g2 < 0) f = f * lam * q2.pow(-g2);
        return std::make_pair(BasisIndex{{g1, g2 + 1}, 0}, f);
    };
    return with_derived_y(spec);
}

WeightModuleSpec build_n2_rank1(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    Scalar lam = pt.alpha[1];
    N2Calc calc = n2_calc(sys, lam);
    Lattice k2 = kernel_k2(sys);
    if (k2.rank() != 1) fail(errc::internal, "N2_RANK1 needs rank-one isotropy");
    long a = to_long(k2.basis().at(0, 0));
    long b = to_long(k2.basis().at(0, 1));
    WeightModuleSpec spec = base_spec(CaseTag::N2_RANK1, sys, pt);
    spec.params["rho"] = opts.rho;
    spec.params["lam"] = lam;
    Scalar rho = opts.rho, q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12();

    if (a > 0) {
        spec.axes = {Axis{Axis::Kind::Finite, a, true}, Axis{Axis::Kind::ZAll, 1, false}};
        // reduce modulo Z*(a,b)
        spec.reduce_support = [a, b](const std::array<long, 2>& s) -> std::optional<std::array<long, 2>> {
            long t = floordiv(s[0], a);
            return std::array<long, 2>{s[0] - t * a, s[1] - t * b};
        };
        // (lam^{-1} q2^{(b-1)/2})^{|b|}, with the half-integer exponent folded
        // against |b| so everything stays integral
        Scalar wrap_base = lam.pow(-absl(b)) * q2.pow((b - 1) * absl(b) / 2);
        spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
            long i = idx.s[0], j = idx.s[1];
            if (!g.is_x) return std::nullopt; // derived
            if (g.idx == 0) {
                if (i < a - 1) return std::make_pair(BasisIndex{{i + 1, j}, 0}, one());
                // X1 wrap: coefficient of w_{0, j-b}
                Scalar f = wrap_base * q1.pow(a * (std::max(0L, j) + std::max(0L, -b))) * l12.pow(a * (j - b)) *
                           rho * calc.z2_merge(j, -b);
                return std::make_pair(BasisIndex{{0, j - b}, 0}, f);
            }
            Scalar f = q1.pow(-i) * l12.pow(-i);
            if (j < 0) f = f * lam * q2.pow(-j);
            return std::make_pair(BasisIndex{{i, j + 1}, 0}, f);
        };
    } else {
        // mirrored family: kernel generated by (0, b), b > 0
        if (a != 0 || b <= 0) fail(errc::internal, "unexpected rank-one basis normalization");
        spec.axes = {Axis{Axis::Kind::ZAll, 1, false}, Axis{Axis::Kind::Finite, b, true}};
        spec.reduce_support = [b](const std::array<long, 2>& s) -> std::optional<std::array<long, 2>> {
            return std::array<long, 2>{s[0], floormod(s[1], b)};
        };
        spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
            long i = idx.s[0], j = idx.s[1];
            if (!g.is_x) return std::nullopt; // derived
            if (g.idx == 0) {
                Scalar f = i >= 0 ? one() : (one() - q1).inverse();
                return std::make_pair(BasisIndex{{i + 1, j}, 0}, f);
            }
            Scalar f = q1.pow(-i) * l12.pow(-i);
            if (j == b - 1) return std::make_pair(BasisIndex{{i, 0}, 0}, f * rho);
            return std::make_pair(BasisIndex{{i, j + 1}, 0}, f);
        };
    }
    return with_derived_y(spec);
}

WeightModuleSpec build_n2_rank2(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    Scalar lam = pt.alpha[1];
    Lattice k2 = kernel_k2(sys);
    if (k2.rank() != 2) fail(errc::internal, "N2_RANK2 needs rank-two isotropy");
    std::array<long, 2> a, b;
    if (opts.rank2_basis) {
        a = opts.rank2_basis->first;
        b = opts.rank2_basis->second;
        if (!(Lattice::from_rows(2, {{a[0], a[1]}, {b[0], b[1]}}) == k2))
            fail(errc::degenerate_basis, "explicit basis does not span the isotropy group");
    } else {
        a = {to_long(k2.basis().at(0, 0)), to_long(k2.basis().at(0, 1))};
        b = {to_long(k2.basis().at(1, 0)), to_long(k2.basis().at(1, 1))};
    }
    InducedConstants ic = induced_constants(a, b, pt, sys, 2);
    if (ic.nu_order == 0)
        fail(errc::no_finite_dimensional_weight_spaces, "nu is not a root of unity");
    long r = ic.nu_order;
    long d1 = ic.box.d1, d2 = ic.box.d2, s = ic.box.s;
    long B = b[1] / d2, A = a[1] / d2;
    long a2p = ic.box.a2p, b2p = ic.box.b2p;

    WeightModuleSpec spec = base_spec(CaseTag::N2_RANK2, sys, pt);
    spec.axes = {Axis{Axis::Kind::Finite, d1, true}, Axis{Axis::Kind::Finite, d2, true}};
    spec.fiber_dim = r;
    spec.params["rho"] = opts.rho;
    spec.params["mu"] = opts.mu;
    spec.params["lam"] = lam;
    spec.params["nu"] = ic.nu;
    spec.fiber_torus = std::make_pair(ic.nu, r);
    Scalar rho = opts.rho, mu = opts.mu, q1 = sys.params.q1(), q2 = sys.params.q2(), l12 = sys.params.l12();
    Scalar nu = ic.nu, c1 = ic.c1, c2 = ic.c2, x2wrap = ic.x2_wrap;

    spec.reduce_support = [d1, d2, s](const std::array<long, 2>& v) -> std::optional<std::array<long, 2>> {
        long j = floormod(v[1], d2);
        long c = (v[1] - j) / d2;
        long i = floormod(v[0] + c * s, d1);
        return std::array<long, 2>{i, j};
    };
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long i = idx.s[0], j = idx.s[1], k = idx.k;
        if (!g.is_x) return std::nullopt; // derived
        if (g.idx == 0) {
            if (i < d1 - 1) return std::make_pair(BasisIndex{{i + 1, j}, k}, one());
            auto [k1p, k1pp] = k_reduction(k - A, r);
            Scalar f = q1.pow(j * d1) * l12.pow(j * d1) * c1 * nu.pow(B * k1pp) * rho.pow(B) * mu.pow(k1p);
            return std::make_pair(BasisIndex{{0, j}, k1pp}, f);
        }
        Scalar pre = (q1 * l12).pow(-i);
        if (j < d2 - 1) return std::make_pair(BasisIndex{{i, j + 1}, k}, pre);
        auto [k2p, k2pp] = k_reduction(b2p + k, r);
        Scalar f = pre * x2wrap * c2 * nu.pow(a2p * k2pp) * rho.pow(a2p) * mu.pow(k2p);
        if (i + s <= d1 - 1) return std::make_pair(BasisIndex{{i + s, 0}, k2pp}, f);
        auto [k3p, k3pp] = k_reduction(k2pp - A, r);
        f = f * c1 * nu.pow(B * k3pp) * rho.pow(B) * mu.pow(k3p);
        return std::make_pair(BasisIndex{{i + s - d1, 0}, k3pp}, f);
    };
    return with_derived_y(spec);
}

WeightModuleSpec build_generic_both_rou(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    long o1 = *sys.params.q1().root_of_unity_order();
    long o2 = *sys.params.q2().root_of_unity_order();
    Scalar nu = sys.params.l12().pow(o1 * o2);
    long r = require_order(nu, "l12^{o1 o2}");
    WeightModuleSpec spec = base_spec(CaseTag::GENERIC_BOTH_ROU, sys, pt);
    spec.axes = {Axis{Axis::Kind::Finite, o1, true}, Axis{Axis::Kind::Finite, o2, true}};
    spec.fiber_dim = r;
    spec.params["rho"] = opts.rho;
    spec.params["mu"] = opts.mu;
    spec.params["nu"] = nu;
    spec.fiber_torus = std::make_pair(nu, r);
    Scalar rho = opts.rho, mu = opts.mu, q1 = sys.params.q1(), l12 = sys.params.l12();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long i = idx.s[0], j = idx.s[1], k = idx.k;
        if (!g.is_x) return std::nullopt; // derived
        if (g.idx == 0) {
            if (i < o1 - 1) return std::make_pair(BasisIndex{{i + 1, j}, k}, one());
            return std::make_pair(BasisIndex{{0, j}, k}, l12.pow(o1 * (o2 * k + j)) * rho);
        }
        Scalar pre = (q1 * l12).pow(-i);
        if (j < o2 - 1) return std::make_pair(BasisIndex{{i, j + 1}, k}, pre);
        if (k < r - 1) return std::make_pair(BasisIndex{{i, 0}, k + 1}, pre);
        return std::make_pair(BasisIndex{{i, 0}, 0}, pre * mu);
    };
    return with_derived_y(spec);
}

WeightModuleSpec build_generic_other(const QwaSystem& sys, const WeightPoint& pt, const BuildOptions& opts) {
    auto o1 = sys.params.q1().root_of_unity_order();
    auto o2 = sys.params.q2().root_of_unity_order();
    BreakSolutions sol1 = break_exponents(pt, 1, sys);
    BreakSolutions sol2 = break_exponents(pt, 2, sys);
    // Normalize each direction independently.
    long s1 = 0, s2 = 0;
    auto axis_for = [](const BreakSolutions& sol, std::optional<long> o, long& shift) {
        if (sol.kind == BreakSolutions::Kind::None) {
            shift = 0;
            if (o) return Axis{Axis::Kind::Finite, *o, true};
            return Axis{Axis::Kind::ZAll, 1, false};
        }
        if (o) {
            shift = sol.value + 1; // solutions move to -1 mod o
            return Axis{Axis::Kind::Finite, *o, false};
        }
        if (sol.value >= 0) {
            shift = sol.value; // solution at 0: interval (-inf, 0]
            return Axis{Axis::Kind::ZMinus, 1, false};
        }
        shift = sol.value + 1; // solution at -1: interval [0, inf)
        return Axis{Axis::Kind::ZPlus, 1, false};
    };
    Axis ax1 = axis_for(sol1, o1, s1);
    Axis ax2 = axis_for(sol2, o2, s2);
    WeightPoint base = sigma_action({s1, s2}, pt, sys);
    WeightModuleSpec spec = base_spec(CaseTag::GENERIC_OTHER, sys, base);
    spec.axes = {ax1, ax2};
    spec.params["rho"] = opts.rho;
    spec.params["mu"] = opts.mu;
    Scalar rho = opts.rho, mu = opts.mu, q1 = sys.params.q1(), l12 = sys.params.l12();
    Scalar alpha1 = base.alpha[0], alpha2 = base.alpha[1];
    Scalar gamma1 = gamma_sequence(base, sys).gamma[1];
    Scalar q2 = sys.params.q2();
    spec.reduce_support = axis_reduce(spec.axes);
    Axis a1 = ax1, a2 = ax2;
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long i = idx.s[0], j = idx.s[1];
        if (!g.is_x) return std::nullopt; // derived
        if (g.idx == 0) {
            if (a1.contains(i + 1)) return std::make_pair(BasisIndex{{i + 1, j}, 0}, one());
            // wrap only on an unbroken finite axis
            if (a1.kind == Axis::Kind::Finite && a1.wraps)
                return std::make_pair(BasisIndex{{0, j}, 0}, rho * l12.pow(a1.d * j));
            return std::nullopt;
        }
        Scalar pre = (q1 * l12).pow(-i);
        if (a2.contains(j + 1)) return std::make_pair(BasisIndex{{i, j + 1}, 0}, pre);
        if (a2.kind == Axis::Kind::Finite && a2.wraps)
            return std::make_pair(BasisIndex{{i, 0}, 0}, pre * mu);
        return std::nullopt;
    };
    return with_derived_y(spec);
}

} // namespace

WeightModuleSpec build_module(CaseTag tag, const WeightPoint& pt, const QwaSystem& sys,
                              const BuildOptions& opts) {
    if (classify_case(pt, sys) != tag) fail(errc::internal, "case tag does not match the point");
    switch (tag) {
    case CaseTag::N0: return build_n0(sys, opts);
    case CaseTag::N1_BREAK_ROU: return build_n1_break_rou(sys, pt, opts);
    case CaseTag::N1_BREAK_HIGHEST: return build_n1_break_highest(sys, pt, opts);
    case CaseTag::N1_BREAK_LOWEST: return build_n1_break_lowest(sys, pt, opts);
    case CaseTag::N1_NOBREAK_ROU: return build_n1_nobreak_rou(sys, pt, opts);
    case CaseTag::N1_NOBREAK_GENERIC: return build_n1_nobreak_generic(sys, pt, opts);
    case CaseTag::N2_RANK0: return build_n2_rank0(sys, pt);
    case CaseTag::N2_RANK1: return build_n2_rank1(sys, pt, opts);
    case CaseTag::N2_RANK2: return build_n2_rank2(sys, pt, opts);
    case CaseTag::GENERIC_BOTH_ROU: return build_generic_both_rou(sys, pt, opts);
    case CaseTag::GENERIC_OTHER: return build_generic_other(sys, pt, opts);
    default: fail(errc::internal, "not a classification case");
    }
}

WeightModuleSpec fixture_sign_flip() {
    WeightModuleSpec spec;
    spec.tag = CaseTag::FIXTURE_SIGN_FLIP;
    spec.pres = sign_flip_presentation();
    // m = (t_1, t_2 + 1): point (0, -1); sigma_1(m) = (t_1, t_2 - 1)
    spec.base.alpha = {zero(), Scalar::integer(-1)};
    spec.axes = {Axis{Axis::Kind::Finite, 1, true}, Axis{Axis::Kind::Finite, 2, true}};
    spec.reduce_support = axis_reduce(spec.axes);
    // basis: index s2 = 0 is v (at m), s2 = 1 is w (at sigma_2(m) = (t_1, t_2 - 1))
    spec.act = [](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        if (g.idx == 0) return std::nullopt; // X1 M = Y1 M = 0
        long j = idx.s[1];
        if (g.is_x) {
            // X2 v = w, X2 w = v
            return std::make_pair(BasisIndex{{0, 1 - j}, 0}, one());
        }
        // Y2 v = w, Y2 w = -v
        return std::make_pair(BasisIndex{{0, 1 - j}, 0}, j == 0 ? one() : Scalar::integer(-1));
    };
    return spec;
}

WeightModuleSpec fixture_inner_break_at_n0(const QwaSystem& sys) {
    Scalar q1l12 = sys.params.q1() * sys.params.l12();
    auto ord = q1l12.root_of_unity_order();
    if (!ord) fail(errc::not_root_of_unity, "fixture needs q1*l12 of finite order");
    long r = *ord;
    WeightModuleSpec spec = base_spec(CaseTag::FIXTURE_PIB_N0, sys, sys.point_n0());
    spec.axes = {Axis{Axis::Kind::Finite, 1, true}, Axis{Axis::Kind::Finite, 1, true}};
    spec.fiber_dim = r;
    spec.fiber_torus = std::make_pair(q1l12.inverse(), r);
    Scalar q1 = sys.params.q1();
    spec.reduce_support = axis_reduce(spec.axes);
    spec.act = [=](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        long k = idx.k;
        if (g.idx == 0) {
            if (g.is_x) return std::make_pair(BasisIndex{{0, 0}, (k + 1) % r}, one());
            return std::make_pair(BasisIndex{{0, 0}, (k + r - 1) % r}, (one() - q1).inverse());
        }
        if (g.is_x) return std::make_pair(idx, q1l12.pow(-k));
        return std::nullopt; // Y2 = 0
    };
    return spec;
}

std::vector<WeightModuleSpec> fixture_modules(const QwaSystem& sys) {
    return {fixture_sign_flip(), fixture_inner_break_at_n0(sys)};
}

} // namespace tgwa
