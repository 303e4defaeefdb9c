#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tgwa/induced.hpp"
#include "tgwa/verify.hpp"

using namespace tgwa;

namespace {

Scalar P(const std::string& n) { return Scalar::parameter(n); }

QwaSystem rou3() {
    ParameterEnv env(3);
    env.bind("q1", Scalar::root(3));
    env.bind("q2", Scalar::root(3));
    env.declare_transcendental("l12");
    return QwaSystem::make(env, 2);
}

QwaSystem n12_sys() {
    ParameterEnv env(12);
    env.bind("q1", Scalar::root(12, 4)); // order 3
    env.bind("q2", Scalar::root(12, 3)); // order 4
    env.bind("l12", Scalar::root(12, 1));
    return QwaSystem::make(env, 2);
}

QwaSystem pib_sys() {
    ParameterEnv env(3);
    env.bind("q1", Scalar::root(3));
    env.bind("q2", Scalar::root(3));
    env.bind("l12", -Scalar::root(3, 2)); // q1*l12 of order 2
    return QwaSystem::make(env, 2);
}

} // namespace

TEST_CASE("relations pass for built families and fail after corruption") {
    QwaSystem sys = rou3();
    WeightPoint pt = sys.point_n1(Scalar::integer(1));
    WeightModuleSpec m = build_module(CaseTag::N1_BREAK_ROU, pt, sys);
    CHECK(check_relations(m, 0).empty());
    CHECK(check_qwa_relations(m, 0).empty());

    // corrupt the X2 coefficient by 2
    WeightModuleSpec bad = m;
    auto orig = m.act;
    bad.act = [orig](GenId g, const BasisIndex& idx) {
        auto r = orig(g, idx);
        if (r && g.is_x && g.idx == 1) r->second = r->second * Scalar::integer(2);
        return r;
    };
    auto fails = check_qwa_relations(bad, 0);
    CHECK(!fails.empty());
    bool found = false;
    for (const auto& f : fails)
        if (f.relation.find("x2y2") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("N0 relation value: x2y2 - q2 y2x2 - 1 - (q1-1)y1x1 vanishes") {
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightModuleSpec m = build_module(CaseTag::N0, sys.point_n0(), sys);
    CHECK(check_qwa_relations(m, 0).empty());
    CHECK(check_relations(m, 0).empty());
}

TEST_CASE("weight grading passes for built modules and flags corruption") {
    QwaSystem sys = n12_sys();
    WeightModuleSpec m = build_module(CaseTag::N1_NOBREAK_ROU, sys.point_n1(P("lam")), sys);
    CHECK(check_weight_grading(m, 0).empty());

    WeightModuleSpec bad = m;
    auto orig = m.act;
    bad.act = [orig](GenId g, const BasisIndex& idx) {
        auto r = orig(g, idx);
        if (r && g.is_x && g.idx == 0) {
            // reroute X1 edges to the wrong support index
            BasisIndex t = r->first;
            t.s[0] = idx.s[0];
            return std::optional<std::pair<BasisIndex, Scalar>>(std::make_pair(t, r->second));
        }
        return r;
    };
    CHECK(!check_weight_grading(bad, 0).empty());
}

TEST_CASE("simplicity: chain module is simple; direct sum is not") {
    QwaSystem sys = rou3();
    WeightModuleSpec m = build_module(CaseTag::N1_BREAK_ROU, sys.point_n1(Scalar::integer(1)), sys);
    auto [s, w] = check_simplicity(m);
    CHECK(s == Simplicity::Simple);

    // direct sum of two N0 modules with distinct parameters, as one spec
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    QwaSystem sym = QwaSystem::make(env, 2);
    WeightModuleSpec sum = build_module(CaseTag::N0, sym.point_n0(), sym);
    sum.fiber_dim = 2;
    Scalar rho1 = P("rho"), rho2 = P("rho2"), q1 = sym.params.q1();
    sum.act = [rho1, rho2, q1](GenId g, const BasisIndex& idx) -> std::optional<std::pair<BasisIndex, Scalar>> {
        if (g.idx == 1) return std::nullopt;
        Scalar rho = idx.k == 0 ? rho1 : rho2;
        Scalar v = g.is_x ? rho : rho.inverse() * (Scalar::integer(1) - q1).inverse();
        return std::make_pair(idx, v);
    };
    auto [s2, w2] = check_simplicity(sum);
    CHECK(s2 == Simplicity::NotSimple);
    CHECK(!w2.empty());
}

TEST_CASE("fixture sign-flip: simple, NPIB, but has an inner break") {
    WeightModuleSpec m = fixture_sign_flip();
    CHECK(check_relations(m, 0).empty());
    auto [s, w] = check_simplicity(m);
    CHECK(s == Simplicity::Simple);
    auto [inner, proper] = check_inner_breaks(m, 0, 3);
    CHECK(proper.empty());
    bool found = false;
    for (const auto& b : inner)
        if (b.support == std::array<long, 2>{0, 0} && b.direction == 1) found = true;
    CHECK(found);
}

TEST_CASE("fixture with a proper inner break at degree (0,1)") {
    QwaSystem sys = pib_sys();
    WeightModuleSpec m = fixture_inner_break_at_n0(sys);
    CHECK(check_relations(m, 0).empty());
    CHECK(check_qwa_relations(m, 0).empty());
    auto [s, w] = check_simplicity(m);
    CHECK(s == Simplicity::Simple);
    auto [inner, proper] = check_inner_breaks(m, 0, 3);
    bool found = false;
    for (const auto& b : proper)
        if (b.degree == std::array<long, 2>{0, 1}) found = true;
    CHECK(found);
}

TEST_CASE("classified families have no proper inner breaks on the window") {
    for (CaseTag tag : {CaseTag::N1_BREAK_ROU, CaseTag::N1_NOBREAK_ROU}) {
        QwaSystem sys = tag == CaseTag::N1_BREAK_ROU ? rou3() : n12_sys();
        WeightPoint pt = tag == CaseTag::N1_BREAK_ROU ? sys.point_n1(Scalar::integer(1))
                                                      : sys.point_n1(P("lam"));
        WeightModuleSpec m = build_module(tag, pt, sys);
        auto [inner, proper] = check_inner_breaks(m, 3, 3);
        CHECK(proper.empty());
    }
}

TEST_CASE("full verification sweep across the eleven families") {
    struct Inst {
        const char* name;
        QwaSystem sys;
        WeightPoint pt;
    };
    auto sym = [] {
        ParameterEnv env(1);
        env.declare_transcendental("q1");
        env.declare_transcendental("q2");
        env.declare_transcendental("l12");
        return QwaSystem::make(env, 2);
    }();
    auto r1 = [] {
        ParameterEnv env(2);
        env.declare_transcendental("q1");
        env.bind("q2", -P("q1").pow(2));
        env.declare_transcendental("l12");
        return QwaSystem::make(env, 2);
    }();
    auto r2 = [] {
        ParameterEnv env(3);
        env.bind("q1", Scalar::root(3));
        env.bind("q2", Scalar::root(3));
        env.bind("l12", Scalar::integer(-1));
        return QwaSystem::make(env, 2);
    }();
    auto gb = [] {
        ParameterEnv env(3);
        env.bind("q1", Scalar::integer(-1));
        env.bind("q2", Scalar::integer(-1));
        env.bind("l12", Scalar::root(3));
        return QwaSystem::make(env, 2);
    }();
    QwaSystem rou = rou3(), n12 = n12_sys();
    std::vector<Inst> insts = {
        {"N0", sym, sym.point_n0()},
        {"N1_BREAK_ROU", rou, rou.point_n1(Scalar::integer(1))},
        {"N1_BREAK_HIGHEST", sym, sym.point_n1(P("q1").pow(2))},
        {"N1_BREAK_LOWEST", sym, sym.point_n1(P("q1").pow(-1))},
        {"N1_NOBREAK_ROU", n12, n12.point_n1(P("lam"))},
        {"N1_NOBREAK_GENERIC", sym, sym.point_n1(P("lam"))},
        {"N2_RANK0", sym, sym.point_n2(P("lam"))},
        {"N2_RANK1", r1, r1.point_n2(P("lam"))},
        {"N2_RANK2", r2, r2.point_n2(P("lam"))},
        {"GENERIC_BOTH_ROU", gb, gb.point_generic(P("a1"), P("a2"))},
        {"GENERIC_OTHER", n12, n12.point_generic(Scalar::integer(1), P("a2"))},
    };
    for (const auto& inst : insts) {
        INFO(inst.name);
        CaseTag tag = classify_case(inst.pt, inst.sys);
        WeightModuleSpec m = build_module(tag, inst.pt, inst.sys);
        VerificationReport rep = verify_module(m, 2, 3);
        CHECK(rep.relations_ok());
        CHECK(rep.grading_ok);
        CHECK(rep.npib_ok());
        if (m.finite()) CHECK(rep.simplicity == Simplicity::Simple);
        else CHECK(rep.simplicity == Simplicity::Undecided);
    }
}

TEST_CASE("break detection is monotone in the window") {
    QwaSystem sys = pib_sys();
    WeightModuleSpec m = fixture_inner_break_at_n0(sys);
    auto small = check_inner_breaks(m, 0, 2);
    auto large = check_inner_breaks(m, 0, 4);
    for (const auto& b : small.second) {
        bool still = false;
        for (const auto& c : large.second)
            if (b.support == c.support && b.degree == c.degree) still = true;
        CHECK(still);
    }
    CHECK(large.second.size() >= small.second.size());
}

TEST_CASE("one-side-bounded generic shape satisfies the relations") {
    // transcendental q1 with a break above the base point, q2 of order 4:
    // support Z_{<=0} x {0..3} with a mu-wrap in the second direction
    ParameterEnv env(4);
    env.declare_transcendental("q1");
    env.bind("q2", Scalar::root(4));
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_generic(Scalar::integer(1), P("a2"));
    REQUIRE(classify_case(pt, sys) == CaseTag::GENERIC_OTHER);
    WeightModuleSpec m = build_module(CaseTag::GENERIC_OTHER, pt, sys);
    CHECK(m.axes[0].kind == Axis::Kind::ZMinus);
    CHECK(m.axes[1].kind == Axis::Kind::Finite);
    CHECK(m.axes[1].d == 4);
    CHECK(m.axes[1].wraps);
    CHECK(check_qwa_relations(m, 3).empty());
    CHECK(check_relations(m, 3).empty());
    CHECK(check_weight_grading(m, 3).empty());
    auto [inner, proper] = check_inner_breaks(m, 3, 3);
    CHECK(proper.empty());
}

TEST_CASE("doubly-cut generic shape: finite, parameter-free, simple") {
    // breaks in both directions with q1 of order 3 and q2 of order 4:
    // support is a 3 x 4 box with no wrap in either direction
    QwaSystem sys = n12_sys();
    Scalar q1 = sys.params.q1();
    WeightPoint pt = sys.point_generic(Scalar::integer(1), q1);
    REQUIRE(classify_case(pt, sys) == CaseTag::GENERIC_OTHER);
    WeightModuleSpec m = build_module(CaseTag::GENERIC_OTHER, pt, sys);
    CHECK(m.axes[0].kind == Axis::Kind::Finite);
    CHECK(m.axes[1].kind == Axis::Kind::Finite);
    CHECK(!m.axes[0].wraps);
    CHECK(!m.axes[1].wraps);
    CHECK(m.dimension() == 12);
    VerificationReport rep = verify_module(m, 0, 3);
    CHECK(rep.relations_ok());
    CHECK(rep.grading_ok);
    CHECK(rep.npib_ok());
    CHECK(rep.simplicity == Simplicity::Simple);
}

TEST_CASE("oracle-built modules verify as well") {
    QwaSystem sys = rou3();
    WeightPoint pt = sys.point_n1(Scalar::integer(1));
    WeightModuleSpec m = build_generic_induced(pt, sys);
    CHECK(check_relations(m, 2).empty());
    CHECK(check_qwa_relations(m, 2).empty());
    CHECK(check_weight_grading(m, 2).empty());
}
