#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tgwa/induced.hpp"

#include <iostream>

using namespace tgwa;

namespace {

Scalar P(const std::string& n) { return Scalar::parameter(n); }

// Compare two module specs index-by-index over the window.
void check_equivalent(const WeightModuleSpec& a, const WeightModuleSpec& b, long window) {
    REQUIRE(a.axes[0] == b.axes[0]);
    REQUIRE(a.axes[1] == b.axes[1]);
    REQUIRE(a.fiber_dim == b.fiber_dim);
    REQUIRE(a.base == b.base);
    for (const BasisIndex& idx : a.basis_window(window)) {
        for (GenId g : {GenId{true, 0}, GenId{true, 1}, GenId{false, 0}, GenId{false, 1}}) {
            auto ea = a.act(g, idx);
            auto eb = b.act(g, idx);
            bool za = !ea || ea->second.is_zero();
            bool zb = !eb || eb->second.is_zero();
            if (za || zb) {
                CHECK(za == zb);
                continue;
            }
            CHECK(ea->first == eb->first);
            CHECK(ea->second == eb->second);
            if (!(ea->first == eb->first) || !(ea->second == eb->second)) {
                std::cout << "MISMATCH " << case_tag_name(a.tag) << " gen " << (g.is_x ? "X" : "Y")
                          << g.idx + 1 << " at " << idx.str() << ": family -> " << ea->first.str() << " * "
                          << ea->second.str() << " vs oracle -> " << eb->first.str() << " * "
                          << eb->second.str() << "\n";
            }
        }
    }
}

} // namespace

TEST_CASE("N0 equivalence") {
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n0();
    check_equivalent(build_module(CaseTag::N0, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N1_BREAK_ROU equivalence") {
    ParameterEnv env(3);
    env.bind("q1", Scalar::root(3));
    env.bind("q2", Scalar::root(3));
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n1(Scalar::integer(1));
    check_equivalent(build_module(CaseTag::N1_BREAK_ROU, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N1_NOBREAK_ROU equivalence") {
    ParameterEnv env(12);
    env.bind("q1", Scalar::root(12, 4)); // order 3
    env.bind("q2", Scalar::root(12, 3)); // order 4
    env.bind("l12", Scalar::root(12, 1));
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n1(P("lam"));
    check_equivalent(build_module(CaseTag::N1_NOBREAK_ROU, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N2_RANK1 equivalence") {
    ParameterEnv env(2);
    env.declare_transcendental("q1");
    env.bind("q2", -P("q1").pow(2)); // kernel Z*(4,-2)
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n2(P("lam"));
    check_equivalent(build_module(CaseTag::N2_RANK1, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N2_RANK2 equivalence") {
    ParameterEnv env(3);
    env.bind("q1", Scalar::root(3));
    env.bind("q2", Scalar::root(3));
    env.bind("l12", Scalar::integer(-1));
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n2(P("lam"));
    check_equivalent(build_module(CaseTag::N2_RANK2, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N2_RANK2 equivalence on the figure-two basis") {
    ParameterEnv env(10);
    env.bind("q1", Scalar::root(10, 6));
    env.bind("q2", Scalar::root(10, 1));
    env.bind("l12", Scalar::root(10, 1));
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n2(P("lam"));
    BuildOptions opts;
    opts.rank2_basis = std::make_pair(std::array<long, 2>{2, -2}, std::array<long, 2>{3, 2});
    check_equivalent(build_module(CaseTag::N2_RANK2, pt, sys, opts),
                     build_generic_induced(pt, sys, opts), 2);
}

TEST_CASE("GENERIC_BOTH_ROU equivalence") {
    ParameterEnv env(3);
    env.bind("q1", Scalar::integer(-1));
    env.bind("q2", Scalar::integer(-1));
    env.bind("l12", Scalar::root(3));
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_generic(P("a1"), P("a2"));
    check_equivalent(build_module(CaseTag::GENERIC_BOTH_ROU, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N2_RANK0 equivalence") {
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n2(P("lam"));
    check_equivalent(build_module(CaseTag::N2_RANK0, pt, sys), build_generic_induced(pt, sys), 3);
}

TEST_CASE("N1_BREAK_HIGHEST and LOWEST equivalence") {
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    {
        WeightPoint pt = sys.point_n1(P("q1").pow(2));
        check_equivalent(build_module(CaseTag::N1_BREAK_HIGHEST, pt, sys), build_generic_induced(pt, sys), 3);
    }
    {
        WeightPoint pt = sys.point_n1(P("q1").pow(-2));
        check_equivalent(build_module(CaseTag::N1_BREAK_LOWEST, pt, sys), build_generic_induced(pt, sys), 3);
    }
}

TEST_CASE("N2_RANK2 equivalence with nontrivial box and fiber") {
    // N = 20: q1 = e^12, q2 = e^2, l12 = e: kernel {6k + l = 0 mod 10},
    // box 5 x 2 with nu = -1 (order 2): dim 20
    ParameterEnv env(20);
    env.bind("q1", Scalar::root(20, 12));
    env.bind("q2", Scalar::root(20, 2));
    env.bind("l12", Scalar::root(20, 1));
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n2(P("lam"));
    REQUIRE(classify_case(pt, sys) == CaseTag::N2_RANK2);
    WeightModuleSpec fam = build_module(CaseTag::N2_RANK2, pt, sys);
    CHECK(fam.axes[0].d * fam.axes[1].d == 10);
    CHECK(fam.fiber_dim == 2);
    CHECK(fam.dimension() == 20);
    check_equivalent(fam, build_generic_induced(pt, sys), 1);
}

TEST_CASE("N2_RANK1 equivalence with a positive second basis entry") {
    // q2 = -q1^{-2}: kernel Z*(4,2): wrap crosses the positive-b branch
    ParameterEnv env(2);
    env.declare_transcendental("q1");
    env.bind("q2", -P("q1").pow(-2));
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightPoint pt = sys.point_n2(P("lam"));
    REQUIRE(classify_case(pt, sys) == CaseTag::N2_RANK1);
    WeightModuleSpec fam = build_module(CaseTag::N2_RANK1, pt, sys);
    CHECK(fam.axes[0].d == 4);
    check_equivalent(fam, build_generic_induced(pt, sys), 3);
}

TEST_CASE("support points are pairwise distinct over the window") {
    ParameterEnv env(3);
    env.bind("q1", Scalar::root(3));
    env.bind("q2", Scalar::root(3));
    env.bind("l12", Scalar::integer(-1));
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightModuleSpec m = build_module(CaseTag::N2_RANK2, sys.point_n2(P("lam")), sys);
    auto sup = m.support_window(0);
    for (size_t i = 0; i < sup.size(); ++i)
        for (size_t j = i + 1; j < sup.size(); ++j)
            CHECK(!(m.point_of(sup[i]) == m.point_of(sup[j])));
}

TEST_CASE("induced oracle kills outside the interval box") {
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    QwaSystem sys = QwaSystem::make(env, 2);
    WeightModuleSpec m = build_generic_induced(sys.point_n0(), sys);
    BasisIndex v0{{0, 0}, 0};
    CHECK(!m.act({true, 1}, v0).has_value());  // X2 v0 = 0: (0,1) outside the box
    CHECK(!m.act({false, 1}, v0).has_value()); // Y2 v0 = 0
    CHECK(m.act({true, 0}, v0).has_value());
}
