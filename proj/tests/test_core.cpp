#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tgwa/orbit.hpp"

#include <cstdlib>
#include <random>

using namespace tgwa;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen([] {
        const char* s = std::getenv("TGWA_SEED");
        return s ? static_cast<unsigned>(std::strtoul(s, nullptr, 10)) : 77001u;
    }());
    return gen;
}

QwaSystem symbolic_rank2() {
    ParameterEnv env(1);
    env.declare_transcendental("q1");
    env.declare_transcendental("q2");
    env.declare_transcendental("l12");
    return QwaSystem::make(env, 2);
}

Word random_word(int n, int len) {
    std::uniform_int_distribution<int> coin(0, 1), pick(0, n - 1);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back({coin(rng()) == 1, pick(rng())});
    return w;
}

// Expand coeff * reduced * r back through normalize and compare canonical forms.
CanonicalWord canonical_of_reduced(const ReducedWord& rw, const TgwaPresentation& p) {
    CanonicalWord cw = normalize(rw.reduced, p);
    cw.coeff = cw.coeff * rw.coeff;
    cw.r = cw.r * rw.r;
    canonical_split(cw);
    return cw;
}

bool canon_eq(const CanonicalWord& a, const CanonicalWord& b) {
    return a.degree == b.degree && a.coeff == b.coeff && a.r == b.r;
}

} // namespace

TEST_CASE("presentation consistency") {
    QwaSystem sys = symbolic_rank2();
    CHECK(check_consistency(sys.pres).ok());

    // CCR preset
    ParameterEnv env(1);
    Scalar Q11 = Scalar::parameter("Q11"), Q22 = Scalar::parameter("Q22"), Q12 = Scalar::parameter("Q12");
    std::vector<std::vector<Scalar>> qm = {{Q11, Q12}, {Q12.inverse(), Q22}};
    CHECK(check_consistency(ccr_presentation(qm)).ok());

    CHECK(check_consistency(sign_flip_presentation()).ok());

    // corrupt mu_12
    TgwaPresentation bad = sys.pres;
    bad.mu[0][1] = bad.mu[0][1] * Scalar::integer(2);
    auto rep = check_consistency(bad);
    REQUIRE(!rep.ok());
    CHECK(rep.issues[0].i == 1);
    CHECK(rep.issues[0].j == 2);
    CHECK(rep.issues[0].kind == "consistency");
}

TEST_CASE("star") {
    CHECK(star(parse_word("X1 X2")) == parse_word("Y2 Y1"));
    CHECK(star(Word{}) == Word{});
    CHECK(star(parse_word("Y1 X2")) == parse_word("Y2 X1"));
    for (int i = 0; i < 10; ++i) {
        Word w = random_word(2, 5);
        CHECK(star(star(w)) == w);
    }
}

TEST_CASE("reduce_word examples") {
    QwaSystem sys = symbolic_rank2();
    {
        auto rw = reduce_word(parse_word("X1 Y1"), sys.pres);
        CHECK(rw.reduced.empty());
        CHECK(rw.coeff == Scalar::integer(1));
        CHECK(rw.r == sys.pres.sig(0).apply(sys.pres.t[0]));
    }
    {
        auto rw = reduce_word(parse_word("X2 Y1"), sys.pres);
        CHECK(rw.reduced == parse_word("Y1 X2"));
        CHECK(rw.r == TPoly::constant(2, Scalar::integer(1)));
        CHECK(rw.coeff == sys.params.mu[1][0]);
    }
    {
        auto rw = reduce_word(parse_word("Y2 X2"), sys.pres);
        CHECK(rw.reduced.empty());
        CHECK(rw.r == sys.pres.t[1]);
        CHECK(rw.coeff == Scalar::integer(1));
    }
}

TEST_CASE("reduce_word output is reduced and re-expands to the input") {
    QwaSystem sys = symbolic_rank2();
    for (int it = 0; it < 60; ++it) {
        Word w = random_word(2, 1 + it % 6);
        auto rw = reduce_word(w, sys.pres);
        // shape: Y-block then X-block, disjoint index sets
        bool seen_x = false;
        for (const Letter& l : rw.reduced) {
            if (l.is_x) seen_x = true;
            else CHECK(!seen_x);
        }
        for (const Letter& a : rw.reduced)
            for (const Letter& b : rw.reduced)
                CHECK(!(a.is_x != b.is_x && a.idx == b.idx));
        CHECK(canon_eq(normalize(w, sys.pres), canonical_of_reduced(rw, sys.pres)));
    }
}

TEST_CASE("normalize examples") {
    QwaSystem sys = symbolic_rank2();
    Scalar q1 = sys.params.q1(), l12 = sys.params.l12();
    {
        // Y2 X1 = l12 * Z^(1,-1)
        auto cw = normalize(parse_word("Y2 X1"), sys.pres);
        CHECK(cw.degree == std::vector<long>({1, -1}));
        CHECK(cw.coeff == l12);
        CHECK(cw.r == TPoly::constant(2, Scalar::integer(1)));
    }
    {
        auto cw = normalize(parse_word("Y1 X1"), sys.pres);
        CHECK(cw.degree == std::vector<long>({0, 0}));
        CHECK(cw.coeff == Scalar::integer(1));
        CHECK(cw.r == sys.pres.t[0]);
    }
    {
        // X2 X1 = (q1 l12)^{-1} Z^(1,1)
        auto cw = normalize(parse_word("X2 X1"), sys.pres);
        CHECK(cw.degree == std::vector<long>({1, 1}));
        CHECK(cw.coeff == (q1 * l12).inverse());
        CHECK(cw.r == TPoly::constant(2, Scalar::integer(1)));
    }
}

TEST_CASE("normalize is multiplicative and degree-additive") {
    QwaSystem sys = symbolic_rank2();
    for (int it = 0; it < 40; ++it) {
        Word u = random_word(2, 1 + it % 4), v = random_word(2, 1 + (it / 2) % 4);
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        CanonicalWord cu = normalize(u, sys.pres), cv = normalize(v, sys.pres);
        CanonicalWord direct = normalize(uv, sys.pres);
        CanonicalWord viamul = canonical_mul(cu, cv, sys.pres);
        CHECK(canon_eq(direct, viamul));
        for (int j = 0; j < 2; ++j) CHECK(direct.degree[j] == cu.degree[j] + cv.degree[j]);
    }
}

TEST_CASE("normalize requires scalar-graded data") {
    QwaSystem sys = symbolic_rank2();
    TgwaPresentation p = sys.pres;
    p.cx.reset();
    p.cy.reset();
    CHECK_THROWS_AS(normalize(parse_word("X1 X2"), p), error);
}

TEST_CASE("rank-three words normalize consistently") {
    ParameterEnv env(1);
    for (const char* p : {"q1", "q2", "q3", "l12", "l13", "l23"}) env.declare_transcendental(p);
    QwaSystem sys = QwaSystem::make(env, 3);
    CHECK(check_consistency(sys.pres).ok());
    std::uniform_int_distribution<int> coin(0, 1), pick(0, 2);
    for (int it = 0; it < 25; ++it) {
        Word w;
        for (int k = 0; k < 5; ++k) w.push_back({coin(rng()) == 1, pick(rng())});
        auto rw = reduce_word(w, sys.pres);
        CHECK(canon_eq(normalize(w, sys.pres), canonical_of_reduced(rw, sys.pres)));
        // split multiplicativity
        Word u(w.begin(), w.begin() + 2), v(w.begin() + 2, w.end());
        CHECK(canon_eq(normalize(w, sys.pres),
                       canonical_mul(normalize(u, sys.pres), normalize(v, sys.pres), sys.pres)));
    }
}

TEST_CASE("CCR preset words") {
    ParameterEnv env(1);
    for (const char* p : {"Q11", "Q22", "Q12"}) env.declare_transcendental(p);
    Scalar Q11 = Scalar::parameter("Q11"), Q22 = Scalar::parameter("Q22"), Q12 = Scalar::parameter("Q12");
    std::vector<std::vector<Scalar>> qm = {{Q11, Q12}, {Q12.inverse(), Q22}};
    TgwaPresentation p = ccr_presentation(qm);
    // a_i^* a_i - Q_ii a_i a_i^* = 1 translates to t_i vs sigma_i(t_i)
    auto cw = normalize(parse_word("Y1 X1"), p);
    CHECK(cw.r == p.t[0]);
    auto cw2 = normalize(parse_word("X1 Y1"), p);
    CHECK(cw2.r * cw2.coeff == p.sig(0).apply(p.t[0]));
    // X1 X2 = Q21 X2 X1 in the quotient
    auto a = normalize(parse_word("X1 X2"), p);
    auto b = normalize(parse_word("X2 X1"), p);
    CHECK(a.coeff == Q12.inverse() * b.coeff);
    // pairing at a symbolic point is the product of the t-values
    std::vector<Scalar> alpha = {Scalar::parameter("c1"), Scalar::parameter("c2")};
    CHECK(pair_at({1, 0}, alpha, p) == alpha[0]);
}

TEST_CASE("canonical word JSON shape") {
    QwaSystem sys = symbolic_rank2();
    auto cw = normalize(parse_word("Y1 X1"), sys.pres);
    std::string j = canonical_word_json(cw);
    CHECK(j.find("\"degree\": [0, 0]") != std::string::npos);
    CHECK(j.find("r_factor") != std::string::npos);
}

TEST_CASE("pair_at examples") {
    QwaSystem sys = symbolic_rank2();
    Scalar lam = Scalar::parameter("lam");
    // g = e_1: value of t_1 at the point
    WeightPoint pt = sys.point_n2(lam);
    CHECK(pair_at({1, 0}, pt.alpha, sys.pres) == pt.alpha[0]);
    // g = (1,1) at n_lam^(2): (1-q1)^{-1} * lam
    Scalar expect = (Scalar::integer(1) - sys.params.q1()).inverse() * lam;
    CHECK(pair_at({1, 1}, pt.alpha, sys.pres) == expect);
    // g = e_2 at n_0: t_2 = 0 there
    CHECK(pair_at({0, 1}, sys.point_n0().alpha, sys.pres) == Scalar::integer(0));
    // g = 0
    CHECK(pair_at({0, 0}, pt.alpha, sys.pres) == Scalar::integer(1));
}
