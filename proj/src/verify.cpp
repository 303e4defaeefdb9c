#include "tgwa/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tgwa {

namespace {

Scalar one() { return Scalar::integer(1); }

// Sum of (coeff * word) applied to a basis vector; sparse result.
std::map<BasisIndex, Scalar> apply_combination(const WeightModuleSpec& m,
                                               const std::vector<std::pair<Scalar, Word>>& terms,
                                               const BasisIndex& idx) {
    std::map<BasisIndex, Scalar> out;
    for (const auto& [c, w] : terms) {
        auto r = m.apply_word(w, idx);
        if (!r) continue;
        Scalar v = c * r->second;
        if (v.is_zero()) continue;
        auto it = out.find(r->first);
        if (it == out.end()) out.emplace(r->first, v);
        else {
            it->second = it->second + v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

void check_combination(const WeightModuleSpec& m, const std::string& name,
                       const std::vector<std::pair<Scalar, Word>>& terms, const BasisIndex& idx,
                       std::vector<RelationFailure>& out) {
    auto residue = apply_combination(m, terms, idx);
    if (!residue.empty()) out.push_back({name, idx, residue.begin()->second});
}

} // namespace

std::vector<RelationFailure> check_relations(const WeightModuleSpec& m, long window) {
    std::vector<RelationFailure> out;
    const TgwaPresentation& p = m.pres;
    std::vector<BasisIndex> basis = m.basis_window(window);
    for (const BasisIndex& idx : basis) {
        WeightPoint pt = m.point_of(idx.s);
        for (int i = 0; i < p.n; ++i) {
            // Y_i X_i = t_i(pt), X_i Y_i = sigma_i(t_i)(pt)
            Scalar ti = p.t[i].eval(pt.alpha);
            Scalar sti = p.sig(i).apply(p.t[i]).eval(pt.alpha);
            Letter xi{true, i}, yi{false, i};
            check_combination(m, "Y" + std::to_string(i + 1) + "X" + std::to_string(i + 1) + "-t",
                              {{one(), Word{yi, xi}}, {-ti, Word{}}}, idx, out);
            check_combination(m, "X" + std::to_string(i + 1) + "Y" + std::to_string(i + 1) + "-st",
                              {{one(), Word{xi, yi}}, {-sti, Word{}}}, idx, out);
            for (int j = 0; j < p.n; ++j) {
                if (i == j) continue;
                Letter xj{true, j}, yj{false, j};
                check_combination(m, "X" + std::to_string(i + 1) + "Y" + std::to_string(j + 1) + "-mu",
                                  {{one(), Word{xi, yj}}, {-p.mu[i][j], Word{yj, xi}}}, idx, out);
                if (i < j && m.pres.scalar_graded()) {
                    check_combination(m, "X" + std::to_string(i + 1) + "X" + std::to_string(j + 1) + "-c",
                                      {{one(), Word{xi, xj}}, {-(*p.cx)[i][j], Word{xj, xi}}}, idx, out);
                    check_combination(m, "Y" + std::to_string(i + 1) + "Y" + std::to_string(j + 1) + "-c",
                                      {{one(), Word{yi, yj}}, {-(*p.cy)[i][j], Word{yj, yi}}}, idx, out);
                }
            }
        }
    }
    return out;
}

std::vector<RelationFailure> check_qwa_relations(const WeightModuleSpec& m, long window) {
    std::vector<RelationFailure> out;
    if (!m.qwa) return out;
    const QwaParams& P = *m.qwa;
    Letter x1{true, 0}, x2{true, 1}, y1{false, 0}, y2{false, 1};
    Scalar q1 = P.q1(), q2 = P.q2(), l12 = P.l12(), l21 = P.l21();
    std::vector<std::pair<std::string, std::vector<std::pair<Scalar, Word>>>> rels = {
        {"x1x2=q1l12x2x1", {{one(), {x1, x2}}, {-(q1 * l12), {x2, x1}}}},
        {"y1y2=l12y2y1", {{one(), {y1, y2}}, {-l12, {y2, y1}}}},
        {"x1y2=l21y2x1", {{one(), {x1, y2}}, {-l21, {y2, x1}}}},
        {"x2y1=q1l12y1x2", {{one(), {x2, y1}}, {-(q1 * l12), {y1, x2}}}},
        {"x1y1-q1y1x1=1", {{one(), {x1, y1}}, {-q1, {y1, x1}}, {-one(), {}}}},
        {"x2y2-q2y2x2=1+(q1-1)y1x1",
         {{one(), {x2, y2}}, {-q2, {y2, x2}}, {-one(), {}}, {-(q1 - one()), {y1, x1}}}},
    };
    for (const BasisIndex& idx : m.basis_window(window))
        for (const auto& [name, terms] : rels) check_combination(m, name, terms, idx, out);
    return out;
}

std::vector<GradingFailure> check_weight_grading(const WeightModuleSpec& m, long window) {
    std::vector<GradingFailure> out;
    for (const BasisIndex& idx : m.basis_window(window)) {
        WeightPoint pt = m.point_of(idx.s);
        for (GenId g : {GenId{true, 0}, GenId{true, 1}, GenId{false, 0}, GenId{false, 1}}) {
            if (g.idx >= m.pres.n) continue;
            auto e = m.act(g, idx);
            if (!e || e->second.is_zero()) continue;
            std::vector<long> step(m.pres.n, 0);
            step[g.idx] = g.is_x ? 1 : -1;
            WeightPoint expect = point_move(step, pt, m.pres);
            if (!(m.point_of(e->first.s) == expect)) out.push_back({g, idx});
        }
    }
    return out;
}

namespace {

// Group the full basis of a finite module by weight point.
struct WeightGroups {
    std::vector<BasisIndex> basis;
    std::map<BasisIndex, int> pos;
    std::vector<int> group_of;               // basis position -> group id
    std::vector<WeightPoint> group_point;
    std::vector<std::vector<int>> members;   // group id -> basis positions
};

WeightGroups group_by_weight(const WeightModuleSpec& m) {
    WeightGroups g;
    g.basis = m.basis_window(0);
    for (size_t i = 0; i < g.basis.size(); ++i) g.pos[g.basis[i]] = static_cast<int>(i);
    for (const BasisIndex& idx : g.basis) {
        WeightPoint pt = m.point_of(idx.s);
        int gid = -1;
        for (size_t k = 0; k < g.group_point.size(); ++k)
            if (g.group_point[k] == pt) {
                gid = static_cast<int>(k);
                break;
            }
        if (gid < 0) {
            gid = static_cast<int>(g.group_point.size());
            g.group_point.push_back(pt);
            g.members.emplace_back();
        }
        g.group_of.push_back(gid);
        g.members[gid].push_back(static_cast<int>(g.pos[idx]));
    }
    return g;
}

bool strongly_connected(const std::vector<std::set<int>>& adj) {
    size_t n = adj.size();
    if (n <= 1) return true;
    auto reach = [&](bool reversed) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack = {0};
        seen[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (size_t u = 0; u < n; ++u) {
                bool edge = reversed ? adj[u].count(v) > 0 : adj[v].count(static_cast<int>(u)) > 0;
                if (edge && !seen[u]) {
                    seen[u] = true;
                    stack.push_back(static_cast<int>(u));
                }
            }
        }
        return seen;
    };
    for (bool rev : {false, true})
        for (bool s : reach(rev))
            if (!s) return false;
    return true;
}

} // namespace

std::pair<Simplicity, std::string> check_simplicity(const WeightModuleSpec& m) {
    if (!m.finite()) fail(errc::infinite_dimension, "simplicity check needs finite dimension");
    WeightGroups g = group_by_weight(m);
    size_t ngroups = g.group_point.size();

    // Support graph under nonzero X/Y edges between distinct weight spaces.
    std::vector<std::set<int>> adj(ngroups);
    for (size_t i = 0; i < g.basis.size(); ++i) {
        for (GenId gen : {GenId{true, 0}, GenId{true, 1}, GenId{false, 0}, GenId{false, 1}}) {
            if (gen.idx >= m.pres.n) continue;
            auto e = m.act(gen, g.basis[i]);
            if (!e || e->second.is_zero()) continue;
            int from = g.group_of[i];
            int to = g.group_of[g.pos.at(e->first)];
            if (from != to) adj[from].insert(to);
        }
    }
    if (!strongly_connected(adj)) {
        // A sink component spans a proper invariant subspace.
        return {Simplicity::NotSimple, "support graph is not strongly connected"};
    }
    bool all_spaces_simple = true;
    for (size_t k = 0; k < ngroups; ++k) {
        if (g.members[k].size() == 1) continue;
        if (m.fiber_torus && static_cast<long>(g.members[k].size()) == m.fiber_torus->second) {
            // diag(rho nu^j) with cyclic partner: simple iff the nu-powers are
            // pairwise distinct, i.e. nu has order >= the fiber dimension.
            auto d = m.fiber_torus->first.root_of_unity_order();
            if (d && *d >= m.fiber_torus->second) continue;
            if (!d && !m.fiber_torus->first.is_one()) continue; // infinite order: distinct
        }
        all_spaces_simple = false;
    }
    if (all_spaces_simple) return {Simplicity::Simple, ""};

    // Fallback: span of the operator algebra (identity, generators, t-diagonals).
    int D = static_cast<int>(g.basis.size());
    std::vector<ScalarMatrix> gens;
    for (GenId gen : {GenId{true, 0}, GenId{true, 1}, GenId{false, 0}, GenId{false, 1}}) {
        if (gen.idx >= m.pres.n) continue;
        ScalarMatrix mat(D, D);
        for (int i = 0; i < D; ++i) {
            auto e = m.act(gen, g.basis[i]);
            if (e && !e->second.is_zero()) mat.at(g.pos.at(e->first), i) = e->second;
        }
        gens.push_back(mat);
    }
    for (int t = 0; t < m.pres.n; ++t) {
        ScalarMatrix mat(D, D);
        for (int i = 0; i < D; ++i) mat.at(i, i) = m.pres.t[t].eval(m.point_of(g.basis[i].s).alpha);
        gens.push_back(mat);
    }
    // Row-reduce vectorized matrices to a basis of the generated algebra.
    std::vector<std::vector<Scalar>> rows;     // reduced echelon rows
    std::vector<int> lead;                     // leading position of each row
    std::vector<ScalarMatrix> alg_basis;
    auto reduce_insert = [&](const ScalarMatrix& mat) -> bool {
        std::vector<Scalar> v(static_cast<size_t>(D) * D, Scalar::integer(0));
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) v[static_cast<size_t>(i) * D + j] = mat.at(i, j);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (v[lead[r]].is_zero()) continue;
            Scalar f = v[lead[r]];
            for (size_t c = 0; c < v.size(); ++c) v[c] = v[c] - f * rows[r][c];
        }
        int lv = -1;
        for (size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero()) {
                lv = static_cast<int>(c);
                break;
            }
        if (lv < 0) return false;
        Scalar inv = v[lv].inverse();
        for (auto& c : v) c = c * inv;
        rows.push_back(v);
        lead.push_back(lv);
        alg_basis.push_back(mat);
        return true;
    };
    reduce_insert(ScalarMatrix::identity(D));
    for (const auto& mt : gens) reduce_insert(mt);
    size_t frontier = 0;
    while (frontier < alg_basis.size() && rows.size() < static_cast<size_t>(D) * D) {
        ScalarMatrix cur = alg_basis[frontier++];
        for (const auto& gmat : gens) {
            if (rows.size() >= static_cast<size_t>(D) * D) break;
            reduce_insert(gmat * cur);
        }
    }
    if (rows.size() == static_cast<size_t>(D) * D) return {Simplicity::Simple, ""};
    // Proper invariant subspace witness: S * e_i of deficient rank.
    for (int i = 0; i < D; ++i) {
        std::vector<std::vector<Scalar>> vec_rows;
        std::vector<int> vec_lead;
        auto insert_vec = [&](std::vector<Scalar> v) {
            for (size_t r = 0; r < vec_rows.size(); ++r) {
                if (v[vec_lead[r]].is_zero()) continue;
                Scalar f = v[vec_lead[r]];
                for (size_t c = 0; c < v.size(); ++c) v[c] = v[c] - f * vec_rows[r][c];
            }
            int lv = -1;
            for (size_t c = 0; c < v.size(); ++c)
                if (!v[c].is_zero()) {
                    lv = static_cast<int>(c);
                    break;
                }
            if (lv < 0) return;
            Scalar inv = v[lv].inverse();
            for (auto& c : v) c = c * inv;
            vec_rows.push_back(v);
            vec_lead.push_back(lv);
        };
        for (const auto& bm : alg_basis) {
            std::vector<Scalar> col(D, Scalar::integer(0));
            for (int r = 0; r < D; ++r) col[r] = bm.at(r, i);
            insert_vec(col);
        }
        if (vec_rows.size() < static_cast<size_t>(D)) {
            std::ostringstream os;
            os << "invariant subspace generated by basis vector " << g.basis[i].str() << " has dimension "
               << vec_rows.size();
            return {Simplicity::NotSimple, os.str()};
        }
    }
    return {Simplicity::Undecided, "operator span is deficient but no witness was found"};
}

std::pair<std::vector<InnerBreak>, std::vector<ProperInnerBreak>>
check_inner_breaks(const WeightModuleSpec& m, long window, long degree_box) {
    if (!m.pres.scalar_graded()) fail(errc::not_scalar_graded, "inner break scan needs x_commutation data");
    std::vector<InnerBreak> inner;
    std::vector<ProperInnerBreak> proper;
    auto support = m.support_window(window);
    std::vector<WeightPoint> pts;
    pts.reserve(support.size());
    for (const auto& s : support) pts.push_back(m.point_of(s));
    auto in_support = [&](const WeightPoint& pt) {
        for (const auto& q : pts)
            if (q == pt) return true;
        return false;
    };
    for (size_t si = 0; si < support.size(); ++si) {
        const WeightPoint& pt = pts[si];
        for (int i = 0; i < m.pres.n; ++i) {
            std::vector<long> e(m.pres.n, 0);
            e[i] = 1;
            if (m.pres.t[i].eval(pt.alpha).is_zero() && in_support(point_move(e, pt, m.pres)))
                inner.push_back({support[si], i + 1});
            e[i] = -1;
            if (m.pres.sig(i).apply(m.pres.t[i]).eval(pt.alpha).is_zero() &&
                in_support(point_move(e, pt, m.pres)))
                inner.push_back({support[si], -(i + 1)});
        }
        for (long x = -degree_box; x <= degree_box; ++x)
            for (long y = -degree_box; y <= degree_box; ++y) {
                if (x == 0 && y == 0) continue;
                // a break needs a vanishing pairing AND a nonzero action;
                // test the pairing first, vanishing is the rare side
                if (!pair_at({x, y}, pt.alpha, m.pres).is_zero()) continue;
                Word ag = canonical_letters({x, y});
                for (long k = 0; k < m.fiber_dim; ++k) {
                    auto r = m.apply_word(ag, BasisIndex{support[si], k});
                    if (r && !r->second.is_zero()) {
                        proper.push_back({support[si], {x, y}});
                        break;
                    }
                }
            }
    }
    return {inner, proper};
}

VerificationReport verify_module(const WeightModuleSpec& m, long window, long degree_box) {
    VerificationReport rep;
    rep.relation_failures = check_relations(m, window);
    if (m.qwa) {
        auto extra = check_qwa_relations(m, window);
        rep.relation_failures.insert(rep.relation_failures.end(), extra.begin(), extra.end());
    }
    rep.grading_failures = check_weight_grading(m, window);
    rep.grading_ok = rep.grading_failures.empty();
    if (m.finite()) {
        auto [s, w] = check_simplicity(m);
        rep.simplicity = s;
        rep.simplicity_witness = w;
    } else {
        rep.simplicity = Simplicity::Undecided;
        rep.simplicity_witness = "infinite support window";
    }
    auto [inner, proper] = check_inner_breaks(m, window, degree_box);
    rep.inner_breaks = inner;
    rep.proper_inner_breaks = proper;
    return rep;
}

long default_npib_box(const WeightModuleSpec& m) {
    long bound = 0;
    for (const Axis& ax : m.axes)
        if (ax.is_finite()) bound = std::max(bound, ax.d);
    return bound > 0 ? 2 * bound : 8;
}

std::string report_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "relations: " << (r.relations_ok() ? "ok" : "FAILED (" + std::to_string(r.relation_failures.size()) + ")")
       << "\n";
    for (const auto& f : r.relation_failures)
        os << "  relation " << f.relation << " fails at " << f.at.str() << "\n";
    os << "grading: " << (r.grading_ok ? "ok" : "FAILED") << "\n";
    os << "simplicity: "
       << (r.simplicity == Simplicity::Simple
               ? "simple"
               : (r.simplicity == Simplicity::NotSimple ? "not simple" : "undecided"));
    if (!r.simplicity_witness.empty()) os << " (" << r.simplicity_witness << ")";
    os << "\n";
    os << "inner breaks: " << r.inner_breaks.size() << "\n";
    for (const auto& b : r.inner_breaks)
        os << "  at (" << b.support[0] << "," << b.support[1] << ") direction " << b.direction << "\n";
    os << "proper inner breaks: " << r.proper_inner_breaks.size() << "\n";
    for (const auto& b : r.proper_inner_breaks)
        os << "  at (" << b.support[0] << "," << b.support[1] << ") degree (" << b.degree[0] << ","
           << b.degree[1] << ")\n";
    return os.str();
}

} // namespace tgwa
