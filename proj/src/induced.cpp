#include "tgwa/induced.hpp"

#include <memory>

namespace tgwa {

namespace {

Scalar one() { return Scalar::integer(1); }

struct InducedCore {
    QwaSystem sys;
    WeightPoint base;
    RayIntervals rays;
    Lattice gm;
    std::vector<std::array<long, 2>> gm_basis;
    std::vector<ScalarMatrix> bmat; // matrices of a_{s_i} on the weight space
    long fiber = 1;
    std::array<Axis, 2> axes;
    std::function<std::optional<std::array<long, 2>>(const std::array<long, 2>&)> reduce;
    std::optional<BoxReps> box;

    mutable std::map<std::array<long, 2>, Scalar> pair_cache;
    mutable std::map<std::array<long, 2>, std::pair<Scalar, ScalarMatrix>> f_cache;

    Scalar pair_value(const std::array<long, 2>& g) const {
        auto it = pair_cache.find(g);
        if (it != pair_cache.end()) return it->second;
        Scalar v = pair_at({g[0], g[1]}, base.alpha, sys.pres);
        pair_cache.emplace(g, v);
        return v;
    }

    // a_f acting on the weight space: scalar c_f times the generator-matrix product.
    // Integer coordinates of f in the (possibly non-HNF) stored basis.
    std::vector<long> basis_coordinates(const std::array<long, 2>& f) const {
        size_t k = gm_basis.size();
        if (k == 0) {
            if (f[0] != 0 || f[1] != 0) fail(errc::internal, "nonzero vector in rank-0 group");
            return {};
        }
        if (k == 1) {
            const auto& s = gm_basis[0];
            int piv = s[0] != 0 ? 0 : 1;
            if (f[piv] % s[piv] != 0) fail(errc::internal, "vector not in degree group");
            long l = f[piv] / s[piv];
            if (l * s[0] != f[0] || l * s[1] != f[1]) fail(errc::internal, "vector not in degree group");
            return {l};
        }
        const auto& s1 = gm_basis[0];
        const auto& s2 = gm_basis[1];
        long det = s1[0] * s2[1] - s1[1] * s2[0];
        long n1 = f[0] * s2[1] - f[1] * s2[0];
        long n2 = s1[0] * f[1] - s1[1] * f[0];
        if (det == 0 || n1 % det != 0 || n2 % det != 0) fail(errc::internal, "vector not in degree group");
        return {n1 / det, n2 / det};
    }

    const std::pair<Scalar, ScalarMatrix>& f_action(const std::array<long, 2>& f) const {
        auto it = f_cache.find(f);
        if (it != f_cache.end()) return it->second;
        std::vector<long> coords = basis_coordinates(f);
        Word wf;
        Scalar neg_r = one();
        ScalarMatrix prod = ScalarMatrix::identity(static_cast<int>(fiber));
        for (size_t i = 0; i < coords.size(); ++i) {
            long li = coords[i];
            Word base_letters = canonical_letters({gm_basis[i][0], gm_basis[i][1]});
            if (li >= 0) {
                for (long t = 0; t < li; ++t) wf.insert(wf.end(), base_letters.begin(), base_letters.end());
            } else {
                Word inv = star(base_letters);
                Scalar rs = pair_value(gm_basis[i]).inverse();
                for (long t = 0; t < -li; ++t) {
                    wf.insert(wf.end(), inv.begin(), inv.end());
                    neg_r = neg_r * rs;
                }
            }
            prod = prod * bmat[i].pow(li);
        }
        // c_f = 1 / (r_f * neg_r * value(a_f^* w_f))
        Word probe = star(canonical_letters({f[0], f[1]}));
        probe.insert(probe.end(), wf.begin(), wf.end());
        Scalar rf = pair_value(f).inverse();
        Scalar cf = (rf * neg_r * word_value_at(probe, base.alpha, sys.pres)).inverse();
        return f_cache.emplace(f, std::make_pair(cf, prod * cf)).first->second;
    }

    std::optional<std::pair<BasisIndex, Scalar>> step(bool is_x, int gen, const BasisIndex& idx) const {
        std::array<long, 2> g = idx.s;
        std::array<long, 2> target = g;
        target[gen] += is_x ? 1 : -1;
        if (!rays.contains({target[0], target[1]})) return std::nullopt;
        auto h = reduce(target);
        if (!h) fail(errc::internal, "transversal reduction failed inside the interval box");
        std::array<long, 2> f = {target[0] - (*h)[0], target[1] - (*h)[1]};
        // kappa = r_f r_h * value at point_of(h) of (L a_g a_f^* a_h^*)
        Word w;
        w.push_back({is_x, gen});
        Word wg = canonical_letters({g[0], g[1]});
        w.insert(w.end(), wg.begin(), wg.end());
        Word sf = star(canonical_letters({f[0], f[1]}));
        w.insert(w.end(), sf.begin(), sf.end());
        Word sh = star(canonical_letters({(*h)[0], (*h)[1]}));
        w.insert(w.end(), sh.begin(), sh.end());
        WeightPoint at = sigma_action({(*h)[0], (*h)[1]}, base, sys);
        Scalar kappa = pair_value(f).inverse() * pair_value(*h).inverse() *
                       word_value_at(w, at.alpha, sys.pres);
        if (kappa.is_zero()) return std::nullopt;
        const auto& [cf, mat] = f_action(f);
        // monomial matrix column idx.k
        for (int row = 0; row < mat.rows(); ++row) {
            if (mat.at(row, static_cast<int>(idx.k)).is_zero()) continue;
            return std::make_pair(BasisIndex{*h, row}, kappa * mat.at(row, static_cast<int>(idx.k)));
        }
        return std::nullopt;
    }
};

} // namespace

WeightModuleSpec build_generic_induced_with(const WeightPoint& pt, const QwaSystem& sys,
                                            const TorusModuleSpec& weight_space, const BuildOptions& opts) {
    auto core = std::make_shared<InducedCore>();
    core->sys = sys;

    // Normalize the base point so finite interval ends sit at the origin.
    RayIntervals rays0 = g_tilde(pt, sys);
    std::vector<long> shift = {0, 0};
    for (int j = 0; j < 2; ++j) {
        if (rays0.rays[j].hi) shift[j] = *rays0.rays[j].hi;
        else if (rays0.rays[j].lo) shift[j] = *rays0.rays[j].lo;
    }
    core->base = sigma_action(shift, pt, sys);
    core->rays = g_tilde(core->base, sys);
    core->gm = g_m(core->base, sys);
    for (int i = 0; i < core->gm.rank(); ++i)
        core->gm_basis.push_back(
            {to_long(core->gm.basis().at(i, 0)), to_long(core->gm.basis().at(i, 1))});

    // Weight-space torus module.
    std::vector<std::vector<long>> rows;
    for (const auto& r : core->gm_basis) rows.push_back({r[0], r[1]});
    // Optional explicit rank-2 basis override to align with build_module tests.
    if (opts.rank2_basis && core->gm.rank() == 2) {
        rows = {{opts.rank2_basis->first[0], opts.rank2_basis->first[1]},
                {opts.rank2_basis->second[0], opts.rank2_basis->second[1]}};
        if (!(Lattice::from_rows(2, rows) == core->gm))
            fail(errc::degenerate_basis, "explicit basis does not span the degree group");
        core->gm_basis = {opts.rank2_basis->first, opts.rank2_basis->second};
        core->gm = Lattice::from_rows(2, rows);
    }
    if (core->gm.rank() > 0) {
        auto lambda = commutation_scalars(rows, core->base, sys.pres);
        TorusDecomposition dec = torus_decompose(lambda, sys.order);
        TorusModule tm = simple_torus_module(dec, weight_space);
        core->bmat = tm.b;
        core->fiber = tm.dim;
    }

    // Axes of the transversal S.
    auto ray_axis = [](const RayIntervals::Ray& r) {
        if (!r.lo && !r.hi) return Axis{Axis::Kind::ZAll, 1, false};
        if (r.lo && r.hi) {
            long d = *r.hi - *r.lo + 1;
            if (d == 1) return Axis{Axis::Kind::Finite, 1, true};
            return Axis{Axis::Kind::FiniteNeg, d, false};
        }
        if (r.hi) return Axis{Axis::Kind::ZMinus, 1, false};
        return Axis{Axis::Kind::ZPlus, 1, false};
    };
    int rank = core->gm.rank();
    if (rank == 2) {
        const auto& a = core->gm_basis[0];
        const auto& b = core->gm_basis[1];
        core->box = box_reps(a[0], a[1], b[0], b[1]);
        core->axes = {Axis{Axis::Kind::Finite, core->box->d1, true},
                      Axis{Axis::Kind::Finite, core->box->d2, true}};
        long d1 = core->box->d1, d2 = core->box->d2, s = core->box->s;
        core->reduce = [d1, d2, s](const std::array<long, 2>& v) -> std::optional<std::array<long, 2>> {
            long j = floormod(v[1], d2);
            long c = (v[1] - j) / d2;
            long i = floormod(v[0] + c * s, d1);
            return std::array<long, 2>{i, j};
        };
    } else if (rank == 1) {
        long a = core->gm_basis[0][0], b = core->gm_basis[0][1];
        if (a > 0) {
            core->axes = {Axis{Axis::Kind::Finite, a, true}, ray_axis(core->rays.rays[1])};
            Axis ax1 = core->axes[1];
            core->reduce = [a, b, ax1](const std::array<long, 2>& v) -> std::optional<std::array<long, 2>> {
                long t = floordiv(v[0], a);
                std::array<long, 2> out = {v[0] - t * a, v[1] - t * b};
                if (!ax1.contains(out[1])) return std::nullopt;
                return out;
            };
        } else {
            if (a != 0 || b <= 0) fail(errc::internal, "unexpected rank-one basis");
            core->axes = {ray_axis(core->rays.rays[0]), Axis{Axis::Kind::Finite, b, true}};
            Axis ax0 = core->axes[0];
            core->reduce = [b, ax0](const std::array<long, 2>& v) -> std::optional<std::array<long, 2>> {
                long t = floordiv(v[1], b);
                std::array<long, 2> out = {v[0], v[1] - t * b};
                if (!ax0.contains(out[0])) return std::nullopt;
                return out;
            };
        }
    } else {
        core->axes = {ray_axis(core->rays.rays[0]), ray_axis(core->rays.rays[1])};
        std::array<Axis, 2> axes = core->axes;
        core->reduce = [axes](const std::array<long, 2>& v) -> std::optional<std::array<long, 2>> {
            if (!axes[0].contains(v[0]) || !axes[1].contains(v[1])) return std::nullopt;
            return v;
        };
    }

    WeightModuleSpec spec;
    spec.tag = classify_case(pt, sys);
    spec.pres = sys.pres;
    spec.qwa = sys.params;
    spec.base = core->base;
    spec.axes = core->axes;
    spec.fiber_dim = core->fiber;
    spec.reduce_support = core->reduce;
    spec.params["rho"] = opts.rho;
    spec.params["mu"] = opts.mu;
    if (core->fiber > 1 && core->gm.rank() > 0) {
        auto lambda = commutation_scalars(
            {{core->gm_basis[0][0], core->gm_basis[0][1]},
             core->gm.rank() > 1 ? std::vector<long>{core->gm_basis[1][0], core->gm_basis[1][1]}
                                 : std::vector<long>{core->gm_basis[0][0], core->gm_basis[0][1]}},
            core->base, sys.pres);
        if (core->gm.rank() > 1) spec.fiber_torus = std::make_pair(lambda[0][1], core->fiber);
    }
    spec.act = [core](GenId g, const BasisIndex& idx) { return core->step(g.is_x, g.idx, idx); };
    return spec;
}

WeightModuleSpec build_generic_induced(const WeightPoint& pt, const QwaSystem& sys, const BuildOptions& opts) {
    // Default weight-space parameters: (rho, mu) on the first torus factor,
    // then rho, mu as Laurent characters in basis order.
    RayIntervals rays0 = g_tilde(pt, sys);
    std::vector<long> shift = {0, 0};
    for (int j = 0; j < 2; ++j) {
        if (rays0.rays[j].hi) shift[j] = *rays0.rays[j].hi;
        else if (rays0.rays[j].lo) shift[j] = *rays0.rays[j].lo;
    }
    WeightPoint base = sigma_action(shift, pt, sys);
    Lattice gm = g_m(base, sys);
    TorusModuleSpec ws;
    if (gm.rank() > 0) {
        std::vector<std::vector<long>> rows;
        for (int i = 0; i < gm.rank(); ++i)
            rows.push_back({to_long(gm.basis().at(i, 0)), to_long(gm.basis().at(i, 1))});
        if (opts.rank2_basis && gm.rank() == 2)
            rows = {{opts.rank2_basis->first[0], opts.rank2_basis->first[1]},
                    {opts.rank2_basis->second[0], opts.rank2_basis->second[1]}};
        auto lambda = commutation_scalars(rows, base, sys.pres);
        TorusDecomposition dec = torus_decompose(lambda, sys.order);
        std::vector<Scalar> pool = {opts.rho, opts.mu};
        size_t next = 0;
        for (size_t i = 0; i < dec.p.size(); ++i) {
            Scalar r = next < pool.size() ? pool[next++] : Scalar::parameter("rho" + std::to_string(i));
            Scalar m = next < pool.size() ? pool[next++] : Scalar::parameter("mu" + std::to_string(i));
            ws.factor_params.emplace_back(r, m);
        }
        for (int i = 0; i < dec.laurent_rank; ++i)
            ws.laurent_chars.push_back(next < pool.size() ? pool[next++]
                                                          : Scalar::parameter("chi" + std::to_string(i)));
    }
    return build_generic_induced_with(pt, sys, ws, opts);
}

} // namespace tgwa
