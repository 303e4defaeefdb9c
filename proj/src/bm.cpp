#include "tgwa/bm.hpp"

namespace tgwa {

ScalarMatrix ScalarMatrix::identity(int n) {
    ScalarMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::integer(1);
    return m;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (c_ != o.r_) fail(errc::internal, "scalar matrix dimension mismatch");
    ScalarMatrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.c_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
            }
        }
    return m;
}

ScalarMatrix ScalarMatrix::operator*(const Scalar& s) const {
    ScalarMatrix m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j) * s;
    return m;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
    ScalarMatrix m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j) + o.at(i, j);
    return m;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
    ScalarMatrix m(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(i, j) = at(i, j) - o.at(i, j);
    return m;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

ScalarMatrix ScalarMatrix::inverse() const {
    if (r_ != c_) fail(errc::internal, "inverse of non-square matrix");
    int n = r_;
    ScalarMatrix m = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) fail(errc::internal, "singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(col, j), m.at(piv, j));
                std::swap(inv.at(col, j), inv.at(piv, j));
            }
        Scalar f = m.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            m.at(col, j) = m.at(col, j) * f;
            inv.at(col, j) = inv.at(col, j) * f;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m.at(i, col).is_zero()) continue;
            Scalar g = m.at(i, col);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = m.at(i, j) - g * m.at(col, j);
                inv.at(i, j) = inv.at(i, j) - g * inv.at(col, j);
            }
        }
    }
    return inv;
}

ScalarMatrix ScalarMatrix::pow(long e) const {
    ScalarMatrix base = e >= 0 ? *this : inverse();
    unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
    ScalarMatrix acc = identity(r_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

std::vector<std::vector<Scalar>> commutation_scalars(const std::vector<std::vector<long>>& basis,
                                                     const WeightPoint& pt, const TgwaPresentation& p) {
    if (!p.scalar_graded()) fail(errc::not_scalar_graded, "commutation scalars need x_commutation data");
    int k = static_cast<int>(basis.size());
    std::vector<std::vector<Scalar>> lam(k, std::vector<Scalar>(k, Scalar::integer(1)));
    auto value_of_product = [&](const std::vector<long>& g, const std::vector<long>& h) {
        Word w = canonical_letters(g);
        Word wh = canonical_letters(h);
        w.insert(w.end(), wh.begin(), wh.end());
        CanonicalWord cw = normalize(w, p);
        return cw.coeff * cw.r.eval(pt.alpha);
    };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            Scalar forward = value_of_product(basis[i], basis[j]);
            Scalar backward = value_of_product(basis[j], basis[i]);
            if (backward.is_zero()) fail(errc::internal, "commutation scalar undefined at this point");
            lam[i][j] = forward / backward;
        }
    return lam;
}

BmPresentation bm_presentation(const WeightPoint& pt, const QwaSystem& sys) {
    BmPresentation out;
    out.isotropy_lattice = isotropy(pt, sys);
    out.degree_group = g_m(pt, sys);
    for (int i = 0; i < out.degree_group.rank(); ++i) {
        std::vector<Int> row = out.degree_group.basis().row(i);
        std::vector<long> r(row.size());
        for (size_t j = 0; j < row.size(); ++j) r[j] = to_long(row[j]);
        out.basis.push_back(r);
    }
    out.lambda = commutation_scalars(out.basis, pt, sys.pres);
    return out;
}

TorusDecomposition torus_decompose(const std::vector<std::vector<Scalar>>& lambda, int session_order) {
    int k = static_cast<int>(lambda.size());
    TorusDecomposition out;
    out.k = k;
    // p = smallest positive integer with lambda_ij^p = 1 for all i, j.
    long p = 1;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            auto d = lambda[i][j].root_of_unity_order();
            if (!d)
                fail(errc::not_root_of_unity,
                     "a commutation scalar is not a root of unity; no finite-dimensional simple modules");
            p = to_long(int_lcm(Int(p), Int(*d)));
        }
    long m = Cyclo::unit_group_order(session_order);
    if (m % p != 0) fail(errc::internal, "unit group cannot host the required root order");
    Scalar zeta{Cyclo::unit_group_generator(session_order)};
    Scalar eps = zeta.pow(m / p); // primitive p-th root
    out.eps_prime = eps;
    // theta_ij: discrete log of lambda_ij base eps, skew lift.
    IntMatrix theta(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            long t = -1;
            Scalar pw = Scalar::integer(1);
            for (long e = 0; e < p; ++e) {
                if (pw == lambda[i][j]) {
                    t = e;
                    break;
                }
                pw = pw * eps;
            }
            if (t < 0) fail(errc::internal, "discrete log failed");
            theta.at(i, j) = t;
            theta.at(j, i) = -t;
        }
    SkewNormalForm snf = skew_normal_form(theta);
    out.thetas = snf.thetas;
    out.laurent_rank = snf.laurent_rank;
    out.u = snf.u;
    if (snf.thetas.empty()) {
        out.lambda_root = Scalar::integer(1);
    } else {
        out.lambda_root = eps.pow(to_long(snf.thetas[0]));
        for (const Int& t : snf.thetas) out.p.push_back(to_long(t / snf.thetas[0]));
    }
    for (size_t i = 0; i < out.p.size(); ++i) {
        auto d = out.lambda_root.pow(out.p[i]).root_of_unity_order();
        if (!d) fail(errc::internal, "torus factor parameter not a root of unity");
        out.torus_orders.push_back(*d);
    }
    return out;
}

namespace {

ScalarMatrix kron(const ScalarMatrix& a, const ScalarMatrix& b) {
    ScalarMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int x = 0; x < b.rows(); ++x)
                for (int y = 0; y < b.cols(); ++y)
                    m.at(i * b.rows() + x, j * b.cols() + y) = a.at(i, j) * b.at(x, y);
        }
    return m;
}

} // namespace

TorusModule simple_torus_module(const TorusDecomposition& dec, const TorusModuleSpec& params) {
    int r = static_cast<int>(dec.p.size());
    if (static_cast<int>(params.factor_params.size()) != r)
        fail(errc::internal, "need one (rho, mu) pair per torus factor");
    if (static_cast<int>(params.laurent_chars.size()) != dec.laurent_rank)
        fail(errc::internal, "need one character per Laurent generator");
    TorusModule out;
    for (long n : dec.torus_orders) out.dim *= n;

    // Per-factor generator pairs in the tensor basis (lexicographic order).
    std::vector<ScalarMatrix> slots_a(r), slots_b(r);
    for (int i = 0; i < r; ++i) {
        long n = dec.torus_orders[i];
        Scalar q = dec.lambda_root.pow(dec.p[i]);
        ScalarMatrix a(static_cast<int>(n), static_cast<int>(n));
        ScalarMatrix b(static_cast<int>(n), static_cast<int>(n));
        const auto& [rho, mu] = params.factor_params[i];
        for (long t = 0; t < n; ++t) a.at(t, t) = rho * q.pow(t);
        for (long t = 0; t + 1 < n; ++t) b.at(t + 1, t) = Scalar::integer(1);
        if (n >= 1) b.at(0, n - 1) = mu;
        slots_a[i] = a;
        slots_b[i] = b;
    }
    auto embed = [&](int slot, bool use_b) {
        ScalarMatrix m = ScalarMatrix::identity(1);
        for (int i = 0; i < r; ++i) {
            if (i == slot) m = kron(m, use_b ? slots_b[i] : slots_a[i]);
            else m = kron(m, ScalarMatrix::identity(static_cast<int>(dec.torus_orders[i])));
        }
        return m;
    };
    std::vector<ScalarMatrix> primed;
    for (int i = 0; i < r; ++i) {
        primed.push_back(embed(i, false));
        primed.push_back(embed(i, true));
    }
    for (int j = 0; j < dec.laurent_rank; ++j) {
        if (params.laurent_chars[j].is_zero()) fail(errc::internal, "Laurent character must be nonzero");
        primed.push_back(ScalarMatrix::identity(static_cast<int>(out.dim)) * params.laurent_chars[j]);
    }
    out.primed = primed;

    // Original generators: ordered products of primed generators with
    // exponents from the columns of U^{-1}.
    int k = dec.k;
    IntMatrix u = dec.u;
    // integer inverse of a unimodular matrix via adjugate
    Int det = u.det();
    if (det != 1 && det != -1) fail(errc::internal, "U not unimodular");
    IntMatrix inv(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            // cofactor C_ji / det
            IntMatrix minor(k - 1, k - 1);
            for (int x = 0, xi = 0; x < k; ++x) {
                if (x == j) continue;
                for (int y = 0, yj = 0; y < k; ++y) {
                    if (y == i) continue;
                    minor.at(xi, yj) = u.at(x, y);
                    ++yj;
                }
                ++xi;
            }
            Int c = minor.det();
            if ((i + j) % 2 == 1) c = -c;
            inv.at(i, j) = c / det;
        }
    if (!((u * inv) == IntMatrix::identity(k))) fail(errc::internal, "U inverse failed");

    for (int i = 0; i < k; ++i) {
        ScalarMatrix m = ScalarMatrix::identity(static_cast<int>(out.dim));
        for (int pidx = 0; pidx < k; ++pidx) {
            long e = to_long(inv.at(pidx, i));
            if (e != 0) m = m * out.primed[pidx].pow(e);
        }
        out.b.push_back(m);
    }
    return out;
}

} // namespace tgwa
