#include "tgwa/intmat.hpp"

#include <sstream>

namespace tgwa {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) fail(errc::internal, "ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) fail(errc::internal, "matrix dimension mismatch");
    IntMatrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.c_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

std::vector<Int> IntMatrix::row(int i) const {
    std::vector<Int> v(c_);
    for (int j = 0; j < c_; ++j) v[j] = at(i, j);
    return v;
}

void IntMatrix::set_row(int i, const std::vector<Int>& v) {
    for (int j = 0; j < c_; ++j) at(i, j) = v[j];
}

IntMatrix IntMatrix::take_rows(const std::vector<int>& idx) const {
    IntMatrix m(static_cast<int>(idx.size()), c_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < c_; ++j) m.at(static_cast<int>(i), j) = at(idx[i], j);
    return m;
}

void IntMatrix::append_row(const std::vector<Int>& v) {
    if (r_ == 0 && c_ == 0) c_ = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != c_) fail(errc::internal, "row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

Int IntMatrix::det() const {
    if (r_ != c_) fail(errc::internal, "determinant of non-square matrix");
    int n = r_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = at(i, j);
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

HnfResult hnf_transform(const IntMatrix& a) {
    int rows = a.rows(), cols = a.cols();
    IntMatrix h = a, u = IntMatrix::identity(rows);
    int r = 0;
    auto row_combine = [&](int i, int k, const Int& p, const Int& q, const Int& s, const Int& t) {
        // (row_i, row_k) <- (p*row_i + q*row_k, s*row_i + t*row_k)
        for (int j = 0; j < cols; ++j) {
            Int x = h.at(i, j), y = h.at(k, j);
            h.at(i, j) = p * x + q * y;
            h.at(k, j) = s * x + t * y;
        }
        for (int j = 0; j < rows; ++j) {
            Int x = u.at(i, j), y = u.at(k, j);
            u.at(i, j) = p * x + q * y;
            u.at(k, j) = s * x + t * y;
        }
    };
    for (int c = 0; c < cols && r < rows; ++c) {
        // bring a nonzero entry to (r, c)
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (h.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) row_combine(r, piv, Int(0), Int(1), Int(1), Int(0));
        for (int i = r + 1; i < rows; ++i) {
            if (h.at(i, c) == 0) continue;
            Int x = h.at(r, c), y = h.at(i, c), p, q;
            Int g = int_gcdext(x, y, p, q);
            row_combine(r, i, p, q, -y / g, x / g);
        }
        if (h.at(r, c) < 0) {
            for (int j = 0; j < cols; ++j) h.at(r, j) = -h.at(r, j);
            for (int j = 0; j < rows; ++j) u.at(r, j) = -u.at(r, j);
        }
        for (int i = 0; i < r; ++i) {
            Int q = int_fdiv(h.at(i, c), h.at(r, c));
            if (q == 0) continue;
            for (int j = 0; j < cols; ++j) h.at(i, j) -= q * h.at(r, j);
            for (int j = 0; j < rows; ++j) u.at(i, j) -= q * u.at(r, j);
        }
        ++r;
    }
    HnfResult res;
    res.h = std::move(h);
    res.u = std::move(u);
    res.rank = r;
    return res;
}

Lattice::Lattice(int ambient, const IntMatrix& generators) : n_(ambient) {
    if (generators.rows() > 0 && generators.cols() != ambient)
        fail(errc::internal, "generator width != ambient rank");
    IntMatrix g = generators;
    if (g.cols() == 0) g = IntMatrix(0, ambient);
    HnfResult res = hnf_transform(g);
    std::vector<int> keep;
    for (int i = 0; i < res.rank; ++i) keep.push_back(i);
    basis_ = res.h.take_rows(keep);
}

Lattice Lattice::full(int ambient) { return Lattice(ambient, IntMatrix::identity(ambient)); }

Lattice Lattice::from_rows(int ambient, const std::vector<std::vector<long>>& rows) {
    IntMatrix m = IntMatrix::from_rows(rows);
    if (rows.empty()) m = IntMatrix(0, ambient);
    return Lattice(ambient, m);
}

bool Lattice::contains(const std::vector<Int>& v) const {
    // Reduce v by the HNF basis greedily.
    std::vector<Int> w = v;
    int row = 0;
    for (int c = 0; c < n_ && row < basis_.rows(); ++c) {
        if (basis_.at(row, c) == 0) continue; // pivot columns advance with rows
        Int q = w[c] / basis_.at(row, c);
        for (int j = 0; j < n_; ++j) w[j] -= q * basis_.at(row, j);
        if (w[c] != 0) return false;
        ++row;
    }
    for (const auto& x : w)
        if (x != 0) return false;
    return true;
}

bool Lattice::contains(const std::vector<long>& v) const {
    std::vector<Int> w(v.begin(), v.end());
    return contains(w);
}

std::vector<Int> Lattice::coordinates(const std::vector<Int>& v) const {
    std::vector<Int> w = v, coord(basis_.rows(), Int(0));
    int row = 0;
    for (int c = 0; c < n_ && row < basis_.rows(); ++c) {
        if (basis_.at(row, c) == 0) continue;
        Int q = w[c] / basis_.at(row, c);
        for (int j = 0; j < n_; ++j) w[j] -= q * basis_.at(row, j);
        if (w[c] != 0) fail(errc::internal, "vector not in lattice");
        coord[row] = q;
        ++row;
    }
    for (const auto& x : w)
        if (x != 0) fail(errc::internal, "vector not in lattice");
    return coord;
}

std::string Lattice::str() const {
    return "Lattice(rank " + std::to_string(basis_.rows()) + ", basis " + basis_.str() + ")";
}

namespace {
// Rows spanning {x : x*a == 0}.
IntMatrix left_kernel(const IntMatrix& a) {
    HnfResult res = hnf_transform(a);
    std::vector<int> zero_rows;
    for (int i = res.rank; i < a.rows(); ++i) zero_rows.push_back(i);
    return res.u.take_rows(zero_rows);
}
} // namespace

Lattice intersect(const Lattice& a, const Lattice& b) {
    if (a.ambient_rank() != b.ambient_rank()) fail(errc::internal, "ambient rank mismatch");
    int n = a.ambient_rank();
    IntMatrix stacked(a.rank() + b.rank(), n);
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < n; ++j) stacked.at(i, j) = a.basis().at(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < n; ++j) stacked.at(a.rank() + i, j) = b.basis().at(i, j);
    IntMatrix ker = left_kernel(stacked);
    IntMatrix gens(ker.rows(), n);
    for (int i = 0; i < ker.rows(); ++i)
        for (int j = 0; j < n; ++j) {
            Int s(0);
            for (int k = 0; k < a.rank(); ++k) s += ker.at(i, k) * a.basis().at(k, j);
            gens.at(i, j) = s;
        }
    return Lattice(n, gens);
}

Lattice kernel_of_unit_map(const IntMatrix& torsion_rows, long modulus, const IntMatrix& free_rows) {
    int n = torsion_rows.rows() > 0 ? torsion_rows.cols() : free_rows.cols();
    if (n == 0) fail(errc::internal, "kernel_of_unit_map: ambient rank unknown");
    // Free part: rows spanning {g : g * free_rows^T == 0}.
    IntMatrix b1;
    if (free_rows.rows() == 0) {
        b1 = IntMatrix::identity(n);
    } else {
        b1 = left_kernel(free_rows.transpose());
    }
    if (torsion_rows.rows() == 0 || b1.rows() == 0) return Lattice(n, b1);
    if (modulus < 1) fail(errc::internal, "modulus must be >= 1");
    // Torsion part: x with x * (b1 * torsion^T) == 0 (mod modulus).
    IntMatrix c = b1 * torsion_rows.transpose(); // r1 x p
    int r1 = c.rows(), p = c.cols();
    IntMatrix stacked(r1 + p, p);
    for (int i = 0; i < r1; ++i)
        for (int j = 0; j < p; ++j) stacked.at(i, j) = c.at(i, j);
    for (int i = 0; i < p; ++i) stacked.at(r1 + i, i) = modulus;
    IntMatrix ker = left_kernel(stacked);
    IntMatrix gens(ker.rows(), n);
    for (int i = 0; i < ker.rows(); ++i)
        for (int j = 0; j < n; ++j) {
            Int s(0);
            for (int k = 0; k < r1; ++k) s += ker.at(i, k) * b1.at(k, j);
            gens.at(i, j) = s;
        }
    return Lattice(n, gens);
}

namespace {

struct SkewWork {
    IntMatrix m, u;
    int k;

    void swap_rc(int i, int j) {
        if (i == j) return;
        for (int t = 0; t < k; ++t) std::swap(m.at(i, t), m.at(j, t));
        for (int t = 0; t < k; ++t) std::swap(m.at(t, i), m.at(t, j));
        for (int t = 0; t < k; ++t) std::swap(u.at(t, i), u.at(t, j));
    }

    void negate_rc(int i) {
        for (int t = 0; t < k; ++t) m.at(i, t) = -m.at(i, t);
        for (int t = 0; t < k; ++t) m.at(t, i) = -m.at(t, i);
        for (int t = 0; t < k; ++t) u.at(t, i) = -u.at(t, i);
    }

    // col_j += c*col_i and row_j += c*row_i (congruence transform).
    void add_rc(int j, int i, const Int& c) {
        if (c == 0) return;
        for (int t = 0; t < k; ++t) m.at(t, j) += c * m.at(t, i);
        for (int t = 0; t < k; ++t) m.at(j, t) += c * m.at(i, t);
        for (int t = 0; t < k; ++t) u.at(t, j) += c * u.at(t, i);
    }
};

// Clear rows p and p+1 beyond column p+1, shrinking the pivot by Euclid swaps
// when entries are not divisible.
void reduce_block(SkewWork& w, int p) {
    int k = w.k;
    while (true) {
        bool clean = true;
        // pivot sign
        if (w.m.at(p, p + 1) < 0) w.negate_rc(p + 1);
        for (int t = p + 2; t < k; ++t) {
            while (w.m.at(p, t) != 0) {
                Int q = int_fdiv(w.m.at(p, t), w.m.at(p, p + 1));
                w.add_rc(t, p + 1, -q);
                if (w.m.at(p, t) != 0) {
                    w.swap_rc(p + 1, t);
                    clean = false;
                    if (w.m.at(p, p + 1) < 0) w.negate_rc(p + 1);
                }
            }
        }
        for (int t = p + 2; t < k; ++t) {
            while (w.m.at(p + 1, t) != 0) {
                // m[p+1][p] = -pivot
                Int q = int_fdiv(w.m.at(p + 1, t), w.m.at(p + 1, p));
                w.add_rc(t, p, -q);
                if (w.m.at(p + 1, t) != 0) {
                    w.swap_rc(p, t);
                    clean = false;
                    if (w.m.at(p, p + 1) < 0) w.negate_rc(p + 1);
                }
            }
        }
        // row-p clearing may have been disturbed by swaps in the second pass
        bool row_p_clean = true;
        for (int t = p + 2; t < k; ++t)
            if (w.m.at(p, t) != 0 || w.m.at(p + 1, t) != 0) row_p_clean = false;
        if (clean && row_p_clean) return;
    }
}

} // namespace

SkewNormalForm skew_normal_form(const IntMatrix& theta) {
    int k = theta.rows();
    if (theta.cols() != k) fail(errc::not_skew_symmetric, "matrix not square");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (theta.at(i, j) != -theta.at(j, i))
                fail(errc::not_skew_symmetric, "matrix is not skew-symmetric");

    SkewWork w{theta, IntMatrix::identity(k), k};

    int p = 0;
    for (int guard = 0; ; ++guard) {
        if (guard > 10000) fail(errc::internal, "skew normal form did not converge");
        // find minimal nonzero |entry| in trailing block
        int bi = -1, bj = -1;
        Int best(0);
        for (int i = p; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                Int v = abs(w.m.at(i, j));
                if (v != 0 && (bi < 0 || v < best)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break; // trailing block zero
        // move pivot to (p, p+1)
        w.swap_rc(bi, p);
        if (bj == p) bj = bi;
        w.swap_rc(bj, p + 1);
        if (w.m.at(p, p + 1) < 0) w.negate_rc(p + 1);
        reduce_block(w, p);
        p += 2;
        // divisibility repair: if a previous theta does not divide this one,
        // couple the blocks and restart from the earlier one
        if (p >= 4) {
            int a = p - 4, b = p - 2;
            if (w.m.at(b, b + 1) % w.m.at(a, a + 1) != 0) {
                w.add_rc(a, b, Int(1));
                p = a;
            }
        }
    }

    SkewNormalForm out;
    out.u = w.u;
    out.laurent_rank = k - p;
    for (int i = 0; i < p; i += 2) out.thetas.push_back(w.m.at(i, i + 1));
    out.normal = w.m;

    // Certify the invariants.
    IntMatrix check = w.u.transpose() * theta * w.u;
    if (!(check == w.m)) fail(errc::internal, "skew normal form: transform mismatch");
    Int d = w.u.det();
    if (d != 1 && d != -1) fail(errc::internal, "skew normal form: U not unimodular");
    for (size_t i = 0; i < out.thetas.size(); ++i) {
        if (out.thetas[i] <= 0) fail(errc::internal, "skew normal form: theta not positive");
        if (i + 1 < out.thetas.size() && out.thetas[i + 1] % out.thetas[i] != 0)
            fail(errc::internal, "skew normal form: divisibility chain broken");
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            bool in_block = (i / 2 == j / 2) && i != j && i / 2 < static_cast<int>(out.thetas.size());
            if (!in_block && w.m.at(i, j) != 0) fail(errc::internal, "skew normal form: stray entry");
        }
    return out;
}

BoxReps box_reps(long a1, long a2, long b1, long b2) {
    if (a1 < 0 || b1 < 0) fail(errc::degenerate_basis, "box_reps requires a1, b1 >= 0");
    long d = a1 * b2 - b1 * a2;
    if (d <= 0) fail(errc::degenerate_basis, "box_reps requires a1*b2 - b1*a2 > 0");
    Int u, v;
    Int g = int_gcdext(Int(a2), Int(b2), u, v);
    if (g < 0) { g = -g; u = -u; v = -v; }
    if (g == 0) fail(errc::degenerate_basis, "a2 = b2 = 0 has no transversal box");
    BoxReps r;
    r.d2 = to_long(g);
    r.d1 = d / r.d2;
    long a2p = to_long(u), b2p = to_long(v);
    long s0 = -a2p * a1 - b2p * b1;
    long pshift = floordiv(s0, r.d1);
    // (a2p, b2p) -> (a2p + p*b2/d2, b2p - p*a2/d2) shifts s by -p*d1.
    r.a2p = a2p + pshift * (b2 / r.d2);
    r.b2p = b2p - pshift * (a2 / r.d2);
    r.s = -r.a2p * a1 - r.b2p * b1;
    if (r.s < 0 || r.s >= r.d1) fail(errc::internal, "box_reps: s normalization failed");
    if (r.a2p * a2 + r.b2p * b2 != r.d2) fail(errc::internal, "box_reps: gcd identity broken");
    return r;
}

} // namespace tgwa
