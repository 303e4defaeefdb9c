#include "tgwa/tpoly.hpp"

#include <sstream>

namespace tgwa {

TPoly TPoly::constant(int n, const Scalar& c) {
    TPoly p(n);
    p.add_term(std::vector<int>(n, 0), c);
    return p;
}

TPoly TPoly::generator(int n, int i) {
    TPoly p(n);
    std::vector<int> e(n, 0);
    e.at(i) = 1;
    p.add_term(e, Scalar::integer(1));
    return p;
}

bool TPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (int x : terms_.begin()->first)
        if (x != 0) return false;
    return true;
}

Scalar TPoly::constant_value() const {
    if (terms_.empty()) return Scalar::integer(0);
    if (!is_constant()) fail(errc::internal, "TPoly not constant");
    return terms_.begin()->second;
}

void TPoly::add_term(const std::vector<int>& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TPoly TPoly::operator-() const {
    TPoly r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

TPoly TPoly::operator+(const TPoly& o) const {
    TPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

TPoly TPoly::operator-(const TPoly& o) const { return *this + (-o); }

TPoly TPoly::operator*(const TPoly& o) const {
    TPoly r(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e(n_);
            for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

TPoly TPoly::operator*(const Scalar& c) const {
    TPoly r(n_);
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

bool TPoly::operator==(const TPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

TPoly TPoly::substitute(const std::vector<TPoly>& images) const {
    TPoly r(n_);
    for (const auto& [e, c] : terms_) {
        TPoly term = TPoly::constant(n_, c);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) term = term * images[i];
        r = r + term;
    }
    return r;
}

Scalar TPoly::eval(const std::vector<Scalar>& alpha) const {
    Scalar acc = Scalar::integer(0);
    for (const auto& [e, c] : terms_) {
        Scalar term = c;
        for (int i = 0; i < n_; ++i)
            if (e[i] != 0) term = term * alpha[i].pow(e[i]);
        acc = acc + term;
    }
    return acc;
}

std::string TPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            os << "*t" << (i + 1);
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

AffineAut AffineAut::identity(int n) {
    AffineAut a;
    a.lin.assign(n, std::vector<Scalar>(n, Scalar::integer(0)));
    a.off.assign(n, Scalar::integer(0));
    for (int i = 0; i < n; ++i) a.lin[i][i] = Scalar::integer(1);
    return a;
}

TPoly AffineAut::image_of_generator(int j) const {
    int n = nvars();
    TPoly p(n);
    std::vector<int> zero(n, 0);
    p.add_term(zero, off[j]);
    for (int k = 0; k < n; ++k) {
        if (lin[j][k].is_zero()) continue;
        std::vector<int> e(n, 0);
        e[k] = 1;
        p.add_term(e, lin[j][k]);
    }
    return p;
}

TPoly AffineAut::apply(const TPoly& p) const {
    int n = nvars();
    std::vector<TPoly> images;
    images.reserve(n);
    for (int j = 0; j < n; ++j) images.push_back(image_of_generator(j));
    return p.substitute(images);
}

AffineAut AffineAut::compose(const AffineAut& inner) const {
    // (this o inner)(t_j) = inner-expression with t_k replaced by this(t_k).
    int n = nvars();
    AffineAut r;
    r.lin.assign(n, std::vector<Scalar>(n, Scalar::integer(0)));
    r.off.assign(n, Scalar::integer(0));
    for (int j = 0; j < n; ++j) {
        r.off[j] = inner.off[j];
        for (int k = 0; k < n; ++k) {
            if (inner.lin[j][k].is_zero()) continue;
            r.off[j] = r.off[j] + inner.lin[j][k] * off[k];
            for (int m = 0; m < n; ++m)
                r.lin[j][m] = r.lin[j][m] + inner.lin[j][k] * lin[k][m];
        }
    }
    return r;
}

AffineAut AffineAut::inverse() const {
    // Solve L*x + c = t for x: x = L^{-1} (t - c).
    int n = nvars();
    // Gaussian elimination over the scalar field on [L | I].
    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n, Scalar::integer(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = lin[i][j];
        m[i][n + i] = Scalar::integer(1);
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) fail(errc::internal, "affine map not invertible");
        std::swap(m[col], m[piv]);
        Scalar inv = m[col][col].inverse();
        for (int j = 0; j < 2 * n; ++j) m[col][j] = m[col][j] * inv;
        for (int i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            Scalar f = m[i][col];
            for (int j = 0; j < 2 * n; ++j) m[i][j] = m[i][j] - f * m[col][j];
        }
    }
    AffineAut r;
    r.lin.assign(n, std::vector<Scalar>(n, Scalar::integer(0)));
    r.off.assign(n, Scalar::integer(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.lin[i][j] = m[i][n + j];
    for (int i = 0; i < n; ++i) {
        Scalar s = Scalar::integer(0);
        for (int j = 0; j < n; ++j) s = s - r.lin[i][j] * off[j];
        r.off[i] = s;
    }
    return r;
}

} // namespace tgwa
