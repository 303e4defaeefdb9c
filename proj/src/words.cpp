#include "tgwa/words.hpp"

#include <algorithm>
#include <sstream>

namespace tgwa {

Word parse_word(const std::string& text) {
    Word w;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        char c = text[i];
        if (c != 'X' && c != 'Y') fail(errc::parse_error, "expected X or Y in word");
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            fail(errc::parse_error, "expected generator index in word");
        int idx = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            idx = idx * 10 + (text[i++] - '0');
        if (idx < 1) fail(errc::parse_error, "generator index must be >= 1");
        w.push_back({c == 'X', idx - 1});
    }
    return w;
}

std::string word_str(const Word& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << (w[i].is_x ? "X" : "Y") << (w[i].idx + 1);
    }
    return os.str();
}

std::vector<long> word_degree(const Word& w, int n) {
    std::vector<long> d(n, 0);
    for (const Letter& l : w) d.at(l.idx) += l.is_x ? 1 : -1;
    return d;
}

Word star(const Word& w) {
    Word s;
    s.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) s.push_back({!it->is_x, it->idx});
    return s;
}

Word canonical_letters(const std::vector<long>& g) {
    Word w;
    for (size_t i = 0; i < g.size(); ++i) {
        for (long k = 0; k < (g[i] >= 0 ? g[i] : -g[i]); ++k)
            w.push_back({g[i] >= 0, static_cast<int>(i)});
    }
    return w;
}

namespace {

// State Y(yb) * X(xb) * coeff * r with the two blocks index-disjoint.
struct ReduceState {
    const TgwaPresentation& p;
    std::vector<int> yb, xb;
    Scalar coeff = Scalar::integer(1);
    TPoly r;

    explicit ReduceState(const TgwaPresentation& pres) : p(pres), r(TPoly::constant(pres.n, Scalar::integer(1))) {}

    bool in(const std::vector<int>& blk, int j) const {
        return std::find(blk.begin(), blk.end(), j) != blk.end();
    }

    // Move the whole Y-block past the whole X-block (or back).
    // Y_i X_a = mu_{a i}^{-1} X_a Y_i for disjoint indices.
    void flip(bool forward) {
        for (int y : yb)
            for (int x : xb) coeff = forward ? coeff * p.mu[x][y].inverse() : coeff * p.mu[x][y];
    }

    void append_y(int j) {
        r = p.sig(j).apply(r);
        if (!in(xb, j)) {
            for (int x : xb) coeff = coeff * p.mu[x][j];
            yb.push_back(j);
            return;
        }
        size_t v = xb.size();
        while (v-- > 0)
            if (xb[v] == j) break;
        for (size_t u = v + 1; u < xb.size(); ++u) coeff = coeff * p.mu[xb[u]][j];
        // X_j Y_j = sigma_j(t_j), pushed right past the trailing X's.
        TPoly elem = p.sig(j).apply(p.t[j]);
        for (size_t u = v + 1; u < xb.size(); ++u) elem = p.sig_inv(xb[u]).apply(elem);
        r = elem * r;
        xb.erase(xb.begin() + static_cast<long>(v));
    }

    void append_x(int j) {
        r = p.sig_inv(j).apply(r);
        if (!in(yb, j)) {
            xb.push_back(j);
            return;
        }
        flip(true); // now X(xb) * Y(yb) * X_j
        size_t u = yb.size();
        while (u-- > 0)
            if (yb[u] == j) break;
        for (size_t w = u + 1; w < yb.size(); ++w) coeff = coeff * p.mu[j][yb[w]].inverse();
        // Y_j X_j = t_j, pushed right past the trailing Y's.
        TPoly elem = p.t[j];
        for (size_t w = u + 1; w < yb.size(); ++w) elem = p.sig(yb[w]).apply(elem);
        r = elem * r;
        yb.erase(yb.begin() + static_cast<long>(u));
        flip(false);
    }
};

} // namespace

ReducedWord reduce_word(const Word& w, const TgwaPresentation& p) {
    ReduceState st(p);
    for (const Letter& l : w) {
        if (l.idx < 0 || l.idx >= p.n) fail(errc::parse_error, "letter index out of range");
        if (l.is_x) st.append_x(l.idx);
        else st.append_y(l.idx);
    }
    ReducedWord out;
    for (int y : st.yb) out.reduced.push_back({false, y});
    for (int x : st.xb) out.reduced.push_back({true, x});
    out.r = st.r;
    out.coeff = st.coeff;
    return out;
}

namespace {

// Stable bubble sort by generator index; same-index letters keep order.
// Returns the accumulated commutation coefficient.
Scalar sort_by_index(Word& letters, const TgwaPresentation& p) {
    if (!p.scalar_graded()) fail(errc::not_scalar_graded, "needs x_commutation data");
    const auto& cx = *p.cx;
    const auto& cy = *p.cy;
    // Count swap multiplicities first and multiply once per distinct factor.
    std::map<std::pair<int, int>, long> xx, yy, xy, yx; // (a.idx, b.idx) -> count
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (size_t k = 0; k + 1 < letters.size(); ++k) {
            Letter a = letters[k], b = letters[k + 1];
            if (a.idx <= b.idx) continue;
            if (a.is_x && b.is_x) ++xx[{a.idx, b.idx}];
            else if (!a.is_x && !b.is_x) ++yy[{a.idx, b.idx}];
            else if (a.is_x && !b.is_x) ++xy[{a.idx, b.idx}];
            else ++yx[{a.idx, b.idx}];
            letters[k] = b;
            letters[k + 1] = a;
            swapped = true;
        }
    }
    Scalar coeff = Scalar::integer(1);
    for (const auto& [key, n] : xx) coeff = coeff * cx[key.first][key.second].pow(n);
    for (const auto& [key, n] : yy) coeff = coeff * cy[key.first][key.second].pow(n);
    for (const auto& [key, n] : xy) coeff = coeff * p.mu[key.first][key.second].pow(n);
    for (const auto& [key, n] : yx) coeff = coeff * p.mu[key.second][key.first].pow(-n);
    return coeff;
}

} // namespace

CanonicalWord normalize(const Word& w, const TgwaPresentation& p) {
    Word letters = w;
    Scalar coeff = sort_by_index(letters, p);
    // Reduce each same-index segment to Z_i^{k_i} * r_i.
    std::vector<long> deg(p.n, 0);
    std::vector<TPoly> seg_r(p.n, TPoly::constant(p.n, Scalar::integer(1)));
    for (size_t k = 0; k < letters.size();) {
        int i = letters[k].idx;
        long z = 0;
        TPoly r = TPoly::constant(p.n, Scalar::integer(1));
        while (k < letters.size() && letters[k].idx == i) {
            if (letters[k].is_x) {
                r = p.sig_inv(i).apply(r);
                if (z < 0) r = p.t[i] * r;
                ++z;
            } else {
                r = p.sig(i).apply(r);
                if (z > 0) r = p.sig(i).apply(p.t[i]) * r;
                --z;
            }
            ++k;
        }
        deg[i] = z;
        seg_r[i] = r;
    }
    // Push the r_i to the right end.
    TPoly total = TPoly::constant(p.n, Scalar::integer(1));
    AffineAut shift = AffineAut::identity(p.n);
    for (int i = p.n - 1; i >= 0; --i) {
        total = shift.apply(seg_r[i]) * total;
        std::vector<long> only(p.n, 0);
        only[i] = -deg[i];
        shift = shift.compose(p.sigma_power(only));
    }
    CanonicalWord out;
    out.coeff = coeff;
    out.degree = deg;
    out.r = total;
    canonical_split(out);
    return out;
}

void canonical_split(CanonicalWord& cw) {
    if (cw.r.is_zero()) {
        cw.coeff = Scalar::integer(0);
        cw.r = TPoly::constant(static_cast<int>(cw.degree.size()), Scalar::integer(1));
        return;
    }
    const Scalar& lead = cw.r.terms().rbegin()->second;
    if (lead.is_one()) return;
    cw.coeff = cw.coeff * lead;
    cw.r = cw.r * lead.inverse();
}

CanonicalWord canonical_mul(const CanonicalWord& a, const CanonicalWord& b, const TgwaPresentation& p) {
    Word cat = canonical_letters(a.degree);
    Word bl = canonical_letters(b.degree);
    cat.insert(cat.end(), bl.begin(), bl.end());
    CanonicalWord base = normalize(cat, p);
    std::vector<long> neg_g2(b.degree.size());
    for (size_t i = 0; i < b.degree.size(); ++i) neg_g2[i] = -b.degree[i];
    TPoly shifted_r1 = p.sigma_power(neg_g2).apply(a.r);
    CanonicalWord out;
    out.coeff = a.coeff * b.coeff * base.coeff;
    out.degree = base.degree;
    out.r = base.r * shifted_r1 * b.r;
    canonical_split(out);
    return out;
}

Scalar word_value_at(const Word& w, const std::vector<Scalar>& alpha, const TgwaPresentation& p) {
    Word letters = w;
    Scalar coeff = sort_by_index(letters, p);
    // Per segment: the usual Z_i^{k} * r reduction, but r is kept as a list of
    // sigma-shifted t_i factors instead of a polynomial.
    struct Elem {
        int gen;
        long shift;
    };
    std::vector<long> deg(p.n, 0);
    std::vector<std::vector<Elem>> elems(p.n);
    for (size_t k = 0; k < letters.size();) {
        int i = letters[k].idx;
        long z = 0;
        auto& seg = elems[i];
        while (k < letters.size() && letters[k].idx == i) {
            if (letters[k].is_x) {
                for (Elem& e : seg) --e.shift;
                if (z < 0) seg.push_back({i, 0});
                ++z;
            } else {
                for (Elem& e : seg) ++e.shift;
                if (z > 0) seg.push_back({i, 1});
                --z;
            }
            ++k;
        }
        deg[i] = z;
    }
    for (long d : deg)
        if (d != 0) fail(errc::internal, "word value needs degree zero");
    // Multiply all factor values with a single reduction at the end; the
    // incremental gcd per factor dominates the runtime otherwise. Since the
    // word has degree zero, every factor is sigma_i^s(t_i) for a single
    // generator shift, so the affine forms can be walked incrementally over
    // the shift range instead of recomposing power maps per factor.
    MPoly num = coeff.num(), den = coeff.den();
    for (int i = 0; i < p.n; ++i) {
        if (elems[i].empty()) continue;
        long lo = 0, hi = 0;
        for (const Elem& e : elems[i]) {
            lo = std::min(lo, e.shift);
            hi = std::max(hi, e.shift);
        }
        std::map<long, Scalar> value_at_shift;
        TPoly form = TPoly::generator(p.n, i);
        value_at_shift[0] = form.eval(alpha);
        TPoly up = form, down = form;
        for (long s = 1; s <= hi; ++s) {
            up = p.sig(i).apply(up);
            value_at_shift[s] = up.eval(alpha);
        }
        for (long s = -1; s >= lo; --s) {
            down = p.sig_inv(i).apply(down);
            value_at_shift[s] = down.eval(alpha);
        }
        for (const Elem& e : elems[i]) {
            const Scalar& v = value_at_shift.at(e.shift);
            if (v.is_zero()) return Scalar::integer(0);
            num = num * v.num();
            den = den * v.den();
        }
    }
    return Scalar(num, den);
}

Scalar pair_at(const std::vector<long>& g, const std::vector<Scalar>& alpha, const TgwaPresentation& p) {
    Word a = canonical_letters(g);
    Word w = star(a);
    w.insert(w.end(), a.begin(), a.end());
    return word_value_at(w, alpha, p);
}


std::string canonical_word_json(const CanonicalWord& cw) {
    std::ostringstream os;
    os << "{\"coeff\": \"" << cw.coeff.str() << "\", \"degree\": [";
    for (size_t i = 0; i < cw.degree.size(); ++i) os << (i ? ", " : "") << cw.degree[i];
    os << "], \"r_factor\": \"" << cw.r.str() << "\"}";
    return os.str();
}

} // namespace tgwa
