#pragma once

#include "tgwa/presentation.hpp"

#include <string>
#include <vector>

namespace tgwa {

struct Letter {
    bool is_x;
    int idx; // 0-based generator index
    bool operator==(const Letter& o) const { return is_x == o.is_x && idx == o.idx; }
};

using Word = std::vector<Letter>;

Word parse_word(const std::string& text); // e.g. "X1 Y2 X1"
std::string word_str(const Word& w);
std::vector<long> word_degree(const Word& w, int n);

// Z_k^* ... Z_1^*: reverse the word and swap X_i with Y_i.
Word star(const Word& w);

// The canonical word Z_1^{g_1} ... Z_n^{g_n} (Z^k = X^k for k >= 0, Y^{-k} otherwise).
Word canonical_letters(const std::vector<long>& g);

// Word rewriting into reduced form: w = coeff * reduced * r in the
// construction algebra, with reduced of the shape Y...Y X...X and disjoint
// index sets between the blocks.
struct ReducedWord {
    Word reduced;
    TPoly r;
    Scalar coeff;
};
ReducedWord reduce_word(const Word& w, const TgwaPresentation& p);

// Normal form coeff * Z_1^{g_1}...Z_n^{g_n} * r(t) in the quotient algebra;
// requires a scalar-graded presentation.
struct CanonicalWord {
    Scalar coeff;
    std::vector<long> degree;
    TPoly r; // monic in the leading t-monomial; leading coefficient lives in coeff
};
CanonicalWord normalize(const Word& w, const TgwaPresentation& p);

// Re-establish the monic-r split after combining parts by hand.
void canonical_split(CanonicalWord& cw);

// Product of canonical words, again in canonical form.
CanonicalWord canonical_mul(const CanonicalWord& a, const CanonicalWord& b, const TgwaPresentation& p);

// {"coeff": ..., "degree": [...], "r_factor": ...} serialization.
std::string canonical_word_json(const CanonicalWord& cw);

// Value at the point alpha of a degree-zero word, evaluating the R-factors
// as they arise instead of building t-polynomials. Needs sigma-affine maps
// only through point moves, so it stays cheap on long words.
Scalar word_value_at(const Word& w, const std::vector<Scalar>& alpha, const TgwaPresentation& p);

// Value of a_g^* a_g at the point alpha, for the canonical word a_g.
// Zero exactly when a_g^* a_g lies in the maximal ideal of alpha.
Scalar pair_at(const std::vector<long>& g, const std::vector<Scalar>& alpha, const TgwaPresentation& p);

} // namespace tgwa
