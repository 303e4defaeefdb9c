#pragma once

#include "tgwa/intmat.hpp"
#include "tgwa/presentation.hpp"
#include "tgwa/words.hpp"

#include <optional>
#include <variant>

namespace tgwa {

// A maximal ideal m = (t_1 - alpha_1, ..., t_n - alpha_n) given by its point.
struct WeightPoint {
    std::vector<Scalar> alpha;

    int n() const { return static_cast<int>(alpha.size()); }
    bool operator==(const WeightPoint& o) const { return alpha == o.alpha; }
    bool operator!=(const WeightPoint& o) const { return !(*this == o); }
    std::string str() const;
};

// Quantized Weyl algebra session: parameters, presentation, and the
// cyclotomic order they live over.
struct QwaSystem {
    int order;        // cyclotomic order N of the session
    QwaParams params; // q, lambda, mu
    TgwaPresentation pres;

    static QwaSystem make(const ParameterEnv& env, int n);
    int n() const { return params.n; }

    // Named point families of the rank-two classification.
    WeightPoint point_n0() const;
    WeightPoint point_n1(const Scalar& lam) const;
    WeightPoint point_n2(const Scalar& lam) const;
    WeightPoint point_generic(const Scalar& a1, const Scalar& a2) const;
};

struct GammaSequence {
    std::vector<Scalar> gamma; // gamma_0 = 1, gamma_1, ..., gamma_n
};

GammaSequence gamma_sequence(const WeightPoint& pt, const QwaSystem& sys);

// sigma_1^{g_1}...sigma_n^{g_n}(m) via the closed form
// alpha_j' = (alpha_j - [g_j]_{q_j} gamma_{j-1}) * (q_1^{g_1}...q_j^{g_j})^{-1}.
WeightPoint sigma_action(const std::vector<long>& g, const WeightPoint& pt, const QwaSystem& sys);

// Independent slow path: apply the defining affine sigma maps letter by letter.
WeightPoint sigma_action_slow(const std::vector<long>& g, const WeightPoint& pt, const QwaSystem& sys);

// Presentation-generic point move (the slow path without QWA structure).
WeightPoint point_move(const std::vector<long>& g, const WeightPoint& pt, const TgwaPresentation& pres);

// Solution set of gamma_j = q_j^i gamma_{j-1} over i in Z.
struct BreakSolutions {
    enum class Kind { None, All, Single, Progression } kind = Kind::None;
    long value = 0;  // Single: the solution; Progression: representative in [0, period)
    long period = 0; // Progression only
    bool has_nonnegative() const;
    bool has_negative() const;
    std::optional<long> min_nonnegative() const;
    std::optional<long> max_negative() const;
    bool contains(long i) const;
};

BreakSolutions break_exponents(const WeightPoint& pt, int j, const QwaSystem& sys); // j is 1-based

// Isotropy lattice {g : (q_1^{g_1}...q_j^{g_j} - 1) gamma_j = 0 for all j}.
Lattice isotropy(const WeightPoint& pt, const QwaSystem& sys);

// Per-coordinate interval data of the pairing-support set.
struct RayIntervals {
    struct Ray {
        std::optional<long> lo, hi; // nullopt = unbounded
    };
    std::vector<Ray> rays;
    bool contains(const std::vector<long>& g) const;
    bool axis_is_all(int j) const { return !rays[j].lo && !rays[j].hi; }
};

RayIntervals g_tilde(const WeightPoint& pt, const QwaSystem& sys);

// The subgroup g_tilde intersect isotropy, with bounded coordinates forced to
// zero; post-verified against the interval box.
Lattice g_m(const WeightPoint& pt, const QwaSystem& sys);

// The kernel lattices of g -> q_1^{g_1} and g -> q_1^{g_1} q_2^{g_2} (rank 2).
Lattice kernel_k1(const QwaSystem& sys);
Lattice kernel_k2(const QwaSystem& sys);
// Q = {g : q_j^{g_j} = 1 for all j}.
Lattice kernel_q(const QwaSystem& sys);

} // namespace tgwa
