#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace tgwa {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = gcd(a,b) together with u,v such that u*a + v*b = g.
inline Int int_gcdext(const Int& a, const Int& b, Int& u, Int& v) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

// Floor division/modulo (mod result in [0, |b|)).
inline Int int_fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int int_fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long to_long(const Int& a) { return mpz_get_si(a.get_mpz_t()); }

inline long floordiv(long a, long b) {
    long q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline long floormod(long a, long b) { return a - floordiv(a, b) * b; }

// mpq_class(num, den) does not canonicalize on its own; this does.
inline Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& a, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), a.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), a.get_den_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    Rat inv = 1 / a;
    return rat_pow(inv, -e);
}

inline std::string rat_str(const Rat& a) { return a.get_str(); }

} // namespace tgwa
