#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace chordcount {

using Int = mpz_class;
using Rat = mpq_class;  // always canonical: gcd(num,den)=1, den>0

inline Rat rat(long n, long d = 1) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Rat rat_pow(const Rat& b, int e) {
    Rat r = 1;
    Rat base = e >= 0 ? b : Rat(1) / b;
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
    return r;
}

inline std::optional<Rat> rat_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    Int n = q.get_num(), d = q.get_den();
    Int sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rat(sn, sd);
}

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// (2k-1)!! = 1*3*5*...*(2k-1), the number of perfect matchings on 2k points
inline Int double_factorial_odd(int k) {
    Int r = 1;
    for (int i = 3; i <= 2 * k - 1; i += 2) r *= i;
    return r;
}

inline Int int_pow(Int b, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline Int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
    return r;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline std::optional<Rat> rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

}  // namespace chordcount
