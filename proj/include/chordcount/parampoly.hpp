#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chordcount/rat.hpp"

namespace chordcount {

// Coefficient ring for everything: Laurent polynomials over Q in the fixed
// generator alphabet u, mu, e1, e2, hb, gm with the rewrite u^2 = mu kept
// normalized at all times (u-exponent is always 0 or 1; mu, e1, e2, hb may
// carry negative exponents).
enum class Gen : int { U = 0, Mu = 1, Eps1 = 2, Eps2 = 3, Hbar = 4, Gamma = 5 };

constexpr int kNumGens = 6;
extern const char* const kGenNames[kNumGens];

using Exps = std::array<int, kNumGens>;

class ParamPoly {
public:
    using Key = std::uint64_t;  // biased packed exponents, index 0 in the high byte
    struct Term {
        Key key;
        Rat coeff;
    };

    ParamPoly() = default;  // zero

    static ParamPoly constant(const Rat& c);
    static ParamPoly from_int(long n) { return constant(Rat(n)); }
    static ParamPoly one() { return from_int(1); }
    static ParamPoly gen(Gen g, int exp = 1);
    static ParamPoly monomial(const Rat& c, const Exps& e);

    static Key pack(Exps e);  // applies u^2 -> mu
    static Exps unpack(Key k);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;
    std::optional<Rat> as_constant() const;

    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly& operator+=(const ParamPoly& o) { *this = *this + o; return *this; }
    ParamPoly& operator-=(const ParamPoly& o) { *this = *this - o; return *this; }
    ParamPoly& operator*=(const ParamPoly& o) { *this = *this * o; return *this; }
    ParamPoly neg() const;
    ParamPoly scale(const Rat& c) const;
    ParamPoly pow(int n) const;  // n >= 0

    // Defined only for monomials; nullopt otherwise.
    std::optional<ParamPoly> invert_unit() const;
    std::optional<ParamPoly> sqrt_exact() const;

    bool uses_gen(Gen g) const;
    int min_exp(Gen g) const;  // 0 on the zero polynomial
    int max_exp(Gen g) const;
    ParamPoly swap_gens(Gen a, Gen b) const;
    ParamPoly mul_gen_power(Gen g, int e) const;

    const std::vector<Term>& terms() const { return terms_; }

    bool operator==(const ParamPoly& o) const;
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }
    // total order used for canonical sorting of containers of ParamPoly
    int cmp(const ParamPoly& o) const;

    std::string str() const;
    static std::optional<ParamPoly> parse(const std::string& s);

private:
    std::vector<Term> terms_;  // sorted by key ascending, no zero coefficients
    void prune();
    friend class ZPoly;
};

}  // namespace chordcount
