#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chordcount/parampoly.hpp"

namespace chordcount {

// Multivariate polynomial in up to 8 variables z0..z7 with ParamPoly
// coefficients. Exponents are nonnegative and < 256; the packed key puts z0
// in the most significant byte, so key order is lex order with z0 highest.
class ZPoly {
public:
    using Key = std::uint64_t;
    struct Term {
        Key key;
        ParamPoly c;
    };

    ZPoly() : nvars_(0) {}
    explicit ZPoly(int nvars) : nvars_(nvars) {}

    static ZPoly constant(int nvars, ParamPoly c);
    static ZPoly from_int(int nvars, long n) { return constant(nvars, ParamPoly::from_int(n)); }
    static ZPoly var(int nvars, int i, int exp = 1);
    static ZPoly monomial(int nvars, ParamPoly c, const std::vector<int>& exps);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    static Key pack(int nvars, const std::vector<int>& e);
    static std::vector<int> unpack(int nvars, Key k);

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly neg() const;
    ZPoly scale(const ParamPoly& c) const;
    ZPoly scale_rat(const Rat& c) const;
    ZPoly pow(int n) const;

    ZPoly derivative(int var) const;
    int degree(int var) const;     // 0 for the zero polynomial
    int total_degree() const;
    bool uses_var(int var) const;

    // substitute z_var = val (val in {-1,0,+1}); variable becomes unused
    ZPoly subst_value(int var, int val) const;
    // substitute z_var = 1/z_j (j != var): returns Q with
    // this(z) = Q / z_j^second  after the substitution
    std::pair<ZPoly, int> subst_inv(int var, int j) const;
    // varmap[i] = new index of old variable i; merging two old vars into one
    // new index is allowed (exponents add)
    ZPoly remap(const std::vector<int>& varmap, int new_nvars) const;

    std::optional<ZPoly> divide_exact(const ZPoly& f) const;

    bool operator==(const ZPoly& o) const;
    bool operator!=(const ZPoly& o) const { return !(*this == o); }
    int cmp(const ZPoly& o) const;

    std::string str() const;

    void add_term(Key k, ParamPoly c);  // building block; keeps order

private:
    int nvars_;
    std::vector<Term> terms_;  // sorted by key ascending, no zero coefficients
    void normalize();
};

}  // namespace chordcount
