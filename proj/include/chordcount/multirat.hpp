#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chordcount/zpoly.hpp"

namespace chordcount {

// Denominator alphabet for the rational functions appearing on the Gaussian
// curve in the Zhukovsky variable: z_i, z_i-1, z_i+1, z_i*z_j-1, z_i-z_j.
// Any rational function built by the recursion stays inside this alphabet;
// a factor outside it is a bug and is rejected at construction.
struct Factor {
    enum class Kind : int { Var = 0, VarM1 = 1, VarP1 = 2, Prod = 3, Diff = 4 };
    Kind kind;
    int i = -1;
    int j = -1;  // only for Prod/Diff, canonical i < j

    static Factor var(int i) { return {Kind::Var, i, -1}; }
    static Factor var_m1(int i) { return {Kind::VarM1, i, -1}; }
    static Factor var_p1(int i) { return {Kind::VarP1, i, -1}; }
    static Factor prod(int i, int j);  // z_i z_j - 1
    static Factor diff(int i, int j);  // z_i - z_j, requires i < j

    bool involves(int var) const { return i == var || j == var; }
    int other(int var) const { return i == var ? j : i; }
    ZPoly to_poly(int nvars) const;
    // d/d z_var as a polynomial (0 if the factor does not involve var)
    ZPoly derivative(int var, int nvars) const;
    std::string str() const;

    auto operator<=>(const Factor&) const = default;
};

struct Pole {
    enum class Kind : int { Zero, One, MinusOne, InvVar, AtVar };
    Kind kind;
    int j = -1;  // InvVar: pole at z_var = 1/z_j ; AtVar: pole at z_var = z_j

    static Pole zero() { return {Kind::Zero, -1}; }
    static Pole one() { return {Kind::One, -1}; }
    static Pole minus_one() { return {Kind::MinusOne, -1}; }
    static Pole inv(int j) { return {Kind::InvVar, j}; }
    static Pole at(int j) { return {Kind::AtVar, j}; }
};

class MultiRat {
public:
    MultiRat() : nvars_(0), num_(0) {}
    explicit MultiRat(int nvars) : nvars_(nvars), num_(nvars) {}
    MultiRat(ZPoly num, std::map<Factor, int> den);

    static MultiRat from_poly(ZPoly p) { return MultiRat(std::move(p), {}); }
    static MultiRat constant(int nvars, ParamPoly c) {
        return from_poly(ZPoly::constant(nvars, std::move(c)));
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return num_.is_zero(); }
    const ZPoly& num() const { return num_; }
    const std::map<Factor, int>& den() const { return den_; }
    ZPoly den_poly() const;

    MultiRat operator+(const MultiRat& o) const;
    MultiRat operator-(const MultiRat& o) const;
    MultiRat operator*(const MultiRat& o) const;
    MultiRat neg() const;
    MultiRat scale(const ParamPoly& c) const;
    MultiRat scale_rat(const Rat& c) const;
    MultiRat mul_den(const Factor& f, int mult) const;  // divide by f^mult

    MultiRat derivative(int var) const;

    // substitute z_var := val in {-1,0,+1}; throws if a denominator factor
    // vanishes at the point
    MultiRat subst_value(int var, int val) const;
    // substitute z_var := 1/z_j; throws if Prod(var,j) is still present
    MultiRat subst_inv(int var, int j) const;
    // substitute z_var := z_j; throws if Diff over {var,j} is still present
    MultiRat subst_var(int var, int j) const;
    MultiRat remap(const std::vector<int>& varmap, int new_nvars) const;
    // simultaneous z_i -> -z_i for all variables
    MultiRat flip_all_signs() const;

    // order of the pole at the given point of z_var (0 if regular there)
    int pole_order(int var, const Pole& p) const;
    // residue of *this dz_var at the pole; exact
    MultiRat residue(int var, const Pole& p) const;

    bool uses_var(int var) const;
    // drop an unused variable slot, shifting higher indices down
    MultiRat drop_var(int var) const;

    bool operator==(const MultiRat& o) const;
    bool operator!=(const MultiRat& o) const { return !(*this == o); }

    std::string str() const;

private:
    int nvars_;
    ZPoly num_;
    std::map<Factor, int> den_;  // factor -> multiplicity >= 1

    void reduce();
    static Factor pole_factor(int var, const Pole& p);
};

// Parses a denominator polynomial into alphabet factors by trial division.
// Returns nullopt (with diagnostic text in *msg) if a non-alphabet factor
// remains.
std::optional<std::map<Factor, int>> factor_denominator(const ZPoly& den, ZPoly* leftover,
                                                        std::string* msg);

// Builds num/den as a MultiRat, factoring den over the alphabet; the leftover
// constant must be an invertible ParamPoly monomial.
std::optional<MultiRat> make_ratfunc(const ZPoly& num, const ZPoly& den, std::string* msg);

// residue at infinity of f dz_var: -Res_{w=0} f(1/w)/w^2
MultiRat residue_at_infinity(const MultiRat& f, int var);

}  // namespace chordcount
