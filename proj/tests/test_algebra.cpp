#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "chordcount/multirat.hpp"
#include "chordcount/serialize.hpp"
#include "chordcount/zhukovsky.hpp"

using namespace chordcount;

namespace {

std::mt19937 rng(20240811);

Rat rand_rat() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return rat(num(rng), den(rng));
}

ParamPoly rand_pp() {
    std::uniform_int_distribution<int> nterms(1, 4), ex(-2, 2), exu(0, 3);
    ParamPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exps e{};
        e[0] = exu(rng);
        for (int g = 1; g < kNumGens; ++g) e[g] = ex(rng);
        p = p + ParamPoly::monomial(rand_rat(), e);
    }
    return p;
}

}  // namespace

TEST_CASE("rational invariants") {
    Rat a = rat(2, 4);
    CHECK(a.get_num() == 1);
    CHECK(a.get_den() == 2);
    // same value from different representations
    CHECK(rat(1, 3) + rat(2, 6) == rat(4, 6));
    CHECK(rat(-6, -4) == rat(3, 2));
    CHECK(double_factorial_odd(4) == 105);
    CHECK(factorial(6) == 720);
}

TEST_CASE("parampoly normalization u^2 = mu") {
    ParamPoly u = ParamPoly::gen(Gen::U);
    ParamPoly mu = ParamPoly::gen(Gen::Mu);
    CHECK(u * u == mu);
    CHECK(u * u * u == u * mu);
    // u^-1 = u/mu
    auto iu = u.invert_unit();
    REQUIRE(iu.has_value());
    CHECK(*iu * u == ParamPoly::one());
    CHECK(iu->max_exp(Gen::U) == 1);
    CHECK(iu->min_exp(Gen::Mu) == -1);
    // sqrt of monomials
    auto s = (mu.scale(4)).sqrt_exact();
    REQUIRE(s.has_value());
    CHECK(*s * *s == mu.scale(4));
    CHECK(s->uses_gen(Gen::U));
}

TEST_CASE("parampoly ring axioms on random triples") {
    for (int it = 0; it < 50; ++it) {
        ParamPoly a = rand_pp(), b = rand_pp(), c = rand_pp();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("parampoly serialization round-trip") {
    for (int it = 0; it < 30; ++it) {
        ParamPoly p = rand_pp();
        auto q = ParamPoly::parse(p.str());
        REQUIRE(q.has_value());
        CHECK(*q == p);
        CHECK(q->str() == p.str());
    }
    CHECK(ParamPoly::parse("0")->is_zero());
}

TEST_CASE("residue: simple pole") {
    // f = 1/(zeta-1), residue at 1 is 1
    int n = 1;
    MultiRat f(ZPoly::from_int(n, 1), {{Factor::var_m1(0), 1}});
    MultiRat r = f.residue(0, Pole::one());
    CHECK(r == MultiRat::constant(1, ParamPoly::one()));
}

TEST_CASE("residue: 1/(zeta^2-1)") {
    int n = 1;
    MultiRat f(ZPoly::from_int(n, 1), {{Factor::var_m1(0), 1}, {Factor::var_p1(0), 1}});
    MultiRat rp = f.residue(0, Pole::one());
    MultiRat rm = f.residue(0, Pole::minus_one());
    CHECK(rp == MultiRat::constant(1, ParamPoly::constant(rat(1, 2))));
    CHECK(rm == MultiRat::constant(1, ParamPoly::constant(rat(-1, 2))));
    CHECK((rp + rm).is_zero());
    CHECK(residue_at_infinity(f, 0).is_zero());
}

TEST_CASE("residue: outside-variable pole at 1/z") {
    // f = zeta/((zeta^2-1)(zeta z - 1)), var0 = z, var1 = zeta
    int n = 2;
    ZPoly num = ZPoly::var(n, 1);
    MultiRat f(num, {{Factor::var_m1(1), 1}, {Factor::var_p1(1), 1}, {Factor::prod(0, 1), 1}});
    MultiRat r = f.residue(1, Pole::inv(0));
    // expected 1/(1-z^2) = -1/((z-1)(z+1))
    MultiRat expected(ZPoly::from_int(n, -1), {{Factor::var_m1(0), 1}, {Factor::var_p1(0), 1}});
    CHECK(r == expected);
}

TEST_CASE("residue sum over all poles vanishes") {
    // random rational functions of zeta (var 1) with a parameter z (var 0)
    std::uniform_int_distribution<int> mult(0, 2), deg(0, 4), coeff(-5, 5);
    int checked = 0;
    for (int it = 0; it < 100; ++it) {
        int n = 2;
        std::map<Factor, int> den;
        std::vector<Factor> cands = {Factor::var(1), Factor::var_m1(1), Factor::var_p1(1),
                                     Factor::prod(0, 1), Factor::diff(0, 1)};
        for (const auto& f : cands) {
            int m = mult(rng);
            if (m > 0) den[f] = m;
        }
        ZPoly num(n);
        int d = deg(rng);
        for (int k = 0; k <= d; ++k) {
            int c = coeff(rng);
            if (c != 0) num = num + ZPoly::monomial(n, ParamPoly::from_int(c), {0, k});
        }
        if (num.is_zero()) num = ZPoly::from_int(n, 1);
        MultiRat f(num, den);
        MultiRat total(n);
        for (const Pole& p :
             {Pole::zero(), Pole::one(), Pole::minus_one(), Pole::inv(0), Pole::at(0)})
            total = total + f.residue(1, p);
        total = total + residue_at_infinity(f, 1);
        CHECK(total.is_zero());
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("canonicalization is idempotent and cancels") {
    // (z-1)^2 (z+1) / ((z-1) (z+1)^2) reduces to (z-1)/(z+1)
    int n = 1;
    ZPoly zm1 = Factor::var_m1(0).to_poly(n), zp1 = Factor::var_p1(0).to_poly(n);
    MultiRat f(zm1 * zm1 * zp1, {{Factor::var_m1(0), 1}, {Factor::var_p1(0), 2}});
    MultiRat g(zm1, {{Factor::var_p1(0), 1}});
    CHECK(f == g);
    std::string s1 = serialize_multirat(f);
    auto back = parse_multirat_str(s1);
    REQUIRE(back.has_value());
    CHECK(serialize_multirat(*back) == s1);
}

TEST_CASE("denominator factoring diagnostics") {
    // zeta^2 - 2 is outside the alphabet
    int n = 1;
    ZPoly bad = ZPoly::var(n, 0, 2) - ZPoly::from_int(n, 2);
    std::string msg;
    auto f = make_ratfunc(ZPoly::from_int(n, 1), bad, &msg);
    CHECK(!f.has_value());
    CHECK(msg.find("outside the supported alphabet") != std::string::npos);
    // (zeta-1)*(zeta z -1) is fine
    ZPoly good = Factor::var_m1(0).to_poly(2).remap({0, 1}, 2) * Factor::prod(0, 1).to_poly(2);
    auto g = make_ratfunc(ZPoly::from_int(2, 3), good, &msg);
    REQUIRE(g.has_value());
    CHECK(g->den().size() == 2);
}

TEST_CASE("parity and permutation transforms") {
    // body of the two-point seed 1/(z0 z1 - 1)^2 is symmetric and even
    MultiRat w(ZPoly::from_int(2, 1), {{Factor::prod(0, 1), 2}});
    CHECK(w.remap({1, 0}, 2) == w);
    CHECK(w.flip_all_signs() == w);
    // 1/(z0 - z1) is antisymmetric
    MultiRat d(ZPoly::from_int(2, 1), {{Factor::diff(0, 1), 1}});
    CHECK(d.remap({1, 0}, 2) == d.neg());
    CHECK(d.flip_all_signs() == d.neg());
}

TEST_CASE("laurent expansion examples") {
    // 1/(1-4w) at w=0: geometric series 1,4,16,64
    int n = 1;
    ZPoly den = ZPoly::from_int(n, 1) - ZPoly::var(n, 0).scale_rat(4);
    // 1-4w is outside the factor alphabet, so expand directly via series
    TSeries w = TSeries::monomial("w", ParamPoly::one(), 1, 3);
    TSeries s = eval_zpoly(den, {w}).reciprocal();
    CHECK(s.coeff(0) == ParamPoly::from_int(1));
    CHECK(s.coeff(1) == ParamPoly::from_int(4));
    CHECK(s.coeff(2) == ParamPoly::from_int(16));
    CHECK(s.coeff(3) == ParamPoly::from_int(64));
    // w/(1-4w)^2 order 3: w + 8w^2 + 48w^3
    TSeries s2 = (w * s * s).truncate(3);
    CHECK(s2.coeff(1) == ParamPoly::from_int(1));
    CHECK(s2.coeff(2) == ParamPoly::from_int(8));
    CHECK(s2.coeff(3) == ParamPoly::from_int(48));
    // rational expansion at infinity: 1/(z-1) = xi + xi^2 + ...
    MultiRat f(ZPoly::from_int(1, 1), {{Factor::var_m1(0), 1}});
    TSeries t = laurent_expand_at_infinity(f, 4);
    for (int k = 1; k <= 4; ++k) CHECK(t.coeff(k) == ParamPoly::one());
}

TEST_CASE("series round-trip") {
    TSeries s("t", 9);
    s.set_coeff(-1, ParamPoly::gen(Gen::Mu, -1));
    s.set_coeff(2, rand_pp());
    s.set_coeff(7, rand_pp());
    auto txt = serialize_series(s);
    auto back = parse_series_str(txt);
    REQUIRE(back.has_value());
    CHECK(serialize_series(*back) == txt);
    CHECK(*back == s);
}
