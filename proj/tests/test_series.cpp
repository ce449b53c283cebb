#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chordcount/serialize.hpp"
#include "chordcount/zhukovsky.hpp"

using namespace chordcount;

namespace {

// independent oracle: coefficients of sqrt(1-4w) by the binomial product
// formula, no series machinery involved
std::vector<Rat> sqrt_one_minus_4w(int order) {
    std::vector<Rat> c(order + 1);
    Rat binom = 1;  // binomial(1/2, k) accumulated
    for (int k = 0; k <= order; ++k) {
        if (k > 0) binom *= rat(3, 2 * k) - 1;  // (1/2 - (k-1))/k
        c[k] = binom * rat_pow(rat(-4), k);
    }
    return c;
}

Rat catalan(int k) { return Rat(binom(2 * k, k)) / (k + 1); }

}  // namespace

TEST_CASE("zhukovsky inverse matches the closed form") {
    TSeries z = zhukovsky_inverse(5);
    ParamPoly u = ParamPoly::gen(Gen::U);
    CHECK(z.coeff(-1) == *u.invert_unit());
    CHECK(z.coeff(0).is_zero());
    CHECK(z.coeff(1) == u.neg());
    CHECK(z.coeff(3) == (u * ParamPoly::gen(Gen::Mu)).neg());
    CHECK(z.coeff(5) == (u * ParamPoly::gen(Gen::Mu, 2)).scale(-2));
}

TEST_CASE("x(z(x)) is the identity through the truncation order") {
    for (int order : {4, 9}) {
        TSeries z = zhukovsky_inverse(order);
        TSeries x = zhukovsky_x(z);
        CHECK(x.coeff(-1) == ParamPoly::one());
        for (int k = 0; k <= x.order(); ++k) CHECK(x.coeff(k).is_zero());
        CHECK(x.order() >= order - 1);
    }
}

TEST_CASE("sqrt(x^2-4mu) reproduces Catalan numbers (binomial oracle)") {
    // sqrt(1-4w) via the series engine vs the independent binomial loop
    int order = 10;
    TSeries w = TSeries::monomial("w", ParamPoly::one(), 1, order);
    TSeries s = (TSeries::constant("w", ParamPoly::one()) - w.scale_rat(4)).truncate(order).sqrt();
    auto oracle = sqrt_one_minus_4w(order);
    for (int k = 0; k <= order; ++k)
        CHECK(s.coeff(k) == ParamPoly::constant(oracle[k]));
    // (1 - sqrt(1-4w))/(2w): Catalan generating function
    TSeries cat =
        ((TSeries::constant("w", ParamPoly::one()) - s) * w.reciprocal()).scale_rat(rat(1, 2));
    for (int k = 0; k <= order - 1; ++k) CHECK(cat.coeff(k) == ParamPoly::constant(catalan(k)));
}

TEST_CASE("series composition") {
    // f(v) = 1/(1-v) composed with v = 4w gives the geometric series in 4w
    int order = 6;
    TSeries v = TSeries::monomial("v", ParamPoly::one(), 1, order);
    TSeries f = (TSeries::constant("v", ParamPoly::one()) - v).truncate(order).reciprocal();
    TSeries g = TSeries::monomial("w", ParamPoly::constant(4), 1, order);
    TSeries fg = f.compose(g);
    for (int k = 0; k <= order; ++k)
        CHECK(fg.coeff(k) == ParamPoly::constant(rat_pow(rat(4), k)));
}

TEST_CASE("log1p and derivative with a log term") {
    int order = 8;
    TSeries w = TSeries::monomial("w", ParamPoly::one(), 1, order);
    TSeries l = TSeries::log1p(w.neg());  // log(1-w) = -sum w^k/k
    for (int k = 1; k <= order; ++k) CHECK(l.coeff(k) == ParamPoly::constant(rat(-1, k)));
    // d/dx (c log x + x^2) = c/x + 2x
    TSeries s("x", 5);
    s.set_log_coeff(ParamPoly::gen(Gen::Mu));
    s.set_coeff(2, ParamPoly::one());
    TSeries d = s.derivative();
    CHECK(d.coeff(-1) == ParamPoly::gen(Gen::Mu));
    CHECK(d.coeff(1) == ParamPoly::constant(2));
}

TEST_CASE("product truncation takes the minimum order") {
    TSeries a = TSeries::monomial("w", ParamPoly::one(), 0, 3);
    TSeries b = TSeries::monomial("w", ParamPoly::one(), 0, 7);
    CHECK((a * b).order() == 3);
    CHECK((a + b).order() == 3);
}
