#include "chordcount/zhukovsky.hpp"

#include <cassert>
#include <stdexcept>

namespace chordcount {

namespace {
const ParamPoly kU = ParamPoly::gen(Gen::U);
const ParamPoly kUInv = ParamPoly::gen(Gen::U, -1);  // u/mu after normalization
}  // namespace

TSeries zhukovsky_inverse(int order) {
    assert(order >= 1);
    TSeries lead = TSeries::monomial(kXiVar, kUInv, -1, order);
    TSeries z = lead;
    for (int it = 0; it < order + 2; ++it) z = lead - z.reciprocal().truncate(order);
    return z;
}

TSeries zhukovsky_x(const TSeries& z) { return (z + z.reciprocal()).scale(kU); }

TSeries zhukovsky_dx_dz(const TSeries& z) {
    TSeries one = TSeries::constant(z.var(), ParamPoly::one());
    TSeries iz = z.reciprocal();
    return (one - iz * iz).scale(kU);
}

TSeries eval_zpoly(const ZPoly& p, const std::vector<TSeries>& vals) {
    assert(static_cast<int>(vals.size()) == p.nvars());
    if (p.is_zero()) {
        std::string v = vals.empty() ? "x" : vals[0].var();
        int ord = kExactOrder;
        for (const auto& s : vals) ord = std::min(ord, s.order());
        return TSeries::zero(v, ord);
    }
    // cache powers of each variable's series
    std::vector<std::vector<TSeries>> pw(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) {
        pw[i].push_back(TSeries::constant(vals[i].var(), ParamPoly::one()));
        int d = p.degree(i);
        for (int e = 1; e <= d; ++e) pw[i].push_back(pw[i].back() * vals[i]);
    }
    TSeries acc = TSeries::zero(vals[0].var());
    for (const auto& t : p.terms()) {
        auto e = ZPoly::unpack(p.nvars(), t.key);
        TSeries m = TSeries::constant(vals[0].var(), t.c);
        for (int i = 0; i < p.nvars(); ++i)
            if (e[i] > 0) m = m * pw[i][e[i]];
        acc = acc + m;
    }
    return acc;
}

TSeries eval_multirat(const MultiRat& f, const std::vector<TSeries>& vals) {
    TSeries num = eval_zpoly(f.num(), vals);
    TSeries r = num;
    for (const auto& [fac, m] : f.den()) {
        TSeries fs = eval_zpoly(fac.to_poly(f.nvars()), vals);
        TSeries inv = fs.reciprocal();
        for (int k = 0; k < m; ++k) r = r * inv;
    }
    return r;
}

TSeries laurent_expand_at_zero(const MultiRat& f, const std::string& var_name, int order) {
    if (f.nvars() != 1) throw std::runtime_error("laurent_expand: univariate input required");
    std::vector<TSeries> vals{TSeries::monomial(var_name, ParamPoly::one(), 1, order)};
    return eval_multirat(f, vals);
}

TSeries laurent_expand_at_infinity(const MultiRat& f, int order) {
    if (f.nvars() != 1) throw std::runtime_error("laurent_expand: univariate input required");
    std::vector<TSeries> vals{TSeries::monomial(kXiVar, ParamPoly::one(), -1, order)};
    return eval_multirat(f, vals);
}

}  // namespace chordcount
