#include "chordcount/chord_series.hpp"

#include <sstream>
#include <stdexcept>

#include "chordcount/zhukovsky.hpp"

namespace chordcount {

std::string count_mode_name(CountMode m) {
    switch (m) {
        case CountMode::Orientable: return "orientable";
        case CountMode::NonOriented: return "nonoriented";
        case CountMode::NonOrientableOnly: return "nonorientable-only";
    }
    return "?";
}

TSeries ChordEngine::diagonal_resolvent(int g, int l, int b, int k_max) {
    DiffKey key{g, b, l};
    MultiRat body = rec_.compute_diagonal(key);
    int need = b + 2 * k_max;
    int deg = body.num().total_degree();
    for (const auto& [f, m] : body.den()) deg += 2 * m;
    int order = need + deg + 8;
    TSeries z = zhukovsky_inverse(order);
    TSeries dxdz = zhukovsky_dx_dz(z);
    TSeries dzdx = dxdz.reciprocal();
    TSeries w = eval_multirat(body, {z});
    for (int i = 0; i < b; ++i) w = w * dzdx;
    return w.truncate(need);
}

const CtildeSeries& ChordEngine::extract_ctilde(int g, int l, int b, int k_max) {
    auto it = ctilde_.find({g, l, b});
    if (it != ctilde_.end() && static_cast<int>(it->second.coeff.size()) > k_max) return it->second;

    TSeries om = diagonal_resolvent(g, l, b, k_max);
    CtildeSeries out;
    out.g = g;
    out.l = l;
    out.b = b;
    // om = x^{-b} mu^{-(2g-2+b+l)} (-1)^l sum_k c_k (mu x^{-2})^k
    int weight = 2 * g - 2 + b + l;
    for (int e = om.lo(); e < b; ++e)
        if (!om.coeff(e).is_zero())
            throw std::runtime_error("diagonal resolvent has terms below x^-b");
    for (int k = 0; k <= k_max; ++k) {
        if (b + 2 * k - 1 >= b && !om.coeff(b + 2 * k - 1).is_zero())
            throw std::runtime_error("diagonal resolvent violates x-parity");
        ParamPoly c = om.coeff(b + 2 * k);
        Int value = 0;
        if (!c.is_zero()) {
            if (!c.is_monomial())
                throw std::runtime_error("extraction: coefficient is not a single mu power: " +
                                         c.str());
            Exps e = ParamPoly::unpack(c.terms()[0].key);
            if (e[0] != 0) throw std::runtime_error("extraction: leftover sqrt(mu)");
            for (int gi = 2; gi < kNumGens; ++gi)
                if (e[gi] != 0) throw std::runtime_error("extraction: unexpected generator");
            if (e[1] != k - weight) {
                std::ostringstream os;
                os << "extraction: mu power " << e[1] << " != " << (k - weight) << " at k=" << k;
                throw std::runtime_error(os.str());
            }
            Rat q = c.terms()[0].coeff;
            if (l % 2 == 1) q = -q;
            if (q.get_den() != 1 || sgn(q) < 0)
                throw std::runtime_error("extraction: count is not a nonnegative integer: " +
                                         rat_str(q));
            value = q.get_num();
        }
        out.coeff.push_back(value);
    }
    // w^0 coefficient is 1 exactly for the planar one-backbone sector
    bool unit = (g == 0 && l == 0 && b == 1);
    if (out.coeff[0] != (unit ? 1 : 0))
        throw std::runtime_error("extraction: wrong constant term");
    auto [it2, ok] = ctilde_.insert_or_assign(std::make_tuple(g, l, b), std::move(out));
    return it2->second;
}

Int ChordEngine::orientable_count(int g, int b, int k) {
    return extract_ctilde(g, 0, b, k).coeff[k];
}

Int ChordEngine::nonoriented_count(int h, int b, int k) {
    Int total = 0;
    for (int g = 0; 2 * g <= h; ++g)
        total += int_pow(2, g) * extract_ctilde(g, h - 2 * g, b, k).coeff[k];
    return total;
}

Int ChordEngine::nonorientable_only_count(int h, int b, int k) {
    Int r = nonoriented_count(h, b, k);
    if (h % 2 == 0) r -= orientable_count(h / 2, b, k);
    if (sgn(r) < 0) throw std::runtime_error("negative non-orientable count");
    return r;
}

Int ChordEngine::count(CountMode mode, int g_or_h, int b, int k) {
    switch (mode) {
        case CountMode::Orientable: return orientable_count(g_or_h, b, k);
        case CountMode::NonOriented: return nonoriented_count(g_or_h, b, k);
        case CountMode::NonOrientableOnly: return nonorientable_only_count(g_or_h, b, k);
    }
    throw std::logic_error("bad mode");
}

CountTable ChordEngine::table(CountMode mode, int gh_lo, int gh_hi, int b_lo, int b_hi,
                              int k_max) {
    CountTable t;
    t.mode = mode;
    for (int gh = gh_lo; gh <= gh_hi; ++gh)
        for (int b = b_lo; b <= b_hi; ++b)
            for (int k = 0; k <= k_max; ++k) t.entries[{gh, b, k}] = count(mode, gh, b, k);
    return t;
}

}  // namespace chordcount
