#include "chordcount/multirat.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace chordcount {

Factor Factor::prod(int i, int j) {
    assert(i != j);
    if (i > j) std::swap(i, j);
    return {Kind::Prod, i, j};
}

Factor Factor::diff(int i, int j) {
    assert(i < j);
    return {Kind::Diff, i, j};
}

ZPoly Factor::to_poly(int nvars) const {
    switch (kind) {
        case Kind::Var:
            return ZPoly::var(nvars, i);
        case Kind::VarM1:
            return ZPoly::var(nvars, i) - ZPoly::from_int(nvars, 1);
        case Kind::VarP1:
            return ZPoly::var(nvars, i) + ZPoly::from_int(nvars, 1);
        case Kind::Prod:
            return ZPoly::var(nvars, i) * ZPoly::var(nvars, j) - ZPoly::from_int(nvars, 1);
        case Kind::Diff:
            return ZPoly::var(nvars, i) - ZPoly::var(nvars, j);
    }
    throw std::logic_error("bad factor kind");
}

ZPoly Factor::derivative(int var, int nvars) const {
    if (!involves(var)) return ZPoly(nvars);
    switch (kind) {
        case Kind::Var:
        case Kind::VarM1:
        case Kind::VarP1:
            return ZPoly::from_int(nvars, 1);
        case Kind::Prod:
            return ZPoly::var(nvars, other(var));
        case Kind::Diff:
            return var == i ? ZPoly::from_int(nvars, 1) : ZPoly::from_int(nvars, -1);
    }
    throw std::logic_error("bad factor kind");
}

std::string Factor::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Var: os << "z" << i; break;
        case Kind::VarM1: os << "z" << i << "-1"; break;
        case Kind::VarP1: os << "z" << i << "+1"; break;
        case Kind::Prod: os << "z" << i << "*z" << j << "-1"; break;
        case Kind::Diff: os << "z" << i << "-z" << j; break;
    }
    return os.str();
}

MultiRat::MultiRat(ZPoly num, std::map<Factor, int> den)
    : nvars_(num.nvars()), num_(std::move(num)), den_(std::move(den)) {
    for (auto it = den_.begin(); it != den_.end();) {
        assert(it->second >= 0);
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    reduce();
}

ZPoly MultiRat::den_poly() const {
    ZPoly d = ZPoly::from_int(nvars_, 1);
    for (const auto& [f, m] : den_) d = d * f.to_poly(nvars_).pow(m);
    return d;
}

void MultiRat::reduce() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        ZPoly fp = it->first.to_poly(nvars_);
        while (it->second > 0) {
            auto q = num_.divide_exact(fp);
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
}

MultiRat MultiRat::operator+(const MultiRat& o) const {
    assert(nvars_ == o.nvars_);
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::map<Factor, int> den;
    for (const auto& [f, m] : den_) den[f] = m;
    for (const auto& [f, m] : o.den_) den[f] = std::max(den[f], m);
    ZPoly a = num_, b = o.num_;
    for (const auto& [f, m] : den) {
        auto ita = den_.find(f);
        int ma = ita == den_.end() ? 0 : ita->second;
        auto itb = o.den_.find(f);
        int mb = itb == o.den_.end() ? 0 : itb->second;
        if (m > ma) a = a * f.to_poly(nvars_).pow(m - ma);
        if (m > mb) b = b * f.to_poly(nvars_).pow(m - mb);
    }
    return MultiRat(a + b, std::move(den));
}

MultiRat MultiRat::neg() const {
    MultiRat r = *this;
    r.num_ = r.num_.neg();
    return r;
}

MultiRat MultiRat::operator-(const MultiRat& o) const { return *this + o.neg(); }

MultiRat MultiRat::operator*(const MultiRat& o) const {
    assert(nvars_ == o.nvars_);
    if (is_zero() || o.is_zero()) return MultiRat(nvars_);
    std::map<Factor, int> den = den_;
    for (const auto& [f, m] : o.den_) den[f] += m;
    return MultiRat(num_ * o.num_, std::move(den));
}

MultiRat MultiRat::scale(const ParamPoly& c) const {
    MultiRat r = *this;
    r.num_ = r.num_.scale(c);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

MultiRat MultiRat::scale_rat(const Rat& c) const {
    MultiRat r = *this;
    r.num_ = r.num_.scale_rat(c);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
}

MultiRat MultiRat::mul_den(const Factor& f, int mult) const {
    std::map<Factor, int> den = den_;
    den[f] += mult;
    return MultiRat(num_, std::move(den));
}

MultiRat MultiRat::derivative(int var) const {
    // d(N / prod f^m) = [ N' F - N sum_i m_i f_i' F/f_i ] / (prod f^{m+1} over
    // var-factors), where F is the product of var-involving factors.
    std::vector<std::pair<Factor, int>> vf;
    for (const auto& [f, m] : den_)
        if (f.involves(var)) vf.push_back({f, m});
    ZPoly t1 = num_.derivative(var);
    for (const auto& [f, m] : vf) t1 = t1 * f.to_poly(nvars_);
    ZPoly t2(nvars_);
    for (size_t i = 0; i < vf.size(); ++i) {
        ZPoly piece = num_.scale_rat(Rat(vf[i].second)) * vf[i].first.derivative(var, nvars_);
        for (size_t k = 0; k < vf.size(); ++k)
            if (k != i) piece = piece * vf[k].first.to_poly(nvars_);
        t2 = t2 + piece;
    }
    std::map<Factor, int> den = den_;
    for (const auto& [f, m] : vf) den[f] = m + 1;
    return MultiRat(t1 - t2, std::move(den));
}

namespace {

struct SubstResult {
    std::optional<Factor> factor;  // replacement factor (nullopt = unit)
    Rat unit = 1;                  // rational multiplier of the factor value
    int tpow = 0;                  // power of z_t divided out (for inv substitution)
    bool vanishes = false;
};

SubstResult subst_factor_value(const Factor& f, int var, int val) {
    SubstResult r;
    if (!f.involves(var)) {
        r.factor = f;
        return r;
    }
    switch (f.kind) {
        case Factor::Kind::Var:
            if (val == 0) { r.vanishes = true; return r; }
            r.unit = val;
            return r;
        case Factor::Kind::VarM1:
            if (val == 1) { r.vanishes = true; return r; }
            r.unit = val - 1;
            return r;
        case Factor::Kind::VarP1:
            if (val == -1) { r.vanishes = true; return r; }
            r.unit = val + 1;
            return r;
        case Factor::Kind::Prod: {
            int o = f.other(var);
            if (val == 0) { r.unit = -1; return r; }           // -1
            if (val == 1) { r.factor = Factor::var_m1(o); return r; }   // z_o - 1
            r.factor = Factor::var_p1(o);                      // -z_o-1 = -(z_o+1)
            r.unit = -1;
            return r;
        }
        case Factor::Kind::Diff: {
            int o = f.other(var);
            Rat s = (var == f.i) ? 1 : -1;  // f = s*(z_var - z_o)
            if (val == 0) { r.factor = Factor::var(o); r.unit = -s; return r; }
            if (val == 1) { r.factor = Factor::var_m1(o); r.unit = -s; return r; }
            r.factor = Factor::var_p1(o);  // -1 - z_o = -(z_o+1)
            r.unit = -s;
            return r;
        }
    }
    throw std::logic_error("bad factor kind");
}

// value of f at z_var = 1/z_t, expressed as unit * g / z_t^tpow
SubstResult subst_factor_inv(const Factor& f, int var, int t) {
    SubstResult r;
    if (!f.involves(var)) {
        r.factor = f;
        return r;
    }
    r.tpow = 1;
    switch (f.kind) {
        case Factor::Kind::Var:
            return r;  // 1/z_t
        case Factor::Kind::VarM1:
            r.factor = Factor::var_m1(t);
            r.unit = -1;  // (1-z_t)/z_t
            return r;
        case Factor::Kind::VarP1:
            r.factor = Factor::var_p1(t);
            return r;
        case Factor::Kind::Prod: {
            int o = f.other(var);
            if (o == t) { r.vanishes = true; return r; }
            // (z_o - z_t)/z_t
            if (o < t) {
                r.factor = Factor::diff(o, t);
            } else {
                r.factor = Factor::diff(t, o);
                r.unit = -1;
            }
            return r;
        }
        case Factor::Kind::Diff: {
            int o = f.other(var);
            Rat s = (var == f.i) ? 1 : -1;  // f = s*(z_var - z_o)
            if (o == t) {
                // s*(1 - z_t^2)/z_t = -s (z_t-1)(z_t+1)/z_t ; caller splits
                r.factor = std::nullopt;
                r.unit = -s;
                r.tpow = 1;
                // signal the split with kind Diff & o==t handled by caller
                return r;
            }
            // s*(1 - z_t z_o)/z_t = -s (z_t z_o - 1)/z_t
            r.factor = Factor::prod(std::min(t, o), std::max(t, o));
            r.unit = -s;
            return r;
        }
    }
    throw std::logic_error("bad factor kind");
}

}  // namespace

MultiRat MultiRat::subst_value(int var, int val) const {
    ZPoly num = num_.subst_value(var, val);
    std::map<Factor, int> den;
    Rat unit = 1;
    for (const auto& [f, m] : den_) {
        SubstResult s = subst_factor_value(f, var, val);
        if (s.vanishes) throw std::runtime_error("subst_value hits a pole: " + f.str());
        if (s.factor) den[*s.factor] += m;
        unit *= rat_pow(s.unit, m);
    }
    return MultiRat(num.scale_rat(Rat(1) / unit), std::move(den));
}

MultiRat MultiRat::subst_inv(int var, int t) const {
    auto [num, dpow] = num_.subst_inv(var, t);
    std::map<Factor, int> den;
    Rat unit = 1;
    // Substituting z_var = 1/z_t maps the numerator to Q/z_t^dpow and each
    // denominator factor to unit*g/z_t^p; track the net z_t power carried by
    // the numerator of the combined fraction.
    int tpow = -dpow;
    for (const auto& [f, m] : den_) {
        if (f.kind == Factor::Kind::Diff && f.involves(var) && f.other(var) == t) {
            // s*(1/z_t - z_t) = -s (z_t-1)(z_t+1)/z_t
            Rat s = (var == f.i) ? 1 : -1;
            den[Factor::var_m1(t)] += m;
            den[Factor::var_p1(t)] += m;
            unit *= rat_pow(-s, m);
            tpow += m;
            continue;
        }
        SubstResult s = subst_factor_inv(f, var, t);
        if (s.vanishes) throw std::runtime_error("subst_inv hits a pole: " + f.str());
        if (s.factor) den[*s.factor] += m;
        unit *= rat_pow(s.unit, m);
        tpow += s.tpow * m;
    }
    if (tpow < 0) {
        den[Factor::var(t)] += -tpow;
    } else if (tpow > 0) {
        auto e = std::vector<int>(nvars_, 0);
        e[t] = tpow;
        num = num * ZPoly::monomial(nvars_, ParamPoly::one(), e);
    }
    return MultiRat(num.scale_rat(Rat(1) / unit), std::move(den));
}

MultiRat MultiRat::subst_var(int var, int t) const {
    assert(var != t);
    std::vector<int> map(nvars_);
    for (int i = 0; i < nvars_; ++i) map[i] = i;
    map[var] = t;
    return remap(map, nvars_);
}

MultiRat MultiRat::remap(const std::vector<int>& varmap, int new_nvars) const {
    ZPoly num = num_.remap(varmap, new_nvars);
    std::map<Factor, int> den;
    Rat unit = 1;
    for (const auto& [f, m] : den_) {
        Factor g = f;
        g.i = varmap[f.i];
        if (f.j >= 0) g.j = varmap[f.j];
        switch (g.kind) {
            case Factor::Kind::Prod:
                if (g.i == g.j) {  // z^2 - 1
                    den[Factor::var_m1(g.i)] += m;
                    den[Factor::var_p1(g.i)] += m;
                    continue;
                }
                if (g.i > g.j) std::swap(g.i, g.j);
                break;
            case Factor::Kind::Diff:
                if (g.i == g.j) throw std::runtime_error("remap collapses a difference factor");
                if (g.i > g.j) {
                    std::swap(g.i, g.j);
                    unit *= rat_pow(-1, m);
                }
                break;
            default:
                break;
        }
        den[g] += m;
    }
    return MultiRat(num.scale_rat(Rat(1) / unit), std::move(den));
}

MultiRat MultiRat::flip_all_signs() const {
    ZPoly even(nvars_), odd(nvars_);
    for (const auto& t : num_.terms()) {
        auto e = ZPoly::unpack(nvars_, t.key);
        int s = 0;
        for (int x : e) s += x;
        (s % 2 == 0 ? even : odd).add_term(t.key, t.c);
    }
    ZPoly num = even - odd;
    std::map<Factor, int> den;
    Rat unit = 1;
    for (const auto& [f, m] : den_) {
        switch (f.kind) {
            case Factor::Kind::Var:
                den[f] += m;
                unit *= rat_pow(-1, m);
                break;
            case Factor::Kind::VarM1:
                den[Factor::var_p1(f.i)] += m;
                unit *= rat_pow(-1, m);
                break;
            case Factor::Kind::VarP1:
                den[Factor::var_m1(f.i)] += m;
                unit *= rat_pow(-1, m);
                break;
            case Factor::Kind::Prod:
                den[f] += m;
                break;
            case Factor::Kind::Diff:
                den[f] += m;
                unit *= rat_pow(-1, m);
                break;
        }
    }
    return MultiRat(num.scale_rat(Rat(1) / unit), std::move(den));
}

Factor MultiRat::pole_factor(int var, const Pole& p) {
    switch (p.kind) {
        case Pole::Kind::Zero: return Factor::var(var);
        case Pole::Kind::One: return Factor::var_m1(var);
        case Pole::Kind::MinusOne: return Factor::var_p1(var);
        case Pole::Kind::InvVar: return Factor::prod(std::min(var, p.j), std::max(var, p.j));
        case Pole::Kind::AtVar: return Factor::diff(std::min(var, p.j), std::max(var, p.j));
    }
    throw std::logic_error("bad pole kind");
}

int MultiRat::pole_order(int var, const Pole& p) const {
    auto it = den_.find(pole_factor(var, p));
    return it == den_.end() ? 0 : it->second;
}

MultiRat MultiRat::residue(int var, const Pole& p) const {
    // Local expansion at the pole: with f = alpha (z_var - p) the vanishing
    // factor of order m, write z_var = p + t and read off the coefficient of
    // t^{m-1} in (this * f^m) as a truncated series in t. Coefficients are
    // small reduced rational functions throughout; no symbolic derivatives.
    Factor pf = pole_factor(var, p);
    auto it = den_.find(pf);
    if (it == den_.end()) return MultiRat(nvars_);
    const int m = it->second;

    // numerator Taylor coefficients N_k (k < m), possibly times z_j^{-D}
    std::vector<ZPoly> nk(m, ZPoly(nvars_));
    int zj_den_pow = 0;
    const int D = num_.degree(var);
    for (const auto& t : num_.terms()) {
        auto e = ZPoly::unpack(nvars_, t.key);
        int d = e[var];
        e[var] = 0;
        switch (p.kind) {
            case Pole::Kind::Zero:
                if (d < m) nk[d].add_term(ZPoly::pack(nvars_, e), t.c);
                break;
            case Pole::Kind::One:
            case Pole::Kind::MinusOne: {
                int sign = p.kind == Pole::Kind::One ? 1 : -1;
                for (int k = 0; k <= std::min(d, m - 1); ++k) {
                    Rat c = Rat(binom(d, k));
                    if (sign < 0 && (d - k) % 2 == 1) c = -c;
                    nk[k].add_term(ZPoly::pack(nvars_, e), t.c.scale(c));
                }
                break;
            }
            case Pole::Kind::InvVar:
                for (int k = 0; k <= std::min(d, m - 1); ++k) {
                    auto ee = e;
                    ee[p.j] += D - d + k;  // z_j^{k-d}, homogenized by z_j^D
                    nk[k].add_term(ZPoly::pack(nvars_, ee), t.c.scale(Rat(binom(d, k))));
                }
                break;
            case Pole::Kind::AtVar:
                for (int k = 0; k <= std::min(d, m - 1); ++k) {
                    auto ee = e;
                    ee[p.j] += d - k;
                    nk[k].add_term(ZPoly::pack(nvars_, ee), t.c.scale(Rat(binom(d, k))));
                }
                break;
        }
    }
    if (p.kind == Pole::Kind::InvVar) zj_den_pow = D;

    std::vector<MultiRat> series(m, MultiRat(nvars_));
    for (int k = 0; k < m; ++k) series[k] = MultiRat::from_poly(nk[k]);

    // fold in each remaining denominator factor: f(p+t) = f0 + f1 t with
    // 1/(f0+f1 t)^mf = sum_k binom(mf+k-1,k) (-f1)^k / f0^{mf+k} t^k
    for (const auto& [f, mf] : den_) {
        if (f == pf) continue;
        if (!f.involves(var)) {
            for (auto& s : series) s = s.mul_den(f, mf);
            continue;
        }
        // value of f at z_var = p : unit * factor * z_j^{-tpow}
        SubstResult v;
        bool split_diff = false;
        Rat split_sign = 1;
        switch (p.kind) {
            case Pole::Kind::Zero: v = subst_factor_value(f, var, 0); break;
            case Pole::Kind::One: v = subst_factor_value(f, var, 1); break;
            case Pole::Kind::MinusOne: v = subst_factor_value(f, var, -1); break;
            case Pole::Kind::InvVar:
                if (f.kind == Factor::Kind::Diff && f.other(var) == p.j) {
                    // s*(1/z_j - z_j) = -s (z_j-1)(z_j+1)/z_j
                    split_diff = true;
                    split_sign = (var == f.i) ? -1 : 1;
                    v.tpow = 1;
                } else {
                    v = subst_factor_inv(f, var, p.j);
                }
                break;
            case Pole::Kind::AtVar: {
                // f at z_var = z_j
                int o = f.other(var);
                switch (f.kind) {
                    case Factor::Kind::Var: v.factor = Factor::var(p.j); break;
                    case Factor::Kind::VarM1: v.factor = Factor::var_m1(p.j); break;
                    case Factor::Kind::VarP1: v.factor = Factor::var_p1(p.j); break;
                    case Factor::Kind::Prod:
                        if (o == p.j) {
                            split_diff = true;  // z_j^2 - 1
                            split_sign = 1;
                            v.tpow = 0;
                        } else {
                            v.factor = Factor::prod(std::min(o, p.j), std::max(o, p.j));
                        }
                        break;
                    case Factor::Kind::Diff: {
                        Rat s = (var == f.i) ? 1 : -1;
                        if (o == p.j) throw std::runtime_error("residue: coincident pole");
                        if (o < p.j) { v.factor = Factor::diff(o, p.j); v.unit = -s; }
                        else { v.factor = Factor::diff(p.j, o); v.unit = s; }
                        break;
                    }
                }
                break;
            }
        }
        if (v.vanishes) throw std::runtime_error("residue: second vanishing factor " + f.str());
        // 1/f0^{mf}
        MultiRat inv_f0 = MultiRat::constant(nvars_, ParamPoly::constant(1));
        if (split_diff) {
            // f0 = split_sign (z_j-1)(z_j+1) / z_j^tpow
            inv_f0 = MultiRat(ZPoly::from_int(nvars_, 1),
                              {{Factor::var_m1(p.j), 1}, {Factor::var_p1(p.j), 1}})
                         .scale_rat(Rat(1) / split_sign);
            if (v.tpow) {
                std::vector<int> e(nvars_, 0);
                e[p.j] = v.tpow;
                inv_f0 = inv_f0 * MultiRat::from_poly(ZPoly::monomial(nvars_, ParamPoly::one(), e));
            }
        } else {
            std::map<Factor, int> d0;
            if (v.factor) d0[*v.factor] = 1;
            ZPoly numt = ZPoly::from_int(nvars_, 1);
            if (v.tpow) {
                std::vector<int> e(nvars_, 0);
                e[p.j >= 0 ? p.j : 0] = v.tpow;
                numt = ZPoly::monomial(nvars_, ParamPoly::one(), e);
            }
            inv_f0 = MultiRat(numt.scale_rat(Rat(1) / v.unit), std::move(d0));
        }
        // f1 = d f / d z_var as a polynomial
        ZPoly f1 = f.derivative(var, nvars_);
        // geometric-type series for 1/(f0 + f1 t)^mf
        std::vector<MultiRat> fs(m, MultiRat(nvars_));
        MultiRat pw = MultiRat::constant(nvars_, ParamPoly::one());
        MultiRat step = MultiRat::from_poly(f1.neg()) * inv_f0;
        for (int k = 0; k < m; ++k) {
            fs[k] = pw.scale_rat(Rat(binom(mf + k - 1, k)));
            if (k + 1 < m) pw = pw * step;
        }
        MultiRat inv_f0_m = MultiRat::constant(nvars_, ParamPoly::one());
        for (int q = 0; q < mf; ++q) inv_f0_m = inv_f0_m * inv_f0;
        for (auto& s : fs) s = s * inv_f0_m;
        // convolve into the running series
        std::vector<MultiRat> next(m, MultiRat(nvars_));
        for (int a = 0; a < m; ++a) {
            if (series[a].is_zero()) continue;
            for (int b2 = 0; a + b2 < m; ++b2) {
                if (fs[b2].is_zero()) continue;
                next[a + b2] = next[a + b2] + series[a] * fs[b2];
            }
        }
        series = std::move(next);
    }

    MultiRat r = series[m - 1];
    // alpha^m from f = alpha (z_var - p), plus the z_j^{-D} homogenization
    if (p.kind == Pole::Kind::InvVar) r = r.mul_den(Factor::var(p.j), m + zj_den_pow);
    if (p.kind == Pole::Kind::AtVar && p.j < var && m % 2 == 1) r = r.neg();
    return r;
}

bool MultiRat::uses_var(int var) const {
    if (num_.uses_var(var)) return true;
    for (const auto& [f, m] : den_)
        if (f.involves(var)) return true;
    return false;
}

MultiRat MultiRat::drop_var(int var) const {
    assert(!uses_var(var));
    std::vector<int> map(nvars_);
    for (int i = 0; i < nvars_; ++i) map[i] = i < var ? i : (i == var ? 0 : i - 1);
    return remap(map, nvars_ - 1);
}

bool MultiRat::operator==(const MultiRat& o) const {
    return nvars_ == o.nvars_ && den_ == o.den_ && num_ == o.num_;
}

std::string MultiRat::str() const {
    std::ostringstream os;
    os << "[" << num_.str() << "]";
    if (!den_.empty()) {
        os << " / ";
        for (const auto& [f, m] : den_) {
            os << "(" << f.str() << ")";
            if (m != 1) os << "^" << m;
        }
    }
    return os.str();
}

std::optional<std::map<Factor, int>> factor_denominator(const ZPoly& den, ZPoly* leftover,
                                                        std::string* msg) {
    std::map<Factor, int> out;
    ZPoly rem = den;
    int n = den.nvars();
    std::vector<Factor> candidates;
    for (int i = 0; i < n; ++i) {
        candidates.push_back(Factor::var(i));
        candidates.push_back(Factor::var_m1(i));
        candidates.push_back(Factor::var_p1(i));
        for (int j = i + 1; j < n; ++j) {
            candidates.push_back(Factor::prod(i, j));
            candidates.push_back(Factor::diff(i, j));
        }
    }
    for (const auto& f : candidates) {
        ZPoly fp = f.to_poly(n);
        while (true) {
            auto q = rem.divide_exact(fp);
            if (!q) break;
            rem = std::move(*q);
            out[f] += 1;
        }
    }
    if (rem.total_degree() > 0) {
        if (msg) *msg = "denominator has a factor outside the supported alphabet: " + rem.str();
        return std::nullopt;
    }
    if (leftover) *leftover = rem;
    return out;
}

std::optional<MultiRat> make_ratfunc(const ZPoly& num, const ZPoly& den, std::string* msg) {
    ZPoly leftover;
    auto f = factor_denominator(den, &leftover, msg);
    if (!f) return std::nullopt;
    // leftover is a nonzero constant ParamPoly; it must be invertible
    ParamPoly c = leftover.terms().empty() ? ParamPoly() : leftover.terms()[0].c;
    if (c.is_zero()) {
        if (msg) *msg = "zero denominator";
        return std::nullopt;
    }
    auto inv = c.invert_unit();
    if (!inv) {
        if (msg) *msg = "denominator content is not an invertible monomial: " + c.str();
        return std::nullopt;
    }
    return MultiRat(num.scale(*inv), std::move(*f));
}

MultiRat residue_at_infinity(const MultiRat& f, int var) {
    // -Res_{w=0} f(z_var -> 1/w) / w^2 : implement via an auxiliary slot
    // reusing var itself: substitute z_var -> 1/z_t needs t != var, so expand
    // the variable space by one temporary slot.
    int n = f.nvars();
    std::vector<int> up(n);
    for (int i = 0; i < n; ++i) up[i] = i;
    MultiRat g = f.remap(up, n + 1);         // same vars, one spare slot (index n)
    MultiRat h = g.subst_inv(var, n);        // z_var -> 1/z_n
    h = h.mul_den(Factor::var(n), 2);        // extra 1/w^2 measure factor
    MultiRat r = h.residue(n, Pole::zero()).neg();
    assert(!r.uses_var(n) && !r.uses_var(var));
    r = r.drop_var(n);
    return r;
}

}  // namespace chordcount
