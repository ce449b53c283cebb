#pragma once

#include <cassert>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordcount/parampoly.hpp"

namespace chordcount {

// Truncated Laurent series with coefficients in C (ParamPoly, or another
// Series for bivariate work). Coefficients are exact for exponents in
// [lo, order]; `order` is the truncation bound and combines as the minimum
// under addition and shifts appropriately under multiplication. A value with
// order == kExactOrder is exact (no truncation), which is how constants and
// polynomials embed. One formal log-term coefficient rides along for the
// phase-function use case; it must be zero in multiplicative contexts.
constexpr int kExactOrder = 1 << 20;

template <class C>
struct SeriesOps;  // coefficient-ring hooks, specialized below

template <class C>
class Series {
public:
    using Ops = SeriesOps<C>;

    Series() : lo_(0), order_(kExactOrder) {}
    explicit Series(std::string var, int order = kExactOrder)
        : var_(std::move(var)), lo_(0), order_(order) {}

    static Series zero(std::string var, int order = kExactOrder) { return Series(var, order); }
    static Series constant(std::string var, C c, int order = kExactOrder) {
        Series s(var, order);
        s.set_coeff(0, std::move(c));
        return s;
    }
    static Series monomial(std::string var, C c, int exp, int order = kExactOrder) {
        Series s(var, order);
        s.set_coeff(exp, std::move(c));
        return s;
    }

    const std::string& var() const { return var_; }
    int order() const { return order_; }
    int lo() const { return lo_; }
    // highest exponent with a stored coefficient (lo-1 when empty)
    int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty() && Ops::is_zero(log_); }

    C coeff(int k) const {
        if (k > order_) throw std::runtime_error("series coefficient beyond truncation order");
        if (k < lo_ || k >= lo_ + static_cast<int>(coeffs_.size())) return Ops::zero();
        return coeffs_[k - lo_];
    }
    // lowest exponent with a nonzero stored coefficient; lo_ if none
    int valuation() const {
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!Ops::is_zero(coeffs_[i])) return lo_ + static_cast<int>(i);
        return order_ + 1;
    }

    void set_coeff(int k, C c) {
        if (k > order_) return;  // beyond truncation: drop
        if (coeffs_.empty()) {
            lo_ = k;
            coeffs_.push_back(std::move(c));
            return;
        }
        if (k < lo_) {
            coeffs_.insert(coeffs_.begin(), lo_ - k, Ops::zero());
            lo_ = k;
        } else if (k >= lo_ + static_cast<int>(coeffs_.size())) {
            coeffs_.resize(k - lo_ + 1, Ops::zero());
        }
        coeffs_[k - lo_] = std::move(c);
    }

    const C& log_coeff() const { return log_; }
    void set_log_coeff(C c) { log_ = std::move(c); }

    Series truncate(int new_order) const {
        Series r(var_, std::min(order_, new_order));
        r.log_ = log_;
        for (int k = lo_; k <= std::min(hi_stored(), r.order_); ++k) r.set_coeff(k, coeff(k));
        r.trim();
        return r;
    }

    Series operator+(const Series& o) const {
        check_var(o);
        Series r(var_, std::min(order_, o.order_));
        r.log_ = Ops::add(log_, o.log_);
        int a = std::min(lo_, o.lo_);
        int b = std::min(std::max(hi_stored(), o.hi_stored()), r.order_);
        for (int k = a; k <= b; ++k) r.set_coeff(k, Ops::add(coeff_raw(k), o.coeff_raw(k)));
        r.trim();
        return r;
    }
    Series neg() const {
        Series r = *this;
        for (auto& c : r.coeffs_) c = Ops::neg(c);
        r.log_ = Ops::neg(r.log_);
        return r;
    }
    Series operator-(const Series& o) const { return *this + o.neg(); }

    Series operator*(const Series& o) const {
        check_var(o);
        assert(Ops::is_zero(log_) && Ops::is_zero(o.log_));
        // truncation: error O(x^{o1+1})*g + f*O(x^{o2+1}) starts at
        // min(o1 + lo2, o2 + lo1) + 1
        int ord;
        if (order_ == kExactOrder && o.order_ == kExactOrder)
            ord = kExactOrder;
        else if (is_zero() || o.is_zero())
            ord = std::min(order_, o.order_);
        else
            ord = std::min(order_ == kExactOrder ? kExactOrder : order_ + o.valuation_or_lo(),
                           o.order_ == kExactOrder ? kExactOrder : o.order_ + valuation_or_lo());
        Series r(var_, std::min(ord, kExactOrder));
        if (is_zero() || o.is_zero()) return r;
        std::vector<C> acc(std::max<int>(0, std::min(hi_stored() + o.hi_stored(), r.order_) -
                                                 (lo_ + o.lo_) + 1),
                           Ops::zero());
        for (int i = lo_; i <= hi_stored(); ++i) {
            if (Ops::is_zero(coeff_raw(i))) continue;
            for (int j = o.lo_; j <= o.hi_stored(); ++j) {
                int k = i + j;
                if (k > r.order_ || k - (lo_ + o.lo_) >= static_cast<int>(acc.size())) break;
                acc[k - (lo_ + o.lo_)] =
                    Ops::add(acc[k - (lo_ + o.lo_)], Ops::mul(coeff_raw(i), o.coeff_raw(j)));
            }
        }
        r.lo_ = lo_ + o.lo_;
        r.coeffs_ = std::move(acc);
        r.trim();
        return r;
    }

    Series scale(const C& c) const {
        Series r = *this;
        for (auto& x : r.coeffs_) x = Ops::mul(x, c);
        r.log_ = Ops::mul(r.log_, c);
        r.trim();
        return r;
    }
    Series scale_rat(const Rat& q) const {
        Series r = *this;
        for (auto& x : r.coeffs_) x = Ops::scale_rat(x, q);
        r.log_ = Ops::scale_rat(r.log_, q);
        r.trim();
        return r;
    }
    Series shift(int e) const {  // multiply by var^e
        Series r = *this;
        assert(Ops::is_zero(log_));
        r.lo_ += e;
        if (r.order_ != kExactOrder) r.order_ += e;
        return r;
    }

    Series pow(int n) const {
        assert(n >= 0);
        Series r = Series::constant(var_, Ops::one());
        Series b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            if (n > 1) b = b * b;
            n >>= 1;
        }
        return r;
    }

    // 1/f ; requires the lowest-order coefficient to be invertible in C
    Series reciprocal() const {
        assert(Ops::is_zero(log_));
        int v = valuation();
        if (v > order_) throw std::runtime_error("reciprocal of (truncated) zero series");
        if (order_ == kExactOrder && static_cast<int>(coeffs_.size()) == 1) {
            // exact monomial: exact reciprocal
            return monomial(var_, Ops::invert(coeffs_[0]), -lo_);
        }
        int n = order_ == kExactOrder ? default_recip_order_ - v : order_ - v;
        if (n < 0) throw std::runtime_error("reciprocal: no usable coefficients");
        C a0 = coeff(v);
        C ia0 = Ops::invert(a0);
        std::vector<C> b(n + 1, Ops::zero());
        b[0] = ia0;
        for (int m = 1; m <= n; ++m) {
            C s = Ops::zero();
            for (int j = 1; j <= m; ++j)
                s = Ops::add(s, Ops::mul(coeff_or_zero(v + j), b[m - j]));
            b[m] = Ops::neg(Ops::mul(ia0, s));
        }
        Series r(var_, order_ == kExactOrder ? default_recip_order_ - 2 * v : order_ - 2 * v);
        for (int m = 0; m <= n; ++m) r.set_coeff(-v + m, std::move(b[m]));
        r.trim();
        return r;
    }

    // sqrt; lowest term must have even exponent and a coefficient with an
    // exact square root in C
    Series sqrt() const {
        assert(Ops::is_zero(log_));
        int v = valuation();
        if (v > order_) throw std::runtime_error("sqrt of zero series");
        if (v % 2 != 0) throw std::runtime_error("sqrt: odd leading exponent");
        C s0 = Ops::sqrt(coeff(v));
        int n = order_ == kExactOrder ? default_recip_order_ : order_ - v;
        // f = c0 x^v (1 + w); sqrt(1+w) by the standard recurrence
        C ic0 = Ops::invert(coeff(v));
        std::vector<C> w(n + 1, Ops::zero());
        for (int m = 1; m <= n; ++m) w[m] = Ops::mul(coeff_or_zero(v + m), ic0);
        std::vector<C> b(n + 1, Ops::zero());
        b[0] = Ops::one();
        for (int m = 1; m <= n; ++m) {
            C s = w[m];
            for (int j = 1; j < m; ++j) s = Ops::add(s, Ops::neg(Ops::mul(b[j], b[m - j])));
            b[m] = Ops::scale_rat(s, Rat(1, 2));
        }
        Series r(var_, order_ == kExactOrder ? default_recip_order_ : order_ - v / 2);
        for (int m = 0; m <= n; ++m) r.set_coeff(v / 2 + m, Ops::mul(s0, b[m]));
        r.trim();
        return r;
    }

    // log(1 + v) for a series v with valuation >= 1
    static Series log1p(const Series& v) {
        assert(v.valuation() >= 1);
        int n = v.order();
        Series r(v.var(), n);
        Series p = v;
        int k = 1;
        while (p.valuation() <= n) {
            r = r + p.scale_rat(Rat((k % 2 == 1) ? 1 : -1, k));
            ++k;
            if (k * v.valuation() > n) break;
            p = p * v;
        }
        return r.truncate(n);
    }

    // composition f(g) for g with valuation >= 1; f must have lo >= 0
    Series compose(const Series& g) const {
        assert(lo_ >= 0 && Ops::is_zero(log_));
        assert(g.valuation() >= 1);
        int ord = std::min(order_ == kExactOrder ? kExactOrder
                                                 : (order_ + 1) * std::max(1, g.valuation()) - 1,
                           g.order());
        Series r(g.var(), ord);
        Series p = Series::constant(g.var(), Ops::one());
        for (int k = 0; k <= hi_stored(); ++k) {
            if (!Ops::is_zero(coeff_raw(k))) r = r + p.scale(coeff_raw(k));
            if (k < hi_stored()) p = p * g;
            if (p.valuation() > ord) break;
        }
        return r.truncate(ord);
    }

    Series derivative() const {
        Series r(var_, order_ == kExactOrder ? kExactOrder : order_ - 1);
        for (int k = lo_; k <= hi_stored(); ++k) {
            if (k == 0) continue;
            r.set_coeff(k - 1, Ops::scale_rat(coeff_raw(k), Rat(k)));
        }
        // d/dx (c log x) = c / x
        if (!Ops::is_zero(log_)) r.set_coeff(-1, Ops::add(r.coeff_or_zero(-1), log_));
        r.trim();
        return r;
    }

    bool operator==(const Series& o) const {
        if (lo_ != o.lo_ || order_ != o.order_ || !(Ops::eq(log_, o.log_))) return false;
        int a = std::min(lo_, o.lo_), b = std::max(hi_stored(), o.hi_stored());
        for (int k = a; k <= b; ++k)
            if (!Ops::eq(coeff_raw(k), o.coeff_raw(k))) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        os << "series " << var_ << " order=";
        if (order_ == kExactOrder) os << "exact";
        else os << order_;
        if (!Ops::is_zero(log_)) os << " log=(" << Ops::str(log_) << ")";
        for (int k = lo_; k <= hi_stored(); ++k) {
            if (Ops::is_zero(coeff_raw(k))) continue;
            os << " + (" << Ops::str(coeff_raw(k)) << ")*" << var_ << "^" << k;
        }
        return os.str();
    }

    void set_default_expansion_order(int n) { default_recip_order_ = n; }

private:
    std::string var_;
    int lo_;
    int order_;
    std::vector<C> coeffs_;
    C log_ = SeriesOps<C>::zero();
    int default_recip_order_ = 24;

    int hi_stored() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    C coeff_raw(int k) const {
        if (k < lo_ || k > hi_stored()) return Ops::zero();
        return coeffs_[k - lo_];
    }
    C coeff_or_zero(int k) const { return (k > order_) ? Ops::zero() : coeff_raw(k); }
    int valuation_or_lo() const {
        int v = valuation();
        return v > order_ ? lo_ : v;
    }
    void check_var(const Series& o) const {
        if (var_ != o.var_) throw std::runtime_error("series variable mismatch");
    }
    void trim() {
        while (!coeffs_.empty() && Ops::is_zero(coeffs_.front())) {
            coeffs_.erase(coeffs_.begin());
            ++lo_;
        }
        while (!coeffs_.empty() && Ops::is_zero(coeffs_.back())) coeffs_.pop_back();
        if (coeffs_.empty()) lo_ = 0;
    }
};

template <>
struct SeriesOps<ParamPoly> {
    static ParamPoly zero() { return {}; }
    static ParamPoly one() { return ParamPoly::one(); }
    static bool is_zero(const ParamPoly& c) { return c.is_zero(); }
    static bool eq(const ParamPoly& a, const ParamPoly& b) { return a == b; }
    static ParamPoly add(const ParamPoly& a, const ParamPoly& b) { return a + b; }
    static ParamPoly mul(const ParamPoly& a, const ParamPoly& b) { return a * b; }
    static ParamPoly neg(const ParamPoly& a) { return a.neg(); }
    static ParamPoly scale_rat(const ParamPoly& a, const Rat& q) { return a.scale(q); }
    static ParamPoly invert(const ParamPoly& a) {
        auto i = a.invert_unit();
        if (!i) throw std::runtime_error("cannot invert non-monomial coefficient " + a.str());
        return *i;
    }
    static ParamPoly sqrt(const ParamPoly& a) {
        auto s = a.sqrt_exact();
        if (!s) throw std::runtime_error("coefficient has no exact square root: " + a.str());
        return *s;
    }
    static std::string str(const ParamPoly& a) { return a.str(); }
};

template <class C>
struct SeriesOps<Series<C>> {
    static Series<C> zero() { return Series<C>(); }
    static Series<C> one() {
        Series<C> s;
        s.set_coeff(0, SeriesOps<C>::one());
        return s;
    }
    static bool is_zero(const Series<C>& c) { return c.is_zero(); }
    static bool eq(const Series<C>& a, const Series<C>& b) {
        if (a.is_zero() && b.is_zero()) return true;
        Series<C> d = add_mixed(a, b.neg());
        return d.valuation() > std::min(a.order(), b.order());
    }
    static Series<C> add(const Series<C>& a, const Series<C>& b) { return add_mixed(a, b); }
    static Series<C> mul(const Series<C>& a, const Series<C>& b) { return mul_mixed(a, b); }
    static Series<C> neg(const Series<C>& a) { return a.neg(); }
    static Series<C> scale_rat(const Series<C>& a, const Rat& q) { return a.scale_rat(q); }
    static Series<C> invert(const Series<C>& a) { return a.reciprocal(); }
    static Series<C> sqrt(const Series<C>& a) { return a.sqrt(); }
    static std::string str(const Series<C>& a) { return a.str(); }

private:
    // the default-constructed zero has an empty variable name; adopt the
    // other operand's variable
    static Series<C> adopt(const Series<C>& a, const Series<C>& b) {
        if (a.var().empty() && a.is_zero() && !b.var().empty()) {
            Series<C> r(b.var(), a.order());
            return r;
        }
        return a;
    }
    static Series<C> add_mixed(const Series<C>& a, const Series<C>& b) {
        return adopt(a, b) + adopt(b, a);
    }
    static Series<C> mul_mixed(const Series<C>& a, const Series<C>& b) {
        return adopt(a, b) * adopt(b, a);
    }
};

using TSeries = Series<ParamPoly>;
using BiSeries = Series<TSeries>;  // outer series whose coefficients are t-series

}  // namespace chordcount
