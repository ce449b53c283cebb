#include "chordcount/zpoly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace chordcount {

ZPoly::Key ZPoly::pack(int nvars, const std::vector<int>& e) {
    assert(static_cast<int>(e.size()) == nvars && nvars <= 8);
    Key k = 0;
    for (int i = 0; i < nvars; ++i) {
        if (e[i] < 0 || e[i] > 255) throw std::overflow_error("ZPoly exponent out of range");
        k |= static_cast<Key>(e[i]) << (8 * (7 - i));
    }
    return k;
}

std::vector<int> ZPoly::unpack(int nvars, Key k) {
    std::vector<int> e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = static_cast<int>((k >> (8 * (7 - i))) & 0xff);
    return e;
}

ZPoly ZPoly::constant(int nvars, ParamPoly c) {
    ZPoly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({0, std::move(c)});
    return p;
}

ZPoly ZPoly::var(int nvars, int i, int exp) {
    std::vector<int> e(nvars, 0);
    e[i] = exp;
    return monomial(nvars, ParamPoly::one(), e);
}

ZPoly ZPoly::monomial(int nvars, ParamPoly c, const std::vector<int>& exps) {
    ZPoly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({pack(nvars, exps), std::move(c)});
    return p;
}

void ZPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.key < b.key; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().key == t.key)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.c.is_zero(); }),
              out.end());
    terms_ = std::move(out);
}

void ZPoly::add_term(Key k, ParamPoly c) {
    if (c.is_zero()) return;
    if (terms_.empty() || terms_.back().key < k) {
        terms_.push_back({k, std::move(c)});
        return;
    }
    terms_.push_back({k, std::move(c)});
    normalize();
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    assert(nvars_ == o.nvars_);
    ZPoly r(nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].key < o.terms_[j].key)
            r.terms_.push_back(terms_[i++]);
        else if (terms_[i].key > o.terms_[j].key)
            r.terms_.push_back(o.terms_[j++]);
        else {
            ParamPoly c = terms_[i].c + o.terms_[j].c;
            if (!c.is_zero()) r.terms_.push_back({terms_[i].key, std::move(c)});
            ++i, ++j;
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

ZPoly ZPoly::neg() const {
    ZPoly r = *this;
    for (auto& t : r.terms_) t.c = t.c.neg();
    return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + o.neg(); }

ZPoly ZPoly::scale(const ParamPoly& c) const {
    if (c.is_zero()) return ZPoly(nvars_);
    ZPoly r(nvars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        ParamPoly p = t.c * c;
        if (!p.is_zero()) r.terms_.push_back({t.key, std::move(p)});
    }
    return r;
}

ZPoly ZPoly::scale_rat(const Rat& c) const {
    if (sgn(c) == 0) return ZPoly(nvars_);
    ZPoly r = *this;
    for (auto& t : r.terms_) t.c = t.c.scale(c);
    return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    assert(nvars_ == o.nvars_);
    if (is_zero() || o.is_zero()) return ZPoly(nvars_);
    std::unordered_map<Key, ParamPoly> acc;
    acc.reserve(terms_.size() * 2);
    const ZPoly* a = this;
    const ZPoly* b = &o;
    if (a->terms_.size() < b->terms_.size()) std::swap(a, b);
    for (const auto& ta : a->terms_)
        for (const auto& tb : b->terms_) acc[ta.key + tb.key] += ta.c * tb.c;
    ZPoly r(nvars_);
    r.terms_.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({k, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return x.key < y.key; });
    return r;
}

ZPoly ZPoly::pow(int n) const {
    assert(n >= 0);
    ZPoly r = from_int(nvars_, 1), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

ZPoly ZPoly::derivative(int var) const {
    ZPoly r(nvars_);
    for (const auto& t : terms_) {
        auto e = unpack(nvars_, t.key);
        if (e[var] == 0) continue;
        ParamPoly c = t.c.scale(Rat(e[var]));
        e[var] -= 1;
        r.terms_.push_back({pack(nvars_, e), std::move(c)});
    }
    r.normalize();
    return r;
}

int ZPoly::degree(int var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, unpack(nvars_, t.key)[var]);
    return d;
}

int ZPoly::total_degree() const {
    int d = 0;
    for (const auto& t : terms_) {
        auto e = unpack(nvars_, t.key);
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

bool ZPoly::uses_var(int var) const {
    for (const auto& t : terms_)
        if (unpack(nvars_, t.key)[var] != 0) return true;
    return false;
}

ZPoly ZPoly::subst_value(int var, int val) const {
    assert(val == -1 || val == 0 || val == 1);
    ZPoly r(nvars_);
    for (const auto& t : terms_) {
        auto e = unpack(nvars_, t.key);
        int d = e[var];
        e[var] = 0;
        if (val == 0 && d > 0) continue;
        ParamPoly c = t.c;
        if (val == -1 && d % 2 == 1) c = c.neg();
        r.terms_.push_back({pack(nvars_, e), std::move(c)});
    }
    r.normalize();
    return r;
}

std::pair<ZPoly, int> ZPoly::subst_inv(int var, int j) const {
    assert(var != j);
    int D = degree(var);
    ZPoly r(nvars_);
    for (const auto& t : terms_) {
        auto e = unpack(nvars_, t.key);
        int d = e[var];
        e[var] = 0;
        e[j] += D - d;
        r.terms_.push_back({pack(nvars_, e), t.c});
    }
    r.normalize();
    return {r, D};
}

ZPoly ZPoly::remap(const std::vector<int>& varmap, int new_nvars) const {
    assert(static_cast<int>(varmap.size()) == nvars_);
    ZPoly r(new_nvars);
    for (const auto& t : terms_) {
        auto e = unpack(nvars_, t.key);
        std::vector<int> f(new_nvars, 0);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            assert(varmap[i] >= 0 && varmap[i] < new_nvars);
            f[varmap[i]] += e[i];
        }
        r.terms_.push_back({pack(new_nvars, f), t.c});
    }
    r.normalize();
    return r;
}

std::optional<ZPoly> ZPoly::divide_exact(const ZPoly& f) const {
    assert(nvars_ == f.nvars_);
    if (f.is_zero()) return std::nullopt;
    const Term& lf = f.terms_.back();  // lex-leading term
    auto inv = lf.c.invert_unit();
    if (!inv) return std::nullopt;
    std::map<Key, ParamPoly> rem;
    for (const auto& t : terms_) rem.emplace(t.key, t.c);
    std::vector<Term> q;
    while (!rem.empty()) {
        auto lead = std::prev(rem.end());
        // per-variable divisibility of the leading monomials
        Key kr = lead->first, kf = lf.key, kq = 0;
        bool ok = true;
        for (int i = 0; i < 8; ++i) {
            int er = static_cast<int>((kr >> (8 * i)) & 0xff);
            int ef = static_cast<int>((kf >> (8 * i)) & 0xff);
            if (er < ef) { ok = false; break; }
            kq |= static_cast<Key>(er - ef) << (8 * i);
        }
        if (!ok) return std::nullopt;
        ParamPoly qc = lead->second * *inv;
        q.push_back({kq, qc});
        for (const auto& tf : f.terms_) {
            Key k = tf.key + kq;
            auto it = rem.find(k);
            if (it == rem.end()) {
                ParamPoly c = (tf.c * qc).neg();
                if (!c.is_zero()) rem.emplace(k, std::move(c));
            } else {
                it->second -= tf.c * qc;
                if (it->second.is_zero()) rem.erase(it);
            }
        }
    }
    std::sort(q.begin(), q.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    ZPoly out(nvars_);
    out.terms_ = std::move(q);
    return out;
}

bool ZPoly::operator==(const ZPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].key != o.terms_[i].key || !(terms_[i].c == o.terms_[i].c)) return false;
    return true;
}

int ZPoly::cmp(const ZPoly& o) const {
    size_t n = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        if (terms_[i].key != o.terms_[i].key) return terms_[i].key < o.terms_[i].key ? -1 : 1;
        int c = terms_[i].c.cmp(o.terms_[i].c);
        if (c != 0) return c;
    }
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
    return 0;
}

std::string ZPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.c.str() << ")";
        auto e = unpack(nvars_, t.key);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*z" << i;
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace chordcount
