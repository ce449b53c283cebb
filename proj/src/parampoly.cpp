#include "chordcount/parampoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace chordcount {

const char* const kGenNames[kNumGens] = {"u", "mu", "e1", "e2", "hb", "gm"};

namespace {
constexpr int kBias = 128;

int floor_div2(int a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }
}  // namespace

ParamPoly::Key ParamPoly::pack(Exps e) {
    // normalize u^2 -> mu
    int q = floor_div2(e[0]);
    e[static_cast<int>(Gen::Mu)] += q;
    e[0] -= 2 * q;
    Key k = 0;
    for (int i = 0; i < kNumGens; ++i) {
        int b = e[i] + kBias;
        if (b < 0 || b > 255) throw std::overflow_error("ParamPoly exponent out of range");
        k = (k << 8) | static_cast<Key>(b);
    }
    return k;
}

Exps ParamPoly::unpack(Key k) {
    Exps e{};
    for (int i = kNumGens - 1; i >= 0; --i) {
        e[i] = static_cast<int>(k & 0xff) - kBias;
        k >>= 8;
    }
    return e;
}

ParamPoly ParamPoly::constant(const Rat& c) { return monomial(c, Exps{}); }

ParamPoly ParamPoly::gen(Gen g, int exp) {
    Exps e{};
    e[static_cast<int>(g)] = exp;
    return monomial(1, e);
}

ParamPoly ParamPoly::monomial(const Rat& c, const Exps& e) {
    ParamPoly p;
    if (sgn(c) != 0) {
        Rat q = c;
        q.canonicalize();
        p.terms_.push_back({pack(e), std::move(q)});
    }
    return p;
}

void ParamPoly::prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return sgn(t.coeff) == 0; }),
                 terms_.end());
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == pack(Exps{}));
}

std::optional<Rat> ParamPoly::as_constant() const {
    if (terms_.empty()) return Rat(0);
    if (is_constant()) return terms_[0].coeff;
    return std::nullopt;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    ParamPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].key < o.terms_[j].key) {
            r.terms_.push_back(terms_[i++]);
        } else if (terms_[i].key > o.terms_[j].key) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rat c = terms_[i].coeff + o.terms_[j].coeff;
            if (sgn(c) != 0) r.terms_.push_back({terms_[i].key, c});
            ++i, ++j;
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

ParamPoly ParamPoly::neg() const {
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const { return *this + o.neg(); }

ParamPoly ParamPoly::scale(const Rat& c) const {
    if (sgn(c) == 0) return {};
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    // multiply via exponent-vector addition; u-normalization in pack()
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
        Exps ea = unpack(a.key);
        for (const auto& b : o.terms_) {
            Exps eb = unpack(b.key);
            Exps e;
            for (int i = 0; i < kNumGens; ++i) e[i] = ea[i] + eb[i];
            acc.push_back({pack(e), a.coeff * b.coeff});
        }
    }
    std::sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return x.key < y.key; });
    ParamPoly r;
    for (auto& t : acc) {
        if (!r.terms_.empty() && r.terms_.back().key == t.key)
            r.terms_.back().coeff += t.coeff;
        else
            r.terms_.push_back(std::move(t));
    }
    r.prune();
    return r;
}

ParamPoly ParamPoly::pow(int n) const {
    assert(n >= 0);
    ParamPoly r = one(), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::optional<ParamPoly> ParamPoly::invert_unit() const {
    if (terms_.size() != 1) return std::nullopt;
    Exps e = unpack(terms_[0].key);
    // u^-1 = u * mu^-1, handled by pack()
    for (auto& x : e) x = -x;
    return monomial(Rat(1) / terms_[0].coeff, e);
}

std::optional<ParamPoly> ParamPoly::sqrt_exact() const {
    if (terms_.size() != 1) return std::nullopt;
    Exps e = unpack(terms_[0].key);
    if (e[0] != 0) return std::nullopt;  // odd power of sqrt(mu) has no square root here
    Exps h{};
    for (int i = 1; i < kNumGens; ++i) {
        if (i == static_cast<int>(Gen::Mu)) continue;
        if (e[i] % 2 != 0) return std::nullopt;
        h[i] = e[i] / 2;
    }
    int m = e[static_cast<int>(Gen::Mu)];
    // mu^(2a+1) has square root u*mu^a
    h[0] = ((m % 2) + 2) % 2;
    h[static_cast<int>(Gen::Mu)] = floor_div2(m);
    auto c = rat_sqrt(terms_[0].coeff);
    if (!c) return std::nullopt;
    return monomial(*c, h);
}

bool ParamPoly::uses_gen(Gen g) const {
    for (const auto& t : terms_)
        if (unpack(t.key)[static_cast<int>(g)] != 0) return true;
    return false;
}

int ParamPoly::min_exp(Gen g) const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms_) {
        int e = unpack(t.key)[static_cast<int>(g)];
        if (first || e < m) m = e;
        first = false;
    }
    return m;
}

int ParamPoly::max_exp(Gen g) const {
    int m = 0;
    bool first = true;
    for (const auto& t : terms_) {
        int e = unpack(t.key)[static_cast<int>(g)];
        if (first || e > m) m = e;
        first = false;
    }
    return m;
}

ParamPoly ParamPoly::swap_gens(Gen a, Gen b) const {
    ParamPoly r;
    for (const auto& t : terms_) {
        Exps e = unpack(t.key);
        std::swap(e[static_cast<int>(a)], e[static_cast<int>(b)]);
        r = r + monomial(t.coeff, e);
    }
    return r;
}

ParamPoly ParamPoly::mul_gen_power(Gen g, int e) const {
    ParamPoly r;
    for (const auto& t : terms_) {
        Exps x = unpack(t.key);
        x[static_cast<int>(g)] += e;
        r = r + monomial(t.coeff, x);
    }
    return r;
}

bool ParamPoly::operator==(const ParamPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].key != o.terms_[i].key || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

int ParamPoly::cmp(const ParamPoly& o) const {
    size_t n = std::min(terms_.size(), o.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        if (terms_[i].key != o.terms_[i].key) return terms_[i].key < o.terms_[i].key ? -1 : 1;
        int c = ::cmp(terms_[i].coeff, o.terms_[i].coeff);
        if (c != 0) return c;
    }
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
    return 0;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(t.coeff);
        Exps e = unpack(t.key);
        for (int i = 0; i < kNumGens; ++i) {
            if (e[i] == 0) continue;
            os << "*" << kGenNames[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::optional<ParamPoly> ParamPoly::parse(const std::string& s) {
    // grammar: term (" + " term)* ; term: rat ("*" name ("^" int)?)* ; "0" is zero
    ParamPoly out;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < s.size() && s[pos] == ' ') ++pos; };
    skip_ws();
    if (s.substr(pos) == "0") return out;
    while (pos < s.size()) {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (isdigit(s[pos]) || s[pos] == '-' || s[pos] == '/')) ++pos;
        auto c = rat_parse(s.substr(start, pos - start));
        if (!c) return std::nullopt;
        Exps e{};
        while (pos < s.size() && s[pos] == '*') {
            ++pos;
            int gi = -1;
            for (int i = 0; i < kNumGens; ++i) {
                std::string n = kGenNames[i];
                if (s.compare(pos, n.size(), n) == 0) { gi = i; pos += n.size(); break; }
            }
            if (gi < 0) return std::nullopt;
            int exp = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                size_t st = pos;
                if (pos < s.size() && s[pos] == '-') ++pos;
                while (pos < s.size() && isdigit(s[pos])) ++pos;
                exp = std::stoi(s.substr(st, pos - st));
            }
            e[gi] += exp;
        }
        out = out + monomial(*c, e);
        skip_ws();
        if (pos < s.size()) {
            if (s.compare(pos, 1, "+") != 0) return std::nullopt;
            ++pos;
        }
    }
    return out;
}

}  // namespace chordcount
