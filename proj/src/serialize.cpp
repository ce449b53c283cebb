#include "chordcount/serialize.hpp"

#include <sstream>

namespace chordcount {

namespace {

std::optional<Factor> parse_factor(const std::string& tok) {
    // forms: z3 | z3-1 | z3+1 | z1*z4-1 | z1-z4
    auto read_var = [](const std::string& s, size_t& p) -> int {
        if (p >= s.size() || s[p] != 'z') return -1;
        ++p;
        size_t st = p;
        while (p < s.size() && isdigit(s[p])) ++p;
        if (st == p) return -1;
        return std::stoi(s.substr(st, p - st));
    };
    size_t p = 0;
    int i = read_var(tok, p);
    if (i < 0) return std::nullopt;
    if (p == tok.size()) return Factor::var(i);
    if (tok.compare(p, 2, "-1") == 0 && p + 2 == tok.size()) return Factor::var_m1(i);
    if (tok.compare(p, 2, "+1") == 0 && p + 2 == tok.size()) return Factor::var_p1(i);
    if (tok[p] == '*') {
        ++p;
        int j = read_var(tok, p);
        if (j < 0 || tok.compare(p, 2, "-1") != 0 || p + 2 != tok.size()) return std::nullopt;
        return Factor::prod(i, j);
    }
    if (tok[p] == '-') {
        ++p;
        int j = read_var(tok, p);
        if (j < 0 || p != tok.size() || i >= j) return std::nullopt;
        return Factor::diff(i, j);
    }
    return std::nullopt;
}

bool fail(std::string* err, const std::string& msg) {
    if (err) *err = msg;
    return false;
}

}  // namespace

std::string serialize_zpoly(const ZPoly& p) {
    std::ostringstream os;
    os << "zpoly " << p.nvars() << " " << p.terms().size() << "\n";
    for (const auto& t : p.terms()) {
        auto e = ZPoly::unpack(p.nvars(), t.key);
        for (int i = 0; i < p.nvars(); ++i) os << e[i] << " ";
        os << "; " << t.c.str() << "\n";
    }
    return os.str();
}

std::optional<ZPoly> parse_zpoly(std::istream& in, std::string* err) {
    std::string tag;
    int nvars = 0;
    size_t nterms = 0;
    if (!(in >> tag >> nvars >> nterms) || tag != "zpoly") {
        fail(err, "expected 'zpoly <nvars> <nterms>'");
        return std::nullopt;
    }
    std::string line;
    std::getline(in, line);
    ZPoly p(nvars);
    for (size_t k = 0; k < nterms; ++k) {
        if (!std::getline(in, line)) {
            fail(err, "unexpected end of zpoly");
            return std::nullopt;
        }
        std::istringstream ls(line);
        std::vector<int> e(nvars);
        for (int i = 0; i < nvars; ++i)
            if (!(ls >> e[i])) {
                fail(err, "bad exponent row: " + line);
                return std::nullopt;
            }
        std::string semi;
        ls >> semi;
        if (semi != ";") {
            fail(err, "missing ';' in zpoly term");
            return std::nullopt;
        }
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
        auto c = ParamPoly::parse(rest);
        if (!c) {
            fail(err, "bad coefficient: " + rest);
            return std::nullopt;
        }
        p.add_term(ZPoly::pack(nvars, e), *c);
    }
    return p;
}

std::string serialize_multirat(const MultiRat& f) {
    std::ostringstream os;
    os << "multirat " << f.nvars() << "\n";
    os << serialize_zpoly(f.num());
    os << "den " << f.den().size() << "\n";
    for (const auto& [fac, m] : f.den()) os << fac.str() << " " << m << "\n";
    os << "end\n";
    return os.str();
}

std::optional<MultiRat> parse_multirat(std::istream& in, std::string* err) {
    std::string tag;
    int nvars = 0;
    if (!(in >> tag >> nvars) || tag != "multirat") {
        fail(err, "expected 'multirat <nvars>'");
        return std::nullopt;
    }
    auto num = parse_zpoly(in, err);
    if (!num) return std::nullopt;
    size_t nfac = 0;
    if (!(in >> tag >> nfac) || tag != "den") {
        fail(err, "expected 'den <n>'");
        return std::nullopt;
    }
    std::map<Factor, int> den;
    for (size_t k = 0; k < nfac; ++k) {
        std::string ftok;
        int m = 0;
        if (!(in >> ftok >> m)) {
            fail(err, "bad factor row");
            return std::nullopt;
        }
        auto f = parse_factor(ftok);
        if (!f || m <= 0) {
            fail(err, "bad factor: " + ftok);
            return std::nullopt;
        }
        den[*f] += m;
    }
    if (!(in >> tag) || tag != "end") {
        fail(err, "expected 'end'");
        return std::nullopt;
    }
    return MultiRat(*num, std::move(den));
}

std::optional<MultiRat> parse_multirat_str(const std::string& s, std::string* err) {
    std::istringstream in(s);
    return parse_multirat(in, err);
}

std::string serialize_series(const TSeries& s) {
    std::ostringstream os;
    int n = 0;
    for (int k = s.lo(); k <= s.hi(); ++k)
        if (!s.coeff(k).is_zero()) ++n;
    os << "tseries " << s.var() << " " << s.lo() << " ";
    if (s.order() == kExactOrder) os << "exact";
    else os << s.order();
    os << " " << n << "\n";
    for (int k = s.lo(); k <= s.hi(); ++k) {
        const ParamPoly c = s.coeff(k);
        if (c.is_zero()) continue;
        os << k << " ; " << c.str() << "\n";
    }
    if (!s.log_coeff().is_zero()) os << "log ; " << s.log_coeff().str() << "\n";
    os << "end\n";
    return os.str();
}

std::optional<TSeries> parse_series(std::istream& in, std::string* err) {
    std::string tag, var, ordtok;
    int lo = 0;
    size_t n = 0;
    if (!(in >> tag >> var >> lo >> ordtok >> n) || tag != "tseries") {
        fail(err, "expected 'tseries <var> <lo> <order> <n>'");
        return std::nullopt;
    }
    int order = ordtok == "exact" ? kExactOrder : std::stoi(ordtok);
    TSeries s(var, order);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line == "end") return s;
        std::istringstream ls(line);
        std::string key, semi;
        ls >> key >> semi;
        if (semi != ";") {
            fail(err, "missing ';' in series row");
            return std::nullopt;
        }
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
        auto c = ParamPoly::parse(rest);
        if (!c) {
            fail(err, "bad series coefficient: " + rest);
            return std::nullopt;
        }
        if (key == "log")
            s.set_log_coeff(*c);
        else
            s.set_coeff(std::stoi(key), *c);
    }
    fail(err, "unterminated series");
    return std::nullopt;
}

std::optional<TSeries> parse_series_str(const std::string& s, std::string* err) {
    std::istringstream in(s);
    return parse_series(in, err);
}

}  // namespace chordcount
