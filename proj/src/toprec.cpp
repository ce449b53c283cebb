#include "chordcount/toprec.hpp"

#include <algorithm>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "chordcount/serialize.hpp"

namespace chordcount {

namespace fs = std::filesystem;

std::string DiffKey::str() const {
    std::ostringstream os;
    os << "(g=" << g << ",h=" << h << ",l=" << l << ")";
    return os.str();
}

MultiRat seed_one_point_planar() {
    // mu (z^2 - 1) / z^3
    ZPoly num = (ZPoly::var(1, 0, 2) - ZPoly::from_int(1, 1)).scale(ParamPoly::gen(Gen::Mu));
    return MultiRat(num, {{Factor::var(0), 3}});
}

MultiRat seed_one_point_gamma() {
    // 1/z - 1/(2(z-1)) - 1/(2(z+1)) = -1/(z (z-1)(z+1))
    return MultiRat(ZPoly::from_int(1, -1),
                    {{Factor::var(0), 1}, {Factor::var_m1(0), 1}, {Factor::var_p1(0), 1}});
}

MultiRat seed_two_point() { return MultiRat(ZPoly::from_int(2, 1), {{Factor::prod(0, 1), 2}}); }

MultiRat seed_two_point_variant() {
    MultiRat plain = seed_two_point();
    ZPoly z0sq = ZPoly::var(2, 0, 2) - ZPoly::from_int(2, 1);
    ZPoly z1sq = ZPoly::var(2, 1, 2) - ZPoly::from_int(2, 1);
    MultiRat extra((z0sq * z1sq).scale_rat(rat(1, 2)),
                   {{Factor::diff(0, 1), 2}, {Factor::prod(0, 1), 2}});
    return plain + extra;
}

MultiRat recursion_kernel() {
    ZPoly num = ZPoly::var(2, 1, 3).scale(ParamPoly::gen(Gen::Mu, -1));
    return MultiRat(num, {{Factor::diff(0, 1), 1},
                          {Factor::prod(0, 1), 1},
                          {Factor::var_m1(1), 1},
                          {Factor::var_p1(1), 1}});
}

MemoStore::MemoStore(std::string cache_dir) : dir_(std::move(cache_dir)) {
    if (!dir_.empty()) load_dir();
}

const MultiRat& MemoStore::get(const DiffKey& k) const {
    auto it = map_.find(k);
    if (it == map_.end()) throw std::runtime_error("memo miss for key " + k.str());
    return it->second;
}

void MemoStore::put(const DiffKey& k, MultiRat body) {
    auto [it, inserted] = map_.emplace(k, std::move(body));
    if (!inserted) return;
    if (!dir_.empty()) {
        fs::create_directories(dir_);
        std::ofstream out(fs::path(dir_) / cache_file_name(k));
        out << serialize_multirat(it->second);
    }
}

std::vector<DiffKey> MemoStore::keys() const {
    std::vector<DiffKey> ks;
    for (const auto& [k, v] : map_) ks.push_back(k);
    return ks;
}

std::string MemoStore::cache_file_name(const DiffKey& k) {
    std::ostringstream os;
    os << "W_g" << k.g << "_h" << k.h << "_l" << k.l << ".mr";
    return os.str();
}

bool MemoStore::parse_cache_file_name(const std::string& name, DiffKey* out) {
    int g, h, l;
    if (sscanf(name.c_str(), "W_g%d_h%d_l%d.mr", &g, &h, &l) != 3) return false;
    *out = DiffKey{g, h, l};
    return true;
}

void MemoStore::load_dir() {
    if (!fs::is_directory(dir_)) return;
    for (const auto& e : fs::directory_iterator(dir_)) {
        DiffKey k;
        if (!e.is_regular_file() || !parse_cache_file_name(e.path().filename().string(), &k))
            continue;
        std::ifstream in(e.path());
        std::string err;
        auto m = parse_multirat(in, &err);
        if (!m) throw std::runtime_error("corrupt cache entry " + e.path().string() + ": " + err);
        map_.emplace(k, std::move(*m));
    }
}

bool TopRec::full_ok(const DiffKey& key) {
    if (key.is_seed()) return true;
    auto it = full_ok_.find(key);
    if (it != full_ok_.end()) return it->second;
    full_ok_[key] = false;  // guards cycles; recursion strictly lowers chi_bar anyway
    bool cheap = key.chi_bar() <= 2 || (key.l == 0 && key.h <= 4) || key.h <= 2;
    bool ok = cheap;
    if (ok && key.g >= 1) ok = full_ok({key.g - 1, key.h + 1, key.l});
    if (ok && key.l >= 1) ok = full_ok({key.g, key.h, key.l - 1});
    if (ok) {
        for (int k2 = 0; k2 <= key.g && ok; ++k2)
            for (int n2 = 0; n2 <= key.l && ok; ++n2)
                for (int j = 0; j <= key.h - 1 && ok; ++j) {
                    DiffKey ka{key.g - k2, j + 1, key.l - n2};
                    DiffKey kb{k2, key.h - 1 - j + 1, n2};
                    if (ka == DiffKey{0, 1, 0} || kb == DiffKey{0, 1, 0}) continue;
                    if (!ka.is_seed() && ka != key) ok = ok && full_ok(ka);
                    if (ok && !kb.is_seed() && kb != key) ok = ok && full_ok(kb);
                }
    }
    full_ok_[key] = ok;
    return ok;
}

const MultiRat& TopRec::compute(const DiffKey& key) {
    if (key.is_seed()) throw std::invalid_argument("seed key passed to compute: " + key.str());
    if (key.g < 0 || key.l < 0 || key.h < 1 || key.chi_bar() < 1)
        throw std::invalid_argument("invalid recursion key " + key.str());
    if (!memo_->contains(key)) {
        MultiRat w = assemble_and_integrate(key, std::vector<int>(key.h, 1));
        run_checks(key, w);
        memo_->put(key, std::move(w));
    }
    return memo_->get(key);
}

MultiRat TopRec::compute_diagonal(const DiffKey& key) {
    return compute_spec(key, {key.h});
}

namespace {

// assignment of h slots to pattern variables, in order
std::vector<int> slot_map(const std::vector<int>& mults) {
    std::vector<int> m;
    for (size_t v = 0; v < mults.size(); ++v)
        for (int c = 0; c < mults[v]; ++c) m.push_back(static_cast<int>(v));
    return m;
}

}  // namespace

MultiRat TopRec::compute_spec(const DiffKey& key, const std::vector<int>& mults) {
    int total = std::accumulate(mults.begin(), mults.end(), 0);
    if (total != key.h) throw std::invalid_argument("pattern does not sum to h");
    for (int m : mults)
        if (m < 1) throw std::invalid_argument("pattern multiplicities must be positive");
    int v = static_cast<int>(mults.size());
    // canonical pattern: multiplicities sorted descending; ties broken by
    // request position, which is valid by full symmetry of the differential
    std::vector<int> idx(v);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return mults[a] > mults[b]; });
    std::vector<int> canon(v);
    for (int i = 0; i < v; ++i) canon[i] = mults[idx[i]];
    MultiRat body = spec_canonical(key, canon);
    // canonical var i corresponds to requested var idx[i]
    std::vector<int> remap(v);
    for (int i = 0; i < v; ++i) remap[i] = idx[i];
    return body.remap(remap, v);
}

MultiRat TopRec::spec_canonical(const DiffKey& key, const std::vector<int>& mults) {
    int v = static_cast<int>(mults.size());
    bool all_ones = (v == key.h);
    // seeds
    if (key == DiffKey{0, 1, 0}) return seed_one_point_planar();
    if (key == DiffKey{0, 1, 1}) return seed_one_point_gamma();
    if (key == DiffKey{0, 2, 0}) return seed_two_point().remap(slot_map(mults), v);
    if (memo_->contains(key)) return memo_->get(key).remap(slot_map(mults), v);
    if (all_ones) {
        compute(key);
        return memo_->get(key);
    }
    auto it = specs_.find({key, mults});
    if (it != specs_.end()) return it->second;
    MultiRat w(0);
    if (full_ok(key)) {
        w = compute(key).remap(slot_map(mults), v);
    } else {
        w = assemble_and_integrate(key, mults);
    }
    specs_.emplace(std::make_pair(key, mults), w);
    return w;
}

MultiRat TopRec::assemble_and_integrate(const DiffKey& key, const std::vector<int>& mults) {
    // The new point of the recursion needs its own slot while the contour
    // variable is integrated out; when the first pattern variable carries
    // multiplicity > 1 a fresh working variable is used and merged afterward.
    const int v = static_cast<int>(mults.size());
    const bool fresh = mults[0] > 1;
    const int newv = fresh ? v : 0;
    const int zeta = v + (fresh ? 1 : 0);
    const int n = zeta + 1;

    std::vector<int> spect = mults;  // spectator multiset over pattern vars
    spect[0] -= 1;
    const int h = key.h - 1;

    // sub-differential with first slot at variable `first` and the given
    // multiset of pattern variables in the remaining slots
    auto sub = [&](const DiffKey& k, int first, const std::vector<int>& picks,
                   bool variant_two_point) -> MultiRat {
        std::vector<int> m2{1};
        std::vector<int> vars{first};
        for (int i = 0; i < v; ++i)
            if (picks[i] > 0) {
                m2.push_back(picks[i]);
                vars.push_back(i);
            }
        MultiRat b(0);
        if (variant_two_point) {
            assert(k == (DiffKey{0, 2, 0}));
            b = seed_two_point_variant().remap(slot_map(m2), static_cast<int>(m2.size()));
        } else {
            b = compute_spec(k, m2);
        }
        return b.remap(vars, n);
    };
    auto cal = [&](const DiffKey& k, int first, const std::vector<int>& picks) -> MultiRat {
        if (k == DiffKey{0, 1, 0}) return MultiRat(n);
        return sub(k, first, picks, k == DiffKey{0, 2, 0});
    };

    std::vector<MultiRat> parts;

    // genus-lowering term W^{(g-1,h+2)}_l (zeta, zeta, spectators)
    if (key.g >= 1) {
        DiffKey k{key.g - 1, key.h + 1, key.l};
        std::vector<int> m2{2};
        std::vector<int> vars{zeta};
        for (int i = 0; i < v; ++i)
            if (spect[i] > 0) {
                m2.push_back(spect[i]);
                vars.push_back(i);
            }
        parts.push_back(compute_spec(k, m2).remap(vars, n));
    }

    // quadratic terms: split the genus, the gamma degree and the spectator multiset
    {
        std::vector<int> picks(v, 0);
        // enumerate sub-multisets of spect
        std::function<void(int, Int)> rec_pick = [&](int i, Int ways) {
            if (i == v) {
                int jtot = std::accumulate(picks.begin(), picks.end(), 0);
                for (int k2 = 0; k2 <= key.g; ++k2)
                    for (int n2 = 0; n2 <= key.l; ++n2) {
                        DiffKey ka{key.g - k2, jtot + 1, key.l - n2};
                        DiffKey kb{k2, h - jtot + 1, n2};
                        if (ka == DiffKey{0, 1, 0} || kb == DiffKey{0, 1, 0}) continue;
                        std::vector<int> rest(v);
                        for (int q = 0; q < v; ++q) rest[q] = spect[q] - picks[q];
                        MultiRat A = cal(ka, zeta, picks);
                        if (A.is_zero()) continue;
                        MultiRat B = cal(kb, zeta, rest);
                        if (B.is_zero()) continue;
                        parts.push_back((A * B).scale_rat(Rat(ways)));
                    }
                return;
            }
            for (int c = 0; c <= spect[i]; ++c) {
                picks[i] = c;
                rec_pick(i + 1, ways * binom(spect[i], c));
            }
            picks[i] = 0;
        };
        rec_pick(0, 1);
    }

    // gamma-lowering term with the Zhukovsky correction
    // (d^2 zeta/dx^2)(dx/dzeta)^2 = -x''/x' = -2/(zeta(zeta^2-1))
    if (key.l >= 1) {
        MultiRat p = sub({key.g, key.h, key.l - 1}, zeta, spect, false);
        MultiRat corr(ZPoly::from_int(n, -2), {{Factor::var(zeta), 1},
                                               {Factor::var_m1(zeta), 1},
                                               {Factor::var_p1(zeta), 1}});
        parts.push_back(p.derivative(zeta));
        parts.push_back(corr * p);
    }

    // integrate: kernel times bracket, residues at the poles inside the unit
    // contour: zeta = 0, +1, -1 and zeta = 1/y for every outer variable y
    MultiRat K = recursion_kernel().remap({newv, zeta}, n);
    MultiRat w(n);
    for (const MultiRat& part : parts) {
        MultiRat f = K * part;
        w = w + f.residue(zeta, Pole::zero());
        w = w + f.residue(zeta, Pole::one());
        w = w + f.residue(zeta, Pole::minus_one());
        for (int j = 0; j < v; ++j) w = w + f.residue(zeta, Pole::inv(j));
        if (fresh) w = w + f.residue(zeta, Pole::inv(newv));
    }
    if (w.uses_var(zeta)) throw std::runtime_error("residue sum retained the contour variable");
    w = w.drop_var(zeta);
    if (fresh) {
        // merge the working copy of the first pattern variable back in
        std::vector<int> m(v + 1);
        for (int i = 0; i < v; ++i) m[i] = i;
        m[v] = 0;
        w = w.remap(m, v);
    }
    return w;
}

void TopRec::run_checks(const DiffKey& key, const MultiRat& w) {
    // A coincident-point factor would break the principal specialization and
    // signals a leaked recursion-only variant: hard error. Poles at z_i = 0
    // and on the antidiagonal z_i z_j = 1 do occur for gamma-deformed keys
    // (e.g. (g,h,l) = (0,2,1)); they are recorded rather than rejected.
    bool has_zero_pole = false, has_antidiag_pole = false;
    for (const auto& [fac, m] : w.den()) {
        if (fac.kind == Factor::Kind::Diff)
            throw std::runtime_error("differential " + key.str() +
                                     " kept a coincident-point factor " + fac.str());
        if (fac.kind == Factor::Kind::Prod) has_antidiag_pole = true;
        if (fac.kind == Factor::Kind::Var) has_zero_pole = true;
    }
    if (has_zero_pole) zero_pole_keys_.push_back(key);
    if (has_antidiag_pole) antidiag_pole_keys_.push_back(key);
    if (!check_invariants) return;
    // bodies live over Q[mu, 1/mu]: nothing else may appear
    for (const auto& t : w.num().terms())
        if (t.c.uses_gen(Gen::U) || t.c.uses_gen(Gen::Eps1) || t.c.uses_gen(Gen::Eps2) ||
            t.c.uses_gen(Gen::Hbar) || t.c.uses_gen(Gen::Gamma))
            throw std::runtime_error("differential body uses a generator beyond mu");
    // permutation symmetry in all points
    for (int i = 0; i + 1 < key.h; ++i) {
        std::vector<int> perm(key.h);
        for (int q = 0; q < key.h; ++q) perm[q] = q;
        std::swap(perm[i], perm[i + 1]);
        if (!(w.remap(perm, key.h) == w))
            throw std::runtime_error("differential " + key.str() + " is not symmetric");
    }
    // parity: z -> -z gives (-1)^h
    MultiRat flipped = w.flip_all_signs();
    if (!(flipped == (key.h % 2 == 0 ? w : w.neg())))
        throw std::runtime_error("differential " + key.str() + " violates parity");
}

}  // namespace chordcount
