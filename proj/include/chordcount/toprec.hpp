#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "chordcount/multirat.hpp"

namespace chordcount {

// Index of a multi-linear differential on the Gaussian curve: genus g,
// number of points h, gamma-degree l. The recursion weight is
// chi_bar = 2g - 2 + h + l; the three closed-form seeds sit at chi_bar <= 0
// and everything with chi_bar >= 1 comes out of the recursion.
struct DiffKey {
    int g = 0, h = 1, l = 0;

    int chi_bar() const { return 2 * g - 2 + h + l; }
    bool is_seed() const {
        return (g == 0 && h == 1 && l == 0) || (g == 0 && h == 2 && l == 0) ||
               (g == 0 && h == 1 && l == 1);
    }
    auto operator<=>(const DiffKey&) const = default;
    std::string str() const;
};

struct Differential {
    DiffKey key;
    MultiRat body;  // W / (dz_1 ... dz_h), variables 0..h-1
};

// Seed data. Bodies are coefficients of prod dz_i.
MultiRat seed_one_point_planar();   // (0,1,0): mu (z^2-1)/z^3
MultiRat seed_one_point_gamma();    // (0,1,1): -1/(z(z-1)(z+1))
MultiRat seed_two_point();          // (0,2,0): 1/(z0 z1 - 1)^2
MultiRat seed_two_point_variant();  // recursion-only variant with the coincident-point term

// Kernel dS(z,zeta) / (y(x(zeta)) dx(zeta)) in variables (0 = z, 1 = zeta):
// zeta^3 / (mu (z - zeta)(zeta z - 1)(zeta^2 - 1)).
MultiRat recursion_kernel();

// In-memory store of computed full differentials with an optional on-disk
// cache in the canonical text serialization (one file per key).
class MemoStore {
public:
    MemoStore() = default;
    explicit MemoStore(std::string cache_dir);

    bool contains(const DiffKey& k) const { return map_.count(k) != 0; }
    const MultiRat& get(const DiffKey& k) const;
    void put(const DiffKey& k, MultiRat body);

    std::vector<DiffKey> keys() const;
    const std::string& cache_dir() const { return dir_; }
    static std::string cache_file_name(const DiffKey& k);
    static bool parse_cache_file_name(const std::string& name, DiffKey* out);

private:
    std::map<DiffKey, MultiRat> map_;
    std::string dir_;
    void load_dir();
};

class TopRec {
public:
    explicit TopRec(MemoStore* memo) : memo_(memo) {}

    // Full multivariate differential (variables 0..h-1); seeds come from
    // closed form, everything else from the residue recursion.
    const MultiRat& compute(const DiffKey& key);

    // Specialization W(y_0^{m_0}, y_1^{m_1}, ...) with sum m_i = h, returned
    // in mults.size() variables. Computed either from the stored full body or
    // directly by the recursion carrying only the distinct variables, which
    // keeps the large-h gamma-sector keys tractable.
    MultiRat compute_spec(const DiffKey& key, const std::vector<int>& mults);

    // W^{(g,h)}_l (z, z, ..., z) as a univariate body
    MultiRat compute_diagonal(const DiffKey& key);

    // keys whose bodies have a pole at z_i = 0, discovered so far
    const std::vector<DiffKey>& zero_pole_keys() const { return zero_pole_keys_; }
    // keys whose bodies have a pole on an antidiagonal z_i z_j = 1
    const std::vector<DiffKey>& antidiag_pole_keys() const { return antidiag_pole_keys_; }

    bool check_invariants = true;

private:
    MemoStore* memo_;
    std::map<std::pair<DiffKey, std::vector<int>>, MultiRat> specs_;
    std::map<DiffKey, bool> full_ok_;
    std::vector<DiffKey> zero_pole_keys_;
    std::vector<DiffKey> antidiag_pole_keys_;

    // whether materializing the full body (and its whole dependency cone) is
    // affordable; the gamma sector at h >= 3 is not
    bool full_ok(const DiffKey& key);
    MultiRat spec_canonical(const DiffKey& key, const std::vector<int>& mults);
    MultiRat assemble_and_integrate(const DiffKey& key, const std::vector<int>& mults);
    void run_checks(const DiffKey& key, const MultiRat& w);
};

}  // namespace chordcount
