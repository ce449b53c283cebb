#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "chordcount/series.hpp"

namespace chordcount {

// Phase-function coefficient table S_{b,p,k}: the x^{-p} t^k coefficient of
// the b-backbone phase function. Row b = 0 holds the Gaussian constants
// (t-degree 0 only). Values live in Q[mu, e1^{+-1}, e2^{+-1}].
struct Hierarchy {
    int b_max = 0;
    int level_max = 0;  // solved through p + k <= level_max per backbone
    std::vector<ParamPoly> s0;  // Gaussian S_{0,p}, index p; zero for odd p and p < 2
    std::map<std::tuple<int, int, int>, ParamPoly> table;  // (b,p,k) -> value, b >= 1

    ParamPoly gauss(int p) const {
        if (p < 2 || p >= static_cast<int>(s0.size())) return {};
        return s0[p];
    }
    ParamPoly get(int b, int p, int k) const {
        if (b == 0) return k == 0 ? gauss(p) : ParamPoly();
        auto it = table.find({b, p, k});
        return it == table.end() ? ParamPoly() : it->second;
    }
};

// Gaussian phase-function constants S_{0,2}, S_{0,4}, ..., from the quadratic
// recursion generated by the s = 0 equation; odd entries are zero.
std::vector<ParamPoly> gaussian_S0(int p_max);

// t^K coefficient of the master hierarchy relation instantiated at backbone b
// and x-power p (p >= -1 embeds the two boundary equations). Zero on a
// correctly solved table.
ParamPoly eq_value(const Hierarchy& st, int b, int p, int K);

// One structured instance: the linear coefficients on the unknown cells plus
// the inhomogeneous part, probed from the bilinear master relation. Valid for
// b = 1 where the relation is linear in the unknowns.
struct LinearInstance {
    std::map<std::tuple<int, int, int>, ParamPoly> coeff;  // (b,p,k) -> coefficient
    ParamPoly constant;
};
LinearInstance instantiate_equation(int b, int p, int K, const Hierarchy& background);

// Solves all S_{b,p,k} with b <= b_max through level p + k <= k_max + 2,
// which pins the free-energy column S_{b,0,k} for k <= k_max.
Hierarchy solve_hierarchy(int b_max, int k_max);

struct AuditReport {
    bool ok = true;
    long instances = 0;
    int p_depth = 0;  // largest x^{-p} column populated during the solve
    std::vector<std::string> failures;
    std::vector<std::string> lines;  // one per instance when recording
};

// Re-substitutes every hierarchy instance touching the solved range.
AuditReport audit_hierarchy(const Hierarchy& st, bool record_lines = false);

// F_b(mu, hbar, gamma; t) through t^k_max: S_{b,0}(t) with the symmetric
// epsilon-polynomials rewritten via e1+e2 = -2 gamma hbar, e1 e2 = -4 hbar^2.
TSeries free_energy(const Hierarchy& st, int b, int k_max);

// Integer series extracted from the free energy; identical to the resolvent
// pipeline's counts for the same indices.
std::vector<Int> ctilde_from_free_energy(const Hierarchy& st, int g, int l, int b, int k_max);

}  // namespace chordcount
