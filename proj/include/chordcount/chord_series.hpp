#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "chordcount/series.hpp"
#include "chordcount/toprec.hpp"

namespace chordcount {

// Integer generating series C-tilde_{g,l,b}(w): coefficient k counts
// connected diagrams with k chords in the (g, l, b) sector.
struct CtildeSeries {
    int g = 0, l = 0, b = 1;
    std::vector<Int> coeff;  // index k = 0..k_max
};

enum class CountMode { Orientable, NonOriented, NonOrientableOnly };

std::string count_mode_name(CountMode m);

// Exact integer count table keyed by (g_or_h, b, k).
struct CountTable {
    CountMode mode = CountMode::Orientable;
    std::map<std::tuple<int, int, int>, Int> entries;
};

// Resolvent pipeline: diagonal specialization of the recursion output,
// extraction of integer series, and combination into count tables.
class ChordEngine {
public:
    explicit ChordEngine(MemoStore* memo) : rec_(memo) {}

    TopRec& rec() { return rec_; }

    // W^{(g,b)}_l(z,...,z)/dx^b expanded at x = infinity, as a series in
    // xi = 1/x through xi^(b + 2 k_max).
    TSeries diagonal_resolvent(int g, int l, int b, int k_max);

    // strips mu-grading and sign, checks integrality, returns counts 0..k_max
    const CtildeSeries& extract_ctilde(int g, int l, int b, int k_max);

    Int orientable_count(int g, int b, int k);
    Int nonoriented_count(int h, int b, int k);     // includes orientable surfaces at even h
    Int nonorientable_only_count(int h, int b, int k);
    Int count(CountMode mode, int g_or_h, int b, int k);

    CountTable table(CountMode mode, int gh_lo, int gh_hi, int b_lo, int b_hi, int k_max);

private:
    TopRec rec_;
    std::map<std::tuple<int, int, int>, CtildeSeries> ctilde_;
};

}  // namespace chordcount
