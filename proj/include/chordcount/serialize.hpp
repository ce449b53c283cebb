#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "chordcount/multirat.hpp"
#include "chordcount/series.hpp"

namespace chordcount {

// Canonical plain-text forms: sorted monomials, decimal integer strings.
// Round-trips are bit-exact: serialize(parse(s)) == s for canonical s.

std::string serialize_zpoly(const ZPoly& p);
std::optional<ZPoly> parse_zpoly(std::istream& in, std::string* err = nullptr);

std::string serialize_multirat(const MultiRat& f);
std::optional<MultiRat> parse_multirat(std::istream& in, std::string* err = nullptr);
std::optional<MultiRat> parse_multirat_str(const std::string& s, std::string* err = nullptr);

std::string serialize_series(const TSeries& s);
std::optional<TSeries> parse_series(std::istream& in, std::string* err = nullptr);
std::optional<TSeries> parse_series_str(const std::string& s, std::string* err = nullptr);

}  // namespace chordcount
