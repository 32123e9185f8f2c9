#pragma once

// JSON coefficient files.
//
//   Laurent:   {"k": K, "coeffs": [c(-K) .. c(K)]}
//   Rational:  {"k": K, "num": [..], "den": [..]}      powers -K..K ascending
//   Three-part:{"kind": "iir", "b_plus": [..], "a_plus": [..], "b_zero": x, "parity": "sym"|"anti"}
//   FIR:       {"kind": "fir", "taps": [h(-K) .. h(K)], "parity": .., "d": .., plus the rational form}

#include <string>

#include "vmf/filters.hpp"

namespace vmf {

std::string to_json(const LaurentPoly& p);
std::string to_json(const RationalTF& tf);
std::string to_json(const ThreePartIIR& f);
std::string to_json(const FirKernel& k);
std::string to_json(const Filter1D& f);

LaurentPoly laurent_from_json(const std::string& text);
RationalTF rational_from_json(const std::string& text);
// Accepts any of the filter layouts above; bare rationals are realized as FIR
// when the denominator is trivial and decomposed otherwise.
Filter1D filter_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace vmf
