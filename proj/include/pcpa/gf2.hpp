#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcpa {

// A point z = (z_1,...,z_m) of F_2^m, packed into the low m bits with z_1 as
// the most significant bit.  Component v_i of a length-2^m word corresponds to
// the point whose packed value is i.
using Point = std::uint32_t;

// A binary word, one byte per bit.  Length 2^m for codewords and error
// patterns, 2^(m-s) for projections.
using Word = std::vector<std::uint8_t>;

inline constexpr int kMaxAmbientDim = 20;

// Errors raised while reading or writing files (bad format, wrong widths).
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

std::string point_to_string(Point z, int m);
Point point_from_string(const std::string& text);

// Codeword <-> binary string, string position i holds component v_i.
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& text);

inline Word hard_decision(const std::vector<double>& llr) {
    Word w(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i) w[i] = llr[i] < 0.0 ? 1 : 0;
    return w;
}

}  // namespace pcpa
