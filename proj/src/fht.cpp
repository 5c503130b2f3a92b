#include "pcpa/fht.hpp"

#include <bit>
#include <stdexcept>

namespace pcpa {

void fht(std::span<double> data) {
    const std::size_t n = data.size();
    if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("fht: length must be a power of two");
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t block = 0; block < n; block += half << 1) {
            for (std::size_t i = block; i < block + half; ++i) {
                const double a = data[i];
                const double b = data[i + half];
                data[i] = a + b;
                data[i + half] = a - b;
            }
        }
    }
}

Rm1Decision fht_ml_decode_rm1(const LlrVector& llr) {
    const std::size_t n = llr.size();
    if (n < 2 || !std::has_single_bit(n)) throw std::invalid_argument("fht_ml_decode_rm1: length must be 2^k, k >= 1");

    LlrVector coeffs = llr;
    fht(coeffs);

    // scan c0 = 0 first, then c0 = 1, each with a ascending: keeps the first
    // maximum encountered, which is the lowest codeword index
    Rm1Decision best{{}, coeffs[0], 0, 0};
    for (Point a = 1; a < n; ++a) {
        if (coeffs[a] > best.metric) best = {{}, coeffs[a], a, 0};
    }
    for (Point a = 0; a < n; ++a) {
        if (-coeffs[a] > best.metric) best = {{}, -coeffs[a], a, 1};
    }

    best.codeword.resize(n);
    for (Point z = 0; z < n; ++z)
        best.codeword[z] = static_cast<std::uint8_t>(best.constant ^ parity(best.mask & z));
    return best;
}

}  // namespace pcpa
