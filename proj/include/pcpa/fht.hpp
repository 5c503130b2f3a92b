#pragma once

#include <span>

#include "pcpa/llr.hpp"

namespace pcpa {

// In-place Walsh-Hadamard transform over natural binary index order.
// After the call, data[a] = sum_z (-1)^{<a,z>} input[z].
void fht(std::span<double> data);

struct Rm1Decision {
    Word codeword;   // length 2^k
    double metric;   // max of sum_z (1 - 2 v(z)) L(z) over RM(1,k)
    Point mask;      // linear part a: v(z) = constant XOR <a,z>
    int constant;    // c0
};

// Maximum-likelihood decoding of RM(1,k) from an LLR vector of length 2^k,
// via one length-2^k Hadamard transform.  The transform coefficient at a is
// the correlation of the codeword (a, c0=0); its negation covers (a, c0=1).
// Exact ties resolve to the lowest codeword index, index = c0 * 2^k + a.
Rm1Decision fht_ml_decode_rm1(const LlrVector& llr);

}  // namespace pcpa
