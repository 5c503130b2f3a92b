#pragma once

#include <cstdint>
#include <vector>

#include "pcpa/gf2.hpp"

namespace pcpa {

// The Reed-Muller code RM(r,m): evaluations over F_2^m of the m-variate
// Boolean polynomials of degree <= r.  Length n = 2^m, dimension
// k = sum_{i<=r} C(m,i).
//
// Message convention: message symbol j is the coefficient of the j-th
// monomial in graded lexicographic order (degree ascending; within a degree,
// variable subsets {i_1 < i_2 < ...} in lexicographic order, which is
// descending order of the packed monomial mask).
class RmCode {
public:
    RmCode(int r, int m);

    int order() const { return r_; }
    int vars() const { return m_; }
    std::size_t length() const { return n_; }
    std::size_t dimension() const { return k_; }

    // Monomial masks in row order, packed with the point bit convention
    // (variable i <-> bit m-i).  Monomial mask t evaluates to 1 at z iff
    // (z & t) == t.
    const std::vector<Point>& monomials() const { return monomials_; }
    const std::vector<Word>& generator() const { return generator_; }

    Word encode(const Word& message) const;
    bool is_codeword(const Word& v) const;

private:
    int r_, m_;
    std::size_t n_, k_;
    std::vector<Point> monomials_;
    std::vector<Word> generator_;
    // row-echelon copy of the generator, packed 64 bits per limb, for
    // membership tests; pivots_ holds each row's leading bit index
    std::vector<std::vector<std::uint64_t>> echelon_;
    std::vector<std::size_t> pivots_;
};

}  // namespace pcpa
