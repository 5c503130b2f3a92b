#include "pcpa/rm_code.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace pcpa {

namespace {

std::size_t limb_count(std::size_t n) { return (n + 63) / 64; }

std::vector<std::uint64_t> pack_word(const Word& w) {
    std::vector<std::uint64_t> packed(limb_count(w.size()), 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] & 1u) packed[i / 64] |= std::uint64_t{1} << (i % 64);
    return packed;
}

std::size_t leading_bit(const std::vector<std::uint64_t>& row) {
    for (std::size_t limb = 0; limb < row.size(); ++limb)
        if (row[limb]) return limb * 64 + static_cast<std::size_t>(std::countr_zero(row[limb]));
    return SIZE_MAX;
}

void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

RmCode::RmCode(int r, int m) : r_(r), m_(m) {
    if (m < 1 || m > kMaxAmbientDim) throw std::invalid_argument("RmCode: m out of range");
    if (r < 0 || r > m) throw std::invalid_argument("RmCode: need 0 <= r <= m");
    n_ = std::size_t{1} << m;

    // degree ascending, mask descending within a degree
    for (int d = 0; d <= r; ++d) {
        std::vector<Point> of_degree;
        for (Point t = 0; t < n_; ++t)
            if (std::popcount(t) == d) of_degree.push_back(t);
        std::sort(of_degree.rbegin(), of_degree.rend());
        monomials_.insert(monomials_.end(), of_degree.begin(), of_degree.end());
    }
    k_ = monomials_.size();

    generator_.reserve(k_);
    for (Point t : monomials_) {
        Word row(n_);
        for (Point z = 0; z < n_; ++z) row[z] = (z & t) == t ? 1 : 0;
        generator_.push_back(std::move(row));
    }

    // The row for monomial t has its first 1 at index t (z superset of t
    // implies z >= t), so rows already have distinct pivots; sorting by pivot
    // makes a single ascending reduction pass sufficient for membership.
    std::vector<std::size_t> order(k_);
    for (std::size_t j = 0; j < k_; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return monomials_[a] < monomials_[b]; });
    for (std::size_t j : order) {
        auto packed = pack_word(generator_[j]);
        pivots_.push_back(leading_bit(packed));
        echelon_.push_back(std::move(packed));
    }
}

Word RmCode::encode(const Word& message) const {
    if (message.size() != k_) throw std::invalid_argument("encode: message length must equal k");
    Word out(n_, 0);
    for (std::size_t j = 0; j < k_; ++j) {
        if (!(message[j] & 1u)) continue;
        const Word& row = generator_[j];
        for (std::size_t i = 0; i < n_; ++i) out[i] ^= row[i];
    }
    return out;
}

bool RmCode::is_codeword(const Word& v) const {
    if (v.size() != n_) throw std::invalid_argument("is_codeword: word length must equal 2^m");
    auto packed = pack_word(v);
    for (std::size_t i = 0; i < echelon_.size(); ++i)
        if (leading_bit(packed) == pivots_[i]) xor_into(packed, echelon_[i]);
    return leading_bit(packed) == SIZE_MAX;
}

}  // namespace pcpa
