#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "pcpa/gf2.hpp"

namespace pcpa {

// An s-dimensional subspace of F_2^m, stored as its unique reduced
// row-echelon basis.  Rows are ordered with pivot columns strictly
// increasing (column 1 = z_1 = most significant bit), so row values are
// strictly decreasing and two Subspace objects denote the same point set
// iff they compare equal.
class Subspace {
public:
    // The zero subspace {0} of F_2^m.
    explicit Subspace(int m);

    int ambient() const { return m_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Point>& basis() const { return basis_; }

    bool contains(Point z) const;

    // All 2^s member points in ascending order.
    std::vector<Point> elements() const;

    // Basis vectors as fixed-width binary strings joined by commas,
    // e.g. "00010,00100".  Requires dim >= 1.
    std::string to_string() const;
    // Parses the comma-joined format; ambient m inferred from string width.
    static Subspace from_string(const std::string& text);

    friend bool operator==(const Subspace&, const Subspace&) = default;
    // Orders by ambient dimension, then basis size, then basis vectors
    // lexicographically.  This is the enumeration order.
    friend std::strong_ordering operator<=>(const Subspace&, const Subspace&) = default;

private:
    friend Subspace canonicalize(std::span<const Point> vectors, int m);
    friend std::vector<Subspace> enumerate_subspaces(int m, int s);

    int m_;
    std::vector<Point> basis_;
};

// Number of s-dimensional subspaces of F_2^m (Gaussian binomial), exact.
std::uint64_t gaussian_binomial(int m, int s);

// RREF basis of the span of the given vectors.  An all-zero input yields
// the zero subspace.
Subspace canonicalize(std::span<const Point> vectors, int m);

// All s-dimensional subspaces of F_2^m in ascending canonical-basis order.
std::vector<Subspace> enumerate_subspaces(int m, int s);

// dim(a) + dim(b) - rank of the stacked bases.
int intersect_dim(const Subspace& a, const Subspace& b);

// The partition of F_2^m into the 2^(m-s) cosets of a subspace.  Cosets are
// indexed by ascending minimum member ("representative"); coset 0 is the
// subspace itself.
struct CosetTable {
    Subspace subspace;
    std::vector<Point> representatives;       // size 2^(m-s)
    std::vector<std::uint32_t> coset_of;      // size 2^m, point -> coset index
    std::vector<Point> members;               // size 2^m, grouped by coset, ascending

    std::size_t coset_count() const { return representatives.size(); }
    std::size_t coset_size() const { return std::size_t{1} << subspace.dim(); }
    std::span<const Point> coset_members(std::uint32_t t) const {
        return {members.data() + std::size_t{t} * coset_size(), coset_size()};
    }
};

CosetTable build_coset_table(const Subspace& b);

// Component at coset T is the XOR of v over T's members.
Word project_binary(const Word& v, const CosetTable& table);
Word project_binary(const Word& v, const Subspace& b);

}  // namespace pcpa
