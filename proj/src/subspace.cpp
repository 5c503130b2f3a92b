#include "pcpa/subspace.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pcpa {

namespace {

void check_ambient(int m) {
    if (m < 1 || m > kMaxAmbientDim) throw std::invalid_argument("ambient dimension m out of range");
}

// Inserts v into an RREF basis kept in decreasing row order, returns false if
// v was already in the span.
bool rref_insert(std::vector<Point>& basis, Point v) {
    // Clear every existing pivot column from v, not just its leading bit;
    // rows are in decreasing pivot order and each XOR only touches bits at or
    // below that row's pivot, so one pass fully reduces v.
    for (Point b : basis) {
        if ((v >> (std::bit_width(b) - 1)) & 1u) v ^= b;
    }
    if (v == 0) return false;
    // clear the new pivot column in existing rows
    const int pivot = std::bit_width(v) - 1;
    for (Point& b : basis) {
        if ((b >> pivot) & 1u) b ^= v;
    }
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
    return true;
}

}  // namespace

Subspace::Subspace(int m) : m_(m) { check_ambient(m); }

bool Subspace::contains(Point z) const {
    for (Point b : basis_) {
        if (std::bit_width(z) == std::bit_width(b)) z ^= b;
    }
    return z == 0;
}

std::vector<Point> Subspace::elements() const {
    std::vector<Point> elems{0};
    elems.reserve(std::size_t{1} << basis_.size());
    for (Point b : basis_) {
        const std::size_t count = elems.size();
        for (std::size_t i = 0; i < count; ++i) elems.push_back(elems[i] ^ b);
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

std::string Subspace::to_string() const {
    if (basis_.empty()) throw std::invalid_argument("cannot format the zero subspace as text");
    std::string out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) out += ',';
        out += point_to_string(basis_[i], m_);
    }
    return out;
}

Subspace Subspace::from_string(const std::string& text) {
    std::vector<Point> vectors;
    std::size_t width = 0;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (width == 0) width = token.size();
        if (token.size() != width)
            throw data_error("subspace line has ragged vector widths: '" + text + "'");
        vectors.push_back(point_from_string(token));
    }
    if (vectors.empty() || width == 0) throw data_error("empty subspace line");
    Subspace b = canonicalize(vectors, static_cast<int>(width));
    if (b.dim() != static_cast<int>(vectors.size()))
        throw data_error("subspace line is not a basis (dependent vectors): '" + text + "'");
    return b;
}

std::uint64_t gaussian_binomial(int m, int s) {
    if (m < 0 || m > kMaxAmbientDim || s < 0 || s > m)
        throw std::invalid_argument("gaussian_binomial: need 0 <= s <= m <= 20");
    // prefix products with ascending denominators stay integral
    unsigned __int128 acc = 1;
    for (int i = 1; i <= s; ++i) {
        acc *= (std::uint64_t{1} << (m - i + 1)) - 1;
        acc /= (std::uint64_t{1} << i) - 1;
    }
    if (acc > static_cast<unsigned __int128>(~std::uint64_t{0}))
        throw std::overflow_error("gaussian_binomial: result exceeds 64 bits");
    return static_cast<std::uint64_t>(acc);
}

Subspace canonicalize(std::span<const Point> vectors, int m) {
    check_ambient(m);
    if (vectors.empty()) throw std::invalid_argument("canonicalize: empty vector list");
    Subspace out(m);
    for (Point v : vectors) {
        if (v >= (Point{1} << m)) throw std::invalid_argument("canonicalize: vector outside F_2^m");
        rref_insert(out.basis_, v);
    }
    return out;
}

std::vector<Subspace> enumerate_subspaces(int m, int s) {
    check_ambient(m);
    if (s < 0 || s > m) throw std::invalid_argument("enumerate_subspaces: need 0 <= s <= m");

    std::vector<Subspace> out;
    out.reserve(gaussian_binomial(m, s));
    if (s == 0) {
        out.emplace_back(m);
        return out;
    }

    // Generate every RREF matrix directly: a pivot column per row (strictly
    // increasing), free entries to the right of each pivot in non-pivot columns.
    std::vector<int> pivots(s);  // pivot columns, 1-based, increasing
    for (int i = 0; i < s; ++i) pivots[i] = i + 1;
    while (true) {
        std::vector<int> free_bits;  // bit positions, fastest-varying last
        for (int i = 0; i < s; ++i) {
            for (int c = pivots[i] + 1; c <= m; ++c) {
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free_bits.push_back(m - c + (i << 8));  // encode row in high bits
            }
        }
        const std::size_t total_free = free_bits.size();
        for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << total_free); ++fill) {
            Subspace b(m);
            b.basis_.assign(static_cast<std::size_t>(s), 0);
            for (int i = 0; i < s; ++i) b.basis_[static_cast<std::size_t>(i)] = Point{1} << (m - pivots[i]);
            for (std::size_t j = 0; j < total_free; ++j) {
                if ((fill >> j) & 1u) {
                    const int row = free_bits[j] >> 8;
                    const int pos = free_bits[j] & 0xff;
                    b.basis_[static_cast<std::size_t>(row)] |= Point{1} << pos;
                }
            }
            out.push_back(std::move(b));
        }

        // next pivot combination
        int i = s - 1;
        while (i >= 0 && pivots[i] == m - (s - 1 - i)) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < s; ++j) pivots[j] = pivots[j - 1] + 1;
    }

    std::sort(out.begin(), out.end());
    return out;
}

int intersect_dim(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("intersect_dim: mismatched ambient dimensions");
    std::vector<Point> stacked;
    for (Point v : a.basis()) rref_insert(stacked, v);
    int rank = static_cast<int>(stacked.size());
    for (Point v : b.basis()) rank += rref_insert(stacked, v) ? 1 : 0;
    return a.dim() + b.dim() - rank;
}

CosetTable build_coset_table(const Subspace& b) {
    const int m = b.ambient();
    const std::size_t space = std::size_t{1} << m;
    const std::size_t coset_size = std::size_t{1} << b.dim();

    CosetTable table{b, {}, std::vector<std::uint32_t>(space, UINT32_MAX), {}};
    table.representatives.reserve(space / coset_size);
    table.members.reserve(space);

    std::vector<Point> span = b.elements();
    std::vector<Point> coset(coset_size);
    for (Point z = 0; z < space; ++z) {
        if (table.coset_of[z] != UINT32_MAX) continue;
        // ascending scan: z is the minimum of its coset
        const auto index = static_cast<std::uint32_t>(table.representatives.size());
        table.representatives.push_back(z);
        for (std::size_t j = 0; j < coset_size; ++j) coset[j] = z ^ span[j];
        std::sort(coset.begin(), coset.end());
        for (Point p : coset) {
            table.coset_of[p] = index;
            table.members.push_back(p);
        }
    }
    return table;
}

Word project_binary(const Word& v, const CosetTable& table) {
    const std::size_t space = std::size_t{1} << table.subspace.ambient();
    if (v.size() != space) throw std::invalid_argument("project_binary: word length does not match 2^m");
    Word out(table.coset_count(), 0);
    for (std::size_t z = 0; z < space; ++z) out[table.coset_of[z]] ^= v[z] & 1u;
    return out;
}

Word project_binary(const Word& v, const Subspace& b) { return project_binary(v, build_coset_table(b)); }

}  // namespace pcpa
