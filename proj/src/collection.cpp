#include "pcpa/collection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "pcpa/rng.hpp"

namespace pcpa {

namespace {

constexpr std::uint64_t kSpreadSearchBudget = 200000;

void check_pair(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("pair_correlation: mismatched ambient dimensions");
    if (a.dim() != b.dim()) throw std::invalid_argument("pair_correlation: mismatched subspace dimensions");
    if (a.dim() < 1) throw std::invalid_argument("pair_correlation: subspace dimension must be >= 1");
}

std::uint64_t pairwise_intersection_sum(const std::vector<Subspace>& members) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        total += static_cast<std::uint64_t>(members[i].dim());  // diagonal
        for (std::size_t j = i + 1; j < members.size(); ++j)
            total += 2u * static_cast<std::uint64_t>(intersect_dim(members[i], members[j]));
    }
    return total;
}

// Depth-first search, in enumeration order, for `target` subspaces with
// pairwise trivial intersections.  Bounded by a node budget; returns the
// longest prefix found (indices into `all`).  Intersections are trivial iff
// the nonzero-element sets are disjoint, so candidates are tested against a
// bitmask of the elements already covered.
std::vector<std::size_t> spread_search(const std::vector<Subspace>& all, std::size_t target) {
    if (all.empty() || target == 0) return {};
    const int m = all.front().ambient();
    const std::size_t words = ((std::size_t{1} << m) + 63) / 64;

    std::vector<std::vector<std::uint64_t>> masks(all.size(),
                                                  std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (Point z : all[i].elements()) {
            if (z != 0) masks[i][z / 64] |= std::uint64_t{1} << (z % 64);
        }
    }

    std::vector<std::uint64_t> used(words, 0);
    std::vector<std::size_t> chosen, best;
    std::uint64_t nodes = 0;

    auto disjoint = [&](std::size_t j) {
        for (std::size_t w = 0; w < words; ++w)
            if (masks[j][w] & used[w]) return false;
        return true;
    };

    auto recurse = [&](auto&& self, const std::vector<std::size_t>& avail) -> bool {
        if (chosen.size() == target) return true;
        if (chosen.size() + avail.size() < target) return false;
        for (std::size_t idx = 0; idx < avail.size(); ++idx) {
            if (++nodes >= kSpreadSearchBudget) return false;
            const std::size_t j = avail[idx];
            chosen.push_back(j);
            for (std::size_t w = 0; w < words; ++w) used[w] |= masks[j][w];
            if (chosen.size() > best.size()) best = chosen;
            std::vector<std::size_t> next;
            for (std::size_t k = idx + 1; k < avail.size(); ++k)
                if (disjoint(avail[k])) next.push_back(avail[k]);
            if (self(self, next)) return true;
            for (std::size_t w = 0; w < words; ++w) used[w] &= ~masks[j][w];
            chosen.pop_back();
        }
        return false;
    };

    std::vector<std::size_t> root(all.size());
    std::iota(root.begin(), root.end(), std::size_t{0});
    if (recurse(recurse, root)) return chosen;
    return best;
}

// Fills `chosen` up to `size` by repeatedly taking the candidate with the
// smallest incremental pairwise intersection sum (ties to the lower index).
void greedy_fill(const std::vector<Subspace>& all, std::vector<std::size_t>& chosen, std::size_t size) {
    std::vector<char> taken(all.size(), 0);
    std::vector<std::uint64_t> increment(all.size(), 0);
    for (std::size_t c : chosen) {
        taken[c] = 1;
        for (std::size_t j = 0; j < all.size(); ++j)
            if (!taken[j]) increment[j] += static_cast<std::uint64_t>(intersect_dim(all[j], all[c]));
    }
    while (chosen.size() < size) {
        std::size_t pick = all.size();
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (taken[j]) continue;
            if (pick == all.size() || increment[j] < increment[pick]) pick = j;
        }
        chosen.push_back(pick);
        taken[pick] = 1;
        for (std::size_t j = 0; j < all.size(); ++j)
            if (!taken[j]) increment[j] += static_cast<std::uint64_t>(intersect_dim(all[j], all[pick]));
    }
}

std::string format_r_s(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

}  // namespace

double pair_correlation(const Subspace& a, const Subspace& b) {
    check_pair(a, b);
    return static_cast<double>(intersect_dim(a, b)) / a.dim();
}

SubspaceCollection::SubspaceCollection(int m, int s, std::vector<Subspace> members)
    : m_(m), s_(s), members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("SubspaceCollection: empty member list");
    if (s_ < 1 || s_ > m_) throw std::invalid_argument("SubspaceCollection: need 1 <= s <= m");
    for (const Subspace& b : members_) {
        if (b.ambient() != m_) throw std::invalid_argument("SubspaceCollection: member with wrong ambient dimension");
        if (b.dim() != s_) throw std::invalid_argument("SubspaceCollection: member with wrong subspace dimension");
    }
    std::set<std::vector<Point>> seen;
    for (const Subspace& b : members_)
        if (!seen.insert(b.basis()).second) throw std::invalid_argument("SubspaceCollection: duplicate member");
    intersection_sum_ = pairwise_intersection_sum(members_);
}

double SubspaceCollection::correlation() const {
    return static_cast<double>(intersection_sum_) / s_;
}

double collection_correlation(const std::vector<Subspace>& members) {
    if (members.empty()) throw std::invalid_argument("collection_correlation: empty member list");
    for (const Subspace& b : members) check_pair(members.front(), b);
    return static_cast<double>(pairwise_intersection_sum(members)) / members.front().dim();
}

double theorem1_probability(int s, int d, double epsilon) {
    if (s < 0 || d < 0 || d > s) throw std::invalid_argument("theorem1_probability: need 0 <= d <= s");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("theorem1_probability: need 0 <= epsilon <= 1");
    const double exponent = static_cast<double>((std::uint64_t{1} << (s + 1)) - (std::uint64_t{1} << (d + 1)));
    return 0.5 * (1.0 + std::pow(1.0 - 2.0 * epsilon, exponent));
}

double theorem1_monte_carlo(const Subspace& b1, const Subspace& b2, double epsilon, Point z,
                            std::uint64_t trials, std::uint64_t seed) {
    check_pair(b1, b2);
    if (trials < 1) throw std::invalid_argument("theorem1_monte_carlo: need trials >= 1");
    if (z >= (Point{1} << b1.ambient())) throw std::invalid_argument("theorem1_monte_carlo: point outside F_2^m");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("theorem1_monte_carlo: need 0 <= epsilon <= 1");

    // The two parities depend only on the error bits inside the two cosets,
    // so only the union of those indices is sampled.
    std::vector<Point> coset1, coset2;
    for (Point e : b1.elements()) coset1.push_back(z ^ e);
    for (Point e : b2.elements()) coset2.push_back(z ^ e);
    std::vector<Point> support = coset1;
    support.insert(support.end(), coset2.begin(), coset2.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    auto positions = [&](const std::vector<Point>& coset) {
        std::vector<std::size_t> idx;
        for (Point p : coset)
            idx.push_back(static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), p) - support.begin()));
        return idx;
    };
    const std::vector<std::size_t> idx1 = positions(coset1);
    const std::vector<std::size_t> idx2 = positions(coset2);

    std::vector<std::uint8_t> bits(support.size());
    std::uint64_t agreements = 0;
    Rng rng(mix_seed(seed, 0));
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (auto& bit : bits) bit = rng.bernoulli(epsilon) ? 1 : 0;
        int parity1 = 0, parity2 = 0;
        for (std::size_t i : idx1) parity1 ^= bits[i];
        for (std::size_t i : idx2) parity2 ^= bits[i];
        agreements += parity1 == parity2 ? 1 : 0;
    }
    return static_cast<double>(agreements) / static_cast<double>(trials);
}

BuildStrategy strategy_from_name(const std::string& name) {
    if (name == "greedy_min_rs") return BuildStrategy::greedy_min_rs;
    if (name == "random") return BuildStrategy::random;
    if (name == "spread_first") return BuildStrategy::spread_first;
    throw std::invalid_argument("unknown strategy: '" + name + "'");
}

std::string strategy_name(BuildStrategy strategy) {
    switch (strategy) {
        case BuildStrategy::greedy_min_rs: return "greedy_min_rs";
        case BuildStrategy::random: return "random";
        case BuildStrategy::spread_first: return "spread_first";
    }
    throw std::invalid_argument("unknown strategy value");
}

SubspaceCollection build_collection(int m, int s, std::size_t size, BuildStrategy strategy,
                                    std::uint64_t seed) {
    const std::vector<Subspace> all = enumerate_subspaces(m, s);
    if (size < 1 || size > all.size())
        throw std::invalid_argument("build_collection: size must be between 1 and the enumeration count");

    std::vector<std::size_t> chosen;
    if (size == all.size()) {
        for (std::size_t j = 0; j < all.size(); ++j) chosen.push_back(j);
    } else if (strategy == BuildStrategy::random) {
        std::vector<std::size_t> indices(all.size());
        for (std::size_t j = 0; j < all.size(); ++j) indices[j] = j;
        Rng rng(mix_seed(seed, 0));
        for (std::size_t i = 0; i < size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_u64() % (indices.size() - i));
            std::swap(indices[i], indices[j]);
        }
        chosen.assign(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(chosen.begin(), chosen.end());
    } else {
        if (strategy == BuildStrategy::spread_first) {
            chosen = spread_search(all, size);
            if (chosen.size() > size) chosen.resize(size);
        } else {
            chosen.push_back(0);
        }
        greedy_fill(all, chosen, size);
    }

    std::vector<Subspace> members;
    members.reserve(size);
    for (std::size_t j : chosen) members.push_back(all[j]);
    return {m, s, std::move(members)};
}

void write_collection(const SubspaceCollection& collection, std::ostream& out) {
    out << "# m = " << collection.ambient() << ", s = " << collection.dim()
        << ", size = " << collection.size() << "\n";
    for (const Subspace& b : collection.members()) out << b.to_string() << "\n";
    out << "# r_S = " << format_r_s(collection.correlation()) << "\n";
}

void write_collection_file(const SubspaceCollection& collection, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open collection file for writing: " + path.string());
    write_collection(collection, out);
    if (!out.flush()) throw data_error("failed writing collection file: " + path.string());
}

SubspaceCollection read_collection(std::istream& in) {
    std::vector<Subspace> members;
    bool has_footer = false;
    double footer_r_s = 0.0;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream comment(line.substr(1));
            std::string key, equals;
            if (comment >> key >> equals && key == "r_S" && equals == "=") {
                if (!(comment >> footer_r_s)) throw data_error("unparsable r_S footer: '" + line + "'");
                has_footer = true;
            }
            continue;
        }
        members.push_back(Subspace::from_string(line));
    }
    if (members.empty()) throw data_error("collection file contains no subspaces");
    const int m = members.front().ambient();
    const int s = members.front().dim();
    SubspaceCollection collection = [&] {
        try {
            return SubspaceCollection(m, s, std::move(members));
        } catch (const std::invalid_argument& e) {
            throw data_error(std::string("invalid collection: ") + e.what());
        }
    }();
    if (has_footer && std::abs(collection.correlation() - footer_r_s) > 1e-6)
        throw data_error("r_S footer does not match the collection (footer " + format_r_s(footer_r_s) +
                         ", actual " + format_r_s(collection.correlation()) + ")");
    return collection;
}

SubspaceCollection read_collection_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open collection file: " + path.string());
    try {
        return read_collection(in);
    } catch (const data_error& e) {
        throw data_error(path.string() + ": " + e.what());
    }
}

}  // namespace pcpa
