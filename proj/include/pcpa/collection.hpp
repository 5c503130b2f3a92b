#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pcpa/subspace.hpp"

namespace pcpa {

// Pairwise correlation coefficient dim(a n b) / s of two s-dimensional
// subspaces; 1 for identical subspaces, 0 for a trivial intersection.
double pair_correlation(const Subspace& a, const Subspace& b);

// An ordered list of distinct s-dimensional subspaces together with its
// correlation coefficient r_S (double sum of pairwise coefficients,
// diagonal included).  r_S >= size, with equality iff the members form a
// partial spread.
class SubspaceCollection {
public:
    SubspaceCollection(int m, int s, std::vector<Subspace> members);

    int ambient() const { return m_; }
    int dim() const { return s_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Subspace>& members() const { return members_; }

    // r_S; exact, computed as intersection_sum()/s.
    double correlation() const;
    // sum over all ordered pairs (diagonal included) of dim(B_i n B_j)
    std::uint64_t intersection_sum() const { return intersection_sum_; }

private:
    int m_, s_;
    std::vector<Subspace> members_;
    std::uint64_t intersection_sum_;
};

// r_S of an ad-hoc member list (uniform dimension required).
double collection_correlation(const std::vector<Subspace>& members);

// Probability that the projections of a Bernoulli(epsilon) error pattern
// onto two s-dimensional subspaces with intersection dimension d agree at a
// fixed point's cosets: (1 + (1-2 epsilon)^(2^{s+1} - 2^{d+1})) / 2.
double theorem1_probability(int s, int d, double epsilon);

// Monte Carlo estimator of the same probability: fraction of i.i.d.
// Bernoulli(epsilon) error words whose projections onto b1 and b2 agree at
// z's cosets.
double theorem1_monte_carlo(const Subspace& b1, const Subspace& b2, double epsilon, Point z,
                            std::uint64_t trials, std::uint64_t seed);

enum class BuildStrategy { greedy_min_rs, random, spread_first };

BuildStrategy strategy_from_name(const std::string& name);
std::string strategy_name(BuildStrategy strategy);

// Builds a size-subspace collection from the full enumeration of
// s-dimensional subspaces of F_2^m:
//  - greedy_min_rs: start from the first enumerated subspace, repeatedly add
//    the candidate with the smallest incremental pairwise intersection sum
//    (ties to the lower enumeration index);
//  - random: uniform sample without replacement, members kept in enumeration
//    order;
//  - spread_first: depth-first search in enumeration order for members with
//    pairwise trivial intersections (bounded node budget), then greedy_min_rs
//    for any remaining slots.
SubspaceCollection build_collection(int m, int s, std::size_t size, BuildStrategy strategy,
                                    std::uint64_t seed);

// Collection text format: one subspace per line (comma-joined fixed-width
// binary basis vectors), '#' comment lines, and a trailing "# r_S = <value>"
// footer written on export and verified on import.
void write_collection(const SubspaceCollection& collection, std::ostream& out);
void write_collection_file(const SubspaceCollection& collection, const std::filesystem::path& path);
SubspaceCollection read_collection(std::istream& in);
SubspaceCollection read_collection_file(const std::filesystem::path& path);

}  // namespace pcpa
