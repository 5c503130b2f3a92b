#pragma once

#include <optional>
#include <span>

#include "pcpa/collection.hpp"
#include "pcpa/fht.hpp"
#include "pcpa/llr.hpp"
#include "pcpa/rm_code.hpp"

namespace pcpa {

// Configuration of a projection-aggregation decoder for RM(s+1, m), where m
// and s are the collection's dimensions.
struct DecoderConfig {
    SubspaceCollection collection;
    int t_max = 3;
    // scaling factor applied to the aggregation sum; 0 selects the default
    // 1/|collection|
    double omega = 0.0;
    // stop early once the hard-decision word repeats and is a codeword
    bool early_stop = false;
    // add the received LLR vector to each aggregation sum (off matches the
    // plain aggregation rule)
    bool include_channel_prior = false;
    // keep the per-iteration projection estimates in the outcome
    bool record_estimates = false;
};

struct DecodeOutcome {
    Word codeword;
    LlrVector final_llr;
    int iterations_run = 0;
    bool converged = false;
    // [iteration][collection index] -> decoded projection word; filled only
    // when record_estimates is set
    std::vector<std::vector<Word>> projection_estimates;
};

// Aggregation rule: for every z, the scaled sum over the collection of
// (1 - 2 v_i(T_i(z))) * partial projection of l_prev over T_i(z) - {z}, in
// collection index order, clamped.  `prior`, when nonempty, is added to the
// sum before clamping.
LlrVector aggregate(const LlrVector& l_prev, std::span<const CosetTable> tables,
                    std::span<const Word> estimates, double omega,
                    std::span<const double> prior = {});
LlrVector aggregate(const LlrVector& l_prev,
                    const std::vector<std::pair<Subspace, Word>>& estimates, double omega);

// Projection-aggregation decoder with precomputed coset tables.  decode() is
// const and deterministic; one instance can serve concurrent callers.
class PaDecoder {
public:
    explicit PaDecoder(DecoderConfig config);

    const DecoderConfig& config() const { return config_; }
    const RmCode& code() const { return code_; }
    double omega() const { return omega_; }
    std::size_t projections_per_iteration() const { return tables_.size(); }

    DecodeOutcome decode(const LlrVector& llr) const;

private:
    DecoderConfig config_;
    RmCode code_;
    std::vector<CosetTable> tables_;
    double omega_;
};

// One-shot decode with the given collection.
DecodeOutcome pcpa_decode(const LlrVector& llr, const DecoderConfig& config);

// CPA: projection-aggregation over the full enumeration of (r-1)-dimensional
// subspaces.  Requires r >= 2.
DecodeOutcome cpa_decode(const LlrVector& llr, int r, int m, int t_max = 3, double omega = 0.0);

}  // namespace pcpa
