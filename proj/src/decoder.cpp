#include "pcpa/decoder.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pcpa {

namespace {

// Shared aggregation core.  `tanh_half[z]` caches tanh(l_prev[z] / 2).
LlrVector aggregate_impl(const LlrVector& l_prev, std::span<const CosetTable> tables,
                         std::span<const Word> estimates, double omega,
                         std::span<const double> prior) {
    if (tables.size() != estimates.size()) {
        throw std::invalid_argument("aggregate: tables and estimates differ in size");
    }
    if (tables.empty()) {
        throw std::invalid_argument("aggregate: empty collection");
    }
    const int m = tables.front().subspace.ambient();
    const std::size_t n = std::size_t{1} << m;
    if (l_prev.size() != n) {
        throw std::invalid_argument("aggregate: LLR length does not match ambient space");
    }
    if (!prior.empty() && prior.size() != n) {
        throw std::invalid_argument("aggregate: prior length does not match ambient space");
    }

    std::vector<double> tanh_half(n);
    for (std::size_t z = 0; z < n; ++z) {
        tanh_half[z] = std::tanh(clamp_llr(l_prev[z]) / 2.0);
    }

    LlrVector out(n, 0.0);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const CosetTable& table = tables[i];
        const Word& estimate = estimates[i];
        if (table.subspace.ambient() != m) {
            throw std::invalid_argument("aggregate: mixed ambient dimensions");
        }
        if (estimate.size() != table.representatives.size()) {
            throw std::invalid_argument("aggregate: estimate length does not match coset count");
        }
        const std::size_t coset_size = std::size_t{1} << table.subspace.dim();
        for (std::size_t c = 0; c < table.representatives.size(); ++c) {
            const double sign = estimate[c] ? -1.0 : 1.0;
            auto members = table.coset_members(c);
            // partial projection over the coset minus z: divide the full
            // tanh product by z's own factor when safe, else recompute.
            double full = 1.0;
            bool tiny = false;
            for (Point u : members) {
                full *= tanh_half[u];
                if (std::abs(tanh_half[u]) < 1e-150) tiny = true;
            }
            for (std::size_t j = 0; j < coset_size; ++j) {
                const Point z = members[j];
                double partial;
                if (!tiny) {
                    partial = full / tanh_half[z];
                } else {
                    partial = 1.0;
                    for (std::size_t t = 0; t < coset_size; ++t) {
                        if (t != j) partial *= tanh_half[members[t]];
                    }
                }
                out[z] += sign * from_tanh_product(partial);
            }
        }
    }

    for (std::size_t z = 0; z < n; ++z) {
        double value = out[z] * omega;
        if (!prior.empty()) value += prior[z];
        out[z] = clamp_llr(value);
    }
    return out;
}

}  // namespace

LlrVector aggregate(const LlrVector& l_prev, std::span<const CosetTable> tables,
                    std::span<const Word> estimates, double omega, std::span<const double> prior) {
    return aggregate_impl(l_prev, tables, estimates, omega, prior);
}

LlrVector aggregate(const LlrVector& l_prev,
                    const std::vector<std::pair<Subspace, Word>>& estimates, double omega) {
    std::vector<CosetTable> tables;
    std::vector<Word> words;
    tables.reserve(estimates.size());
    words.reserve(estimates.size());
    for (const auto& [subspace, word] : estimates) {
        tables.push_back(build_coset_table(subspace));
        words.push_back(word);
    }
    return aggregate_impl(l_prev, tables, words, omega, {});
}

PaDecoder::PaDecoder(DecoderConfig config)
    : config_(std::move(config)),
      code_(config_.collection.dim() + 1, config_.collection.ambient()) {
    if (config_.t_max < 1) {
        throw std::invalid_argument("decoder: t_max must be >= 1");
    }
    if (config_.omega < 0.0) {
        throw std::invalid_argument("decoder: omega must be >= 0");
    }
    omega_ = config_.omega > 0.0
                 ? config_.omega
                 : 1.0 / static_cast<double>(config_.collection.size());
    tables_.reserve(config_.collection.size());
    for (const Subspace& subspace : config_.collection.members()) {
        tables_.push_back(build_coset_table(subspace));
    }
}

DecodeOutcome PaDecoder::decode(const LlrVector& llr) const {
    const std::size_t n = code_.length();
    if (llr.size() != n) {
        throw std::invalid_argument("decode: LLR length does not match block length");
    }
    DecodeOutcome outcome;
    LlrVector current = llr;
    for (double& v : current) v = clamp_llr(v);
    Word previous_word = hard_decision(current);

    std::vector<Word> estimates(tables_.size());
    for (int iter = 0; iter < config_.t_max; ++iter) {
        std::vector<Word> recorded;
        if (config_.record_estimates) recorded.reserve(tables_.size());
        for (std::size_t i = 0; i < tables_.size(); ++i) {
            LlrVector projected = project_llr(current, tables_[i]);
            Rm1Decision decision = fht_ml_decode_rm1(projected);
            estimates[i] = std::move(decision.codeword);
            if (config_.record_estimates) recorded.push_back(estimates[i]);
        }
        std::span<const double> prior;
        if (config_.include_channel_prior) prior = std::span<const double>(llr);
        current = aggregate_impl(current, tables_, estimates, omega_, prior);
        outcome.iterations_run = iter + 1;
        if (config_.record_estimates) {
            outcome.projection_estimates.push_back(std::move(recorded));
        }
        if (config_.early_stop) {
            Word word = hard_decision(current);
            if (word == previous_word && code_.is_codeword(word)) {
                outcome.converged = true;
                break;
            }
            previous_word = std::move(word);
        }
    }

    outcome.codeword = hard_decision(current);
    if (!outcome.converged) outcome.converged = code_.is_codeword(outcome.codeword);
    outcome.final_llr = std::move(current);
    return outcome;
}

DecodeOutcome pcpa_decode(const LlrVector& llr, const DecoderConfig& config) {
    PaDecoder decoder(config);
    return decoder.decode(llr);
}

DecodeOutcome cpa_decode(const LlrVector& llr, int r, int m, int t_max, double omega) {
    if (r < 2) {
        throw std::invalid_argument("cpa_decode: requires r >= 2");
    }
    if (r > m) {
        throw std::invalid_argument("cpa_decode: requires r <= m");
    }
    DecoderConfig config{SubspaceCollection(m, r - 1, enumerate_subspaces(m, r - 1))};
    config.t_max = t_max;
    config.omega = omega;
    return pcpa_decode(llr, config);
}

}  // namespace pcpa
