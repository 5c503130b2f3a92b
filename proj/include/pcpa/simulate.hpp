#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcpa/channel.hpp"
#include "pcpa/decoder.hpp"

namespace pcpa {

// Stopping decisions are evaluated only at multiples of this many trials, so
// results do not depend on how trials are split across workers.
inline constexpr std::uint64_t kWerBatchSize = 1000;

struct Stopping {
    enum class Mode { kFixedTrials, kTargetErrors };
    Mode mode = Mode::kTargetErrors;
    std::uint64_t trials = 0;        // fixed-trials mode
    std::uint64_t min_errors = 100;  // target-errors mode
    std::uint64_t max_trials = 1000000;

    static Stopping fixed_trials(std::uint64_t n);
    static Stopping target_errors(std::uint64_t errors, std::uint64_t cap = 1000000);
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval for errors/trials at 95% confidence.
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials,
                         double z = 1.959963984540054);

// Spearman rank correlation with average ranks for ties.  Returns 0 when
// either input is constant (undefined correlation).
double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y);

struct WerPoint {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t word_errors = 0;
    double wer = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

struct DecoderIdentity {
    std::string name;  // "CPA" or "PCPA-<size>"
    int r = 0;
    int m = 0;
    std::size_t collection_size = 0;
    double collection_correlation = 0.0;  // r_S
    double omega = 0.0;                   // effective scaling factor
    int t_max = 0;
};

struct WerReport {
    DecoderIdentity decoder;
    std::uint64_t seed = 0;
    std::vector<WerPoint> points;
};

// Monte Carlo word-error-rate campaign: per SNR point, independent trials
// with random messages; a word error is decoded != transmitted.  Identical
// (seed, config) give an identical report for any worker count.
WerReport run_wer(const RmCode& code, const DecoderConfig& config,
                  const std::vector<double>& snr_list, const Stopping& stopping,
                  std::uint64_t seed, int workers = 1);

struct FrequencyMatrix {
    int m = 0;
    int s = 0;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::vector<std::vector<double>> p;  // empirical agreement frequencies
    std::vector<std::vector<double>> r;  // pairwise correlation coefficients
    double spearman = 0.0;               // rank correlation of off-diagonal p vs r
};

// First-iteration agreement experiment over the full enumeration of
// (r-1)-dimensional subspaces: estimate i is "correct" in a trial when its
// decoded projection equals the transmitted codeword's projection; p_ij is
// the fraction of trials where estimates i and j are simultaneously correct
// or simultaneously false.
FrequencyMatrix run_frequency_matrix(const RmCode& code, double snr_db, std::uint64_t trials,
                                     std::uint64_t seed, int workers = 1);

// CSV renderings; every string in `comments` becomes a leading "# " line.
std::string wer_csv(const WerReport& report, const std::vector<std::string>& comments = {});
std::string matrix_csv(const std::vector<std::vector<double>>& matrix,
                       const std::vector<std::string>& comments = {});

}  // namespace pcpa
