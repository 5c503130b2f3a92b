#pragma once

#include <cstdint>

#include "pcpa/gf2.hpp"
#include "pcpa/llr.hpp"
#include "pcpa/rm_code.hpp"

namespace pcpa {

// Noise standard deviation for BPSK over AWGN at Eb/N0 = snr_db and code
// rate R: sigma^2 = 1 / (2 R 10^(snr_db/10)).  The SNR convention is Eb/N0;
// switching to Es/N0 would shift curves by 10 log10(R).
double awgn_sigma(double snr_db, double rate);

struct ChannelSample {
    Word transmitted;  // the codeword v that was sent
    LlrVector llr;     // 2 y / sigma^2 per position, unclamped
    double snr_db = 0.0;
    std::uint64_t trial_index = 0;  // stream position the sample was drawn at
};

// BPSK maps bit 0 -> +1 and bit 1 -> -1; y(z) = (1 - 2 v(z)) + sigma * N(0,1).
// The random stream is derived from (seed, trial_index) alone, so trial t is
// reproducible no matter which worker runs it.  The random-message variant
// draws the k message bits first, then one Gaussian per position.
ChannelSample simulate_channel(const RmCode& code, const Word& message, double snr_db,
                               std::uint64_t seed, std::uint64_t trial_index = 0);
ChannelSample simulate_channel_random(const RmCode& code, double snr_db, std::uint64_t seed,
                                      std::uint64_t trial_index = 0);

}  // namespace pcpa
