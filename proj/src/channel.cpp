#include "pcpa/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "pcpa/rng.hpp"

namespace pcpa {

namespace {

ChannelSample transmit(const RmCode& code, const Word& message, double snr_db, Rng& rng,
                       std::uint64_t trial_index) {
    const double rate =
        static_cast<double>(code.dimension()) / static_cast<double>(code.length());
    const double sigma = awgn_sigma(snr_db, rate);
    const double scale = 2.0 / (sigma * sigma);

    ChannelSample sample;
    sample.transmitted = code.encode(message);
    sample.snr_db = snr_db;
    sample.trial_index = trial_index;
    sample.llr.resize(sample.transmitted.size());
    for (std::size_t z = 0; z < sample.transmitted.size(); ++z) {
        const double x = sample.transmitted[z] ? -1.0 : 1.0;
        const double y = x + sigma * rng.gaussian();
        sample.llr[z] = scale * y;
    }
    return sample;
}

}  // namespace

double awgn_sigma(double snr_db, double rate) {
    if (!std::isfinite(snr_db)) throw std::invalid_argument("awgn_sigma: snr_db must be finite");
    if (!(rate > 0.0)) throw std::invalid_argument("awgn_sigma: rate must be positive");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

ChannelSample simulate_channel(const RmCode& code, const Word& message, double snr_db,
                               std::uint64_t seed, std::uint64_t trial_index) {
    Rng rng(mix_seed(seed, trial_index));
    return transmit(code, message, snr_db, rng, trial_index);
}

ChannelSample simulate_channel_random(const RmCode& code, double snr_db, std::uint64_t seed,
                                      std::uint64_t trial_index) {
    Rng rng(mix_seed(seed, trial_index));
    Word message(code.dimension());
    for (auto& bit : message) bit = rng.bernoulli(0.5) ? 1 : 0;
    return transmit(code, message, snr_db, rng, trial_index);
}

}  // namespace pcpa
