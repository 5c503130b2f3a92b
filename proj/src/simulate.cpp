#include "pcpa/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "pcpa/fht.hpp"
#include "pcpa/rng.hpp"

namespace pcpa {

namespace {

// Runs fn(worker_index, lo, hi) over a static partition of [begin, end) into
// contiguous slices, on up to `workers` threads.
template <typename Fn>
void run_partitioned(std::uint64_t begin, std::uint64_t end, int workers, Fn&& fn) {
    const std::uint64_t count = end - begin;
    if (count == 0) return;
    const std::uint64_t w = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), count);
    if (w <= 1) {
        fn(std::size_t{0}, begin, end);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t lo = begin + count * i / w;
        const std::uint64_t hi = begin + count * (i + 1) / w;
        threads.emplace_back([&fn, i, lo, hi] { fn(static_cast<std::size_t>(i), lo, hi); });
    }
    for (auto& t : threads) t.join();
}

void check_stopping(const Stopping& stopping) {
    if (stopping.mode == Stopping::Mode::kFixedTrials) {
        if (stopping.trials < 1) throw std::invalid_argument("stopping: trials must be >= 1");
    } else {
        if (stopping.min_errors < 1)
            throw std::invalid_argument("stopping: target errors must be >= 1");
        if (stopping.max_trials < 1)
            throw std::invalid_argument("stopping: trial cap must be >= 1");
    }
}

DecoderIdentity describe(const DecoderConfig& config, const PaDecoder& decoder) {
    DecoderIdentity identity;
    identity.m = config.collection.ambient();
    identity.r = config.collection.dim() + 1;
    identity.collection_size = config.collection.size();
    identity.collection_correlation = config.collection.correlation();
    identity.omega = decoder.omega();
    identity.t_max = config.t_max;
    const std::uint64_t full =
        gaussian_binomial(config.collection.ambient(), config.collection.dim());
    identity.name = identity.collection_size == full
                        ? "CPA"
                        : "PCPA-" + std::to_string(identity.collection_size);
    return identity;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = 1.0 + (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0;
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

Stopping Stopping::fixed_trials(std::uint64_t n) {
    Stopping s;
    s.mode = Mode::kFixedTrials;
    s.trials = n;
    return s;
}

Stopping Stopping::target_errors(std::uint64_t errors, std::uint64_t cap) {
    Stopping s;
    s.mode = Mode::kTargetErrors;
    s.min_errors = errors;
    s.max_trials = cap;
    return s;
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (errors > trials) throw std::invalid_argument("wilson_interval: errors exceed trials");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double spearman_rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("spearman: inputs differ in length");
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    const double mean = (static_cast<double>(n) + 1.0) / 2.0;
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x <= 0.0 || var_y <= 0.0) return 0.0;
    return cov / std::sqrt(var_x * var_y);
}

WerReport run_wer(const RmCode& code, const DecoderConfig& config,
                  const std::vector<double>& snr_list, const Stopping& stopping,
                  std::uint64_t seed, int workers) {
    if (snr_list.empty()) throw std::invalid_argument("run_wer: empty SNR list");
    if (workers < 1) throw std::invalid_argument("run_wer: workers must be >= 1");
    check_stopping(stopping);
    PaDecoder decoder(config);
    if (code.order() != config.collection.dim() + 1 || code.vars() != config.collection.ambient()) {
        throw std::invalid_argument("run_wer: code and collection dimensions disagree");
    }

    WerReport report;
    report.seed = seed;
    report.decoder = describe(config, decoder);

    for (std::size_t si = 0; si < snr_list.size(); ++si) {
        const double snr_db = snr_list[si];
        const std::uint64_t point_seed = mix_seed(seed, si);
        const std::uint64_t limit =
            stopping.mode == Stopping::Mode::kFixedTrials ? stopping.trials
                                                          : stopping.max_trials;
        std::uint64_t done = 0;
        std::uint64_t errors = 0;
        while (done < limit) {
            const std::uint64_t batch = std::min(kWerBatchSize, limit - done);
            std::vector<std::uint64_t> local(static_cast<std::size_t>(workers), 0);
            run_partitioned(done, done + batch, workers,
                            [&](std::size_t wi, std::uint64_t lo, std::uint64_t hi) {
                                std::uint64_t count = 0;
                                for (std::uint64_t t = lo; t < hi; ++t) {
                                    ChannelSample sample =
                                        simulate_channel_random(code, snr_db, point_seed, t);
                                    DecodeOutcome outcome = decoder.decode(sample.llr);
                                    if (outcome.codeword != sample.transmitted) ++count;
                                }
                                local[wi] = count;
                            });
            for (std::uint64_t e : local) errors += e;
            done += batch;
            if (stopping.mode == Stopping::Mode::kTargetErrors && errors >= stopping.min_errors)
                break;
        }
        WerPoint point;
        point.snr_db = snr_db;
        point.trials = done;
        point.word_errors = errors;
        point.wer = static_cast<double>(errors) / static_cast<double>(done);
        const Interval interval = wilson_interval(errors, done);
        point.wilson_low = interval.low;
        point.wilson_high = interval.high;
        report.points.push_back(point);
    }
    return report;
}

FrequencyMatrix run_frequency_matrix(const RmCode& code, double snr_db, std::uint64_t trials,
                                     std::uint64_t seed, int workers) {
    if (code.order() < 2)
        throw std::invalid_argument("run_frequency_matrix: requires a code with r >= 2");
    if (trials < 1) throw std::invalid_argument("run_frequency_matrix: trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("run_frequency_matrix: workers must be >= 1");

    const int m = code.vars();
    const int s = code.order() - 1;
    const std::vector<Subspace> subspaces = enumerate_subspaces(m, s);
    const std::size_t n_sub = subspaces.size();
    std::vector<CosetTable> tables;
    tables.reserve(n_sub);
    for (const Subspace& b : subspaces) tables.push_back(build_coset_table(b));

    // One bit per (subspace, trial): set when the estimate was correct.
    // Workers fill private copies over disjoint trial ranges; OR-merging makes
    // the result independent of the partition.
    const std::uint64_t bit_words = (trials + 63) / 64;
    const std::uint64_t w =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), trials);
    std::vector<std::vector<std::uint64_t>> bits(
        static_cast<std::size_t>(w), std::vector<std::uint64_t>(n_sub * bit_words, 0));

    run_partitioned(0, trials, workers, [&](std::size_t wi, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t>& mine = bits[wi];
        for (std::uint64_t t = lo; t < hi; ++t) {
            ChannelSample sample = simulate_channel_random(code, snr_db, seed, t);
            LlrVector current = sample.llr;
            for (double& v : current) v = clamp_llr(v);
            for (std::size_t i = 0; i < n_sub; ++i) {
                LlrVector projected = project_llr(current, tables[i]);
                Rm1Decision decision = fht_ml_decode_rm1(projected);
                Word truth = project_binary(sample.transmitted, tables[i]);
                if (decision.codeword == truth) {
                    mine[i * bit_words + t / 64] |= std::uint64_t{1} << (t % 64);
                }
            }
        }
    });
    for (std::size_t wi = 1; wi < bits.size(); ++wi) {
        for (std::size_t idx = 0; idx < bits[wi].size(); ++idx) bits[0][idx] |= bits[wi][idx];
    }
    const std::vector<std::uint64_t>& merged = bits[0];

    FrequencyMatrix fm;
    fm.m = m;
    fm.s = s;
    fm.snr_db = snr_db;
    fm.trials = trials;
    fm.p.assign(n_sub, std::vector<double>(n_sub, 0.0));
    fm.r.assign(n_sub, std::vector<double>(n_sub, 0.0));
    for (std::size_t i = 0; i < n_sub; ++i) {
        for (std::size_t j = i; j < n_sub; ++j) {
            std::uint64_t disagree = 0;
            for (std::uint64_t k = 0; k < bit_words; ++k) {
                disagree += static_cast<std::uint64_t>(
                    std::popcount(merged[i * bit_words + k] ^ merged[j * bit_words + k]));
            }
            const double p =
                static_cast<double>(trials - disagree) / static_cast<double>(trials);
            fm.p[i][j] = fm.p[j][i] = p;
            const double r =
                static_cast<double>(intersect_dim(subspaces[i], subspaces[j])) / s;
            fm.r[i][j] = fm.r[j][i] = r;
        }
    }

    std::vector<double> p_flat, r_flat;
    p_flat.reserve(n_sub * (n_sub - 1) / 2);
    r_flat.reserve(n_sub * (n_sub - 1) / 2);
    for (std::size_t i = 0; i < n_sub; ++i) {
        for (std::size_t j = i + 1; j < n_sub; ++j) {
            p_flat.push_back(fm.p[i][j]);
            r_flat.push_back(fm.r[i][j]);
        }
    }
    fm.spearman = n_sub > 1 ? spearman_rank_correlation(p_flat, r_flat) : 0.0;
    return fm;
}

std::string wer_csv(const WerReport& report, const std::vector<std::string>& comments) {
    std::string out;
    for (const std::string& c : comments) out += "# " + c + "\n";
    out += "snr_db,trials,word_errors,wer,wilson_low,wilson_high\n";
    for (const WerPoint& p : report.points) {
        out += fmt_double(p.snr_db) + "," + std::to_string(p.trials) + "," +
               std::to_string(p.word_errors) + "," + fmt_double(p.wer) + "," +
               fmt_double(p.wilson_low) + "," + fmt_double(p.wilson_high) + "\n";
    }
    return out;
}

std::string matrix_csv(const std::vector<std::vector<double>>& matrix,
                       const std::vector<std::string>& comments) {
    std::string out;
    for (const std::string& c : comments) out += "# " + c + "\n";
    for (const auto& row : matrix) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ",";
            out += fmt_double(row[j]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace pcpa
