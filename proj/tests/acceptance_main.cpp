// Acceptance harness: one criterion per function, one PASS/FAIL line each,
// non-zero exit when a gating criterion fails.  Monte Carlo criteria use all
// hardware threads and fixed seeds, so every run prints identical numbers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "pcpa/channel.hpp"
#include "pcpa/collection.hpp"
#include "pcpa/decoder.hpp"
#include "pcpa/rng.hpp"
#include "pcpa/simulate.hpp"

using namespace pcpa;

namespace {

int hardware_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 4 : static_cast<int>(hc);
}

Word random_codeword(const RmCode& code, Rng& rng) {
    Word message(code.dimension());
    for (auto& bit : message) bit = rng.bernoulli(0.5) ? 1 : 0;
    return code.encode(message);
}

LlrVector noiseless_llr(const Word& cw) {
    LlrVector llr(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i) llr[i] = cw[i] ? -kLlrMax : kLlrMax;
    return llr;
}

// criterion 1: subspace counts match the Gaussian binomial
bool criterion1(std::string& detail) {
    for (int m = 1; m <= 6; ++m)
        for (int s = 0; s <= m; ++s)
            if (enumerate_subspaces(m, s).size() != gaussian_binomial(m, s)) {
                detail = "count mismatch at (" + std::to_string(m) + "," + std::to_string(s) + ")";
                return false;
            }
    const std::size_t n52 = enumerate_subspaces(5, 2).size();
    const std::size_t n72 = enumerate_subspaces(7, 2).size();
    detail = "all (m<=6, s) counts match; (5,2)=" + std::to_string(n52) +
             ", (7,2)=" + std::to_string(n72);
    return n52 == 155 && n72 == 2667;
}

// criterion 2: binary projections stay inside the reduced code
bool criterion2(std::string& detail) {
    std::uint64_t checked = 0, failures = 0;
    {
        RmCode outer(2, 4);
        RmCode inner(1, 3);
        std::vector<CosetTable> tables;
        for (const auto& b : enumerate_subspaces(4, 1)) tables.push_back(build_coset_table(b));
        for (std::uint32_t msg = 0; msg < (1u << 11); ++msg) {
            Word message(11);
            for (int i = 0; i < 11; ++i) message[i] = (msg >> i) & 1;
            const Word cw = outer.encode(message);
            for (const auto& table : tables) {
                ++checked;
                if (!inner.is_codeword(project_binary(cw, table))) ++failures;
            }
        }
    }
    {
        RmCode outer(3, 5);
        RmCode inner(1, 3);
        std::vector<CosetTable> tables;
        for (const auto& b : enumerate_subspaces(5, 2)) tables.push_back(build_coset_table(b));
        Rng rng(20240202);
        for (int t = 0; t < 500; ++t) {
            const Word cw = random_codeword(outer, rng);
            for (const auto& table : tables) {
                ++checked;
                if (!inner.is_codeword(project_binary(cw, table))) ++failures;
            }
        }
    }
    detail = std::to_string(checked) + " projections checked, " + std::to_string(failures) +
             " outside the reduced code";
    return failures == 0;
}

// criterion 3: FHT decoder equals brute-force ML away from metric ties
bool criterion3(std::string& detail) {
    std::uint64_t compared = 0, skipped_ties = 0, mismatches = 0;
    for (int k = 3; k <= 5; ++k) {
        Rng rng(3000 + k);
        const std::size_t n = std::size_t{1} << k;
        for (int trial = 0; trial < 1000; ++trial) {
            LlrVector llr(n);
            for (auto& v : llr) v = rng.gaussian();

            double best = -1e300, second = -1e300;
            Point best_a = 0;
            int best_c0 = 0;
            for (int c0 = 0; c0 <= 1; ++c0)
                for (Point a = 0; a < n; ++a) {
                    double metric = 0.0;
                    for (std::size_t z = 0; z < n; ++z) {
                        const int bit = c0 ^ parity(a & static_cast<std::uint32_t>(z));
                        metric += (1 - 2 * bit) * llr[z];
                    }
                    if (metric > best) {
                        second = best;
                        best = metric;
                        best_a = a;
                        best_c0 = c0;
                    } else if (metric > second) {
                        second = metric;
                    }
                }

            const Rm1Decision fast = fht_ml_decode_rm1(llr);
            if (std::abs(fast.metric - best) > 1e-9) {
                ++mismatches;
                continue;
            }
            if (best - second <= 1e-9) {
                ++skipped_ties;
                continue;
            }
            ++compared;
            if (fast.mask != best_a || fast.constant != best_c0) ++mismatches;
        }
    }
    detail = std::to_string(compared) + " decisions compared (" + std::to_string(skipped_ties) +
             " near-ties skipped), " + std::to_string(mismatches) + " mismatches";
    return mismatches == 0;
}

// criterion 4: Monte Carlo agreement probability vs closed form
bool criterion4(std::string& detail) {
    const std::uint64_t trials = 100000;
    struct Combo {
        int s, d;
    };
    const Combo combos[] = {{1, 0}, {2, 0}, {2, 1}};
    const double epsilons[] = {0.05, 0.1, 0.2};
    double worst = 0.0;
    bool ok = true;
    int index = 0;
    for (const Combo& combo : combos) {
        const int m = 2 * combo.s - combo.d;
        std::vector<Point> v1, v2;
        for (int i = 1; i <= combo.s; ++i) v1.push_back(Point{1} << (m - i));
        for (int i = 1; i <= combo.d; ++i) v2.push_back(Point{1} << (m - i));
        for (int i = combo.s + 1; i <= 2 * combo.s - combo.d; ++i)
            v2.push_back(Point{1} << (m - i));
        const Subspace b1 = canonicalize(v1, m);
        const Subspace b2 = canonicalize(v2, m);
        for (double eps : epsilons) {
            const double closed = theorem1_probability(combo.s, combo.d, eps);
            const double mc =
                theorem1_monte_carlo(b1, b2, eps, 0, trials, mix_seed(4, static_cast<std::uint64_t>(index)));
            const double sigma = std::sqrt(closed * (1.0 - closed) / static_cast<double>(trials));
            const double tol = std::max(0.01, 3.0 * sigma);
            worst = std::max(worst, std::abs(mc - closed));
            if (std::abs(mc - closed) >= tol) ok = false;
            ++index;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "9 (s,d,eps) combos at 1e5 trials, worst |mc - closed| = %.5f "
                  "(example s=2 d=0 eps=0.1: closed %.6f)",
                  worst, theorem1_probability(2, 0, 0.1));
    detail = buf;
    return ok;
}

// criterion 5: CPA and PCPA over the full enumeration are bitwise identical
bool criterion5(std::string& detail) {
    RmCode code(3, 5);
    DecoderConfig config{SubspaceCollection(5, 2, enumerate_subspaces(5, 2))};
    PaDecoder full(config);
    std::uint64_t mismatches = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const ChannelSample sample = simulate_channel_random(code, 2.0, 777, trial);
        const DecodeOutcome a = cpa_decode(sample.llr, 3, 5);
        const DecodeOutcome b = full.decode(sample.llr);
        const bool same =
            a.codeword == b.codeword && a.iterations_run == b.iterations_run &&
            a.converged == b.converged && a.final_llr.size() == b.final_llr.size() &&
            std::memcmp(a.final_llr.data(), b.final_llr.data(),
                        a.final_llr.size() * sizeof(double)) == 0;
        if (!same) ++mismatches;
    }
    detail = "100 noisy RM(3,5) inputs at 2.0 dB, " + std::to_string(mismatches) +
             " outcome mismatches";
    return mismatches == 0;
}

// criterion 6: noiseless inputs decode with zero word errors
bool criterion6(std::string& detail) {
    std::uint64_t errors = 0;
    {
        RmCode code(3, 5);
        DecoderConfig cpa{SubspaceCollection(5, 2, enumerate_subspaces(5, 2))};
        DecoderConfig pcpa9{build_collection(5, 2, 9, BuildStrategy::spread_first, 1)};
        PaDecoder full(cpa);
        PaDecoder pruned(pcpa9);
        Rng rng(606060);
        for (int t = 0; t < 200; ++t) {
            const Word cw = random_codeword(code, rng);
            const LlrVector llr = noiseless_llr(cw);
            if (full.decode(llr).codeword != cw) ++errors;
            if (pruned.decode(llr).codeword != cw) ++errors;
        }
    }
    {
        RmCode code(2, 4);
        DecoderConfig cpa{SubspaceCollection(4, 1, enumerate_subspaces(4, 1))};
        PaDecoder full(cpa);
        for (std::uint32_t msg = 0; msg < (1u << 11); ++msg) {
            Word message(11);
            for (int i = 0; i < 11; ++i) message[i] = (msg >> i) & 1;
            const Word cw = code.encode(message);
            if (full.decode(noiseless_llr(cw)).codeword != cw) ++errors;
        }
    }
    detail = "200 random RM(3,5) words (CPA and PCPA-9) plus exhaustive RM(2,4) CPA, " +
             std::to_string(errors) + " word errors";
    return errors == 0;
}

// criterion 7: collection quality orders the WER curves
bool criterion7(std::string& detail) {
    const int workers = hardware_workers();
    RmCode code(3, 5);

    // low-correlation collection: a perfect partial spread, r_S = 9
    SubspaceCollection spread = build_collection(5, 2, 9, BuildStrategy::spread_first, 1);

    // high-correlation collection: ascending seed scan for the first random
    // draw with r_S >= 31 keeps the comparison reproducible
    std::uint64_t seed = 0;
    double r_s = 0.0;
    for (;; ++seed) {
        r_s = build_collection(5, 2, 9, BuildStrategy::random, seed).correlation();
        if (r_s >= 31.0) break;
    }
    SubspaceCollection noisy = build_collection(5, 2, 9, BuildStrategy::random, seed);

    const std::vector<double> snr = {2.5};
    const Stopping stopping = Stopping::fixed_trials(20000);

    DecoderConfig spread_config{spread};
    DecoderConfig noisy_config{noisy};
    DecoderConfig cpa_config{SubspaceCollection(5, 2, enumerate_subspaces(5, 2))};

    const WerPoint good = run_wer(code, spread_config, snr, stopping, 42, workers).points[0];
    const WerPoint bad = run_wer(code, noisy_config, snr, stopping, 42, workers).points[0];
    const WerPoint cpa = run_wer(code, cpa_config, snr, stopping, 42, workers).points[0];

    const bool ordered = good.wer < bad.wer;
    const bool disjoint = good.wilson_high < bad.wilson_low;
    const bool cpa_ok = cpa.wer <= good.wilson_high;

    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "random seed %llu gives r_S = %.10g; WER at 2.5 dB over 2e4 trials: "
                  "r_S=9 %.4f [%.4f,%.4f] < r_S=%.10g %.4f [%.4f,%.4f]; CPA %.4f <= %.4f",
                  static_cast<unsigned long long>(seed), r_s, good.wer, good.wilson_low,
                  good.wilson_high, r_s, bad.wer, bad.wilson_low, bad.wilson_high, cpa.wer,
                  good.wilson_high);
    detail = buf;
    return ordered && disjoint && cpa_ok && r_s <= 33.0;
}

// criterion 8: estimate agreement tracks the correlation coefficient
bool criterion8(std::string& detail) {
    const FrequencyMatrix fm =
        run_frequency_matrix(RmCode(3, 5), 2.0, 10000, 3, hardware_workers());
    bool structure = true;
    for (std::size_t i = 0; i < fm.p.size() && structure; ++i) {
        if (fm.p[i][i] != 1.0) structure = false;
        for (std::size_t j = 0; j < fm.p.size(); ++j)
            if (fm.p[i][j] != fm.p[j][i]) structure = false;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "RM(3,5) at 2.0 dB, 1e4 trials: Spearman rho = %.4f (need > 0.3), "
                  "p symmetric with unit diagonal: %s",
                  fm.spearman, structure ? "yes" : "no");
    detail = buf;
    return fm.spearman > 0.3 && structure;
}

// criterion 9: CPA WER is monotone over the SNR grid
bool criterion9(std::string& detail) {
    RmCode code(3, 5);
    DecoderConfig config{SubspaceCollection(5, 2, enumerate_subspaces(5, 2))};
    const std::vector<double> grid = {1.0, 1.5, 2.0, 2.5, 3.0};
    const WerReport report =
        run_wer(code, config, grid, Stopping::fixed_trials(10000), 11, hardware_workers());
    bool monotone = true;
    std::string werlist;
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        if (i > 0 && report.points[i].wer > report.points[i - 1].wer) monotone = false;
        char buf[24];
        std::snprintf(buf, sizeof buf, "%s%.4f", i ? " " : "", report.points[i].wer);
        werlist += buf;
    }
    detail = "CPA WER over {1,1.5,2,2.5,3} dB at 1e4 trials: " + werlist;
    return monotone;
}

// criterion 10 (not gating): RM(3,7) smoke with a greedy 64-subspace collection
bool criterion10(std::string& detail) {
    RmCode code(3, 7);
    DecoderConfig config{build_collection(7, 2, 64, BuildStrategy::greedy_min_rs, 1)};
    PaDecoder decoder(config);
    if (decoder.projections_per_iteration() != 64) {
        detail = "projection count per iteration is " +
                 std::to_string(decoder.projections_per_iteration()) + ", expected 64";
        return false;
    }
    const WerReport report = run_wer(code, config, {2.0}, Stopping::fixed_trials(1000), 7,
                                     hardware_workers());
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "PCPA-64 on RM(3,7): 64 projections per iteration, 1e3 trials at 2.0 dB, "
                  "WER %.4f",
                  report.points[0].wer);
    detail = buf;
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int index;
        bool (*run)(std::string&);
        bool gating;
    };
    const Criterion criteria[] = {
        {1, criterion1, true},  {2, criterion2, true}, {3, criterion3, true},
        {4, criterion4, true},  {5, criterion5, true}, {6, criterion6, true},
        {7, criterion7, true},  {8, criterion8, true}, {9, criterion9, true},
        {10, criterion10, false},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d%s: %s\n", ok ? "PASS" : "FAIL", criterion.index,
                    criterion.gating ? "" : " (optional)", detail.c_str());
        std::fflush(stdout);
        if (!ok && criterion.gating) ++failures;
    }
    if (failures > 0) {
        std::printf("%d gating criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all gating criteria passed\n");
    return 0;
}
