// pcpa: command-line driver for projection-aggregation decoding of
// Reed-Muller codes.  One subcommand per experiment; machine-readable output
// (CSV/JSON) on stdout/files, human summaries on stderr.
//
// Exit codes: 0 success, 2 usage error, 3 data/format error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcpa/channel.hpp"
#include "pcpa/collection.hpp"
#include "pcpa/decoder.hpp"
#include "pcpa/gf2.hpp"
#include "pcpa/rm_code.hpp"
#include "pcpa/simulate.hpp"
#include "pcpa/subspace.hpp"

#ifndef PCPA_VERSION
#define PCPA_VERSION "0.0.0"
#endif

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pcpa::data_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string file_hash(const fs::path& path) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(read_file_bytes(path))));
    return buf;
}

fs::path default_out_dir() {
    if (const char* dir = std::getenv("PCPA_OUT_DIR"); dir && *dir) return fs::path(dir);
    return fs::path(".");
}

// Explicit -o paths are used verbatim; defaults land in the output directory
// (current directory unless PCPA_OUT_DIR is set).
fs::path resolve_out(const std::string& flag, const std::string& default_name) {
    if (!flag.empty()) return fs::path(flag);
    return default_out_dir() / default_name;
}

void write_text_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pcpa::data_error("cannot write " + path.string());
    out << content;
    if (!out) throw pcpa::data_error("write failed for " + path.string());
}

pcpa::LlrVector read_llr_file(const fs::path& path, std::size_t expected) {
    std::ifstream in(path);
    if (!in) throw pcpa::data_error("cannot open " + path.string());
    pcpa::LlrVector values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        std::istringstream iss(line);
        double v;
        while (iss >> v) values.push_back(v);
        if (!iss.eof()) {
            throw pcpa::data_error(path.string() + ":" + std::to_string(line_no) +
                                   ": not a number");
        }
    }
    if (values.size() != expected) {
        throw pcpa::data_error(path.string() + ": expected " + std::to_string(expected) +
                               " LLR values, found " + std::to_string(values.size()));
    }
    return values;
}

ordered_json manifest_base(const std::string& command) {
    ordered_json m;
    m["tool"] = "pcpa";
    m["version"] = PCPA_VERSION;
    m["command"] = command;
    return m;
}

std::string manifest_comment(const ordered_json& manifest) {
    return "manifest: " + manifest.dump();
}

// ---- subcommand state ----

struct SubspacesArgs {
    int m = 0, s = 0;
    std::string out;
};

struct SelectArgs {
    int m = 0, s = 0;
    std::size_t size = 0;
    std::string strategy = "greedy_min_rs";
    std::uint64_t seed = 1;
    std::string out;
};

struct DecodeArgs {
    int r = 0, m = 0;
    std::string llr_path;
    std::string collection_path;
    bool full = false;
    int t_max = 3;
    double omega = 0.0;
    bool early_stop = false;
    bool include_channel_prior = false;
    std::string out;
};

struct WerArgs {
    int r = 0, m = 0;
    std::vector<double> snr;
    std::string collection_path;
    bool full = false;
    int t_max = 3;
    double omega = 0.0;
    bool early_stop = false;
    bool include_channel_prior = false;
    std::uint64_t trials = 0;  // 0 -> target-errors mode
    std::uint64_t target_errors = 100;
    std::uint64_t max_trials = 1000000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
};

struct FreqmatArgs {
    int r = 0, m = 0;
    double snr = 2.0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
};

struct Theorem1Args {
    int s = 1, d = 0;
    double epsilon = 0.1;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
};

// Builds the decoder collection for decode/wer: either the full enumeration
// (CPA) or a collection file whose dimensions must match RM(r, m).
pcpa::SubspaceCollection load_collection(int r, int m, bool full,
                                         const std::string& collection_path) {
    if (full != collection_path.empty()) {
        throw std::invalid_argument("exactly one of --full and --collection is required");
    }
    if (r < 2 || r > m) {
        throw std::invalid_argument("projection-aggregation decoding requires 2 <= r <= m");
    }
    if (full) {
        return pcpa::SubspaceCollection(m, r - 1, pcpa::enumerate_subspaces(m, r - 1));
    }
    pcpa::SubspaceCollection collection = pcpa::read_collection_file(collection_path);
    if (collection.ambient() != m || collection.dim() != r - 1) {
        throw pcpa::data_error(collection_path + ": collection is (m=" +
                               std::to_string(collection.ambient()) +
                               ", s=" + std::to_string(collection.dim()) +
                               "), need (m=" + std::to_string(m) +
                               ", s=" + std::to_string(r - 1) + ") for RM(" +
                               std::to_string(r) + "," + std::to_string(m) + ")");
    }
    return collection;
}

void add_decoder_params(ordered_json& params, int t_max, double omega, bool early_stop,
                        bool include_channel_prior, bool full,
                        const std::string& collection_path) {
    params["t_max"] = t_max;
    params["omega"] = omega;
    params["early_stop"] = early_stop;
    params["include_channel_prior"] = include_channel_prior;
    if (full) {
        params["collection"] = "full";
    } else {
        params["collection"] = collection_path;
        params["collection_hash"] = file_hash(collection_path);
    }
}

void run_subspaces(const SubspacesArgs& args) {
    std::vector<pcpa::Subspace> subs = pcpa::enumerate_subspaces(args.m, args.s);
    pcpa::SubspaceCollection collection(args.m, args.s, subs);

    ordered_json manifest = manifest_base("subspaces");
    manifest["parameters"] = {{"m", args.m}, {"s", args.s}};

    char name[64];
    std::snprintf(name, sizeof name, "subspaces_m%d_s%d.txt", args.m, args.s);
    const fs::path path = resolve_out(args.out, name);

    std::ostringstream body;
    body << "# " << manifest_comment(manifest) << "\n";
    pcpa::write_collection(collection, body);
    write_text_file(path, body.str());

    std::cout << subs.size() << "\n";
    std::cerr << "wrote " << subs.size() << " subspaces (m=" << args.m << ", s=" << args.s
              << ", r_S=" << collection.correlation() << ") to " << path.string() << "\n";
}

void run_select(const SelectArgs& args) {
    const pcpa::BuildStrategy strategy = pcpa::strategy_from_name(args.strategy);
    pcpa::SubspaceCollection collection =
        pcpa::build_collection(args.m, args.s, args.size, strategy, args.seed);

    ordered_json manifest = manifest_base("select");
    manifest["parameters"] = {{"m", args.m},
                              {"s", args.s},
                              {"size", args.size},
                              {"strategy", pcpa::strategy_name(strategy)},
                              {"seed", args.seed}};

    char name[96];
    std::snprintf(name, sizeof name, "collection_m%d_s%d_k%zu_%s.txt", args.m, args.s,
                  args.size, pcpa::strategy_name(strategy).c_str());
    const fs::path path = resolve_out(args.out, name);

    std::ostringstream body;
    body << "# " << manifest_comment(manifest) << "\n";
    pcpa::write_collection(collection, body);
    write_text_file(path, body.str());

    char r_s[32];
    std::snprintf(r_s, sizeof r_s, "%.10g", collection.correlation());
    std::cout << r_s << "\n";
    std::cerr << "wrote collection of " << collection.size() << " subspaces (r_S=" << r_s
              << ") to " << path.string() << "\n";
}

void run_decode(const DecodeArgs& args) {
    pcpa::SubspaceCollection collection =
        load_collection(args.r, args.m, args.full, args.collection_path);
    pcpa::LlrVector llr = read_llr_file(args.llr_path, std::size_t{1} << args.m);

    pcpa::DecoderConfig config{std::move(collection)};
    config.t_max = args.t_max;
    config.omega = args.omega;
    config.early_stop = args.early_stop;
    config.include_channel_prior = args.include_channel_prior;
    pcpa::PaDecoder decoder(std::move(config));
    pcpa::DecodeOutcome outcome = decoder.decode(llr);

    ordered_json manifest = manifest_base("decode");
    ordered_json params;
    params["r"] = args.r;
    params["m"] = args.m;
    params["llr"] = args.llr_path;
    params["llr_hash"] = file_hash(args.llr_path);
    add_decoder_params(params, args.t_max, args.omega, args.early_stop,
                       args.include_channel_prior, args.full, args.collection_path);
    manifest["parameters"] = params;

    ordered_json doc;
    doc["manifest"] = manifest;
    doc["codeword"] = pcpa::word_to_string(outcome.codeword);
    doc["iterations_run"] = outcome.iterations_run;
    doc["converged"] = outcome.converged;
    doc["is_codeword"] = decoder.code().is_codeword(outcome.codeword);
    doc["omega"] = decoder.omega();
    doc["projections_per_iteration"] = decoder.projections_per_iteration();
    doc["final_llr"] = outcome.final_llr;

    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!args.out.empty()) write_text_file(fs::path(args.out), text);
    std::cerr << "decoded RM(" << args.r << "," << args.m << ") word in "
              << outcome.iterations_run << " iteration(s), converged="
              << (outcome.converged ? "true" : "false") << "\n";
}

void run_wer(const WerArgs& args) {
    pcpa::SubspaceCollection collection =
        load_collection(args.r, args.m, args.full, args.collection_path);
    pcpa::RmCode code(args.r, args.m);

    pcpa::DecoderConfig config{std::move(collection)};
    config.t_max = args.t_max;
    config.omega = args.omega;
    config.early_stop = args.early_stop;
    config.include_channel_prior = args.include_channel_prior;

    const pcpa::Stopping stopping = args.trials > 0
                                        ? pcpa::Stopping::fixed_trials(args.trials)
                                        : pcpa::Stopping::target_errors(args.target_errors,
                                                                        args.max_trials);

    pcpa::WerReport report =
        pcpa::run_wer(code, config, args.snr, stopping, args.seed, args.workers);

    ordered_json manifest = manifest_base("wer");
    ordered_json params;
    params["r"] = args.r;
    params["m"] = args.m;
    params["snr"] = args.snr;
    add_decoder_params(params, args.t_max, args.omega, args.early_stop,
                       args.include_channel_prior, args.full, args.collection_path);
    if (args.trials > 0) {
        params["stopping"] = {{"mode", "fixed_trials"}, {"trials", args.trials}};
    } else {
        params["stopping"] = {{"mode", "target_errors"},
                              {"min_errors", args.target_errors},
                              {"max_trials", args.max_trials}};
    }
    params["seed"] = args.seed;
    params["workers"] = args.workers;
    manifest["parameters"] = params;

    ordered_json doc;
    doc["manifest"] = manifest;
    doc["decoder"] = {{"name", report.decoder.name},
                      {"r", report.decoder.r},
                      {"m", report.decoder.m},
                      {"collection_size", report.decoder.collection_size},
                      {"r_S", report.decoder.collection_correlation},
                      {"omega", report.decoder.omega},
                      {"t_max", report.decoder.t_max}};
    doc["seed"] = report.seed;
    doc["points"] = ordered_json::array();
    for (const pcpa::WerPoint& p : report.points) {
        doc["points"].push_back({{"snr_db", p.snr_db},
                                 {"trials", p.trials},
                                 {"word_errors", p.word_errors},
                                 {"wer", p.wer},
                                 {"wilson_low", p.wilson_low},
                                 {"wilson_high", p.wilson_high}});
    }

    const fs::path base = resolve_out(args.out, "wer");
    fs::path csv_path = base;
    csv_path += ".csv";
    fs::path json_path = base;
    json_path += ".json";
    write_text_file(csv_path, pcpa::wer_csv(report, {manifest_comment(manifest)}));
    write_text_file(json_path, doc.dump(2) + "\n");

    std::cout << csv_path.string() << "\n" << json_path.string() << "\n";
    std::cerr << report.decoder.name << " on RM(" << args.r << "," << args.m
              << "), omega=" << report.decoder.omega << ", t_max=" << report.decoder.t_max
              << "\n";
    for (const pcpa::WerPoint& p : report.points) {
        std::fprintf(stderr, "  %5.2f dB: wer=%.5g (%llu/%llu) [%.5g, %.5g]\n", p.snr_db,
                     p.wer, static_cast<unsigned long long>(p.word_errors),
                     static_cast<unsigned long long>(p.trials), p.wilson_low, p.wilson_high);
    }
}

void run_freqmat(const FreqmatArgs& args) {
    pcpa::RmCode code(args.r, args.m);
    pcpa::FrequencyMatrix fm =
        pcpa::run_frequency_matrix(code, args.snr, args.trials, args.seed, args.workers);

    ordered_json manifest = manifest_base("freqmat");
    manifest["parameters"] = {{"r", args.r},     {"m", args.m},       {"snr", args.snr},
                              {"trials", args.trials}, {"seed", args.seed},
                              {"workers", args.workers}};

    ordered_json doc;
    doc["manifest"] = manifest;
    doc["m"] = fm.m;
    doc["s"] = fm.s;
    doc["snr_db"] = fm.snr_db;
    doc["trials"] = fm.trials;
    doc["subspaces"] = fm.p.size();
    doc["spearman"] = fm.spearman;

    const fs::path base = resolve_out(args.out, "freqmat");
    fs::path p_path = base;
    p_path += "_p.csv";
    fs::path r_path = base;
    r_path += "_r.csv";
    fs::path json_path = base;
    json_path += ".json";
    write_text_file(p_path, pcpa::matrix_csv(fm.p, {manifest_comment(manifest)}));
    write_text_file(r_path, pcpa::matrix_csv(fm.r, {manifest_comment(manifest)}));
    write_text_file(json_path, doc.dump(2) + "\n");

    std::cout << p_path.string() << "\n" << r_path.string() << "\n"
              << json_path.string() << "\n";
    std::cerr << "frequency matrix over " << fm.p.size() << " subspaces, " << fm.trials
              << " trials at " << fm.snr_db << " dB: spearman rho = " << fm.spearman << "\n";
}

void run_theorem1(const Theorem1Args& args) {
    const double closed = pcpa::theorem1_probability(args.s, args.d, args.epsilon);

    // Smallest ambient space admitting two s-dimensional subspaces with a
    // d-dimensional intersection; e_i is the i-th standard basis vector.
    const int m = 2 * args.s - args.d;
    std::vector<pcpa::Point> v1, v2;
    for (int i = 1; i <= args.s; ++i) v1.push_back(pcpa::Point{1} << (m - i));
    for (int i = 1; i <= args.d; ++i) v2.push_back(pcpa::Point{1} << (m - i));
    for (int i = args.s + 1; i <= 2 * args.s - args.d; ++i)
        v2.push_back(pcpa::Point{1} << (m - i));
    const pcpa::Subspace b1 = pcpa::canonicalize(v1, m);
    const pcpa::Subspace b2 = pcpa::canonicalize(v2, m);
    const double empirical =
        pcpa::theorem1_monte_carlo(b1, b2, args.epsilon, 0, args.trials, args.seed);

    ordered_json manifest = manifest_base("theorem1");
    manifest["parameters"] = {{"s", args.s},
                              {"d", args.d},
                              {"epsilon", args.epsilon},
                              {"trials", args.trials},
                              {"seed", args.seed}};

    ordered_json doc;
    doc["manifest"] = manifest;
    doc["s"] = args.s;
    doc["d"] = args.d;
    doc["epsilon"] = args.epsilon;
    doc["closed_form"] = closed;
    doc["empirical"] = empirical;
    doc["trials"] = args.trials;

    std::cout << doc.dump(2) << "\n";
    std::cerr << "agreement probability: closed form " << closed << ", empirical "
              << empirical << " over " << args.trials << " trials\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projection-aggregation decoding toolkit for Reed-Muller codes"};
    app.set_version_flag("--version", PCPA_VERSION);
    app.require_subcommand(1);

    SubspacesArgs sub_args;
    CLI::App* sub = app.add_subcommand(
        "subspaces", "Enumerate all s-dimensional subspaces of F_2^m to a collection file");
    sub->add_option("-m", sub_args.m, "ambient dimension m")->required();
    sub->add_option("-s", sub_args.s, "subspace dimension s")->required();
    sub->add_option("-o,--out", sub_args.out, "output file (default: subspaces_m<m>_s<s>.txt)");
    sub->callback([&] { run_subspaces(sub_args); });

    SelectArgs sel_args;
    CLI::App* sel =
        app.add_subcommand("select", "Build a pruned subspace collection and write it");
    sel->add_option("-m", sel_args.m, "ambient dimension m")->required();
    sel->add_option("-s", sel_args.s, "subspace dimension s")->required();
    sel->add_option("-k,--size", sel_args.size, "collection size")->required();
    sel->add_option("--strategy", sel_args.strategy,
                    "greedy_min_rs | random | spread_first (default greedy_min_rs)");
    sel->add_option("--seed", sel_args.seed, "random seed (default 1)");
    sel->add_option("-o,--out", sel_args.out, "output file");
    sel->callback([&] { run_select(sel_args); });

    DecodeArgs dec_args;
    CLI::App* dec = app.add_subcommand("decode", "Decode one LLR vector for RM(r,m)");
    dec->add_option("-r", dec_args.r, "code order r")->required();
    dec->add_option("-m", dec_args.m, "number of variables m")->required();
    dec->add_option("--llr", dec_args.llr_path, "LLR input file (2^m numbers)")->required();
    dec->add_option("--collection", dec_args.collection_path, "collection file");
    dec->add_flag("--full", dec_args.full, "use the full enumeration (CPA)");
    dec->add_option("--t-max", dec_args.t_max, "maximum iterations (default 3)");
    dec->add_option("--omega", dec_args.omega, "scaling factor; 0 selects 1/|collection|");
    dec->add_flag("--early-stop", dec_args.early_stop, "stop when hard decisions settle");
    dec->add_flag("--include-channel-prior", dec_args.include_channel_prior,
                  "add the received LLRs to each aggregation");
    dec->add_option("-o,--out", dec_args.out, "also write the JSON document here");
    dec->callback([&] { run_decode(dec_args); });

    WerArgs wer_args;
    CLI::App* wer = app.add_subcommand("wer", "Monte Carlo word-error-rate campaign");
    wer->add_option("-r", wer_args.r, "code order r")->required();
    wer->add_option("-m", wer_args.m, "number of variables m")->required();
    wer->add_option("--snr", wer_args.snr, "Eb/N0 points in dB")
        ->required()
        ->delimiter(',');
    wer->add_option("--collection", wer_args.collection_path, "collection file");
    wer->add_flag("--full", wer_args.full, "use the full enumeration (CPA)");
    wer->add_option("--t-max", wer_args.t_max, "maximum iterations (default 3)");
    wer->add_option("--omega", wer_args.omega, "scaling factor; 0 selects 1/|collection|");
    wer->add_flag("--early-stop", wer_args.early_stop, "stop when hard decisions settle");
    wer->add_flag("--include-channel-prior", wer_args.include_channel_prior,
                  "add the received LLRs to each aggregation");
    wer->add_option("--trials", wer_args.trials, "fixed trial count per SNR point");
    wer->add_option("--target-errors", wer_args.target_errors,
                    "stop after this many word errors (default 100)");
    wer->add_option("--max-trials", wer_args.max_trials,
                    "trial cap in target-errors mode (default 1e6)");
    wer->add_option("--seed", wer_args.seed, "master seed (default 1)");
    wer->add_option("--workers", wer_args.workers, "worker threads (default 1)");
    wer->add_option("-o,--out", wer_args.out, "output basename (default: wer)");
    wer->callback([&] { run_wer(wer_args); });

    FreqmatArgs fm_args;
    CLI::App* fm = app.add_subcommand(
        "freqmat", "First-iteration estimate agreement matrix over the full enumeration");
    fm->add_option("-r", fm_args.r, "code order r")->required();
    fm->add_option("-m", fm_args.m, "number of variables m")->required();
    fm->add_option("--snr", fm_args.snr, "Eb/N0 in dB (default 2.0)");
    fm->add_option("--trials", fm_args.trials, "Monte Carlo trials (default 10000)");
    fm->add_option("--seed", fm_args.seed, "master seed (default 1)");
    fm->add_option("--workers", fm_args.workers, "worker threads (default 1)");
    fm->add_option("-o,--out", fm_args.out, "output basename (default: freqmat)");
    fm->callback([&] { run_freqmat(fm_args); });

    Theorem1Args th_args;
    CLI::App* th = app.add_subcommand(
        "theorem1", "Projection agreement probability: closed form vs Monte Carlo");
    th->add_option("-s", th_args.s, "subspace dimension s")->required();
    th->add_option("-d", th_args.d, "intersection dimension d")->required();
    th->add_option("--epsilon", th_args.epsilon, "crossover probability")->required();
    th->add_option("--trials", th_args.trials, "Monte Carlo trials (default 1e5)");
    th->add_option("--seed", th_args.seed, "random seed (default 1)");
    th->callback([&] { run_theorem1(th_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pcpa::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
