#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef _WIN32
#include <sys/wait.h>
#include <unistd.h>
#endif

#include <json.hpp>

#include "doctest.h"
#include "pcpa/collection.hpp"
#include "pcpa/rm_code.hpp"
#include "pcpa/simulate.hpp"

using namespace pcpa;
using nlohmann::json;
namespace fs = std::filesystem;

#ifndef PCPA_CLI_PATH
#error "PCPA_CLI_PATH must point at the pcpa binary"
#endif

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A disposable working directory; every CLI run executes inside one so that
// default output paths never touch the repository.
struct Scratch {
    fs::path dir;
    Scratch() {
        static std::atomic<int> counter{0};
        dir = fs::temp_directory_path() /
              ("pcpa_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter.fetch_add(1)));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    fs::path operator/(const std::string& name) const { return dir / name; }
};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// env: extra "VAR=value " assignments prefixed to the command line.
CliResult run_cli(const Scratch& scratch, const std::string& args,
                  const std::string& env = "") {
    const std::string cmd = "cd '" + scratch.dir.string() + "' && " + env + "'" +
                            PCPA_CLI_PATH + "' " + args + " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    CliResult result;
#ifdef _WIN32
    result.exit_code = status;
#else
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
#endif
    result.out = slurp(scratch / "stdout.txt");
    result.err = slurp(scratch / "stderr.txt");
    return result;
}

void write_noiseless_llr(const fs::path& path, const Word& cw, double magnitude = 10.0) {
    std::ofstream out(path);
    out << "# noiseless LLRs\n";
    for (std::size_t i = 0; i < cw.size(); ++i)
        out << (cw[i] ? -magnitude : magnitude) << "\n";
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line.front() != '#') lines.push_back(line);
    return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version flag") {
    Scratch scratch;
    auto result = run_cli(scratch, "--version");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("subspaces enumerates and writes a loadable collection") {
    Scratch scratch;
    auto result = run_cli(scratch, "subspaces -m 5 -s 2");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "155\n");

    const fs::path file = scratch / "subspaces_m5_s2.txt";
    REQUIRE(fs::exists(file));
    auto collection = read_collection_file(file);
    CHECK(collection.size() == 155);
    CHECK(collection.ambient() == 5);
    CHECK(collection.dim() == 2);

    const std::string text = slurp(file);
    CHECK(text.find("# manifest: {") != std::string::npos);
    CHECK(text.find("\"command\":\"subspaces\"") != std::string::npos);
    CHECK(text.find("# r_S = ") != std::string::npos);

    auto small = run_cli(scratch, "subspaces -m 3 -s 1");
    CHECK(small.exit_code == 0);
    CHECK(small.out == "7\n");
}

TEST_CASE("select reports r_S and writes the footer") {
    Scratch scratch;
    auto spread = run_cli(scratch, "select -m 5 -s 2 -k 9 --strategy spread_first");
    CHECK(spread.exit_code == 0);
    CHECK(spread.out == "9\n");
    auto collection =
        read_collection_file(scratch / "collection_m5_s2_k9_spread_first.txt");
    CHECK(collection.size() == 9);
    CHECK(collection.correlation() == 9.0);

    auto single = run_cli(scratch, "select -m 5 -s 2 -k 1");
    CHECK(single.exit_code == 0);
    CHECK(single.out == "1\n");

    // greedy never does worse than a random draw of the same size here
    auto greedy = run_cli(scratch, "select -m 5 -s 2 -k 9 --strategy greedy_min_rs -o g.txt");
    auto random = run_cli(scratch, "select -m 5 -s 2 -k 9 --strategy random --seed 1 -o r.txt");
    CHECK(greedy.exit_code == 0);
    CHECK(random.exit_code == 0);
    CHECK(std::stod(greedy.out) <= std::stod(random.out));
}

TEST_CASE("decode emits a JSON document for a noiseless word") {
    Scratch scratch;
    RmCode code(2, 4);
    Word message(code.dimension(), 0);
    message[0] = 1;
    message[5] = 1;
    Word cw = code.encode(message);
    write_noiseless_llr(scratch / "llr.txt", cw);

    auto result = run_cli(scratch, "decode -r 2 -m 4 --llr llr.txt --full -o doc.json");
    REQUIRE(result.exit_code == 0);
    json doc = json::parse(result.out);
    CHECK(doc["codeword"].get<std::string>() == word_to_string(cw));
    CHECK(doc["converged"].get<bool>());
    CHECK(doc["is_codeword"].get<bool>());
    CHECK(doc["iterations_run"].get<int>() == 3);
    CHECK(doc["projections_per_iteration"].get<int>() == 15);
    CHECK(doc["final_llr"].size() == 16);
    CHECK(doc["manifest"]["command"].get<std::string>() == "decode");
    CHECK(doc["manifest"]["parameters"]["llr_hash"].get<std::string>().rfind("fnv1a64:", 0) ==
          0);
    // -o writes the same document
    CHECK(json::parse(slurp(scratch / "doc.json")) == doc);
}

TEST_CASE("decode accepts a selected collection file") {
    Scratch scratch;
    REQUIRE(run_cli(scratch, "select -m 5 -s 2 -k 9 --strategy spread_first -o coll.txt")
                .exit_code == 0);
    RmCode code(3, 5);
    Word message(code.dimension(), 0);
    message[3] = 1;
    Word cw = code.encode(message);
    write_noiseless_llr(scratch / "llr.txt", cw);
    auto result = run_cli(scratch, "decode -r 3 -m 5 --llr llr.txt --collection coll.txt");
    REQUIRE(result.exit_code == 0);
    json doc = json::parse(result.out);
    CHECK(doc["codeword"].get<std::string>() == word_to_string(cw));
    CHECK(doc["projections_per_iteration"].get<int>() == 9);
    CHECK(doc["manifest"]["parameters"]["collection_hash"].get<std::string>().rfind(
              "fnv1a64:", 0) == 0);
}

TEST_CASE("usage errors exit with code 2") {
    Scratch scratch;
    CHECK(run_cli(scratch, "").exit_code == 2);
    CHECK(run_cli(scratch, "frobnicate").exit_code == 2);
    CHECK(run_cli(scratch, "subspaces -m 5").exit_code == 2);  // missing -s
    CHECK(run_cli(scratch, "select -m 5 -s 2 -k 9 --strategy nope").exit_code == 2);

    RmCode code(2, 4);
    write_noiseless_llr(scratch / "llr.txt", code.encode(Word(11, 0)));
    // neither --full nor --collection
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr llr.txt").exit_code == 2);
    // both at once
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr llr.txt --full --collection x.txt")
              .exit_code == 2);
    // r out of range for projection decoding
    CHECK(run_cli(scratch, "decode -r 1 -m 4 --llr llr.txt --full").exit_code == 2);
    // invalid decoder parameter
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr llr.txt --full --t-max 0").exit_code ==
          2);
}

TEST_CASE("data errors exit with code 3") {
    Scratch scratch;
    // missing LLR file
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr missing.txt --full").exit_code == 3);

    // malformed number
    {
        std::ofstream bad(scratch / "bad.txt");
        bad << "1.0 2.0\nbanana\n";
    }
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr bad.txt --full").exit_code == 3);

    // wrong value count
    {
        std::ofstream shorter(scratch / "short.txt");
        shorter << "1 2 3 4\n";
    }
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr short.txt --full").exit_code == 3);

    // missing collection file
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr short.txt --collection nope.txt")
              .exit_code == 3);

    // collection dimensions disagree with the requested code
    REQUIRE(run_cli(scratch, "select -m 5 -s 2 -k 9 -o coll.txt").exit_code == 0);
    CHECK(run_cli(scratch, "decode -r 2 -m 5 --llr short.txt --collection coll.txt")
              .exit_code == 3);

    // tampered collection footer
    {
        auto coll = build_collection(4, 1, 5, BuildStrategy::greedy_min_rs, 0);
        std::ostringstream body;
        write_collection(coll, body);
        std::string text = body.str();
        auto pos = text.find("# r_S = ");
        REQUIRE(pos != std::string::npos);
        std::ofstream out(scratch / "tampered.txt");
        out << text.substr(0, pos) << "# r_S = 424242\n";
    }
    RmCode code(2, 4);
    write_noiseless_llr(scratch / "llr.txt", code.encode(Word(11, 0)));
    CHECK(run_cli(scratch, "decode -r 2 -m 4 --llr llr.txt --collection tampered.txt")
              .exit_code == 3);
}

TEST_CASE("PCPA_OUT_DIR redirects default outputs but not explicit paths") {
    Scratch scratch;
    auto result = run_cli(scratch, "subspaces -m 4 -s 1", "PCPA_OUT_DIR=nested/out ");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "15\n");
    CHECK(fs::exists(scratch / "nested/out/subspaces_m4_s1.txt"));
    CHECK_FALSE(fs::exists(scratch / "subspaces_m4_s1.txt"));

    auto explicit_out =
        run_cli(scratch, "subspaces -m 4 -s 1 -o here.txt", "PCPA_OUT_DIR=nested/out ");
    CHECK(explicit_out.exit_code == 0);
    CHECK(fs::exists(scratch / "here.txt"));
}

TEST_CASE("wer campaign writes CSV and JSON and is reproducible") {
    Scratch scratch;
    const std::string common = "wer -r 2 -m 4 --full --snr 1,3 --trials 2000 --seed 11 ";
    auto first = run_cli(scratch, common + "--workers 2 -o run1");
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == "run1.csv\nrun1.json\n");

    const std::string csv = slurp(scratch / "run1.csv");
    CHECK(csv.find("# manifest: {") != std::string::npos);
    auto rows = data_lines(csv);
    REQUIRE(rows.size() == 3);  // header + two SNR points
    CHECK(rows[0] == "snr_db,trials,word_errors,wer,wilson_low,wilson_high");
    CHECK(rows[1].rfind("1,2000,", 0) == 0);
    CHECK(rows[2].rfind("3,2000,", 0) == 0);

    json doc = json::parse(slurp(scratch / "run1.json"));
    CHECK(doc["decoder"]["name"].get<std::string>() == "CPA");
    CHECK(doc["decoder"]["collection_size"].get<int>() == 15);
    CHECK(doc["manifest"]["parameters"]["seed"].get<int>() == 11);
    REQUIRE(doc["points"].size() == 2);
    CHECK(doc["points"][0]["trials"].get<int>() == 2000);

    // a different worker count must reproduce the same numbers
    auto second = run_cli(scratch, common + "--workers 4 -o run2");
    REQUIRE(second.exit_code == 0);
    CHECK(data_lines(slurp(scratch / "run2.csv")) == rows);

    // errors shrink with SNR on this grid
    json p = doc["points"];
    CHECK(p[0]["word_errors"].get<int>() > p[1]["word_errors"].get<int>());
}

TEST_CASE("wer with a pruned collection is error free without noise") {
    Scratch scratch;
    REQUIRE(run_cli(scratch, "select -m 5 -s 2 -k 9 --strategy spread_first -o coll.txt")
                .exit_code == 0);
    auto result = run_cli(
        scratch, "wer -r 3 -m 5 --collection coll.txt --snr 60 --trials 100 -o clean");
    REQUIRE(result.exit_code == 0);
    json doc = json::parse(slurp(scratch / "clean.json"));
    CHECK(doc["decoder"]["name"].get<std::string>() == "PCPA-9");
    CHECK(doc["points"][0]["word_errors"].get<int>() == 0);
    CHECK(doc["points"][0]["wer"].get<double>() == 0.0);
}

TEST_CASE("freqmat writes both matrices and a summary") {
    Scratch scratch;
    auto result = run_cli(scratch, "freqmat -r 2 -m 3 --trials 300 --seed 9 -o fm");
    REQUIRE(result.exit_code == 0);
    CHECK(result.out == "fm_p.csv\nfm_r.csv\nfm.json\n");

    auto p_rows = data_lines(slurp(scratch / "fm_p.csv"));
    auto r_rows = data_lines(slurp(scratch / "fm_r.csv"));
    REQUIRE(p_rows.size() == 7);
    REQUIRE(r_rows.size() == 7);

    json doc = json::parse(slurp(scratch / "fm.json"));
    CHECK(doc["m"].get<int>() == 3);
    CHECK(doc["s"].get<int>() == 1);
    CHECK(doc["subspaces"].get<int>() == 7);
    CHECK(doc["trials"].get<int>() == 300);
    CHECK(std::isfinite(doc["spearman"].get<double>()));

    // diagonal of the agreement matrix is exactly 1
    for (int i = 0; i < 7; ++i) {
        std::istringstream row(p_rows[static_cast<std::size_t>(i)]);
        std::string cell;
        for (int j = 0; j <= i; ++j) std::getline(row, cell, ',');
        CHECK(cell == "1");
    }
}

TEST_CASE("theorem1 reports closed form and empirical agreement") {
    Scratch scratch;
    auto result = run_cli(scratch, "theorem1 -s 2 -d 0 --epsilon 0.1");
    REQUIRE(result.exit_code == 0);
    json doc = json::parse(result.out);
    CHECK(doc["closed_form"].get<double>() == doctest::Approx(0.631072).epsilon(1e-9));
    CHECK(doc["empirical"].get<double>() ==
          doctest::Approx(doc["closed_form"].get<double>()).epsilon(0.02));
    CHECK(doc["trials"].get<int>() == 100000);
}

}  // TEST_SUITE
