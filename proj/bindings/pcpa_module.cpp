#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcpa/channel.hpp"
#include "pcpa/collection.hpp"
#include "pcpa/decoder.hpp"
#include "pcpa/fht.hpp"
#include "pcpa/gf2.hpp"
#include "pcpa/llr.hpp"
#include "pcpa/rm_code.hpp"
#include "pcpa/rng.hpp"
#include "pcpa/simulate.hpp"
#include "pcpa/subspace.hpp"

#ifndef PCPA_VERSION
#define PCPA_VERSION "0.0.0"
#endif

namespace py = pybind11;
using namespace pcpa;

namespace {

DecoderConfig make_config(SubspaceCollection collection, int t_max, double omega,
                          bool early_stop, bool include_channel_prior, bool record_estimates) {
    DecoderConfig config{std::move(collection)};
    config.t_max = t_max;
    config.omega = omega;
    config.early_stop = early_stop;
    config.include_channel_prior = include_channel_prior;
    config.record_estimates = record_estimates;
    return config;
}

}  // namespace

PYBIND11_MODULE(_pcpa, mod) {
    mod.doc() = "Projection-aggregation decoding of Reed-Muller codes";
    mod.attr("__version__") = PCPA_VERSION;
    mod.attr("LLR_MAX") = kLlrMax;

    py::register_exception<data_error>(mod, "DataError", PyExc_ValueError);

    py::class_<Subspace>(mod, "Subspace")
        .def(py::init<int>(), py::arg("m"), "The zero subspace of F_2^m")
        .def_property_readonly("ambient", &Subspace::ambient)
        .def_property_readonly("dim", &Subspace::dim)
        .def_property_readonly("basis", &Subspace::basis)
        .def("contains", &Subspace::contains, py::arg("z"))
        .def("elements", &Subspace::elements)
        .def("__str__", &Subspace::to_string)
        .def("__repr__",
             [](const Subspace& s) { return "Subspace('" + s.to_string() + "')"; })
        .def("__eq__", [](const Subspace& a, const Subspace& b) { return a == b; })
        .def("__lt__", [](const Subspace& a, const Subspace& b) { return a < b; })
        .def("__hash__",
             [](const Subspace& s) {
                 std::size_t h = std::hash<int>()(s.ambient());
                 for (Point v : s.basis()) h = h * 1099511628211ULL + v;
                 return h;
             })
        .def_static("from_string", &Subspace::from_string, py::arg("text"));

    mod.def("gaussian_binomial", &gaussian_binomial, py::arg("m"), py::arg("s"));
    mod.def(
        "canonicalize",
        [](const std::vector<Point>& vectors, int m) {
            return canonicalize(std::span<const Point>(vectors), m);
        },
        py::arg("vectors"), py::arg("m"));
    mod.def("enumerate_subspaces", &enumerate_subspaces, py::arg("m"), py::arg("s"));
    mod.def("intersect_dim", &intersect_dim, py::arg("a"), py::arg("b"));
    mod.def("project_binary",
            py::overload_cast<const Word&, const Subspace&>(&project_binary), py::arg("v"),
            py::arg("b"));

    py::class_<RmCode>(mod, "RmCode")
        .def(py::init<int, int>(), py::arg("r"), py::arg("m"))
        .def_property_readonly("order", &RmCode::order)
        .def_property_readonly("vars", &RmCode::vars)
        .def_property_readonly("length", &RmCode::length)
        .def_property_readonly("dimension", &RmCode::dimension)
        .def_property_readonly("monomials", &RmCode::monomials)
        .def_property_readonly("generator", &RmCode::generator)
        .def("encode", &RmCode::encode, py::arg("message"))
        .def("is_codeword", &RmCode::is_codeword, py::arg("v"))
        .def("__repr__", [](const RmCode& c) {
            return "RmCode(" + std::to_string(c.order()) + ", " + std::to_string(c.vars()) +
                   ")";
        });

    mod.def("clamp_llr", &clamp_llr, py::arg("value"));
    mod.def("boxplus", &boxplus, py::arg("a"), py::arg("b"));
    mod.def("project_llr",
            py::overload_cast<const LlrVector&, const Subspace&>(&project_llr),
            py::arg("llr"), py::arg("b"));
    mod.def("partial_project_llr",
            py::overload_cast<const LlrVector&, const Subspace&, Point>(&partial_project_llr),
            py::arg("llr"), py::arg("b"), py::arg("z"));
    mod.def("hard_decision", &hard_decision, py::arg("llr"));

    py::class_<Rm1Decision>(mod, "Rm1Decision")
        .def_readonly("codeword", &Rm1Decision::codeword)
        .def_readonly("metric", &Rm1Decision::metric)
        .def_readonly("mask", &Rm1Decision::mask)
        .def_readonly("constant", &Rm1Decision::constant);
    mod.def("fht_ml_decode_rm1", &fht_ml_decode_rm1, py::arg("llr"));
    mod.def(
        "fht",
        [](std::vector<double> data) {
            fht(std::span<double>(data));
            return data;
        },
        py::arg("data"), "Walsh-Hadamard transform (returns the transformed copy)");

    py::class_<SubspaceCollection>(mod, "SubspaceCollection")
        .def(py::init<int, int, std::vector<Subspace>>(), py::arg("m"), py::arg("s"),
             py::arg("members"))
        .def_property_readonly("ambient", &SubspaceCollection::ambient)
        .def_property_readonly("dim", &SubspaceCollection::dim)
        .def_property_readonly("members", &SubspaceCollection::members)
        .def_property_readonly("intersection_sum", &SubspaceCollection::intersection_sum)
        .def("correlation", &SubspaceCollection::correlation)
        .def("__len__", &SubspaceCollection::size);

    mod.def("pair_correlation", &pair_correlation, py::arg("a"), py::arg("b"));
    mod.def("collection_correlation", &collection_correlation, py::arg("members"));
    mod.def("theorem1_probability", &theorem1_probability, py::arg("s"), py::arg("d"),
            py::arg("epsilon"));
    mod.def("theorem1_monte_carlo", &theorem1_monte_carlo, py::arg("b1"), py::arg("b2"),
            py::arg("epsilon"), py::arg("z"), py::arg("trials"), py::arg("seed"));
    mod.def(
        "build_collection",
        [](int m, int s, std::size_t size, const std::string& strategy, std::uint64_t seed) {
            return build_collection(m, s, size, strategy_from_name(strategy), seed);
        },
        py::arg("m"), py::arg("s"), py::arg("size"), py::arg("strategy") = "greedy_min_rs",
        py::arg("seed") = 1);
    mod.def(
        "read_collection",
        [](const std::string& path) { return read_collection_file(path); },
        py::arg("path"));
    mod.def(
        "write_collection",
        [](const SubspaceCollection& collection, const std::string& path) {
            write_collection_file(collection, path);
        },
        py::arg("collection"), py::arg("path"));

    py::class_<DecodeOutcome>(mod, "DecodeOutcome")
        .def_readonly("codeword", &DecodeOutcome::codeword)
        .def_readonly("final_llr", &DecodeOutcome::final_llr)
        .def_readonly("iterations_run", &DecodeOutcome::iterations_run)
        .def_readonly("converged", &DecodeOutcome::converged)
        .def_readonly("projection_estimates", &DecodeOutcome::projection_estimates);

    py::class_<PaDecoder>(mod, "PaDecoder")
        .def(py::init([](SubspaceCollection collection, int t_max, double omega,
                         bool early_stop, bool include_channel_prior, bool record_estimates) {
                 return PaDecoder(make_config(std::move(collection), t_max, omega, early_stop,
                                              include_channel_prior, record_estimates));
             }),
             py::arg("collection"), py::arg("t_max") = 3, py::arg("omega") = 0.0,
             py::arg("early_stop") = false, py::arg("include_channel_prior") = false,
             py::arg("record_estimates") = false)
        .def_property_readonly("omega", &PaDecoder::omega)
        .def_property_readonly("projections_per_iteration",
                               &PaDecoder::projections_per_iteration)
        .def("decode", &PaDecoder::decode, py::arg("llr"),
             py::call_guard<py::gil_scoped_release>());

    mod.def(
        "pcpa_decode",
        [](const LlrVector& llr, const SubspaceCollection& collection, int t_max, double omega,
           bool early_stop, bool include_channel_prior, bool record_estimates) {
            return pcpa_decode(llr, make_config(collection, t_max, omega, early_stop,
                                                include_channel_prior, record_estimates));
        },
        py::arg("llr"), py::arg("collection"), py::arg("t_max") = 3, py::arg("omega") = 0.0,
        py::arg("early_stop") = false, py::arg("include_channel_prior") = false,
        py::arg("record_estimates") = false, py::call_guard<py::gil_scoped_release>());
    mod.def("cpa_decode", &cpa_decode, py::arg("llr"), py::arg("r"), py::arg("m"),
            py::arg("t_max") = 3, py::arg("omega") = 0.0,
            py::call_guard<py::gil_scoped_release>());
    mod.def(
        "aggregate",
        [](const LlrVector& l_prev, const std::vector<std::pair<Subspace, Word>>& estimates,
           double omega) { return aggregate(l_prev, estimates, omega); },
        py::arg("l_prev"), py::arg("estimates"), py::arg("omega"));

    mod.def("awgn_sigma", &awgn_sigma, py::arg("snr_db"), py::arg("rate"));
    py::class_<ChannelSample>(mod, "ChannelSample")
        .def_readonly("transmitted", &ChannelSample::transmitted)
        .def_readonly("llr", &ChannelSample::llr)
        .def_readonly("snr_db", &ChannelSample::snr_db)
        .def_readonly("trial_index", &ChannelSample::trial_index);
    mod.def("simulate_channel", &simulate_channel, py::arg("code"), py::arg("message"),
            py::arg("snr_db"), py::arg("seed"), py::arg("trial_index") = 0);
    mod.def("simulate_channel_random", &simulate_channel_random, py::arg("code"),
            py::arg("snr_db"), py::arg("seed"), py::arg("trial_index") = 0);

    py::class_<Interval>(mod, "Interval")
        .def_readonly("low", &Interval::low)
        .def_readonly("high", &Interval::high);
    mod.def("wilson_interval", &wilson_interval, py::arg("errors"), py::arg("trials"),
            py::arg("z") = 1.959963984540054);
    mod.def("spearman_rank_correlation", &spearman_rank_correlation, py::arg("x"),
            py::arg("y"));

    py::class_<WerPoint>(mod, "WerPoint")
        .def_readonly("snr_db", &WerPoint::snr_db)
        .def_readonly("trials", &WerPoint::trials)
        .def_readonly("word_errors", &WerPoint::word_errors)
        .def_readonly("wer", &WerPoint::wer)
        .def_readonly("wilson_low", &WerPoint::wilson_low)
        .def_readonly("wilson_high", &WerPoint::wilson_high);
    py::class_<DecoderIdentity>(mod, "DecoderIdentity")
        .def_readonly("name", &DecoderIdentity::name)
        .def_readonly("r", &DecoderIdentity::r)
        .def_readonly("m", &DecoderIdentity::m)
        .def_readonly("collection_size", &DecoderIdentity::collection_size)
        .def_readonly("collection_correlation", &DecoderIdentity::collection_correlation)
        .def_readonly("omega", &DecoderIdentity::omega)
        .def_readonly("t_max", &DecoderIdentity::t_max);
    py::class_<WerReport>(mod, "WerReport")
        .def_readonly("decoder", &WerReport::decoder)
        .def_readonly("seed", &WerReport::seed)
        .def_readonly("points", &WerReport::points);
    mod.def(
        "run_wer",
        [](const RmCode& code, const SubspaceCollection& collection,
           const std::vector<double>& snr_list, std::uint64_t trials, std::uint64_t seed,
           int t_max, double omega, int workers) {
            DecoderConfig config = make_config(collection, t_max, omega, false, false, false);
            return run_wer(code, config, snr_list, Stopping::fixed_trials(trials), seed,
                           workers);
        },
        py::arg("code"), py::arg("collection"), py::arg("snr_list"), py::arg("trials"),
        py::arg("seed") = 1, py::arg("t_max") = 3, py::arg("omega") = 0.0,
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());

    py::class_<FrequencyMatrix>(mod, "FrequencyMatrix")
        .def_readonly("m", &FrequencyMatrix::m)
        .def_readonly("s", &FrequencyMatrix::s)
        .def_readonly("snr_db", &FrequencyMatrix::snr_db)
        .def_readonly("trials", &FrequencyMatrix::trials)
        .def_readonly("p", &FrequencyMatrix::p)
        .def_readonly("r", &FrequencyMatrix::r)
        .def_readonly("spearman", &FrequencyMatrix::spearman);
    mod.def("run_frequency_matrix", &run_frequency_matrix, py::arg("code"), py::arg("snr_db"),
            py::arg("trials"), py::arg("seed") = 1, py::arg("workers") = 1,
            py::call_guard<py::gil_scoped_release>());

    mod.def("word_to_string", &word_to_string, py::arg("word"));
    mod.def("word_from_string", &word_from_string, py::arg("text"));
    mod.def("mix_seed", &mix_seed, py::arg("master"), py::arg("stream"));
}
