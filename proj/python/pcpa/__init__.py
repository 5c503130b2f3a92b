"""Projection-aggregation decoding of Reed-Muller codes.

Thin Python surface over the C++ core: GF(2) subspace machinery, Reed-Muller
encoding and membership, LLR projection, FHT-based RM(1,k) ML decoding, the
CPA/PCPA iterative decoder, subspace-collection construction, and the
BPSK/AWGN Monte Carlo harness.
"""

from ._pcpa import (
    LLR_MAX,
    ChannelSample,
    DataError,
    DecodeOutcome,
    DecoderIdentity,
    FrequencyMatrix,
    Interval,
    PaDecoder,
    Rm1Decision,
    RmCode,
    Subspace,
    SubspaceCollection,
    WerPoint,
    WerReport,
    __version__,
    aggregate,
    awgn_sigma,
    boxplus,
    build_collection,
    canonicalize,
    clamp_llr,
    collection_correlation,
    cpa_decode,
    enumerate_subspaces,
    fht,
    fht_ml_decode_rm1,
    gaussian_binomial,
    hard_decision,
    intersect_dim,
    mix_seed,
    pair_correlation,
    partial_project_llr,
    pcpa_decode,
    project_binary,
    project_llr,
    read_collection,
    run_frequency_matrix,
    run_wer,
    simulate_channel,
    simulate_channel_random,
    spearman_rank_correlation,
    theorem1_monte_carlo,
    theorem1_probability,
    wilson_interval,
    word_from_string,
    word_to_string,
    write_collection,
)

__all__ = [
    "LLR_MAX",
    "ChannelSample",
    "DataError",
    "DecodeOutcome",
    "DecoderIdentity",
    "FrequencyMatrix",
    "Interval",
    "PaDecoder",
    "Rm1Decision",
    "RmCode",
    "Subspace",
    "SubspaceCollection",
    "WerPoint",
    "WerReport",
    "__version__",
    "aggregate",
    "awgn_sigma",
    "boxplus",
    "build_collection",
    "canonicalize",
    "clamp_llr",
    "collection_correlation",
    "cpa_decode",
    "enumerate_subspaces",
    "fht",
    "fht_ml_decode_rm1",
    "gaussian_binomial",
    "hard_decision",
    "intersect_dim",
    "mix_seed",
    "pair_correlation",
    "partial_project_llr",
    "pcpa_decode",
    "project_binary",
    "project_llr",
    "read_collection",
    "run_frequency_matrix",
    "run_wer",
    "simulate_channel",
    "simulate_channel_random",
    "spearman_rank_correlation",
    "theorem1_monte_carlo",
    "theorem1_probability",
    "wilson_interval",
    "word_from_string",
    "word_to_string",
    "write_collection",
]
