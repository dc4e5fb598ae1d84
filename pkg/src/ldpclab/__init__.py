"""LDPC decoding laboratory.

Builds sparse parity-check codes, decodes them with a probability-domain
sum-product decoder or a gradient-descent decoder whose check outputs are
chained soft XORs, counts per-iteration multiplications analytically for
both, and benchmarks BER over a seeded BPSK/AWGN channel.
"""

from .channel import EPS_PROB, ChannelParams, awgn_transmit, modulate_bpsk, posteriors
from .code_model import (
    AlistParseError,
    GeneratorMatrix,
    SparseParityCheck,
    construct_regular,
    derive_generator,
    load_alist,
    save_alist,
    syndrome,
)
from .complexity import (
    ComplexityReport,
    MlpdCounts,
    SpaCounts,
    complexity_report,
    count_mlpd,
    count_spa,
    gap_term,
    verify_gap,
)
from .mlpd import (
    MlpdConfig,
    MlpdState,
    check_gradient,
    forward,
    hard_map,
    mlpd_decode,
    soft_xor_chain,
    update_inputs,
)
from .sim import (
    BerRecord,
    CsvFormatError,
    SimConfig,
    emit_csv,
    load_csv,
    parse_csv,
    run_ber_point,
    run_sweep,
    save_csv,
)
from .spa import (
    DecodeOutcome,
    SpaMessages,
    app_decide,
    check_update,
    spa_decode,
    spa_init,
    variable_update,
)

__version__ = "0.1.0"

__all__ = [
    "AlistParseError",
    "BerRecord",
    "ChannelParams",
    "ComplexityReport",
    "CsvFormatError",
    "DecodeOutcome",
    "EPS_PROB",
    "GeneratorMatrix",
    "MlpdConfig",
    "MlpdCounts",
    "MlpdState",
    "SimConfig",
    "SparseParityCheck",
    "SpaCounts",
    "SpaMessages",
    "app_decide",
    "awgn_transmit",
    "check_gradient",
    "check_update",
    "complexity_report",
    "construct_regular",
    "count_mlpd",
    "count_spa",
    "derive_generator",
    "emit_csv",
    "forward",
    "gap_term",
    "hard_map",
    "load_alist",
    "load_csv",
    "mlpd_decode",
    "modulate_bpsk",
    "parse_csv",
    "posteriors",
    "run_ber_point",
    "run_sweep",
    "save_alist",
    "save_csv",
    "soft_xor_chain",
    "spa_decode",
    "spa_init",
    "syndrome",
    "update_inputs",
    "variable_update",
    "verify_gap",
]
