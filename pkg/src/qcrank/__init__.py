"""Compiler, simulator, and decoder toolkit for QCrank/QBArt data encodings."""

from .core import (Circuit, DataSequence, Gate, Layout, ShotHistogram,
                   bitstring_join, bitstring_split, circuit_cx_depth)
from .decoder import (CalibrationTable, RecoveryReport, decode_qbart,
                      decode_qcrank, fit_calibration, ideal_calibration,
                      majority_vote, recover_angle, recovered_angles, rsf, rvf)
from .encoder import (EncodingConfig, build_pucry, build_qbart, build_qcrank,
                      map_symbols_to_angles, qbart_angle_grid)
from .planner import ShotPlan, lambda_for, shots_for_circuit
from .sim import (H1_PROXY, IBMQ_PROXY, IDEAL, MINIMAL, NoiseModel,
                  builtin_noise_models, circuit_unitary, measured_probabilities,
                  noise_model_by_name, sample, statevector)
from .walsh import alphas_to_thetas, cx_control_sequence, fwht, gray_code, \
    thetas_to_alphas

__all__ = [
    "Circuit", "DataSequence", "Gate", "Layout", "ShotHistogram",
    "bitstring_join", "bitstring_split", "circuit_cx_depth",
    "CalibrationTable", "RecoveryReport", "decode_qbart", "decode_qcrank",
    "fit_calibration", "ideal_calibration", "majority_vote", "recover_angle",
    "recovered_angles", "rsf", "rvf",
    "EncodingConfig", "build_pucry", "build_qbart", "build_qcrank",
    "map_symbols_to_angles", "qbart_angle_grid",
    "ShotPlan", "lambda_for", "shots_for_circuit",
    "H1_PROXY", "IBMQ_PROXY", "IDEAL", "MINIMAL", "NoiseModel",
    "builtin_noise_models", "circuit_unitary", "measured_probabilities",
    "noise_model_by_name", "sample", "statevector",
    "alphas_to_thetas", "cx_control_sequence", "fwht", "gray_code",
    "thetas_to_alphas",
]

__version__ = "0.1.0"
