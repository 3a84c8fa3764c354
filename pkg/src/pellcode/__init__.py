"""Pell and generalized Pell (p,i)-number coding with determinant-based error correction."""

from .blocking import BlockRecord, CharTable, KPackage, Mode, block_decode, block_encode
from .codec import CodePackage, decode, encode, verify_det_relation
from .correction import CorrectionResult, ErrorPattern, Status, correct, detect
from .matrices import IntMatrix, a_matrix, determinant, g_matrix, p_power, unimodular_inverse
from .sequences import SequenceParams, binet_pell, gen_pell, pell, pell_ratio, ratio_interval

__version__ = "0.1.0"

__all__ = [
    "BlockRecord", "CharTable", "CodePackage", "CorrectionResult", "ErrorPattern", "IntMatrix",
    "KPackage", "Mode", "SequenceParams", "Status", "a_matrix", "binet_pell", "block_decode",
    "block_encode", "correct", "decode", "detect", "determinant", "encode", "g_matrix", "gen_pell",
    "p_power", "pell", "pell_ratio", "ratio_interval", "unimodular_inverse", "verify_det_relation",
]
