"""暴力參考實作 - 稠密 DFT 與截斷相位 AQFT 矩陣（僅供測試比對）"""
import logging
from dataclasses import dataclass

import numpy as np

import config
from bounds import phase_defect_matrix
from utils import ResourceError, check_memory, validate_degree, validate_register_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DenseUnitary:
    """s×s 矩陣，元素 (c, a)"""
    entries: np.ndarray

    @property
    def dimension(self):
        return self.entries.shape[0]

    def apply(self, amplitudes):
        return self.entries @ np.asarray(amplitudes, dtype=complex)

    def unitarity_deviation(self):
        ident = np.eye(self.dimension, dtype=complex)
        return float(np.max(np.abs(self.entries @ self.entries.conj().T - ident)))

    def is_unitary(self, atol=config.NORM_TOLERANCE):
        return self.unitarity_deviation() < atol


def _check_size(L):
    L = validate_register_size(L)
    if L > config.ORACLE_MAX_QUBITS:
        raise ResourceError(f"稠密矩陣限 L ≤ {config.ORACLE_MAX_QUBITS}，收到 L={L}")
    s = 1 << L
    check_memory(s * s * np.dtype(complex).itemsize, what="稠密矩陣")
    return L, s


def _finish(entries):
    unitary = DenseUnitary(entries)
    if unitary.dimension <= config.ORACLE_UNITARITY_CHECK_MAX_DIM:
        deviation = unitary.unitarity_deviation()
        if deviation > config.NORM_TOLERANCE:
            logger.warning(f"參考矩陣偏離么正 {deviation:.3e}")
    return unitary


def dft_matrix(L):
    """元素 (c, a) = exp(2πi·ac/s)/√s"""
    L, s = _check_size(L)
    indices = np.arange(s)
    # ac mod s 先取整數餘數，避免大引數的相位誤差
    exponent = np.outer(indices, indices) % s
    return _finish(np.exp(2j * np.pi * exponent / s) / np.sqrt(s))


def aqft_matrix(L, m):
    """元素 (c, a) = exp(i(2π·ac/s − Δ(a, c)))/√s"""
    L, s = _check_size(L)
    m = validate_degree(m, L)
    indices = np.arange(s)
    exact = 2 * np.pi * (np.outer(indices, indices) % s) / s
    # 以捨棄的低階項表示 Δ（與原始值差 2π 整數倍）
    defect = phase_defect_matrix(L, m, reduced=True)
    return _finish(np.exp(1j * (exact - defect)) / np.sqrt(s))
