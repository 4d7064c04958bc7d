"""量子暫存器 - 稠密複數狀態向量與基本閘操作

基底整數 a 的位元編碼為 little-endian：a = Σ a_i 2^i，量子位元 i 對應 2^i 位。
所有操作預設回傳新的狀態；傳入 inplace=True 時直接修改呼叫者的陣列。
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

import config
from utils import DomainError, check_memory, validate_qubit, validate_register_size

logger = logging.getLogger(__name__)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class RegisterSize:
    """L 個量子位元的暫存器，維度 s = 2^L"""
    L: int

    def __post_init__(self):
        object.__setattr__(self, 'L', validate_register_size(self.L))

    @property
    def s(self):
        return 1 << self.L


@dataclass(eq=False)
class StateVector:
    size: RegisterSize
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.size.s,):
            raise DomainError(
                f"振幅長度 {self.amplitudes.shape} 與暫存器維度 {self.size.s} 不符"
            )

    @property
    def L(self):
        return self.size.L

    def copy(self):
        return StateVector(self.size, self.amplitudes.copy())

    def norm_deviation(self):
        """|‖ψ‖² − 1|"""
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)


def allocate_amplitudes(size):
    check_memory(size.s * np.dtype(complex).itemsize)
    return np.zeros(size.s, dtype=complex)


def new_basis_state(size, a):
    """計算基底態 |a⟩"""
    if isinstance(a, bool) or not isinstance(a, (int, np.integer)) or not 0 <= a < size.s:
        raise DomainError(f"基底整數 a={a!r} 超出範圍 [0, {size.s})")
    amplitudes = allocate_amplitudes(size)
    amplitudes[int(a)] = 1.0
    return StateVector(size, amplitudes)


def from_amplitudes(amplitudes, normalize=False):
    """由振幅序列建立狀態（長度必須為 2 的冪次）"""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    L = int(amplitudes.size).bit_length() - 1
    if amplitudes.ndim != 1 or amplitudes.size != 1 << L:
        raise DomainError(f"振幅長度 {amplitudes.size} 不是 2 的冪次")
    if normalize:
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise DomainError("零向量無法正規化")
        amplitudes = amplitudes / norm
    return StateVector(RegisterSize(L), amplitudes)


def random_state(size, rng):
    """隨機正規化狀態（測試與基準用）"""
    amplitudes = rng.normal(size=size.s) + 1j * rng.normal(size=size.s)
    return StateVector(size, amplitudes / np.linalg.norm(amplitudes))


def _check_unitary(u):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DomainError(f"單一量子位元閘必須為 2×2，收到 {u.shape}")
    deviation = np.max(np.abs(u @ u.conj().T - IDENTITY))
    if deviation > config.UNITARY_TOLERANCE:
        raise DomainError(f"矩陣不是么正矩陣（偏差 {deviation:.3e}）")
    return u


def _target(state, inplace):
    return state if inplace else state.copy()


def apply_single_qubit(state, qubit, u, inplace=False):
    """在指定量子位元上套用 2×2 么正矩陣"""
    qubit = validate_qubit(qubit, state.L)
    u = _check_unitary(u)
    out = _target(state, inplace)
    # (高位, 目標位元, 低位)
    psi = out.amplitudes.reshape(-1, 2, 1 << qubit)
    psi[...] = np.einsum('ij,ajb->aib', u, psi)
    return out


@lru_cache(maxsize=None)
def bit_mask(L, qubit):
    """布林陣列：索引在 qubit 位元為 1"""
    return ((np.arange(1 << L) >> qubit) & 1).astype(bool)


@lru_cache(maxsize=None)
def pair_indices(L, j, k):
    """位元 j 與 k 同時為 1 的索引"""
    return np.flatnonzero(bit_mask(L, j) & bit_mask(L, k))


def apply_controlled_phase(state, j, k, theta, inplace=False):
    """B_jk：兩位元皆為 1 的振幅乘上 exp(iθ)"""
    j = validate_qubit(j, state.L, "j")
    k = validate_qubit(k, state.L, "k")
    if j == k:
        raise DomainError(f"受控相位閘需要兩個不同的量子位元，收到 j=k={j}")
    out = _target(state, inplace)
    if theta != 0:
        out.amplitudes[pair_indices(out.L, min(j, k), max(j, k))] *= np.exp(1j * theta)
    return out


def apply_diagonal_phase(state, qubit, phase0, phase1, inplace=False):
    """對角閘 diag(exp(i·phase0), exp(i·phase1))，不做么正檢查"""
    qubit = validate_qubit(qubit, state.L)
    out = _target(state, inplace)
    mask = bit_mask(out.L, qubit)
    out.amplitudes[~mask] *= np.exp(1j * phase0)
    out.amplitudes[mask] *= np.exp(1j * phase1)
    return out


def probabilities(state):
    """計算基底量測機率 |amp(a)|²"""
    return np.abs(state.amplitudes) ** 2
