"""退相干模型 - 附加在 B 閘上的高斯隨機相位擾動

每次 B 閘作用前，對其兩個量子位元各施加一次獨立的相位擾動
c0|0⟩ + c1|1⟩ → c0 e^{-iφ}|0⟩ + c1 e^{iφ}|1⟩，φ ~ Normal(0, δ²)。
A 閘與導線不附加雜訊。

隨機數串流：Philox4x64 計數器式產生器，金鑰為 (master_seed, realization_seed)，
計數器高位字為閘索引，因此每個 (實現, 閘) 都擁有獨立且可重現的串流，
與執行順序、線程數無關。高斯抽樣使用 numpy Generator.standard_normal
（ziggurat 演算法），槽位 0 對應 qubits[0]、槽位 1 對應 qubits[1]。
"""
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

import config
from statevector import (HADAMARD, RegisterSize, apply_diagonal_phase,
                         apply_single_qubit, new_basis_state)
from utils import ContractViolation, DomainError, validate_qubit

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class NoiseModel:
    delta: float
    master_seed: int = config.DEFAULT_SEED

    def __post_init__(self):
        if not math.isfinite(self.delta) or self.delta < 0:
            raise DomainError(f"相位擾動寬度 δ 必須為非負有限值，收到 {self.delta}")
        object.__setattr__(self, 'delta', float(self.delta))
        object.__setattr__(self, 'master_seed', int(self.master_seed) & MASK64)


@dataclass
class KickTrace:
    """單次實現中實際施加的 (gate_index, qubit, phi)"""
    entries: list = field(default_factory=list)

    def record(self, gate_index, qubit, phi):
        self.entries.append((int(gate_index), int(qubit), float(phi)))

    def __len__(self):
        return len(self.entries)

    def to_frame(self):
        return pd.DataFrame(self.entries, columns=['gate_index', 'qubit', 'phi'])

    def to_jsonl(self, path):
        with open(path, 'w', encoding='utf-8') as fh:
            for gate_index, qubit, phi in self.entries:
                fh.write(json.dumps({'gate_index': gate_index, 'qubit': qubit, 'phi': phi}) + '\n')
        logger.info(f"相位擾動軌跡已寫入 {path}（{len(self.entries)} 筆）")


def gate_stream(model, realization_seed, gate_index):
    """(master_seed, realization_seed, gate_index) 對應的獨立串流"""
    key = np.array([model.master_seed, int(realization_seed) & MASK64], dtype=np.uint64)
    counter = np.array([0, 0, int(gate_index) & MASK64, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def sample_phase(delta, stream):
    """φ ~ Normal(0, δ²)；δ = 0 時恆為 0（串流仍前進一次）"""
    if delta < 0:
        raise DomainError(f"相位擾動寬度 δ 必須非負，收到 {delta}")
    z = stream.standard_normal()
    return float(delta * z) if delta > 0 else 0.0


def apply_kick(state, qubit, phi, inplace=False):
    """位元為 0 的振幅乘 exp(−iφ)，為 1 的乘 exp(+iφ)"""
    qubit = validate_qubit(qubit, state.L)
    if phi == 0:
        return state if inplace else state.copy()
    return apply_diagonal_phase(state, qubit, -phi, phi, inplace=inplace)


def kicks_for_gate(model, realization_seed, gate_index, gate):
    """B 閘兩個量子位元的 (phi_j, phi_k)"""
    if getattr(gate, 'kind', None) != 'B':
        raise ContractViolation(f"閘 #{gate_index} 不是 B 閘，A 閘不附加退相干")
    stream = gate_stream(model, realization_seed, gate_index)
    return sample_phase(model.delta, stream), sample_phase(model.delta, stream)


def single_qubit_coherence(delta, n_realizations, master_seed=config.DEFAULT_SEED):
    """|+⟩ 經一次擾動後非對角元 c0·c1* 的系綜平均（理論值 e^{−2δ²}/2）"""
    model = NoiseModel(delta, master_seed)
    plus = apply_single_qubit(new_basis_state(RegisterSize(1), 0), 0, HADAMARD)
    total = 0j
    for i in range(n_realizations):
        phi = sample_phase(model.delta, gate_stream(model, i, 0))
        kicked = apply_kick(plus, 0, phi)
        c0, c1 = kicked.amplitudes
        total += c0 * np.conj(c1)
    return total / n_realizations
