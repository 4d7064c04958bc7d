"""QFT / AQFT 量子網路 - 建構閘序列、執行與反序讀出"""
import json
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

import config
import noise as noise_model
from statevector import (HADAMARD, RegisterSize, apply_controlled_phase,
                         apply_single_qubit, new_basis_state, probabilities)
from utils import DomainError, validate_degree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GateOp:
    """基本閘：A（單位元 Hadamard 型）或 B_jk（受控相位 π/2^|j−k|）"""
    kind: str
    qubits: tuple
    theta: float = 0.0

    @classmethod
    def A(cls, target):
        return cls('A', (int(target),))

    @classmethod
    def B(cls, j, k):
        j, k = int(j), int(k)
        if j == k:
            raise DomainError(f"B 閘需要兩個不同的量子位元，收到 j=k={j}")
        return cls('B', (j, k), math.pi / 2 ** abs(k - j))

    @property
    def distance(self):
        return abs(self.qubits[1] - self.qubits[0]) if self.kind == 'B' else 0

    def to_dict(self):
        item = {'kind': self.kind, 'qubits': list(self.qubits)}
        if self.kind == 'B':
            item['theta'] = self.theta
        return item


@dataclass(frozen=True)
class NetworkSpec:
    size: object
    m: int
    gates: tuple
    readout_reversed: bool = True

    @property
    def L(self):
        return self.size.L

    @property
    def n_a(self):
        return sum(1 for g in self.gates if g.kind == 'A')

    @property
    def n_b(self):
        return sum(1 for g in self.gates if g.kind == 'B')


def gate_counts(L, m):
    """(A 閘數, B 閘數) = (L, (2L − m)(m − 1)/2)"""
    return L, (2 * L - m) * (m - 1) // 2


def build_aqft(size, m):
    """m 階 AQFT：保留距離 d ≤ m − 1 的 B 閘"""
    L = size.L
    m = validate_degree(m, L)
    gates = []
    for t in range(L - 1, -1, -1):
        for h in range(L - 1, t, -1):
            if h - t <= m - 1:
                gates.append(GateOp.B(t, h))
        gates.append(GateOp.A(t))

    network = NetworkSpec(size, m, tuple(gates))
    logger.debug(f"建構網路 L={L} m={m}: {network.n_a} 個 A 閘, {network.n_b} 個 B 閘")
    return network


def build_qft(size):
    """完整 QFT（m = L），共 L(L+1)/2 個閘"""
    return build_aqft(size, size.L)


def run(network, input_state, noise=None, realization_seed=0, trace=None):
    """由左至右執行閘序列；有雜訊時每個 B 閘前對其兩個位元施加相位擾動"""
    if input_state.size != network.size:
        raise DomainError(
            f"網路大小 L={network.L} 與輸入狀態 L={input_state.L} 不符"
        )
    state = input_state.copy()
    noisy = noise is not None

    for index, gate in enumerate(network.gates):
        if gate.kind == 'A':
            apply_single_qubit(state, gate.qubits[0], HADAMARD, inplace=True)
            continue
        if noisy:
            phis = noise_model.kicks_for_gate(noise, realization_seed, index, gate)
            for qubit, phi in zip(gate.qubits, phis):
                noise_model.apply_kick(state, qubit, phi, inplace=True)
                if trace is not None:
                    trace.record(index, qubit, phi)
        apply_controlled_phase(state, gate.qubits[0], gate.qubits[1], gate.theta, inplace=True)

    return state


def bit_reverse(x, L):
    """反轉 L 位元字串"""
    return int(format(x, f'0{L}b')[::-1], 2) if L > 0 else 0


@lru_cache(maxsize=None)
def bit_reverse_permutation(L):
    """perm[c] = bit_reverse_L(c)"""
    indices = np.arange(1 << L)
    reversed_ = np.zeros_like(indices)
    for i in range(L):
        reversed_ |= ((indices >> i) & 1) << (L - 1 - i)
    return reversed_


def read_amplitudes(state):
    """以傅立葉索引 c 排列的複數振幅"""
    return state.amplitudes[bit_reverse_permutation(state.L)]


def read_output(state):
    """反序讀出：傅立葉索引 c 的機率 = |amp(bit_reverse_L(c))|²"""
    return probabilities(state)[bit_reverse_permutation(state.L)]


def effective_unitary(network):
    """逐欄執行網路得到的等效矩陣，元素 (c, a) 已含反序讀出"""
    s = network.size.s
    matrix = np.empty((s, s), dtype=complex)
    for a in range(s):
        matrix[:, a] = read_amplitudes(run(network, new_basis_state(network.size, a)))
    return matrix


def network_to_json(network, indent=None):
    """序列化為 JSON 文件（除錯與黃金測試）"""
    document = {
        'format_version': config.FORMAT_VERSION,
        'L': network.L,
        'm': network.m,
        'readout_reversed': network.readout_reversed,
        'gates': [g.to_dict() for g in network.gates],
    }
    return json.dumps(document, indent=indent)


def network_from_json(text):
    """由 JSON 文件還原網路（閘角度依距離重新計算並核對）"""
    document = json.loads(text)
    size = RegisterSize(document['L'])
    gates = []
    for item in document['gates']:
        if item['kind'] == 'A':
            gates.append(GateOp.A(item['qubits'][0]))
        elif item['kind'] == 'B':
            gate = GateOp.B(*item['qubits'])
            if not math.isclose(gate.theta, item['theta'], rel_tol=0, abs_tol=1e-15):
                raise DomainError(f"B 閘角度 {item['theta']} 與距離 {gate.distance} 不符")
            gates.append(gate)
        else:
            raise DomainError(f"未知的閘種類 {item['kind']!r}")
    return NetworkSpec(size, validate_degree(document['m'], size.L), tuple(gates),
                       document.get('readout_reversed', True))
