"""解析界限 - 成功機率下界、最大相位誤差 Δ_max、AQFT 最低階數與重複次數比"""
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

import config
from utils import DomainError, UndefinedRatioError, validate_degree, validate_register_size

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
QFT_SUCCESS_PROBABILITY = 4 / math.pi ** 2


@dataclass(frozen=True)
class QFTBound:
    per_peak: float  # (r/2^{2L}) / sin²(πr/2^{L+1})
    total: float  # 4/π²
    r: int

    @property
    def per_peak_total(self):
        return self.per_peak * self.r


@dataclass(frozen=True)
class AQFTBound:
    exact: float  # (8/π²) sin²((π/2 − Δ_max)/2)，Δ_max ≥ π/2 時為 0
    asymptotic: float  # (8/π²) sin²(πm/4L)
    finite: float = None  # 未做 r ≪ 2^L 近似的形式（需要 r）


@dataclass(frozen=True)
class MinOrder:
    threshold: float  # log₂L + 2
    asymptotic: int  # 嚴格大於 threshold 的最小整數
    exact: int  # Δ_max(L, m) < π/2 的最小 m


def _size(L):
    """解析公式只要求 L 為正整數，不受狀態向量上限限制"""
    return validate_register_size(L, max_qubits=None)


def _check(L, m, enumerate_basis=False):
    L = validate_register_size(L) if enumerate_basis else _size(L)
    return L, validate_degree(m, L)


def delta_max(L, m):
    """Δ_max = (2π/2^m)(L − m − 1 + 2^{m−L})

    以整數形式 2π((L−m−1)2^{L−m} + 1)/2^L 求值，與逐項相位誤差的最大值逐位元相等。
    """
    L, m = _check(L, m)
    return TWO_PI / 2 ** L * ((L - m - 1) * 2 ** (L - m) + 1)


def delta_max_asymptotic(L, m):
    """大 L 近似 (2π/2^m)(L − m)"""
    L, m = _check(L, m)
    return TWO_PI / 2 ** m * (L - m)


def _bits(L):
    return (np.arange(1 << L)[:, None] >> np.arange(L)) & 1


def _kept_weights(L, m):
    """W[j, k] = 2^{j+k}，(j, k) ∈ ℰ = {L−m ≤ j+k ≤ L−1}"""
    j, k = np.meshgrid(np.arange(L), np.arange(L), indexing='ij')
    total = j + k
    return np.where((total >= L - m) & (total <= L - 1), 1 << total, 0).astype(np.int64)


def _low_weights(L, m):
    """被捨棄的低階項：j + k < L − m"""
    j, k = np.meshgrid(np.arange(L), np.arange(L), indexing='ij')
    total = j + k
    return np.where(total < L - m, 1 << np.minimum(total, 62), 0).astype(np.int64)


def phase_defect(a, c, L, m, reduced=False):
    """Δ(a, c) = (2π/2^L)(ac − Σ_ℰ a_j c_k 2^{j+k})

    reduced=True 時只回傳被捨棄的低階項 (2π/2^L)Σ_{j+k<L−m} a_j c_k 2^{j+k}，
    與原始值相差 2π 的整數倍。
    """
    L, m = _check(L, m)
    s = 1 << L
    if not (0 <= a < s and 0 <= c < s):
        raise DomainError(f"(a, c)=({a}, {c}) 超出範圍 [0, {s})")
    a_bits = [(a >> i) & 1 for i in range(L)]
    c_bits = [(c >> i) & 1 for i in range(L)]
    if reduced:
        dropped = sum(a_bits[j] * c_bits[k] << (j + k)
                      for j in range(L) for k in range(L) if j + k < L - m)
        return TWO_PI / s * dropped
    kept = sum(a_bits[j] * c_bits[k] << (j + k)
               for j in range(L) for k in range(L) if L - m <= j + k <= L - 1)
    return TWO_PI / s * (a * c - kept)


def phase_defect_matrix(L, m, reduced=False):
    """所有 (c, a) 的 Δ(a, c)，元素 [c, a]"""
    L, m = _check(L, m, enumerate_basis=True)
    s = 1 << L
    bits = _bits(L)
    if reduced:
        dropped = bits @ _low_weights(L, m).T @ bits.T
        return TWO_PI / s * dropped
    indices = np.arange(s, dtype=np.int64)
    kept = bits @ _kept_weights(L, m).T @ bits.T
    return TWO_PI / s * (np.outer(indices, indices) - kept)


def _warn_regime(L, r):
    if (1 << L) / r < config.PERIOD_RATIO_WARNING:
        logger.warning(f"2^L/r = {(1 << L) / r:.1f} < {config.PERIOD_RATIO_WARNING}，"
                       f"r ≪ 2^L 的近似不再成立")


def prob_qft_lower_bound(L, r):
    """QFT 的每峰值下界與總下界 4/π²"""
    L = _size(L)
    if not 1 <= r < 1 << L:
        raise DomainError(f"週期 r={r} 必須介於 1 與 2^L−1 之間")
    _warn_regime(L, r)
    per_peak = (r / 2 ** (2 * L)) / math.sin(math.pi * r / 2 ** (L + 1)) ** 2
    return QFTBound(per_peak=per_peak, total=QFT_SUCCESS_PROBABILITY, r=int(r))


def _sin_factor(dmax):
    if dmax >= math.pi / 2:
        return 0.0
    return math.sin(0.5 * (math.pi / 2 - dmax)) ** 2


def prob_aqft_lower_bound(L, m, r=None):
    """AQFT 成功機率下界（Δ_max 精確形式、漸近形式，及可選的有限 r 形式）"""
    L, m = _check(L, m)
    dmax = delta_max(L, m)
    factor = _sin_factor(dmax)
    if factor == 0.0:
        logger.debug(f"Δ_max={dmax:.4f} ≥ π/2 (L={L}, m={m})，下界截為 0")

    finite = None
    if r is not None:
        if not 1 <= r < 1 << L:
            raise DomainError(f"週期 r={r} 必須介於 1 與 2^L−1 之間")
        finite = (2 * r ** 2 / 2 ** (2 * L) * factor
                  / math.sin(math.pi * r / 2 ** (L + 1)) ** 2)

    return AQFTBound(
        exact=8 / math.pi ** 2 * factor,
        asymptotic=8 / math.pi ** 2 * math.sin(math.pi / 4 * m / L) ** 2,
        finite=finite,
    )


def min_order(L):
    """AQFT 最低階數：漸近條件 m > log₂L + 2 與精確掃描 Δ_max < π/2"""
    L = _size(L)
    threshold = math.log2(L) + 2
    exact = next(m for m in range(1, L + 1) if delta_max(L, m) < math.pi / 2)
    return MinOrder(threshold=threshold, asymptotic=math.floor(threshold) + 1, exact=exact)


def run_ratio(L, m):
    """k′/k = log(1 − p) / log(1 − p′)，p = 4/π²，p′ = (8/π²)sin²((π/4)(m/L))"""
    L, m = _check(L, m)
    lowest = min_order(L).exact
    if m < lowest:
        raise UndefinedRatioError(f"m={m} 低於最低階數 {lowest} (L={L})，比值無定義")
    p_prime = prob_aqft_lower_bound(L, m).asymptotic
    if p_prime <= 0:
        raise UndefinedRatioError(f"p′=0 (L={L}, m={m})")
    return math.log1p(-QFT_SUCCESS_PROBABILITY) / math.log1p(-p_prime)


def empirical_ratio_constant(max_L=config.RATIO_GRID_MAX_L):
    """網格 L ≤ max_L 上 (k′/k)/(L/m)³ 的最大值，回傳 (C, (L, m))"""
    best, where = 0.0, None
    for L in range(1, max_L + 1):
        for m in range(min_order(L).exact, L + 1):
            value = run_ratio(L, m) / (L / m) ** 3
            if value > best:
                best, where = value, (L, m)
    logger.info(f"經驗常數 C = {best:.4f}，出現在 (L, m) = {where}")
    return best, where


def bounds_table(L_values, m_values=None):
    """界限表格；Δ_max ≥ π/2 的列標記為無效且 run_ratio 留空"""
    rows = []
    for L in L_values:
        L = _size(L)
        lowest = min_order(L).exact
        ms = range(1, L + 1) if m_values is None else [m for m in m_values if 1 <= m <= L]
        for m in ms:
            dmax = delta_max(L, m)
            bound = prob_aqft_lower_bound(L, m)
            valid = dmax < math.pi / 2
            rows.append({
                'L': L,
                'm': m,
                'delta_max': dmax,
                'prob_qft_bound': QFT_SUCCESS_PROBABILITY,
                'prob_aqft_bound': bound.exact,
                'prob_aqft_bound_asymptotic': bound.asymptotic,
                'run_ratio': run_ratio(L, m) if m >= lowest else np.nan,
                'min_order': lowest,
                'valid': valid,
            })
    return pd.DataFrame(rows, columns=config.BOUNDS_COLUMNS)
