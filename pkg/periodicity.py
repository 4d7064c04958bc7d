"""週期估計 - 週期輸入態、頻譜與品質因子 Q"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import pandas as pd

import config
from network import build_aqft, read_amplitudes, read_output, run
from statevector import StateVector, allocate_amplitudes
from utils import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodicStateSpec:
    """f(a) = δ_{l, a mod r}"""
    size: object
    r: int
    l: int

    def __post_init__(self):
        s = self.size.s
        if isinstance(self.r, bool) or not isinstance(self.r, (int, np.integer)) or not 1 <= self.r <= s:
            raise DomainError(f"週期 r={self.r!r} 必須介於 1 與 2^L={s} 之間")
        if isinstance(self.l, bool) or not isinstance(self.l, (int, np.integer)) or not 0 <= self.l < self.r:
            raise DomainError(f"偏移 l={self.l!r} 必須滿足 0 ≤ l < r={self.r}")
        object.__setattr__(self, 'r', int(self.r))
        object.__setattr__(self, 'l', int(self.l))
        if s / self.r < config.PERIOD_RATIO_WARNING:
            logger.warning(f"2^L/r = {s / self.r:.1f} < {config.PERIOD_RATIO_WARNING}，"
                           f"已離開 r ≪ 2^L 的建議範圍")

    @property
    def L(self):
        return self.size.L

    @property
    def count(self):
        """𝒩：[0, 2^L) 中 a mod r = l 的個數"""
        return len(range(self.l, self.size.s, self.r))


@dataclass(frozen=True)
class SpectrumResult:
    probs: np.ndarray
    peak_targets: tuple


@dataclass(frozen=True)
class QualityResult:
    Q: float
    per_peak: dict


def make_periodic_state(spec):
    """|Ψ⟩ = (1/√𝒩) Σ f(a)|a⟩"""
    amplitudes = allocate_amplitudes(spec.size)
    amplitudes[spec.l::spec.r] = 1 / np.sqrt(spec.count)
    return StateVector(spec.size, amplitudes)


def _nearest_integer(numerator, denominator):
    """最接近的整數，恰好一半時取偶數"""
    q, rem = divmod(numerator, denominator)
    twice = 2 * rem
    if twice > denominator or (twice == denominator and q % 2 == 1):
        return q + 1
    return q


@lru_cache(maxsize=None)
def peak_targets(L, r):
    """{nearest_integer(λ·2^L/r) mod 2^L : λ = 0..r−1}，去重排序"""
    s = 1 << L
    return tuple(sorted({_nearest_integer(lam * s, r) % s for lam in range(r)}))


def spectrum(probs, spec):
    """將傅立葉索引順序的機率與峰值目標打包"""
    probs = np.asarray(probs, dtype=float)
    if probs.shape != (spec.size.s,):
        raise DomainError(f"機率序列長度 {probs.shape} 與 2^L={spec.size.s} 不符")
    total = probs.sum()
    if abs(total - 1.0) > config.PROBABILITY_TOLERANCE:
        logger.warning(f"機率總和 {total:.12f} 偏離 1")
    return SpectrumResult(probs=probs, peak_targets=peak_targets(spec.L, spec.r))


def quality_factor(spectrum_result):
    """Q = 峰值目標上的總機率"""
    per_peak = {int(c): float(spectrum_result.probs[c]) for c in spectrum_result.peak_targets}
    return QualityResult(Q=float(sum(per_peak.values())), per_peak=per_peak)


def analytic_probability(spec):
    """QFT 輸出分佈的幾何級數閉式：Prob(c) = |sin(π𝒩x)/sin(πx)|²/(𝒩·2^L)，x = (rc mod 2^L)/2^L"""
    s, n = spec.size.s, spec.count
    k = (spec.r * np.arange(s)) % s
    numerator = np.sin(np.pi * ((n * k) % s) / s) ** 2
    denominator = np.sin(np.pi * k / s) ** 2
    ratio = np.divide(numerator, denominator, out=np.full(s, float(n * n)), where=k != 0)
    return ratio / (n * s)


def simulate(spec, m, noise=None, realization_seed=0, trace=None):
    """在週期態上執行 m 階 AQFT，回傳輸出狀態"""
    return run(build_aqft(spec.size, m), make_periodic_state(spec), noise, realization_seed, trace)


def spectrum_to_frame(spectrum_result):
    """頻譜 CSV 表格：c, probability, is_peak_target"""
    s = spectrum_result.probs.size
    is_peak = np.zeros(s, dtype=bool)
    is_peak[list(spectrum_result.peak_targets)] = True
    return pd.DataFrame({
        'c': np.arange(s),
        'probability': spectrum_result.probs,
        'is_peak_target': is_peak,
    }, columns=config.SPECTRUM_COLUMNS)


def transform_table(state, spec):
    """轉換後振幅的模與相位（傅立葉索引順序）"""
    amplitudes = read_amplitudes(state)
    s = amplitudes.size
    is_peak = np.zeros(s, dtype=bool)
    is_peak[list(peak_targets(spec.L, spec.r))] = True
    return pd.DataFrame({
        'c': np.arange(s),
        'abs_amplitude': np.abs(amplitudes),
        'phase': np.angle(amplitudes),
        'is_peak': is_peak,
    }, columns=config.TRANSFORM_COLUMNS)


def state_quality(state, spec):
    """輸出狀態經反序讀出後的 Q"""
    return quality_factor(spectrum(read_output(state), spec)).Q
