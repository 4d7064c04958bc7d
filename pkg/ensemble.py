"""系綜模擬 - 多次含雜訊實現的並行執行與品質因子統計

實現 i 使用 realization_seed = i；每個 Q 只取決於其索引，彙整依索引順序進行，
因此結果與工作線程數及排程無關，且 0..N−1 的實現是 0..M−1 的前綴。
"""
import concurrent.futures
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import stats

import config
from network import build_aqft, run
from noise import NoiseModel
from performance_monitor import ProgressTracker, time_function
from periodicity import PeriodicStateSpec, make_periodic_state, state_quality
from statevector import RegisterSize
from utils import DomainError, ResourceError, check_memory, validate_degree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    state_spec: PeriodicStateSpec
    m: int
    noise: NoiseModel
    n_runs: int = config.DEFAULT_RUNS
    keep_per_run: bool = False

    def __post_init__(self):
        validate_degree(self.m, self.state_spec.L)
        if isinstance(self.n_runs, bool) or not isinstance(self.n_runs, (int, np.integer)) or self.n_runs < 1:
            raise DomainError(f"實現次數 n_runs={self.n_runs!r} 必須為正整數")


@dataclass(frozen=True)
class EnsembleResult:
    mean_Q: float
    stderr_Q: float
    n_runs: int
    per_run_Q: np.ndarray = None
    experiment: ExperimentConfig = None

    def to_row(self):
        exp = self.experiment
        return {
            'L': exp.state_spec.L,
            'm': exp.m,
            'r': exp.state_spec.r,
            'l': exp.state_spec.l,
            'delta': exp.noise.delta,
            'n_runs': self.n_runs,
            'mean_Q': self.mean_Q,
            'stderr_Q': self.stderr_Q,
        }


def _run_chunk(network, input_state, spec, noise, indices):
    """計算一段實現的 Q"""
    return np.array([state_quality(run(network, input_state, noise, i), spec) for i in indices])


def _chunks(n_runs, chunk_size):
    return [range(start, min(start + chunk_size, n_runs)) for start in range(0, n_runs, chunk_size)]


def _aggregate(per_run):
    # 所有實現相同（δ=0 或 n=1）時標準誤恰為 0
    if np.ptp(per_run) == 0:
        return float(per_run[0]), 0.0
    mean = math.fsum(per_run) / per_run.size
    return mean, float(stats.sem(per_run, ddof=1))


@time_function("系綜模擬")
def run_ensemble(experiment, workers=config.MAX_WORKERS):
    """執行 n_runs 次實現，回傳平均 Q 與標準誤"""
    spec, noise = experiment.state_spec, experiment.noise
    network = build_aqft(spec.size, experiment.m)
    input_state = make_periodic_state(spec)
    n_runs = experiment.n_runs
    workers = max(1, int(workers))

    if noise.delta == 0:
        # 無雜訊：所有實現相同
        q = state_quality(run(network, input_state), spec)
        per_run = np.full(n_runs, q)
        logger.debug(f"δ=0 確定性結果 Q={q:.12f} (L={spec.L}, m={experiment.m})")
    else:
        check_memory(workers * 2 * spec.size.s * np.dtype(complex).itemsize, what="工作線程狀態")
        per_run = np.empty(n_runs)
        chunks = _chunks(n_runs, config.CHUNK_SIZE)
        try:
            if workers == 1:
                for indices in chunks:
                    per_run[indices.start:indices.stop] = _run_chunk(network, input_state, spec, noise, indices)
            else:
                with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
                    future_to_chunk = {
                        executor.submit(_run_chunk, network, input_state, spec, noise, indices): indices
                        for indices in chunks
                    }
                    for future in concurrent.futures.as_completed(future_to_chunk):
                        indices = future_to_chunk[future]
                        per_run[indices.start:indices.stop] = future.result()
        except MemoryError as e:
            raise ResourceError(f"系綜模擬記憶體不足 (L={spec.L}, workers={workers}): {e}") from e

    mean, stderr = _aggregate(per_run)
    logger.info(f"L={spec.L} m={experiment.m} δ={noise.delta} n={n_runs}: "
                f"Q = {mean:.6f} ± {stderr:.6f}")
    return EnsembleResult(
        mean_Q=mean,
        stderr_Q=stderr,
        n_runs=n_runs,
        per_run_Q=per_run if experiment.keep_per_run else None,
        experiment=experiment,
    )


def results_to_frame(results):
    """結果表格（CSV / JSON 匯出用）"""
    return pd.DataFrame([result.to_row() for result in results], columns=config.ENSEMBLE_COLUMNS)


def fixed_period(r):
    """每個 L 都使用相同週期 r"""
    return lambda L: r


def fixed_ratio(ratio):
    """r = round(2^L / ratio)，保持 2^L/r 大致固定"""
    return lambda L: max(1, round((1 << L) / ratio))


def sweep_m_delta(L, r, l, m_values, delta_values, n_runs, master_seed=config.DEFAULT_SEED,
                  workers=config.MAX_WORKERS):
    """Q 對 (m, δ) 的網格；每格一筆 EnsembleResult"""
    spec = PeriodicStateSpec(RegisterSize(L), r, l)
    m_values = [validate_degree(m, spec.L) for m in m_values]
    tracker = ProgressTracker(len(m_values) * len(delta_values), "m-δ 掃描")
    results = []
    for delta in delta_values:
        noise = NoiseModel(delta, master_seed)
        for m in m_values:
            results.append(run_ensemble(ExperimentConfig(spec, m, noise, n_runs), workers))
            tracker.update(f"m={m} δ={delta}")
    return results_to_frame(results)


def sweep_L(L_values, delta_values, n_runs, master_seed=config.DEFAULT_SEED,
            r_rule=fixed_period(config.DEFAULT_PERIOD), workers=config.MAX_WORKERS):
    """僅 QFT (m = L) 的 Q 對 (L, δ)"""
    tracker = ProgressTracker(len(L_values) * len(delta_values), "L 掃描")
    results = []
    for delta in delta_values:
        noise = NoiseModel(delta, master_seed)
        for L in L_values:
            r = r_rule(L)
            spec = PeriodicStateSpec(RegisterSize(L), r, config.DEFAULT_OFFSET % r)
            results.append(run_ensemble(ExperimentConfig(spec, spec.L, noise, n_runs), workers))
            tracker.update(f"L={L} δ={delta}")
    return results_to_frame(results)
