"""命令列入口 - 轉換、品質因子掃描與界限表格，每個輸出都附帶 JSON 執行紀錄

用法:
    python cli.py transform --L 9 --r 10 --l 9 --m 9 --delta 0 --out fig4.csv
    python cli.py sweep --L 9 --r 10 --l 8 --m-values 1-9 --deltas 0 0.1 0.2 0.3 --out fig6.csv
    python cli.py scaling --L-values 6-12 --deltas 0.1 0.3 0.5 --out fig7.csv
    python cli.py bounds --L-range 16 --m-range 7 --out bounds.csv
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import config
from bounds import bounds_table
from ensemble import (ExperimentConfig, fixed_period, fixed_ratio, results_to_frame,
                      run_ensemble, sweep_L, sweep_m_delta)
from noise import KickTrace, NoiseModel
from performance_monitor import PerformanceMonitor
from periodicity import PeriodicStateSpec, simulate, state_quality, transform_table
from statevector import RegisterSize
from utils import error_handler, format_number, setup_logging

logger = logging.getLogger(__name__)


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    master_seed: int
    tool_version: str = config.TOOL_VERSION
    format_version: int = config.FORMAT_VERSION
    outputs: list = field(default_factory=list)
    duration_s: float = 0.0

    def to_json(self):
        return json.dumps(asdict(self), indent=2, ensure_ascii=False)

    def write(self, path):
        Path(path).write_text(self.to_json() + '\n', encoding='utf-8')
        logger.info(f"執行紀錄已寫入 {path}")


def manifest_path(out):
    """output.csv → output.manifest.json"""
    out = Path(out)
    return out.with_name(out.stem + '.manifest.json')


def parse_int_range(text):
    """'1-9' → [1..9]；'1,3,5' → [1, 3, 5]；'7' → [7]"""
    values = []
    try:
        for part in str(text).split(','):
            part = part.strip()
            if '-' in part:
                lo, hi = (int(x) for x in part.split('-', 1))
                if hi < lo:
                    raise ValueError
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"無法解析整數範圍 {text!r}（格式：1-9 或 1,3,5）")
    return values


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要正整數，收到 {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整數，收到 {value}")
    return value


def resolve_seed(args):
    """--seed 優先，其次環境變數 QFTSIM_SEED"""
    if args.seed is not None:
        return args.seed
    return int(os.getenv(config.SEED_ENV_VAR, config.DEFAULT_SEED))


def _parameters(args):
    return {key: value for key, value in vars(args).items()
            if key not in ('handler', 'command') and not callable(value)}


def write_table(df, out, json_out=None):
    """寫出 CSV（以及可選的 JSON），回傳輸出路徑清單"""
    out = Path(out)
    df.to_csv(out, index=False, float_format=config.CSV_FLOAT_FORMAT)
    outputs = [str(out)]
    if json_out:
        df.to_json(json_out, orient='records', indent=2)
        outputs.append(str(json_out))
    logger.info(f"已寫入 {out}（{len(df)} 列）")
    return outputs


def _finish(args, seed, outputs, perf):
    manifest = RunManifest(
        subcommand=args.command,
        parameters=_parameters(args),
        master_seed=seed,
        outputs=outputs,
        duration_s=round(perf.elapsed(), 3),
    )
    manifest.write(manifest_path(args.out))
    return manifest


@error_handler
def cmd_transform(args):
    """單次實現的轉換振幅（模與相位）"""
    perf = PerformanceMonitor()
    perf.start_monitoring()
    seed = resolve_seed(args)

    spec = PeriodicStateSpec(RegisterSize(args.L), args.r, args.l)
    m = spec.L if args.m is None else args.m
    trace = KickTrace() if args.trace else None
    state = simulate(spec, m, NoiseModel(args.delta, seed), args.realization, trace)
    q = state_quality(state, spec)
    logger.info(f"L={spec.L} r={spec.r} l={spec.l} m={m} δ={args.delta}: Q = {format_number(q)}")

    outputs = write_table(transform_table(state, spec), args.out)
    if trace is not None:
        trace.to_jsonl(args.trace)
        outputs.append(str(args.trace))
    _finish(args, seed, outputs, perf)


@error_handler
def cmd_quality(args):
    """單一 (L, r, l, m, δ) 的系綜平均 Q"""
    perf = PerformanceMonitor()
    perf.start_monitoring()
    seed = resolve_seed(args)

    spec = PeriodicStateSpec(RegisterSize(args.L), args.r, args.l)
    m = spec.L if args.m is None else args.m
    experiment = ExperimentConfig(spec, m, NoiseModel(args.delta, seed), args.runs)
    result = run_ensemble(experiment, args.workers)
    outputs = write_table(results_to_frame([result]), args.out, args.json)
    _finish(args, seed, outputs, perf)


@error_handler
def cmd_sweep(args):
    """Q 對 (m, δ) 的網格"""
    perf = PerformanceMonitor()
    perf.start_monitoring()
    perf.log_system_stats()
    seed = resolve_seed(args)

    m_values = args.m_values or list(range(1, args.L + 1))
    df = sweep_m_delta(args.L, args.r, args.l, m_values, args.deltas, args.runs, seed, args.workers)
    outputs = write_table(df, args.out, args.json)
    _finish(args, seed, outputs, perf)


@error_handler
def cmd_scaling(args):
    """QFT 的 Q 對 (L, δ)"""
    perf = PerformanceMonitor()
    perf.start_monitoring()
    perf.log_system_stats()
    seed = resolve_seed(args)

    r_rule = fixed_ratio(args.ratio) if args.ratio else fixed_period(args.r)
    df = sweep_L(args.L_values, args.deltas, args.runs, seed, r_rule, args.workers)
    outputs = write_table(df, args.out, args.json)
    _finish(args, seed, outputs, perf)


@error_handler
def cmd_bounds(args):
    """Δ_max、成功機率下界、最低階數與重複次數比表格"""
    perf = PerformanceMonitor()
    perf.start_monitoring()
    seed = resolve_seed(args)

    df = bounds_table(args.L_range, args.m_range)
    invalid = int((~df['valid']).sum())
    if invalid:
        logger.info(f"{invalid} 列 Δ_max ≥ π/2，已標記為無效")
    outputs = write_table(df, args.out, args.json)
    _finish(args, seed, outputs, perf)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help=f'主隨機種子（預設讀取環境變數 {config.SEED_ENV_VAR}）')
    common.add_argument('--workers', type=positive_int, default=config.MAX_WORKERS,
                        help='系綜模擬的最大線程數')
    common.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='日誌等級')
    common.add_argument('--log-file', default=None, help='額外寫入的日誌檔')
    common.add_argument('--out', required=True, help='輸出 CSV 路徑')

    parser = argparse.ArgumentParser(
        prog='qftsim',
        description='含退相干的 QFT / AQFT 狀態向量模擬器',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {config.TOOL_VERSION}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    def add_state_args(p, with_m=True):
        p.add_argument('--L', type=int, required=True, help='量子位元數')
        p.add_argument('--r', type=int, default=config.DEFAULT_PERIOD, help='週期 r')
        p.add_argument('--l', type=int, default=config.DEFAULT_OFFSET, help='偏移 l（0 ≤ l < r）')
        if with_m:
            p.add_argument('--m', type=int, default=None, help='近似階數（預設 m = L，即完整 QFT）')

    p = subparsers.add_parser('transform', parents=[common], help='單次實現的轉換振幅')
    add_state_args(p)
    p.add_argument('--delta', type=float, default=0.0, help='相位擾動寬度 δ')
    p.add_argument('--realization', type=int, default=0, help='實現編號')
    p.add_argument('--trace', default=None, help='相位擾動軌跡 JSON lines 路徑')
    p.set_defaults(handler=cmd_transform)

    p = subparsers.add_parser('quality', parents=[common], help='單點的系綜平均 Q')
    add_state_args(p)
    p.add_argument('--delta', type=float, default=0.0, help='相位擾動寬度 δ')
    p.add_argument('--runs', type=positive_int, default=config.DEFAULT_RUNS, help='實現次數')
    p.add_argument('--json', default=None, help='額外輸出 JSON 路徑')
    p.set_defaults(handler=cmd_quality)

    p = subparsers.add_parser('sweep', parents=[common], help='Q 對 (m, δ) 掃描')
    add_state_args(p, with_m=False)
    p.add_argument('--m-values', type=parse_int_range, default=None, help='近似階數，如 1-9（預設 1..L）')
    p.add_argument('--deltas', type=float, nargs='+', default=[0.0, 0.1, 0.2, 0.3], help='δ 值')
    p.add_argument('--runs', type=positive_int, default=config.DEFAULT_RUNS, help='每格實現次數')
    p.add_argument('--json', default=None, help='額外輸出 JSON 路徑')
    p.set_defaults(handler=cmd_sweep)

    p = subparsers.add_parser('scaling', parents=[common], help='QFT 的 Q 對 (L, δ) 掃描')
    p.add_argument('--L-values', type=parse_int_range, default=parse_int_range('6-12'), help='量子位元數，如 6-12')
    p.add_argument('--deltas', type=float, nargs='+', default=[0.1, 0.2, 0.3, 0.4, 0.5], help='δ 值')
    group = p.add_mutually_exclusive_group()
    group.add_argument('--r', type=int, default=config.DEFAULT_PERIOD, help='固定週期 r')
    group.add_argument('--ratio', type=float, default=None, help='固定 2^L/r 比值')
    p.add_argument('--runs', type=positive_int, default=config.DEFAULT_RUNS, help='每格實現次數')
    p.add_argument('--json', default=None, help='額外輸出 JSON 路徑')
    p.set_defaults(handler=cmd_scaling)

    p = subparsers.add_parser('bounds', parents=[common], help='解析界限表格')
    p.add_argument('--L-range', type=parse_int_range, required=True, help='量子位元數，如 8-16')
    p.add_argument('--m-range', type=parse_int_range, default=None, help='近似階數（預設 1..L）')
    p.add_argument('--json', default=None, help='額外輸出 JSON 路徑')
    p.set_defaults(handler=cmd_bounds)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse：--help 為 0，用法錯誤為 2
        return e.code if isinstance(e.code, int) else config.EXIT_USAGE

    setup_logging(args.log_level, args.log_file)
    return args.handler(args)


if __name__ == '__main__':
    sys.exit(main())
