import os
import subprocess
import sys
from pathlib import Path

import pandas as pd

import config
from charts import (create_bounds_chart, create_quality_vs_L_chart, create_quality_vs_m_chart,
                    create_transform_chart, save_chart)

OUTPUT_DIR = Path('figures')


def run_cli(*args):
    """以子行程執行 cli.py，失敗時拋出 CalledProcessError"""
    cmd = [sys.executable, 'cli.py', *map(str, args)]
    print(f"▶️  {' '.join(cmd[1:])}")
    subprocess.run(cmd, check=True)


def main():
    print("🚀 重現所有圖表資料...")
    print("=" * 50)

    runs = int(os.getenv('QFTSIM_RUNS', config.PAPER_RUNS))
    try:
        os.chdir(os.path.dirname(os.path.abspath(__file__)))
        OUTPUT_DIR.mkdir(exist_ok=True)

        # 不同近似階數的轉換振幅與相位
        for m in (9, 4, 3, 2, 1):
            out = OUTPUT_DIR / f'transform_m{m}.csv'
            run_cli('transform', '--L', 9, '--r', 10, '--l', 9, '--m', m, '--delta', 0, '--out', out)
            save_chart(create_transform_chart(pd.read_csv(out), f'L=9, r=10, m={m}'),
                       out.with_suffix('.html'))

        # Q 對 m（L=9 與 L=16）
        for L, name in ((9, 'quality_vs_m.csv'), (16, 'quality_vs_m_L16.csv')):
            out = OUTPUT_DIR / name
            run_cli('sweep', '--L', L, '--r', 10, '--l', 8, '--m-values', f'1-{L}',
                    '--deltas', 0, 0.1, 0.2, 0.3, '--runs', runs, '--out', out)
            save_chart(create_quality_vs_m_chart(pd.read_csv(out)), out.with_suffix('.html'))

        # Q 對 L
        out = OUTPUT_DIR / 'quality_vs_L.csv'
        run_cli('scaling', '--L-values', '6-12', '--deltas', 0.1, 0.2, 0.3, 0.4, 0.5,
                '--r', 10, '--runs', runs, '--out', out)
        save_chart(create_quality_vs_L_chart(pd.read_csv(out)), out.with_suffix('.html'))

        # 解析界限
        out = OUTPUT_DIR / 'bounds.csv'
        run_cli('bounds', '--L-range', '8,12,16', '--out', out)
        save_chart(create_bounds_chart(pd.read_csv(out)), out.with_suffix('.html'))

        print("=" * 50)
        print(f"✅ 完成，輸出位於 {OUTPUT_DIR.resolve()}")

    except KeyboardInterrupt:
        print("\n🛑 已中止")
    except subprocess.CalledProcessError as e:
        print(f"❌ 命令失敗 (結束碼 {e.returncode})")
        sys.exit(e.returncode)


if __name__ == "__main__":
    main()
