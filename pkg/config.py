"""配置文件 - 系統參數設定"""
import os

# 版本資訊
TOOL_VERSION = '1.0.0'
FORMAT_VERSION = 1  # CSV / JSON 輸出格式版本

# 數值容差（全專案共用）
NORM_TOLERANCE = 1e-10  # 範數守恆
UNITARY_TOLERANCE = 1e-12  # 單一量子位元閘的么正性檢查
PROBABILITY_TOLERANCE = 1e-9  # 機率總和

# 暫存器大小限制
MAX_QUBITS = 24  # 記憶體 = 2^L 個複數
ORACLE_MAX_QUBITS = 12  # 稠密矩陣需要 s^2 記憶體
ORACLE_UNITARITY_CHECK_MAX_DIM = 256
PERIOD_RATIO_WARNING = 50  # 2^L / r 低於此值時發出警告
MEMORY_SAFETY_FACTOR = 4  # 配置前要求的可用記憶體倍數

# 系綜模擬設定
MAX_WORKERS = 3  # 並行執行實現的最大線程數
DEFAULT_RUNS = 1000
PAPER_RUNS = 2000  # 一至兩千次實現
DEFAULT_PERIOD = 10
DEFAULT_OFFSET = 8
CHUNK_SIZE = 50  # 每個工作單元處理的實現數

# 隨機種子（可由環境變數覆寫）
SEED_ENV_VAR = 'QFTSIM_SEED'
DEFAULT_SEED = int(os.getenv(SEED_ENV_VAR, '20240101'))

# 界限表格設定
RATIO_GRID_MAX_L = 64

# 輸出欄位
TRANSFORM_COLUMNS = ['c', 'abs_amplitude', 'phase', 'is_peak']
SPECTRUM_COLUMNS = ['c', 'probability', 'is_peak_target']
ENSEMBLE_COLUMNS = ['L', 'm', 'r', 'l', 'delta', 'n_runs', 'mean_Q', 'stderr_Q']
BOUNDS_COLUMNS = ['L', 'm', 'delta_max', 'prob_qft_bound', 'prob_aqft_bound',
                  'prob_aqft_bound_asymptotic', 'run_ratio',
                  'min_order', 'valid']
CSV_FLOAT_FORMAT = '%.12g'

# 圖表設定
CHART_HEIGHT_DEFAULT = 500
CHART_HEIGHT_LARGE = 800
CHART_COLORS = {
    'spectrum': '#667eea',
    'peak': '#FF6B6B',
    'bound': '#95A5A6',
    'phase': '#4ECDC4',
}

# 錯誤處理設定
LOG_FILE = 'qftsim.log'
LOG_LEVEL = os.getenv('QFTSIM_LOG_LEVEL', 'INFO')
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

# CLI 結束碼
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
