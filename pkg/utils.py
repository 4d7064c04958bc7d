import logging
import math
import traceback
from functools import wraps

import numpy as np
import psutil

import config

logger = logging.getLogger(__name__)


class QFTSimError(Exception):
    """模擬器所有錯誤的基底類別"""


class DomainError(QFTSimError, ValueError):
    """參數超出定義域"""


class ResourceError(QFTSimError, MemoryError):
    """所需記憶體超過上限或可用量"""


class ContractViolation(QFTSimError, RuntimeError):
    """操作被套用在錯誤種類的物件上"""


class UndefinedRatioError(QFTSimError, ArithmeticError):
    """重複次數比值無定義"""


def setup_logging(level=None, log_file=None):
    """設置日誌（只在入口呼叫一次）"""
    handlers = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=(level or config.LOG_LEVEL).upper(),
        format=config.LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def error_handler(func):
    """CLI 錯誤處理裝飾器：記錄錯誤並轉換為結束碼"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            status = func(*args, **kwargs)
            return config.EXIT_OK if status is None else status
        except DomainError as e:
            logger.error(f"函數 {func.__name__} 參數錯誤: {e}")
            return config.EXIT_USAGE
        except Exception as e:
            logger.error(f"函數 {func.__name__} 發生錯誤: {e}\n{traceback.format_exc()}")
            return config.EXIT_FAILURE
    return wrapper


def validate_register_size(L, max_qubits=config.MAX_QUBITS):
    """驗證暫存器大小 1 ≤ L ≤ max_qubits；max_qubits=None 時只要求正整數（解析公式用）"""
    if isinstance(L, bool) or not isinstance(L, (int, np.integer)):
        raise DomainError(f"暫存器大小必須為整數，收到 {L!r}")
    if L < 1 or (max_qubits is not None and L > max_qubits):
        upper = '∞' if max_qubits is None else max_qubits
        raise DomainError(f"暫存器大小 L={L} 超出範圍 [1, {upper}]")
    return int(L)


def validate_qubit(qubit, L, name="qubit"):
    """驗證量子位元索引"""
    if isinstance(qubit, bool) or not isinstance(qubit, (int, np.integer)):
        raise DomainError(f"{name} 必須為整數，收到 {qubit!r}")
    if not 0 <= qubit < L:
        raise DomainError(f"{name}={qubit} 超出範圍 [0, {L})")
    return int(qubit)


def validate_degree(m, L):
    """驗證近似階數 1 ≤ m ≤ L"""
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise DomainError(f"近似階數必須為整數，收到 {m!r}")
    if not 1 <= m <= L:
        raise DomainError(f"近似階數 m={m} 超出範圍 [1, {L}]")
    return int(m)


def check_memory(n_bytes, what="狀態向量"):
    """配置大型陣列前確認可用記憶體足夠"""
    available = psutil.virtual_memory().available
    required = n_bytes * config.MEMORY_SAFETY_FACTOR
    if required > available:
        raise ResourceError(
            f"{what} 需要約 {n_bytes / 1024**2:.1f}MB，可用記憶體僅 {available / 1024**2:.1f}MB"
        )
    logger.debug(f"{what} 記憶體檢查通過 ({n_bytes / 1024**2:.2f}MB)")


def format_number(value, decimals=6):
    """安全格式化數字"""
    try:
        if value is None or not math.isfinite(value):
            return "N/A"
        return f"{value:.{decimals}f}"
    except (TypeError, ValueError):
        return "N/A"

