"""性能監控模組"""
import logging
import time
from functools import wraps

import psutil

logger = logging.getLogger(__name__)


class PerformanceMonitor:
    def __init__(self):
        self.start_time = None
        self.load_times = {}

    def start_monitoring(self):
        """開始性能監控"""
        self.start_time = time.perf_counter()

    def elapsed(self):
        """自 start_monitoring 起經過的秒數"""
        if self.start_time is None:
            return 0.0
        return time.perf_counter() - self.start_time

    def log_load_time(self, operation_name, start_time):
        """記錄執行時間"""
        load_time = time.perf_counter() - start_time
        self.load_times[operation_name] = load_time
        logger.debug(f"{operation_name} 耗時 {load_time:.3f}秒")
        return load_time

    def get_system_stats(self):
        """獲取系統統計資訊"""
        memory = psutil.virtual_memory()
        return {
            'cpu_percent': psutil.cpu_percent(),
            'cpu_count': psutil.cpu_count(),
            'memory_percent': memory.percent,
            'memory_available_gb': memory.available / (1024**3),
        }

    def log_system_stats(self):
        stats = self.get_system_stats()
        logger.info(f"系統資源: CPU {stats['cpu_percent']:.1f}% ({stats['cpu_count']} 核), "
                    f"記憶體 {stats['memory_percent']:.1f}%, "
                    f"可用 {stats['memory_available_gb']:.1f}GB")
        return stats


# 全域性能監控器
monitor = PerformanceMonitor()


def time_function(func_name):
    """函數執行時間裝飾器"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            load_time = monitor.log_load_time(func_name, start_time)

            # 超過5秒的工作以 INFO 提醒
            if load_time > 5:
                logger.info(f"⏱️ {func_name} 完成 ({load_time:.1f}秒)")

            return result
        return wrapper
    return decorator


class ProgressTracker:
    """進度追蹤器（寫入日誌）"""
    def __init__(self, total_steps, description="處理中..."):
        self.total_steps = total_steps
        self.current_step = 0
        self.description = description

    def update(self, step_name=""):
        """更新進度"""
        self.current_step += 1
        status = f"{self.description} ({self.current_step}/{self.total_steps})"
        if step_name:
            status += f" - {step_name}"
        logger.info(status)
