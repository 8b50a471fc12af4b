from k3b.logging.base_logger import Logger

__all__ = ["Logger"]
