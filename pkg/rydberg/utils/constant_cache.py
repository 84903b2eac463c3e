"""Memo cache for the numerically integrated regime constants."""
import logging
import threading
from collections import OrderedDict
from functools import wraps
from typing import Any, Callable, Dict, Hashable, NamedTuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')


class CacheInfo(NamedTuple):
    hits: int
    misses: int
    maxsize: int
    currsize: int


def synchronized_cache(maxsize: int = 256, key: Callable[..., Hashable] = None):
    """Decorator memoising a pure function behind a size-bounded LRU map.

    Each key is computed by exactly one thread; concurrent callers asking for the
    same key wait on a per-key lock and then read the stored value, so results
    do not depend on interleaving. Different keys are computed concurrently.

    Args:
        maxsize: Maximum number of stored entries; least recently used go first
        key: Optional callable mapping the call arguments to a hashable key
            (defaults to the positional arguments plus sorted keyword items)

    Usage:
        @synchronized_cache(maxsize=128)
        def bessel_constant(alpha, p, beta, cfg=None):
            ...
    """
    def decorator(func: Callable[..., T]) -> Callable[..., T]:
        entries: "OrderedDict[Hashable, Any]" = OrderedDict()
        key_locks: Dict[Hashable, threading.Lock] = {}
        guard = threading.Lock()
        stats = {"hits": 0, "misses": 0}

        def make_key(args, kwargs) -> Hashable:
            if key is not None:
                return key(*args, **kwargs)
            return args + tuple(sorted(kwargs.items()))

        @wraps(func)
        def wrapper(*args, **kwargs) -> T:
            cache_key = make_key(args, kwargs)
            with guard:
                if cache_key in entries:
                    entries.move_to_end(cache_key)
                    stats["hits"] += 1
                    logger.debug(f"Cache hit in {func.__name__} for {cache_key}")
                    return entries[cache_key]
                key_lock = key_locks.setdefault(cache_key, threading.Lock())

            with key_lock:
                with guard:
                    if cache_key in entries:
                        stats["hits"] += 1
                        return entries[cache_key]
                value = func(*args, **kwargs)
                with guard:
                    stats["misses"] += 1
                    entries[cache_key] = value
                    entries.move_to_end(cache_key)
                    while len(entries) > maxsize:
                        evicted, _ = entries.popitem(last=False)
                        key_locks.pop(evicted, None)
                    key_locks.pop(cache_key, None)
            return value

        def cache_clear() -> None:
            with guard:
                entries.clear()
                key_locks.clear()
                stats["hits"] = stats["misses"] = 0

        def cache_info() -> CacheInfo:
            with guard:
                return CacheInfo(stats["hits"], stats["misses"], maxsize, len(entries))

        wrapper.cache_clear = cache_clear
        wrapper.cache_info = cache_info
        return wrapper

    return decorator
