"""Shared helpers."""
from rydberg.utils.constant_cache import CacheInfo, synchronized_cache

__all__ = ["CacheInfo", "synchronized_cache"]
