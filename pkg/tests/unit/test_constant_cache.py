"""Unit tests for the synchronized memo cache."""
import threading
import time
from concurrent.futures import ThreadPoolExecutor

from rydberg.utils import synchronized_cache


def test_memoises_by_arguments():
    calls = []

    @synchronized_cache(maxsize=8)
    def square(x):
        calls.append(x)
        return x * x

    assert square(3) == 9
    assert square(3) == 9
    assert square(4) == 16
    assert calls == [3, 4]
    info = square.cache_info()
    assert (info.hits, info.misses, info.currsize) == (1, 2, 2)


def test_custom_key_ignores_irrelevant_arguments():
    @synchronized_cache(key=lambda x, verbose=False: x)
    def identity(x, verbose=False):
        return [x]

    assert identity(1) is identity(1, verbose=True)


def test_least_recently_used_evicted():
    @synchronized_cache(maxsize=2)
    def double(x):
        return 2 * x

    double(1)
    double(2)
    double(1)
    double(3)
    assert double.cache_info().currsize == 2
    double(1)
    assert double.cache_info().hits == 2
    double(2)
    assert double.cache_info().misses == 4


def test_cache_clear_resets_statistics():
    @synchronized_cache()
    def one(x):
        return 1

    one(0)
    one(0)
    one.cache_clear()
    assert one.cache_info() == (0, 0, 256, 0)


def test_concurrent_callers_compute_once():
    calls = []
    lock = threading.Lock()

    @synchronized_cache()
    def slow(x):
        with lock:
            calls.append(x)
        time.sleep(0.05)
        return object()

    with ThreadPoolExecutor(max_workers=8) as executor:
        results = list(executor.map(slow, [7] * 8))

    assert calls == [7]
    assert all(result is results[0] for result in results)
