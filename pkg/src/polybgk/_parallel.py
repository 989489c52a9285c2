"""Fixed-block work partitioning.

Work is always split into the same NBLOCKS ranges regardless of thread
count, each block is computed sequentially by exactly one worker, and block
outputs go to disjoint slices.  Results are therefore bit-identical for any
number of threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

NBLOCKS = 8

_threads = 1


def set_threads(n: int) -> None:
    global _threads
    if n < 1:
        raise ValueError("thread count must be >= 1")
    _threads = int(n)


def get_threads() -> int:
    return _threads


def block_ranges(n: int, nblocks: int = NBLOCKS) -> list[tuple[int, int]]:
    nblocks = min(nblocks, n) if n > 0 else 1
    bounds = [n * b // nblocks for b in range(nblocks + 1)]
    return [(bounds[b], bounds[b + 1]) for b in range(nblocks) if bounds[b + 1] > bounds[b]]


def run_blocked(fn, n: int, *args) -> None:
    """Invoke fn(lo, hi, *args) over fixed blocks of range(n)."""
    ranges = block_ranges(n)
    if _threads == 1 or len(ranges) == 1:
        for lo, hi in ranges:
            fn(lo, hi, *args)
        return
    with ThreadPoolExecutor(max_workers=_threads) as pool:
        futures = [pool.submit(fn, lo, hi, *args) for lo, hi in ranges]
        for fut in futures:
            fut.result()
