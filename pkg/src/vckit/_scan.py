"""Deterministic lowest-hit search over an index range, optionally with a
worker pool.

Workers claim contiguous blocks from a shared counter and cooperatively
cancel blocks that start beyond the best hit found so far, so the returned
index is the smallest hit regardless of schedule. Every index below the
returned hit is guaranteed to have been evaluated, which lets callers
tally over that prefix deterministically.
"""

from __future__ import annotations

import math
import threading
from typing import Callable, Optional, TypeVar

T = TypeVar("T")


def scan_lowest(
    total: int,
    evaluate: Callable[[int], T],
    is_hit: Callable[[T], bool],
    workers: int = 1,
    *,
    keep_all: bool = False,
) -> tuple[Optional[int], dict[int, T]]:
    """Find the smallest index in ``range(total)`` whose evaluation is a hit.

    Returns ``(hit_index or None, results)``. ``results`` always contains the
    hit itself plus every hit at an evaluated index; with ``keep_all`` it
    contains every evaluated index, covering at least all of ``[0, hit]``
    (or everything when there is no hit). ``evaluate`` must be pure.
    """
    results: dict[int, T] = {}
    if total <= 0:
        return None, results
    if workers <= 1:
        for i in range(total):
            r = evaluate(i)
            if keep_all:
                results[i] = r
            if is_hit(r):
                results[i] = r
                return i, results
        return None, results

    lock = threading.Lock()
    state = {"next": 0, "best": total, "error": None}
    block = max(1, min(1024, math.ceil(total / (workers * 4))))

    def run():
        while True:
            with lock:
                if state["error"] is not None:
                    return
                start = state["next"]
                if start >= total or start > state["best"]:
                    return
                state["next"] = start + block
            local: list[tuple[int, T]] = []
            try:
                for i in range(start, min(start + block, total)):
                    if i > state["best"]:  # stale read only skips useless work
                        break
                    r = evaluate(i)
                    local.append((i, r))
                    if is_hit(r):
                        with lock:
                            state["best"] = min(state["best"], i)
                        break
            except BaseException as exc:  # propagate to the caller
                with lock:
                    if state["error"] is None:
                        state["error"] = exc
                return
            finally:
                with lock:
                    for i, r in local:
                        if keep_all or is_hit(r):
                            results[i] = r

    threads = [threading.Thread(target=run) for _ in range(workers)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if state["error"] is not None:
        raise state["error"]

    hit = min((i for i, r in results.items() if is_hit(r)), default=None)
    return hit, results
