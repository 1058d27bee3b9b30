"""Shared plumbing: cost guards and the deterministic parallel map."""

from __future__ import annotations

import os


class CostGuardError(RuntimeError):
    """A search was refused because its candidate count exceeds the guard."""


def default_jobs() -> int:
    value = os.environ.get("SPLITCERT_JOBS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            pass
    return 1


def parallel_map(fn, items, jobs: int = 1) -> list:
    """map() preserving input order; with jobs > 1 the work is spread over
    processes but results are still merged in submission order, so the
    outcome never depends on completion order."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
