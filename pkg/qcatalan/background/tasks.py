"""
Sweep runner: evaluates independent grid cells on worker threads
"""
import asyncio
from typing import Callable, Iterable, List, TypeVar

from ..utils.tracking import diag

T = TypeVar("T")
R = TypeVar("R")


async def gather_cells(fn: Callable[[T], R], items: List[T], jobs: int) -> List[R]:
    """Run fn over items with at most `jobs` threads busy; results keep the input order."""
    semaphore = asyncio.Semaphore(jobs)

    async def run_one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    return await asyncio.gather(*(run_one(item) for item in items))


def run_cells(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    items = list(items)
    if jobs < 1:
        raise ValueError(f"jobs must be at least 1, got {jobs}")
    diag(f"run_cells(): {len(items)} tasks on {jobs} worker(s)")
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    return asyncio.run(gather_cells(fn, items, jobs))
