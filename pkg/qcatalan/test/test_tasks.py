import threading
import time

import pytest

from ..background.tasks import gather_cells, run_cells


def slow_square(x: int) -> int:
    # later items finish first
    time.sleep(0.001 * (10 - x))
    return x * x


def test_results_keep_input_order():
    assert run_cells(slow_square, range(10), jobs=4) == [x * x for x in range(10)]
    assert run_cells(slow_square, range(10), jobs=1) == [x * x for x in range(10)]


def test_empty_input():
    assert run_cells(slow_square, [], jobs=3) == []


def test_invalid_jobs():
    with pytest.raises(ValueError):
        run_cells(slow_square, [1], jobs=0)


def test_concurrency_is_bounded():
    lock = threading.Lock()
    active = {"now": 0, "peak": 0}

    def track(_):
        with lock:
            active["now"] += 1
            active["peak"] = max(active["peak"], active["now"])
        time.sleep(0.01)
        with lock:
            active["now"] -= 1

    run_cells(track, range(12), jobs=3)
    assert 1 <= active["peak"] <= 3


def test_errors_propagate():
    def boom(x):
        if x == 2:
            raise ArithmeticError("cell 2")
        return x

    with pytest.raises(ArithmeticError):
        run_cells(boom, range(4), jobs=2)


@pytest.mark.asyncio
async def test_gather_cells():
    assert await gather_cells(slow_square, [3, 1, 2], jobs=2) == [9, 1, 4]
