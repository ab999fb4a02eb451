"""Grid and ordered concurrent map utilities for parameter sweeps."""

from __future__ import annotations

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import TypeVar

import numpy as np

from quibounds.exceptions import DomainError

T = TypeVar("T")
R = TypeVar("R")


def uniform_grid(points: int, x_min: float = 0.0, x_max: float = 1.0) -> list[float]:
    """``points`` evenly spaced values from ``x_min`` to ``x_max`` inclusive.

    Example:
        >>> uniform_grid(3)
        [0.0, 0.5, 1.0]
    """
    if points < 2:
        raise DomainError(f"a grid needs at least 2 points, got {points}")
    if not x_min < x_max:
        raise DomainError(f"grid bounds must satisfy x_min < x_max, got {x_min}, {x_max}")
    return [float(x) for x in np.linspace(x_min, x_max, points)]


def map_ordered(
    fn: Callable[[T], R],
    items: Iterable[T],
    *,
    workers: int = 1,
    progress_callback: Callable[[int, int], None] | None = None,
) -> list[R]:
    """Apply ``fn`` to every item, possibly concurrently, keeping input order.

    Args:
        fn: Pure function of one item.
        items: Inputs.
        workers: Thread count; 1 runs sequentially in the calling thread.
        progress_callback: Called as ``(completed, total)`` after each item.

    Returns:
        Results in the order of ``items``.
    """
    items = list(items)
    total = len(items)
    if workers <= 1 or total <= 1:
        results = []
        for done, item in enumerate(items, start=1):
            results.append(fn(item))
            if progress_callback:
                progress_callback(done, total)
        return results

    slots: list[R | None] = [None] * total
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(fn, item): i for i, item in enumerate(items)}
        for done, future in enumerate(as_completed(futures), start=1):
            slots[futures[future]] = future.result()
            if progress_callback:
                progress_callback(done, total)
    return [slot for slot in slots]  # type: ignore[misc]
