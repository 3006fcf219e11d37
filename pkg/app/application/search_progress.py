from __future__ import annotations
import logging
from typing import TypeVar
from collections.abc import Iterator, Sequence


logger = logging.getLogger(__name__)

T = TypeVar("T")

# progress for frontier expansion when generator_search runs from the terminal
def frontier_batches(
        frontier: Sequence[T],
        batch_size: int,
        depth: int,
) -> Iterator[tuple[int, int, list[T]]]:
    """Yield the frontier of one search level in batches with progress metadata.

        Logs an info-level message for each batch before it is expanded.
        An empty frontier logs that the level is skipped and yields nothing.
        """

    total_items = len(frontier)
    if total_items == 0:
        logger.info("[depth %d] Empty frontier; nothing to expand", depth)
        return

    total_batches = (total_items + batch_size - 1) // batch_size

    for batch_index, batch_start in enumerate(range(0, total_items, batch_size)):
        batch: list[T] = list(frontier[batch_start: batch_start + batch_size])

        logger.info(
            "[depth %d] Expanding batch %d/%d (%d items, index %d..%d)...",
            depth,
            batch_index + 1,
            total_batches,
            len(batch),
            batch_start,
            batch_start + len(batch) - 1,
        )

        yield batch_index, total_batches, batch
