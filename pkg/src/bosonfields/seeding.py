"""
Reproducible random streams.

Every consumer of randomness gets its own stream, derived from the root
seed and a stable string label (e.g. "sample/configurations").  Monte
Carlo replicas are grouped into fixed-size batches, and each batch gets
its own substream, so the results don't depend on how many threads we
use to compute them.
"""

from collections.abc import Callable
import concurrent.futures
import hashlib
import typing

import numpy as np
import tqdm


T = typing.TypeVar("T")


BATCH_SIZE = 256


def label_key(label: str) -> int:
    """
    A stable 64-bit integer for a label.

    We can't use ``hash()``, which is randomised per process.
    """
    return int.from_bytes(hashlib.sha256(label.encode("utf8")).digest()[:8], "big")


def substream(root_seed: int, label: str, index: int = 0) -> np.random.Generator:
    """
    The generator for the ``index``-th batch of the consumer ``label``.
    """
    return np.random.default_rng(np.random.SeedSequence([root_seed, label_key(label), index]))


def run_in_batches(
    func: Callable[[np.random.Generator, int], list[T]],
    n: int,
    *,
    seed: int,
    label: str,
    threads: int = 1,
    progress: bool = False,
) -> list[T]:
    """
    Produce ``n`` results by calling ``func(rng, count)`` on batches of
    at most BATCH_SIZE replicas, and concatenate them in batch order.

    Batch ``i`` always covers replicas [i·BATCH_SIZE, (i+1)·BATCH_SIZE)
    and always uses the same substream, so the output is identical for
    any number of threads.
    """
    batches = [
        (i, min(BATCH_SIZE, n - start))
        for i, start in enumerate(range(0, n, BATCH_SIZE))
    ]

    def run_batch(batch: tuple[int, int]) -> list[T]:
        index, count = batch
        results = func(substream(seed, label, index), count)
        assert len(results) == count, (len(results), count)
        return results

    merged: list[T] = []

    with tqdm.tqdm(total=n, disable=not progress, desc=label, leave=False) as bar:
        if threads <= 1:
            for batch in batches:
                merged.extend(run_batch(batch))
                bar.update(batch[1])
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
                for batch, results in zip(batches, executor.map(run_batch, batches)):
                    merged.extend(results)
                    bar.update(batch[1])

    return merged
