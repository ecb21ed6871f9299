import numpy as np
import pytest

from bosonfields.seeding import BATCH_SIZE, label_key, run_in_batches, substream


def test_label_key_is_stable() -> None:
    # This must never change, or old seeds would give new results.
    assert label_key("sample/configurations") == 6528067693184810259
    assert label_key("sample/configurations") != label_key("scaled/draws")
    assert 0 <= label_key("kac/samples") < 2**64


def test_substreams_are_independent() -> None:
    a = substream(1, "label", 0).random(5)
    b = substream(1, "label", 1).random(5)
    c = substream(1, "other", 0).random(5)
    d = substream(2, "label", 0).random(5)

    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert np.array_equal(a, substream(1, "label", 0).random(5))


def draw(rng: np.random.Generator, count: int) -> list[float]:
    return [float(x) for x in rng.random(count)]


@pytest.mark.parametrize("n", [0, 1, BATCH_SIZE, BATCH_SIZE + 1, 3 * BATCH_SIZE + 17])
def test_run_in_batches_returns_n_results(n: int) -> None:
    assert len(run_in_batches(draw, n, seed=1, label="test")) == n


@pytest.mark.parametrize("threads", [2, 3, 8])
def test_results_do_not_depend_on_threads(threads: int) -> None:
    n = 5 * BATCH_SIZE + 3

    serial = run_in_batches(draw, n, seed=42, label="test")
    parallel = run_in_batches(draw, n, seed=42, label="test", threads=threads)

    assert serial == parallel


def test_batches_use_their_own_substreams() -> None:
    results = run_in_batches(draw, BATCH_SIZE + 2, seed=7, label="test")

    assert results[:BATCH_SIZE] == draw(substream(7, "test", 0), BATCH_SIZE)
    assert results[BATCH_SIZE:] == draw(substream(7, "test", 1), 2)


def test_progress_bar_does_not_change_results() -> None:
    assert run_in_batches(draw, 300, seed=3, label="test", progress=True) == run_in_batches(
        draw, 300, seed=3, label="test"
    )


def test_a_short_batch_is_an_error() -> None:
    def short(rng: np.random.Generator, count: int) -> list[float]:
        return draw(rng, count - 1)

    with pytest.raises(AssertionError):
        run_in_batches(short, 10, seed=1, label="test")
