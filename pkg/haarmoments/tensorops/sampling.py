"""
Sampling module.

Haar random unitaries and states, and seeded Monte Carlo estimates.
Every random stream is a numpy Generator on a SeedSequence, so a
(seed, stream) pair always reproduces the same samples; child streams
split a stream into independent chunks that are reduced in order.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy
from loguru import logger

from haarmoments.config import current_config
from haarmoments.output.error_handler import ArgumentError

Observable = Callable[[numpy.ndarray], Union[complex, numpy.ndarray]]


class RngStream:
    """Reproducible random stream identified by (seed, stream id)."""

    __slots__ = ["seed", "stream", "path"]

    def __init__(self, seed: int, stream: int = 0, path: Tuple[int, ...] = ()) -> None:
        """
        Initializer for the RngStream class.

        :param seed: 64-bit seed
        :param stream: Stream id
        :param path: Child indices below the stream, set by child()
        """
        self.seed = int(seed)
        self.stream = int(stream)
        self.path = tuple(path)

    def child(self, index: int) -> "RngStream":
        """
        Independent sub-stream.

        :param index: Child index
        :return: Stream with the same seed and an extended spawn key
        """
        return RngStream(self.seed, self.stream, self.path + (index,))

    def generator(self) -> numpy.random.Generator:
        """
        Fresh generator positioned at the start of the stream.

        :return: PCG64 generator
        """
        sequence = numpy.random.SeedSequence(
            self.seed, spawn_key=(self.stream,) + self.path
        )
        return numpy.random.Generator(numpy.random.PCG64(sequence))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream}, path={self.path})"


def _ginibre(d: int, count: Optional[int], generator: numpy.random.Generator) -> numpy.ndarray:
    shape = (d, d) if count is None else (count, d, d)
    return (
        generator.standard_normal(shape) + 1j * generator.standard_normal(shape)
    ) / numpy.sqrt(2)


def _fix_phases(ginibre: numpy.ndarray) -> numpy.ndarray:
    q, r = numpy.linalg.qr(ginibre)
    diagonal = numpy.diagonal(r, axis1=-2, axis2=-1)
    # Q·diag(r_ii/|r_ii|) makes the decomposition unique
    return q * (diagonal / numpy.abs(diagonal))[..., numpy.newaxis, :]


def haar_sample(d: int, rng: Union[RngStream, numpy.random.Generator]) -> numpy.ndarray:
    """
    Haar random unitary.

    :param d: Dimension, d ≥ 1
    :param rng: Stream or generator
    :return: d × d unitary
    """
    if d < 1:
        raise ArgumentError("bad_dimension", "d", 1, d)
    generator = rng.generator() if isinstance(rng, RngStream) else rng
    return _fix_phases(_ginibre(d, None, generator))


def haar_batch(d: int, count: int, generator: numpy.random.Generator) -> numpy.ndarray:
    """
    Stack of independent Haar random unitaries.

    :param d: Dimension
    :param count: Number of samples
    :param generator: Generator the samples are drawn from
    :return: Array of shape (count, d, d)
    """
    if d < 1:
        raise ArgumentError("bad_dimension", "d", 1, d)
    return _fix_phases(_ginibre(d, count, generator))


def haar_state(d: int, generator: numpy.random.Generator, count: Optional[int] = None) -> numpy.ndarray:
    """
    Haar random pure states, normalized complex Gaussian vectors.

    :param d: Dimension
    :param generator: Generator the samples are drawn from
    :param count: Number of states, None for a single state
    :return: Array of shape (d,) or (count, d)
    """
    shape = (d,) if count is None else (count, d)
    vector = generator.standard_normal(shape) + 1j * generator.standard_normal(shape)
    return vector / numpy.linalg.norm(vector, axis=-1, keepdims=True)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sample mean and standard error, entrywise for array observables."""

    estimate: Union[complex, numpy.ndarray]
    stderr: Union[float, numpy.ndarray]
    n_samples: int

    def z_score(self, exact: Union[complex, numpy.ndarray]) -> float:
        """
        Largest entrywise |estimate − exact|/stderr.

        Entries with zero standard error count only if they miss the
        exact value.

        :param exact: Exact value, same shape as the estimate
        :return: z-score
        """
        deviation = numpy.abs(numpy.asarray(self.estimate) - numpy.asarray(exact, dtype=complex))
        stderr = numpy.asarray(self.stderr, dtype=float)
        with numpy.errstate(divide="ignore", invalid="ignore"):
            scores = numpy.where(
                stderr > 0,
                deviation / numpy.where(stderr > 0, stderr, 1),
                numpy.where(deviation > 1e-12, numpy.inf, 0)
            )
        return float(numpy.max(scores))


def _chunk_sums(
        observable: Observable,
        d: int,
        n_samples: int,
        stream: RngStream,
        batch_size: int,
        sampler: Callable[[int, int, numpy.random.Generator], numpy.ndarray]
) -> Tuple[numpy.ndarray, numpy.ndarray, int]:
    """Sum and centred sum of squares of one chunk, by batches."""
    generator = stream.generator()
    total = None
    square_total = None
    count = 0
    mean = None
    done = 0
    while done < n_samples:
        size = min(batch_size, n_samples - done)
        values = numpy.asarray(
            [observable(sample) for sample in sampler(d, size, generator)], dtype=complex
        )
        batch_mean = values.mean(axis=0)
        batch_square = (numpy.abs(values - batch_mean) ** 2).sum(axis=0)
        if total is None:
            total, square_total, mean, count = values.sum(axis=0), batch_square, batch_mean, size
        else:
            # Chan's parallel update of the centred sum of squares
            delta = batch_mean - mean
            new_count = count + size
            square_total = square_total + batch_square + numpy.abs(delta) ** 2 * count * size / new_count
            total = total + values.sum(axis=0)
            count = new_count
            mean = total / count
        done += size
    return total, square_total, count


def mc_moment(
        observable: Observable,
        d: int,
        n_samples: int,
        rng: RngStream,
        sampler: Callable[[int, int, numpy.random.Generator], numpy.ndarray] = haar_batch
) -> MonteCarloEstimate:
    """
    Monte Carlo estimate of E[observable(U)] for Haar random U.

    Samples are split over child streams of rng, evaluated on a thread
    pool and reduced in chunk order, so the result only depends on
    (seed, stream, n_samples) and the configured chunk count.

    :param observable: Function of one sample returning a scalar or
        an array
    :param d: Dimension
    :param n_samples: Number of samples, at least 2
    :param rng: Parent stream
    :param sampler: Batch sampler, haar_batch for unitaries
    :return: Estimate with standard error sqrt(s²/N)
    """
    if n_samples < 2:
        raise ArgumentError("too_few_samples", n_samples)
    config = current_config()
    chunks = min(config.mc_chunks, n_samples)
    sizes = [n_samples // chunks + (1 if i < n_samples % chunks else 0) for i in range(chunks)]

    with ThreadPoolExecutor(max_workers=config.mc_workers) as executor:
        results = list(executor.map(
            lambda item: _chunk_sums(
                observable, d, item[1], rng.child(item[0]), config.mc_batch_size, sampler
            ),
            enumerate(sizes)
        ))

    total, square_total, count = results[0]
    mean = total / count
    for chunk_total, chunk_square, chunk_count in results[1:]:
        chunk_mean = chunk_total / chunk_count
        new_count = count + chunk_count
        square_total = (
            square_total + chunk_square
            + numpy.abs(chunk_mean - mean) ** 2 * count * chunk_count / new_count
        )
        total = total + chunk_total
        count = new_count
        mean = total / count

    variance = square_total / (count - 1)
    stderr = numpy.sqrt(variance / count)
    logger.debug("Monte Carlo over {} samples in {} chunks, d = {}", count, chunks, d)

    if numpy.ndim(mean) == 0:
        return MonteCarloEstimate(complex(mean), float(stderr), count)
    return MonteCarloEstimate(mean, stderr, count)
