"""
Identity registry module.

Exact identities and Monte Carlo identities share one name space and
are kept in registration order, so that `verify all` always reports in
the same order. Identity modules register themselves on import with
the exact_identity and mc_identity decorators.
"""

from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple, Union

import numpy
from loguru import logger

from haarmoments.config import current_config
from haarmoments.output.error_handler import ArgumentError, ConsistencyError
from haarmoments.output.output import disp_str, format_float, format_rational
from haarmoments.tensorops.sampling import MonteCarloEstimate, RngStream
from haarmoments.weingarten.exact_operator import ExactOperator

EXACT = "exact"
MONTE_CARLO = "mc"


@dataclass(frozen=True)
class VerifyParams:
    """
    Filters and knobs passed to every identity.

    Parameters:
    - k: Only check sweep points with this degree, if given
    - d: Only check sweep points with this dimension, if given
    - samples: Monte Carlo sample count, defaults per identity
    - seed: Monte Carlo seed, defaults to the configured seed
    """
    k: Optional[int] = None
    d: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    def allows(self, k: Optional[int] = None, d: Optional[int] = None) -> bool:
        """
        Whether a sweep point passes the filters.

        :param k: Degree of the point, None if it has none
        :param d: Dimension of the point, None if it has none
        :return: False if a given filter disagrees with the point
        """
        if self.k is not None and k is not None and k != self.k:
            return False
        if self.d is not None and d is not None and d != self.d:
            return False
        return True

    def sweep(
            self,
            ks: Iterable[Optional[int]],
            ds: Iterable[Optional[int]] = (None,)
    ) -> List[Tuple[Optional[int], Optional[int]]]:
        """
        Grid of (k, d) points that pass the filters, k major.

        :param ks: Degrees of the acceptance sweep
        :param ds: Dimensions of the acceptance sweep
        :return: Remaining points
        """
        ds = list(ds)
        return [(k, d) for k in ks for d in ds if self.allows(k, d)]

    def seed_or_default(self) -> int:
        return current_config().default_seed if self.seed is None else self.seed


@dataclass
class VerifyReport:
    """Outcome of one identity."""

    name: str
    checked: int
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def skipped(self) -> bool:
        return self.checked == 0 and not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return disp_str("verify_fail")
        if self.skipped:
            return disp_str("verify_skip")
        return disp_str("verify_pass")

    @property
    def detail(self) -> str:
        if self.failures:
            return disp_str("verify_detail_fail").format(
                failed=len(self.failures), checked=self.checked, first=self.failures[0]
            )
        if self.skipped:
            return disp_str("verify_detail_skip")
        return disp_str("verify_detail_pass").format(checked=self.checked)

    def text_line(self) -> str:
        return disp_str("verify_line").format(
            status=self.status, name=self.name, detail=self.detail
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "identity": self.name,
            "status": self.status,
            "checked": self.checked,
            "failures": list(self.failures),
            "pass": self.passed,
        }


@dataclass(frozen=True)
class McReport:
    """
    Exact value against its Monte Carlo estimate.

    Operator identities are compared entrywise; z is the largest
    entrywise z-score.
    """

    identity: str
    exact: Union[Fraction, ExactOperator]
    estimate: Union[complex, numpy.ndarray]
    stderr: Union[float, numpy.ndarray]
    n_samples: int
    z: float
    passed: bool

    @property
    def status(self) -> str:
        return disp_str("verify_pass") if self.passed else disp_str("verify_fail")

    def text_line(self, precision: int) -> str:
        if isinstance(self.exact, ExactOperator):
            deviation = numpy.abs(numpy.asarray(self.estimate) - self.exact.to_numpy())
            return disp_str("mcverify_matrix_line").format(
                status=self.status,
                identity=self.identity,
                deviation=format_float(numpy.max(deviation), precision),
                entries=deviation.size,
                stderr=format_float(numpy.max(self.stderr), precision),
                z=format_float(self.z, 4)
            )
        return disp_str("mcverify_line").format(
            status=self.status,
            identity=self.identity,
            exact=format_rational(self.exact),
            estimate=format_float(self.estimate, precision),
            stderr=format_float(self.stderr, precision),
            z=format_float(self.z, 4)
        )

    def to_json(self) -> Dict[str, Any]:
        exact = self.exact.to_json() if isinstance(self.exact, ExactOperator) \
            else format_rational(self.exact)
        estimate = self.estimate
        if isinstance(estimate, numpy.ndarray):
            estimate = numpy.stack([estimate.real, estimate.imag], axis=-1).tolist()
        elif complex(estimate).imag == 0:
            estimate = complex(estimate).real
        stderr = self.stderr
        if isinstance(stderr, numpy.ndarray):
            stderr = stderr.tolist()
        return {
            "identity": self.identity,
            "exact": exact,
            "estimate": estimate,
            "stderr": stderr,
            "n_samples": self.n_samples,
            "z": self.z,
            "pass": self.passed,
        }


class Checker:
    """Collects the individual checks of one exact identity."""

    __slots__ = ["name", "checked", "failures"]

    def __init__(self, name: str) -> None:
        self.name = name
        self.checked = 0
        self.failures: List[str] = []

    def check(self, condition: bool, what: str) -> bool:
        """
        Records one check.

        :param condition: Whether the check held
        :param what: Description used in the report if it failed
        :return: condition
        """
        self.checked += 1
        if not condition:
            logger.error("Identity {} failed: {}", self.name, what)
            self.failures.append(what)
        return bool(condition)

    def close(self, actual: Any, expected: Any, tolerance: float, what: str) -> bool:
        """
        Records a floating point check, |actual − expected| < tolerance
        entrywise.
        """
        error = float(numpy.max(numpy.abs(
            numpy.asarray(actual, dtype=complex) - numpy.asarray(expected, dtype=complex)
        )))
        return self.check(error < tolerance, f"{what} (error {error:.3g})")

    def report(self) -> VerifyReport:
        return VerifyReport(self.name, self.checked, list(self.failures))


ExactRoutine = Callable[[VerifyParams, Checker], None]
McRoutine = Callable[[int, int, int, RngStream], Tuple[Union[Fraction, ExactOperator], MonteCarloEstimate]]


@dataclass
class Identity:
    """
    Registered identity.

    Parameters:
    - name: Name used on the command line
    - desc: One line description
    - kind: EXACT or MONTE_CARLO
    - routine: Exact routine taking (params, checker), or Monte Carlo
        routine taking (k, d, n_samples, rng) and returning the exact
        value with its estimate
    - default_k, default_d: Monte Carlo point used when the parameters
        do not name one; default_k is None when k is not used
    - k_range, d_range: Inclusive bounds accepted for k and d
    - samples: Default Monte Carlo sample count, None for the config's
    """
    name: str
    desc: str
    kind: str
    routine: Callable
    default_k: Optional[int] = None
    default_d: Optional[int] = None
    k_range: Tuple[int, int] = (1, 6)
    d_range: Tuple[int, int] = (1, 8)
    samples: Optional[int] = None

    def point(self, params: VerifyParams) -> Tuple[int, int]:
        """
        Monte Carlo (k, d) for the given parameters.

        :raises ArgumentError: If a parameter is outside this identity's
            bounds
        """
        k = self.default_k if params.k is None or self.default_k is None else params.k
        d = self.default_d if params.d is None else params.d
        if self.default_k is not None and not self.k_range[0] <= k <= self.k_range[1]:
            raise ArgumentError(
                "bad_parameter", f"{self.name} needs k in {self.k_range}, got {k}"
            )
        if not self.d_range[0] <= d <= self.d_range[1]:
            raise ArgumentError(
                "bad_parameter", f"{self.name} needs d in {self.d_range}, got {d}"
            )
        return (k or 0), d


IDENTITIES: "OrderedDict[str, Identity]" = OrderedDict()


def _register(identity: Identity) -> None:
    if identity.name in IDENTITIES:
        raise ArgumentError("bad_parameter", f"identity {identity.name} registered twice")
    IDENTITIES[identity.name] = identity


def exact_identity(name: str, desc: str) -> Callable[[ExactRoutine], ExactRoutine]:
    """
    Registers an exact identity routine.

    :param name: Identity name
    :param desc: One line description
    :return: Decorator returning the routine unchanged
    """
    def decorator(routine: ExactRoutine) -> ExactRoutine:
        _register(Identity(name, desc, EXACT, routine))
        return routine

    return decorator


def mc_identity(
        name: str,
        desc: str,
        d: int,
        k: Optional[int] = None,
        k_range: Tuple[int, int] = (1, 6),
        d_range: Tuple[int, int] = (1, 8),
        samples: Optional[int] = None
) -> Callable[[McRoutine], McRoutine]:
    """
    Registers a Monte Carlo identity routine.

    :param name: Identity name
    :param desc: One line description
    :param d: Default dimension
    :param k: Default degree, None if the identity has none
    :param k_range: Accepted degrees
    :param d_range: Accepted dimensions
    :param samples: Default sample count
    :return: Decorator returning the routine unchanged
    """
    def decorator(routine: McRoutine) -> McRoutine:
        _register(Identity(
            name, desc, MONTE_CARLO, routine, k, d, k_range, d_range, samples
        ))
        return routine

    return decorator


def load_identities() -> "OrderedDict[str, Identity]":
    """
    Imports the identity modules, which registers them.

    :return: Registry in registration order
    """
    # pylint: disable=import-outside-toplevel,unused-import,cyclic-import
    from haarmoments.verify import exact_identities, mc_identities  # noqa: F401
    return IDENTITIES


def get_identity(name: str, kind: Optional[str] = None) -> Identity:
    """
    Looks up an identity by name.

    :param name: Identity name
    :param kind: Required kind, any if None
    :return: Identity
    :raises ArgumentError: If no identity of that kind has the name
    """
    registry = load_identities()
    identity = registry.get(name)
    if identity is None or (kind is not None and identity.kind != kind):
        names = [n for n, i in registry.items() if kind is None or i.kind == kind]
        raise ArgumentError("unknown_identity", name, ", ".join(names))
    return identity


def _stream_id(name: str) -> int:
    return list(IDENTITIES).index(name)


def exact_vs_mc_report(
        identity_id: str,
        params: VerifyParams,
        n_samples: Optional[int] = None,
        rng: Optional[RngStream] = None
) -> McReport:
    """
    Runs a Monte Carlo identity and compares it to its exact value.

    :param identity_id: Registered Monte Carlo identity
    :param params: Point and knobs; k and d pick the point
    :param n_samples: Sample count, overriding params and defaults
    :param rng: Stream, defaults to the identity's own stream under the
        parameters' seed
    :return: Report with pass = |z| ≤ the configured threshold
    :raises ArgumentError: For unknown identities or parameters out of
        range
    """
    identity = get_identity(identity_id, MONTE_CARLO)
    config = current_config()
    k, d = identity.point(params)
    if n_samples is None:
        n_samples = params.samples or identity.samples or config.mc_samples
    if rng is None:
        rng = RngStream(params.seed_or_default(), _stream_id(identity.name))

    logger.info("Monte Carlo check {} at k = {}, d = {} with {} samples", identity.name, k, d, n_samples)
    exact, estimate = identity.routine(k, d, n_samples, rng)
    exact_value = exact.to_numpy() if isinstance(exact, ExactOperator) else complex(Fraction(exact))
    z = estimate.z_score(exact_value)
    return McReport(
        identity=identity.name,
        exact=exact,
        estimate=estimate.estimate,
        stderr=estimate.stderr,
        n_samples=estimate.n_samples,
        z=z,
        passed=z <= config.mc_z_threshold
    )


def run_identity(name: str, params: VerifyParams) -> VerifyReport:
    """
    Runs one identity of either kind.

    Monte Carlo identities whose point falls outside the parameters'
    filters or their own bounds are skipped. Consistency errors raised
    by the library count as failures.

    :param name: Identity name
    :param params: Filters and knobs
    :return: Report
    """
    identity = get_identity(name)
    checker = Checker(identity.name)
    try:
        if identity.kind == EXACT:
            identity.routine(params, checker)
        else:
            try:
                identity.point(params)
            except ArgumentError:
                logger.debug("Skipping {}: parameters out of range", identity.name)
                return checker.report()
            report = exact_vs_mc_report(identity.name, params)
            checker.check(report.passed, f"z = {report.z:.3g}")
    except ConsistencyError as e:
        checker.check(False, e.error_message)
    return checker.report()


def run_all(params: VerifyParams, names: Optional[List[str]] = None) -> List[VerifyReport]:
    """
    Runs identities in parallel and reports them in registration order.

    :param params: Filters and knobs
    :param names: Identities to run, all by default
    :return: Reports in registration order
    """
    registry = load_identities()
    names = list(registry) if names is None else names
    config = current_config()
    with ThreadPoolExecutor(max_workers=config.mc_workers) as executor:
        reports = list(executor.map(lambda name: run_identity(name, params), names))

    logger.info(
        "{} of {} identities passed",
        sum(report.passed for report in reports),
        len(reports)
    )
    return reports
