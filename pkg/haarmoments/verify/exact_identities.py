"""
Exact identities module.

Every identity here is checked with exact arithmetic (zero tolerance)
or, where it says so, by floating point quadrature and linear algebra
against a stated tolerance. Each routine walks its own sweep of (k, d)
points, restricted by the k and d filters of the parameters.
"""

import math
import zlib
from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

import numpy

from haarmoments.characters.character_table import character_table, hook_column
from haarmoments.combinatorics.partitions import (
    Partition, class_size, count_standard_tableaux, f_lambda, f_lambda_difference,
    f_lambda_hook, partitions_of, schur_dim, z_gamma
)
from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError, ConsistencyError
from haarmoments.symfunc.symmetric_functions import (
    RationalVector, bialternant_schur, inverse_frobenius, kronecker, schur_poly,
    schur_tensor_expand
)
from haarmoments.tensorops.complex_matrix import (
    central_projector_matrix, kron_power, max_abs, partial_trace_matrix,
    permutation_matrix, permute_factors_matrix, unitarity_residual
)
from haarmoments.tensorops.quadrature import (
    exact_grid_size, trace_power_integrand, trace_power_quadrature,
    vandermonde_jacobian, weyl_quadrature
)
from haarmoments.tensorops.sampling import RngStream, haar_batch, mc_moment
from haarmoments.verify.oracles import gram_projection, weingarten_from_gram
from haarmoments.verify.registry import Checker, VerifyParams, exact_identity
from haarmoments.weingarten.exact_operator import ExactOperator, permutation_operator
from haarmoments.weingarten.group_algebra import GroupAlgebraElement
from haarmoments.weingarten.moments import (
    _interleave_order, average_purity, check_partial_trace_projector,
    closed_moment_tr2, closed_moment_tr4, depolarizing_parameter,
    fourier_pair_integral, full_trace_projector_product, partial_trace_projector,
    partial_trace_projector_dense, partial_trace_symmetric_companion,
    power_pair_average, sphere_moment2, sphere_moment2_superop, superop_trace,
    superop_trace_of_identity, superop_twirl_coeffs, swap_average, swap_operator,
    twirl_superoperator, uk_twirl, visibility_moment_multipartite, visibility_moments
)
from haarmoments.weingarten.scalars import ONE, ZERO, conjugate, gaussian, real_part, real_value
from haarmoments.weingarten.twirl import (
    audenaert_twirl, central_projector, central_projector_element, choi_operator,
    conditional_expectation, sphere_projector_average, twirl_coefficients,
    twirl_matches_tensor_power, twirl_power, vec_moment, vec_moment_by_summation
)
from haarmoments.weingarten.weingarten_fn import (
    character_trace_moment, monomial_integral, trace_power_moment,
    weingarten_fn, weingarten_table, weingarten_trace_moment
)

QUADRATURE_TOLERANCE = 1e-10
LOOSE_QUADRATURE_TOLERANCE = 1e-8
FLOAT_TOLERANCE = 1e-10


"""''''''''''''''
Random test data
''''''''''''''"""


def identity_generator(params: VerifyParams, name: str) -> numpy.random.Generator:
    """
    Generator for the random data of one identity.

    :param params: Parameters holding the seed
    :param name: Identity name, hashed into the stream id
    :return: Reproducible generator
    """
    return RngStream(params.seed_or_default(), zlib.crc32(name.encode())).generator()


def random_rational(generator: numpy.random.Generator, bound: int = 5, denominator: int = 4) -> Fraction:
    """Small random rational p/q with |p| ≤ bound and 1 ≤ q ≤ denominator."""
    return Fraction(
        int(generator.integers(-bound, bound + 1)),
        int(generator.integers(1, denominator + 1))
    )


def random_operator(dims: Sequence[int], generator: numpy.random.Generator) -> ExactOperator:
    """
    Dense operator with random Gaussian-rational entries.

    :param dims: Factor dimensions
    :param generator: Random source
    :return: Exact operator
    """
    size = math.prod(dims)
    return ExactOperator.from_rows(
        [
            [gaussian(random_rational(generator), random_rational(generator))
             for _ in range(size)]
            for _ in range(size)
        ],
        dims
    )


def random_point(generator: numpy.random.Generator, dim: int, distinct: bool = False) -> RationalVector:
    """
    Random rational point.

    :param generator: Random source
    :param dim: Number of entries
    :param distinct: Whether entries must differ pairwise
    :return: Point
    """
    while True:
        point = [random_rational(generator) for _ in range(dim)]
        if not distinct or len(set(point)) == dim:
            return RationalVector(point)


"""'''''''''''''''''''''''''
Twirls and Weingarten values
'''''''''''''''''''''''''"""


@exact_identity("k1_twirl", "E_1(A) = (Tr A/d) 1 for random Gaussian-rational A")
def check_k1_twirl(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "k1_twirl")
    for _, d in params.sweep([1], [2, 3, 5]):
        identity = ExactOperator.identity((d,))
        for sample in range(20):
            operator = random_operator((d,), generator)
            checker.check(
                conditional_expectation(operator) == identity.scale(operator.trace() / d),
                f"d = {d}, sample {sample}"
            )


@exact_identity("k2_twirl", "E_2(A) = lambda(A) P_asym + mu(A) P_sym")
def check_k2_twirl(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "k2_twirl")
    for _, d in params.sweep([2], [2, 3]):
        swap = swap_operator(d)
        identity = ExactOperator.identity((d, d))
        antisymmetric = (identity - swap).scale(Fraction(1, 2))
        symmetric = (identity + swap).scale(Fraction(1, 2))
        checker.check(central_projector(Partition((2,)), d) == symmetric, f"C_(2), d = {d}")
        checker.check(central_projector(Partition((1, 1)), d) == antisymmetric, f"C_(1,1), d = {d}")

        for sample in range(5):
            operator = random_operator((d, d), generator)
            trace = operator.trace()
            swap_trace = operator.trace_product(swap)
            lam = (trace - swap_trace) / (d * (d - 1))
            mu = (trace + swap_trace) / (d * (d + 1))
            checker.check(
                conditional_expectation(operator)
                == antisymmetric.scale(lam) + symmetric.scale(mu),
                f"d = {d}, sample {sample}"
            )


@exact_identity("wg_k2", "Wg at k = 1, 2 against its closed forms")
def check_wg_small(params: VerifyParams, checker: Checker) -> None:
    for _, d in params.sweep([1], range(1, 7)):
        checker.check(weingarten_fn(1, d)[Partition((1,))] == Fraction(1, d), f"k = 1, d = {d}")
    for _, d in params.sweep([2], range(2, 7)):
        wg = weingarten_fn(2, d)
        checker.check(wg[Partition((1, 1))] == Fraction(1, d * d - 1), f"Wg(e), d = {d}")
        checker.check(
            wg[Partition((2,))] == Fraction(-1, d * (d * d - 1)), f"Wg((12)), d = {d}"
        )


@exact_identity("wg_gram_inverse", "Sum_tau Wg(s t^-1) d^#(t p^-1) = delta(s, p) for d >= k")
def check_wg_gram_inverse(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep(range(1, 5), range(1, 6)):
        if d < k:
            continue
        table = weingarten_table(k, d)
        perms = list(all_permutations(k))
        holds = all(
            sum(
                (table[sigma * tau.inverse()] * d ** (tau * pi.inverse()).num_cycles()
                 for tau in perms),
                Fraction(0)
            ) == (1 if sigma == pi else 0)
            for sigma in perms
            for pi in perms
        )
        checker.check(holds, f"k = {k}, d = {d}")


@exact_identity("wg_gram_oracle", "Wg equals the (e, s) entries of the inverted Gram matrix")
def check_wg_gram_oracle(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep(range(1, 4), range(2, 5)):
        if d < k:
            continue
        checker.check(weingarten_from_gram(k, d) == weingarten_table(k, d), f"k = {k}, d = {d}")


@exact_identity("twirl_gram_oracle", "E_k(A) equals the Gram-system projection onto span P(pi)")
def check_twirl_gram_oracle(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "twirl_gram_oracle")
    for k, d in params.sweep(range(1, 4), [2, 3]):
        operator = random_operator((d,) * k, generator)
        checker.check(
            conditional_expectation(operator) == gram_projection(operator),
            f"k = {k}, d = {d}"
        )


@exact_identity("twirl_projection", "E_k is an idempotent, trace preserving bimodule map")
def check_twirl_projection(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "twirl_projection")
    for k, d in params.sweep(range(1, 4), [2, 3]):
        operator = random_operator((d,) * k, generator)
        twirled = conditional_expectation(operator)
        checker.check(conditional_expectation(twirled) == twirled, f"idempotent, k = {k}, d = {d}")
        checker.check(twirled.trace() == operator.trace(), f"trace, k = {k}, d = {d}")

        perms = list(all_permutations(k))
        sigma, tau = perms[-1], perms[len(perms) // 2]
        left, right = permutation_operator(sigma, d), permutation_operator(tau, d)
        checker.check(
            conditional_expectation(left @ operator @ right) == left @ twirled @ right,
            f"bimodule, k = {k}, d = {d}"
        )
        for pi in perms:
            fixed = permutation_operator(pi, d)
            checker.check(conditional_expectation(fixed) == fixed, f"fixes P{pi.to_cycle_text()}")


def _random_indices(generator: numpy.random.Generator, k: int, d: int) -> Tuple[int, ...]:
    return tuple(int(i) for i in generator.integers(1, d + 1, size=k))


@exact_identity("monomial_symmetry", "Monomial integrals: slot symmetry, vanishing and small values")
def check_monomial_symmetry(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "monomial_symmetry")
    for k, d in params.sweep(range(1, 4), range(1, 4)):
        if k == 1:
            checker.check(monomial_integral((1,), (1,), (1,), (1,), d) == Fraction(1, d), f"|U11|^2, d = {d}")
        if k == 2 and d >= 2:
            checker.check(
                monomial_integral((1, 2), (1, 2), (1, 2), (1, 2), d) == Fraction(1, d * d - 1),
                f"U11 U22, d = {d}"
            )
        for _ in range(5):
            rows, cols = _random_indices(generator, k, d), _random_indices(generator, k, d)
            order = list(generator.permutation(k))
            rows2 = tuple(rows[i] for i in order)
            cols2 = tuple(cols[i] for i in generator.permutation(k))
            value = monomial_integral(rows, cols, rows2, cols2, d)

            slots = list(generator.permutation(k))
            moved = monomial_integral(
                tuple(rows[i] for i in slots), tuple(cols[i] for i in slots),
                rows2, cols2, d
            )
            checker.check(value == moved, f"slot symmetry, k = {k}, d = {d}")

            if d > 1:
                changed = list(rows2)
                changed[0] = changed[0] % d + 1
                if sorted(changed) != sorted(rows):
                    checker.check(
                        monomial_integral(rows, cols, tuple(changed), cols2, d) == 0,
                        f"vanishing, k = {k}, d = {d}"
                    )
        checker.check(
            monomial_integral((1,) * k, (1,) * k, (1,) * (k + 1), (1,) * (k + 1), d) == 0,
            f"unbalanced, k = {k}"
        )


"""'''''''''''''''''''
Trace power moments
'''''''''''''''''''"""


def monomial_trace_moment(k: int, d: int) -> Fraction:
    """
    ∫ |Tr U^k|² dU summed term by term from monomial integrals.

    Tr U^k = Σ_I U_{i_1 i_2} U_{i_2 i_3} … U_{i_k i_1}; only index
    tuples with equal multisets pair up.
    """
    groups: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = defaultdict(list)
    for indices in product(range(1, d + 1), repeat=k):
        groups[tuple(sorted(indices))].append(indices)

    total = Fraction(0)
    for members in groups.values():
        for rows in members:
            cols = rows[1:] + rows[:1]
            for rows2 in members:
                total += monomial_integral(rows, cols, rows2, rows2[1:] + rows2[:1], d)
    return total


@exact_identity("tr2_exact", "Integral of |Tr U^k|^2 = min(k, d) by Weingarten summation")
def check_tr2_exact(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep(range(1, 6), range(1, 6)):
        gamma = Partition((k,))
        expected = closed_moment_tr2(k, d)
        checker.check(weingarten_trace_moment(gamma, gamma, d) == expected, f"Weingarten, k = {k}, d = {d}")
        checker.check(character_trace_moment(gamma, gamma, d) == expected, f"characters, k = {k}, d = {d}")
        if k <= 4 and d <= 4:
            checker.check(monomial_trace_moment(k, d) == expected, f"monomials, k = {k}, d = {d}")


@exact_identity("tr2_quadrature", "Integral of |Tr U^k|^2 = min(k, d) by Weyl quadrature")
def check_tr2_quadrature(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep(range(1, 6), [2, 3]):
        checker.close(
            trace_power_quadrature(k, 1, d), closed_moment_tr2(k, d),
            QUADRATURE_TOLERANCE, f"k = {k}, d = {d}"
        )


@exact_identity("tr4_exact", "Integral of |Tr U^k|^4 against character and Weingarten sums")
def check_tr4_exact(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep(range(1, 7), range(2, 6)):
        expected = closed_moment_tr4(k, d)
        checker.check(trace_power_moment(k, 2, d) == expected, f"characters, k = {k}, d = {d}")
        if k <= 3:
            gamma = Partition((k, k))
            checker.check(
                weingarten_trace_moment(gamma, gamma, d) == expected,
                f"Weingarten, k = {k}, d = {d}"
            )


@exact_identity("tr4_quadrature", "Integral of |Tr U^k|^4 by Weyl quadrature")
def check_tr4_quadrature(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep(range(1, 7), range(2, 6)):
        checker.close(
            trace_power_quadrature(k, 2, d), closed_moment_tr4(k, d),
            LOOSE_QUADRATURE_TOLERANCE, f"k = {k}, d = {d}"
        )


@exact_identity("diaconis_quadrature", "Integral of |Tr U|^(2n) = n! for n <= d = 4")
def check_diaconis(params: VerifyParams, checker: Checker) -> None:
    for _, d in params.sweep([1], [4]):
        for n in range(1, d + 1):
            checker.close(
                trace_power_quadrature(1, n, d), math.factorial(n),
                LOOSE_QUADRATURE_TOLERANCE, f"n = {n}"
            )
            checker.check(trace_power_moment(1, n, d) == math.factorial(n), f"characters, n = {n}")


@exact_identity("weyl_normalization", "Torus integral of the Weyl Jacobian is n!")
def check_weyl_normalization(params: VerifyParams, checker: Checker) -> None:
    checker.check(vandermonde_jacobian(numpy.array([0.3])) == 1.0, "n = 1")
    checker.close(vandermonde_jacobian(numpy.array([0.0, numpy.pi])), 4.0, 1e-12, "angles (0, pi)")
    checker.check(vandermonde_jacobian(numpy.array([0.7, 0.7, 2.0])) == 0.0, "coincident angles")

    def constant(theta: numpy.ndarray) -> numpy.ndarray:
        return numpy.ones(theta.shape[0])

    for _, n in params.sweep([None], [2, 3, 4]):
        # weyl_quadrature divides by n!, so the constant integrates to 1
        value = weyl_quadrature(constant, n, exact_grid_size(0, n))
        checker.close(value, 1.0, LOOSE_QUADRATURE_TOLERANCE, f"n = {n}")

    integrand = trace_power_integrand(2, 1)
    coarse = weyl_quadrature(integrand, 3, exact_grid_size(2, 3))
    fine = weyl_quadrature(integrand, 3, exact_grid_size(2, 3) + 4)
    checker.close(coarse, fine, 1e-12, "grid refinement")


"""''''''''''''''
Projector algebra
''''''''''''''"""

# Coefficients of C_λ on each cycle type
PROJECTOR_TABLES: Dict[Partition, Dict[Partition, Fraction]] = {
    Partition((3,)): {
        Partition((1, 1, 1)): Fraction(1, 6), Partition((2, 1)): Fraction(1, 6),
        Partition((3,)): Fraction(1, 6),
    },
    Partition((2, 1)): {
        Partition((1, 1, 1)): Fraction(2, 3), Partition((2, 1)): Fraction(0),
        Partition((3,)): Fraction(-1, 3),
    },
    Partition((1, 1, 1)): {
        Partition((1, 1, 1)): Fraction(1, 6), Partition((2, 1)): Fraction(-1, 6),
        Partition((3,)): Fraction(1, 6),
    },
    Partition((4,)): {
        Partition((1, 1, 1, 1)): Fraction(1, 24), Partition((2, 1, 1)): Fraction(1, 24),
        Partition((2, 2)): Fraction(1, 24), Partition((3, 1)): Fraction(1, 24),
        Partition((4,)): Fraction(1, 24),
    },
    Partition((3, 1)): {
        Partition((1, 1, 1, 1)): Fraction(3, 8), Partition((2, 1, 1)): Fraction(1, 8),
        Partition((2, 2)): Fraction(-1, 8), Partition((3, 1)): Fraction(0),
        Partition((4,)): Fraction(-1, 8),
    },
    Partition((2, 2)): {
        Partition((1, 1, 1, 1)): Fraction(1, 6), Partition((2, 1, 1)): Fraction(0),
        Partition((2, 2)): Fraction(1, 6), Partition((3, 1)): Fraction(-1, 12),
        Partition((4,)): Fraction(0),
    },
    Partition((2, 1, 1)): {
        Partition((1, 1, 1, 1)): Fraction(3, 8), Partition((2, 1, 1)): Fraction(-1, 8),
        Partition((2, 2)): Fraction(-1, 8), Partition((3, 1)): Fraction(0),
        Partition((4,)): Fraction(1, 8),
    },
    Partition((1, 1, 1, 1)): {
        Partition((1, 1, 1, 1)): Fraction(1, 24), Partition((2, 1, 1)): Fraction(-1, 24),
        Partition((2, 2)): Fraction(1, 24), Partition((3, 1)): Fraction(1, 24),
        Partition((4,)): Fraction(-1, 24),
    },
}

# Tr C_λ for k = 3 as polynomials in d
PROJECTOR_TRACES_K3: Dict[Partition, Callable[[int], Fraction]] = {
    Partition((3,)): lambda d: Fraction(d * (d + 1) * (d + 2), 6),
    Partition((2, 1)): lambda d: Fraction(2 * (d - 1) * d * (d + 1), 3),
    Partition((1, 1, 1)): lambda d: Fraction((d - 2) * (d - 1) * d, 6),
}


@exact_identity("projector_algebra", "C_l C_m = delta C_l, sum C_l = 1, Tr C_l = f s_l(1^d)")
def check_projector_algebra(params: VerifyParams, checker: Checker) -> None:
    for k in range(1, 5):
        if not params.allows(k=k):
            continue
        labels = partitions_of(k)
        elements = {lam: central_projector_element(lam) for lam in labels}
        total = GroupAlgebraElement(k)
        for lam in labels:
            total = total + elements[lam]
            checker.check(elements[lam].is_central(), f"C_{lam.label()} central")
            for mu in labels:
                expected = elements[lam] if lam == mu else GroupAlgebraElement(k)
                checker.check(
                    elements[lam] * elements[mu] == expected,
                    f"C_{lam.label()} C_{mu.label()} in the group algebra"
                )
        checker.check(total == GroupAlgebraElement.identity(k), f"completeness, k = {k}")

    for k, d in params.sweep(range(1, 5), range(1, 4)):
        labels = partitions_of(k)
        projectors = {lam: central_projector(lam, d) for lam in labels}
        total = ExactOperator((d,) * k)
        for index, lam in enumerate(labels):
            projector = projectors[lam]
            total = total + projector
            checker.check(
                projector.trace() == gaussian(f_lambda(lam) * schur_dim(lam, d)),
                f"Tr C_{lam.label()}, d = {d}"
            )
            for mu in labels[index:]:
                expected = projector if lam == mu else ExactOperator((d,) * k)
                checker.check(
                    projector @ projectors[mu] == expected,
                    f"C_{lam.label()} C_{mu.label()}, d = {d}"
                )
            for position in range(k - 1):
                swap = permutation_operator(
                    Permutation.from_cycles(k, [(position + 1, position + 2)]), d
                )
                checker.check(
                    swap @ projector == projector @ swap,
                    f"C_{lam.label()} commutes with a transposition, d = {d}"
                )
        checker.check(total == ExactOperator.identity((d,) * k), f"completeness, k = {k}, d = {d}")


@exact_identity("projector_tables", "Explicit k = 3 and k = 4 coefficient tables of C_l")
def check_projector_tables(params: VerifyParams, checker: Checker) -> None:
    for lam, table in PROJECTOR_TABLES.items():
        if not params.allows(k=lam.weight):
            continue
        view = central_projector_element(lam).class_view()
        checker.check(
            view == {gamma: gaussian(value) for gamma, value in table.items()},
            f"coefficients of C_{lam.label()}"
        )
        for _, d in params.sweep([lam.weight], range(1, 4)):
            assembled = ExactOperator((d,) * lam.weight)
            for pi in all_permutations(lam.weight):
                coefficient = table[pi.cycle_type()]
                if coefficient:
                    assembled = assembled + permutation_operator(pi, d).scale(coefficient)
            checker.check(central_projector(lam, d) == assembled, f"C_{lam.label()}, d = {d}")
            if lam.weight == 3:
                checker.check(
                    assembled.trace() == gaussian(PROJECTOR_TRACES_K3[lam](d)),
                    f"Tr C_{lam.label()}, d = {d}"
                )


def _delta_formulas(t: Sequence[Fraction], d: int) -> Dict[Partition, Callable[[], Fraction]]:
    """Δ_λ of X^{⊗3} and X^{⊗4} in terms of t_r = Tr X^r."""
    t1, t2, t3 = t[0], t[1], t[2]
    formulas: Dict[Partition, Callable[[], Fraction]] = {
        Partition((3,)): lambda: (t1 ** 3 + 3 * t2 * t1 + 2 * t3) / (d * (d + 1) * (d + 2)),
        Partition((2, 1)): lambda: (t1 ** 3 - t3) / ((d - 1) * d * (d + 1)),
        Partition((1, 1, 1)): lambda: (t1 ** 3 - 3 * t2 * t1 + 2 * t3) / ((d - 2) * (d - 1) * d),
    }
    if len(t) > 3:
        t4 = t[3]
        formulas.update({
            Partition((4,)): lambda: (
                t1 ** 4 + 6 * t2 * t1 ** 2 + 3 * t2 ** 2 + 8 * t3 * t1 + 6 * t4
            ) / (d * (d + 1) * (d + 2) * (d + 3)),
            Partition((3, 1)): lambda: (
                t1 ** 4 + 2 * t2 * t1 ** 2 - t2 ** 2 - 2 * t4
            ) / ((d - 1) * d * (d + 1) * (d + 2)),
            Partition((2, 2)): lambda: (
                t1 ** 4 + 3 * t2 ** 2 - 4 * t3 * t1
            ) / ((d - 1) * d * d * (d + 1)),
            Partition((2, 1, 1)): lambda: (
                t1 ** 4 - 2 * t2 * t1 ** 2 - t2 ** 2 + 2 * t4
            ) / ((d - 2) * (d - 1) * d * (d + 1)),
            Partition((1, 1, 1, 1)): lambda: (
                t1 ** 4 - 6 * t2 * t1 ** 2 + 3 * t2 ** 2 + 8 * t3 * t1 - 6 * t4
            ) / ((d - 3) * (d - 2) * (d - 1) * d),
        })
    return formulas


@exact_identity("delta_formulas", "Twirl coefficients of X^(x3), X^(x4) against trace formulas")
def check_delta_formulas(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "delta_formulas")
    for k, d in params.sweep([3, 4], [3, 4]):
        for sample in range(10):
            spectrum = [random_rational(generator) for _ in range(d)]
            traces = [sum(x ** r for x in spectrum) for r in range(1, k + 1)]
            formulas = _delta_formulas(traces, d)
            coefficients = twirl_coefficients(ExactOperator.diagonal(spectrum), k)
            for lam, value in coefficients.items():
                checker.check(
                    value == gaussian(formulas[lam]()), f"Delta_{lam.label()}, k = {k}, d = {d}, sample {sample}"
                )


@exact_identity("twirl_power", "Twirl of X^(xk) equals E_k(X^(xk))")
def check_twirl_power(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "twirl_power")
    for k, d in params.sweep(range(1, 5), [2, 3]):
        operator = random_operator((d,), generator)
        checker.check(twirl_matches_tensor_power(operator, k), f"k = {k}, d = {d}")

        result = twirl_power(ExactOperator.identity((d,)), k)
        checker.check(all(value == ONE for value in result.coefficients.values()), f"X = 1 coefficients, k = {k}")
        checker.check(result.operator == ExactOperator.identity((d,) * k), f"X = 1 operator, k = {k}")


"""'''''''''''''''''''''''''''
Characters and symmetric functions
'''''''''''''''''''''''''''"""


@exact_identity("combinatorics", "Hook and difference product counts, class sizes, dimension sums")
def check_combinatorics(params: VerifyParams, checker: Checker) -> None:
    partition_counts = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11, 7: 15}
    for k in range(1, 8):
        if not params.allows(k=k):
            continue
        labels = partitions_of(k)
        checker.check(len(labels) == partition_counts[k], f"p({k})")
        checker.check(sum(f_lambda(lam) ** 2 for lam in labels) == math.factorial(k), f"sum f^2, k = {k}")
        checker.check(sum(class_size(gamma) for gamma in labels) == math.factorial(k), f"class sizes, k = {k}")
        for lam in labels:
            checker.check(f_lambda_hook(lam) == f_lambda_difference(lam), f"f_{lam.label()}")
            checker.check(lam.conjugate().conjugate() == lam, f"conjugate {lam.label()}")
            checker.check(
                math.factorial(k) % z_gamma(lam) == 0, f"z_{lam.label()} divides k!"
            )
            if k <= 5:
                checker.check(count_standard_tableaux(lam) == f_lambda(lam), f"tableaux of {lam.label()}")
        for d in range(1, 5):
            checker.check(
                sum(f_lambda(lam) * schur_dim(lam, d) for lam in labels) == d ** k,
                f"sum f s(1^d), k = {k}, d = {d}"
            )


@exact_identity("character_table", "Orthogonality, trivial row, hook column and degrees for k <= 7")
def check_character_table(params: VerifyParams, checker: Checker) -> None:
    for k in range(1, 8):
        if not params.allows(k=k):
            continue
        table = character_table(k)
        labels = table.partitions
        for lam in labels:
            for mu in labels:
                inner = sum(
                    (Fraction(table.value(lam, g) * table.value(mu, g), z_gamma(g)) for g in labels),
                    Fraction(0)
                )
                checker.check(inner == (1 if lam == mu else 0), f"rows {lam.label()}, {mu.label()}")
        for gamma in labels:
            for delta in labels:
                total = sum(table.value(lam, gamma) * table.value(lam, delta) for lam in labels)
                expected = z_gamma(gamma) if gamma == delta else 0
                checker.check(total == expected, f"columns {gamma.label()}, {delta.label()}")
            checker.check(table.value(Partition((k,)), gamma) == 1, f"trivial row at {gamma.label()}")

        identity_class = Partition((1,) * k)
        for lam in labels:
            checker.check(table.value(lam, identity_class) == f_lambda(lam), f"degree of {lam.label()}")

        hooks = dict(hook_column(k))
        for lam in labels:
            checker.check(
                table.value(lam, Partition((k,))) == hooks.get(lam, 0), f"hook column at {lam.label()}"
            )


@exact_identity("kronecker", "Kronecker coefficient identities and the s_l(xy) expansion")
def check_kronecker(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "kronecker")
    for k in range(1, 7):
        if not params.allows(k=k):
            continue
        labels = partitions_of(k)
        trivial = Partition((k,))
        for mu in labels:
            for nu in labels:
                checker.check(
                    kronecker(trivial, mu, nu) == (1 if mu == nu else 0),
                    f"g((k), {mu.label()}, {nu.label()})"
                )
                checker.check(
                    f_lambda(mu) * f_lambda(nu)
                    == sum(f_lambda(lam) * kronecker(lam, mu, nu) for lam in labels),
                    f"dimension sum for {mu.label()}, {nu.label()}"
                )
        if k <= 4:
            for lam in labels:
                x, y = random_point(generator, 2), random_point(generator, 2)
                try:
                    schur_tensor_expand(lam, x, y)
                    checker.check(True, "")
                except ConsistencyError as e:
                    checker.check(False, e.error_message)


@exact_identity("frobenius", "p_g = sum chi s_l and the bialternant form of s_l")
def check_frobenius(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "frobenius")
    for k in range(1, 5):
        if not params.allows(k=k):
            continue
        for gamma in partitions_of(k):
            try:
                inverse_frobenius(gamma, random_point(generator, 3))
                checker.check(True, "")
            except ConsistencyError as e:
                checker.check(False, e.error_message)
        for lam in partitions_of(k):
            x = random_point(generator, 3, distinct=True)
            checker.check(schur_poly(lam, x) == bialternant_schur(lam, x), f"bialternant s_{lam.label()}")
            checker.check(
                schur_poly(lam, RationalVector([1] * 3)) == schur_dim(lam, 3), f"s_{lam.label()}(1^3)"
            )


"""'''''''''''''''''''''''''
Averages with closed forms
'''''''''''''''''''''''''"""


@exact_identity("purity_exact", "Average reduced purity and its superoperator coefficients")
def check_purity(params: VerifyParams, checker: Checker) -> None:
    checker.check(average_purity(2, 2) == Fraction(4, 5), "dA = dB = 2")
    for d_a, d_b in product(range(1, 5), repeat=2):
        if not params.allows(d=d_a):
            continue
        checker.check(
            average_purity(d_a, d_b) == Fraction(d_a + d_b, d_a * d_b + 1), f"dA = {d_a}, dB = {d_b}"
        )
        d = d_a * d_b
        if d < 2 or d > 8:
            continue

        def reduce_and_pad(operator: ExactOperator, d_a=d_a, d_b=d_b) -> ExactOperator:
            reduced = operator.with_dims((d_a, d_b)).partial_trace([1])
            return reduced.kron(ExactOperator.identity((d_b,))).with_dims((d,))

        trace_phi = superop_trace(reduce_and_pad, d)
        trace_identity = superop_trace_of_identity(reduce_and_pad, d)
        checker.check(trace_phi == gaussian(d_a * d_a * d_b), f"Tr Phi, dA = {d_a}, dB = {d_b}")
        checker.check(trace_identity == gaussian(d_a * d_b * d_b), f"Tr Phi(1), dA = {d_a}, dB = {d_b}")
        checker.check(
            superop_twirl_coeffs(real_part(trace_phi), real_part(trace_identity), d)
            == (Fraction(d * d_b - d_a, d * d - 1), Fraction(d * d_a - d_b, d * d - 1)),
            f"coefficients, dA = {d_a}, dB = {d_b}"
        )


@exact_identity("sphere_average", "Average of |psi><psi|^(xk) is C_(k)/binomial(k+d-1, k)")
def check_sphere_average(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "sphere_average")
    for k, d in params.sweep(range(1, 4), range(1, 4)):
        average = sphere_projector_average(k, d)
        checker.check(average.trace() == ONE, f"trace, k = {k}, d = {d}")
        for basis in {0, d - 1}:
            state = ExactOperator.basis_projector((basis,) * k, (d,) * k)
            checker.check(
                conditional_expectation(state) == average, f"k = {k}, d = {d}, basis {basis}"
            )
        if k == 1:
            checker.check(average == ExactOperator.identity((d,)).scale(Fraction(1, d)), f"k = 1, d = {d}")
        if k == 2:
            first, second = random_operator((d,), generator), random_operator((d,), generator)
            checker.check(
                sphere_moment2(first, second) == first.kron(second).trace_product(average),
                f"second moment, d = {d}"
            )
            projector = ExactOperator.basis_projector((0,), (d,))
            checker.check(
                sphere_moment2(projector, projector) == gaussian(Fraction(2, d * (d + 1))), f"<psi|0>^4, d = {d}"
            )


@exact_identity("partial_trace", "Partial trace of C_l (C_m x C_n), exact at k = 2")
def check_partial_trace(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep([2], [2]):
        labels = partitions_of(k)
        for lam, mu, nu in product(labels, repeat=3):
            try:
                check_partial_trace_projector(lam, mu, nu, d, d)
                checker.check(True, "")
            except ConsistencyError as e:
                checker.check(False, e.error_message)
            dense = partial_trace_projector_dense(lam, mu, nu, d, d)
            checker.check(
                dense.trace() == gaussian(full_trace_projector_product(lam, mu, nu, d, d)),
                f"full trace for {lam.label()}, {mu.label()}, {nu.label()}"
            )
        symmetric = Partition((k,))
        checker.check(partial_trace_projector(symmetric, symmetric, symmetric, d, d) == 3, "(2), (2), (2)")

        joint = central_projector(symmetric, d * d).with_dims((d, d) * k)
        reduced = joint.partial_trace(range(1, 2 * k, 2))
        companion = ExactOperator((d,) * k)
        for mu, coefficient in partial_trace_symmetric_companion(k, d).items():
            companion = companion + central_projector(mu, d).scale(coefficient)
        checker.check(reduced == companion, "Tr_B C_(k)")


@exact_identity("partial_trace_float", "Partial trace of C_l (C_m x C_n) in floating point at k = 3")
def check_partial_trace_float(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep([3], [2]):
        dims = (d, d) * k
        traced = range(1, 2 * k, 2)
        for lam, mu, nu in product(partitions_of(k), repeat=3):
            joint = central_projector_matrix(lam, d * d)
            local = numpy.kron(central_projector_matrix(mu, d), central_projector_matrix(nu, d))
            local = permute_factors_matrix(local, (d,) * (2 * k), _interleave_order(k))
            reduced = partial_trace_matrix(joint @ local, dims, traced)
            expected = float(partial_trace_projector(lam, mu, nu, d, d)) * central_projector_matrix(mu, d)
            checker.close(reduced, expected, FLOAT_TOLERANCE, f"{lam.label()}, {mu.label()}, {nu.label()}")


@exact_identity("vec_moment", "Closed form vec moment against Weingarten summation and the twirl")
def check_vec_moment(params: VerifyParams, checker: Checker) -> None:
    for k, d in params.sweep([1, 2], range(1, 4)):
        closed = vec_moment(k, d)
        checker.check(closed == vec_moment_by_summation(k, d), f"summation, k = {k}, d = {d}")
        checker.check(closed.trace() == gaussian(d ** k), f"trace, k = {k}, d = {d}")
        checker.check(
            closed == choi_operator(conditional_expectation, (d,) * k), f"twirl, k = {k}, d = {d}"
        )
        if k == 1:
            checker.check(
                closed == ExactOperator.identity((d, d)).scale(Fraction(1, d)), f"k = 1, d = {d}"
            )


@exact_identity("audenaert", "Compact twirl form against the Weingarten twirl")
def check_audenaert(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "audenaert")
    for k, d in params.sweep(range(1, 4), [2, 3]):
        operator = random_operator((d,) * k, generator)
        checker.check(audenaert_twirl(operator) == conditional_expectation(operator), f"k = {k}, d = {d}")


@exact_identity("uk_twirl_exact", "Twirl by U^k: reductions, saturation and trace")
def check_uk_twirl(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "uk_twirl_exact")
    for k, d in params.sweep(range(1, 6), range(2, 5)):
        operator = random_operator((d,), generator)
        twirled = uk_twirl(operator, k)
        checker.check(twirled.trace() == operator.trace(), f"trace, k = {k}, d = {d}")
        checker.check(uk_twirl(operator, -k) == twirled, f"sign of k, k = {k}, d = {d}")
        if k == 1:
            checker.check(twirled == conditional_expectation(operator), f"k = 1, d = {d}")
        if k >= d:
            checker.check(twirled == uk_twirl(operator, d), f"saturation, k = {k}, d = {d}")
        identity = ExactOperator.identity((d,))
        checker.check(uk_twirl(identity, k) == identity, f"A = 1, k = {k}, d = {d}")
    if params.allows(3, 2):
        checker.check(
            uk_twirl(ExactOperator.diagonal([1, 0]), 3)
            == ExactOperator.diagonal([Fraction(2, 3), Fraction(1, 3)]),
            "diag(1, 0), k = 3, d = 2"
        )


@exact_identity("fourier_pair", "Integrals of f(U) x g(U) from Fourier coefficients")
def check_fourier_pair(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "fourier_pair")
    for _, d in params.sweep([None], range(2, 5)):
        identity = ExactOperator.identity((d, d))
        checker.check(fourier_pair_integral({0: 1}, {0: 1}, d) == identity, f"constants, d = {d}")
        checker.check(power_pair_average(1, d) == swap_average(d), f"M_1 = F/d, d = {d}")
        checker.check(fourier_pair_integral({1: 1}, {1: 1}, d).is_zero(), f"no matching frequency, d = {d}")
        for k in range(1, 5):
            checker.check(
                fourier_pair_integral({k: 1}, {-k: 1}, d).trace() == gaussian(min(k, d)), f"Tr M_{k}, d = {d}"
            )

        fhat = {k: random_rational(generator) for k in range(-2, 3)}
        ghat = {k: random_rational(generator) for k in range(-2, 3)}
        expected = sum(
            (fhat[k] * ghat[-k] * (d * d if k == 0 else min(abs(k), d)) for k in fhat),
            Fraction(0)
        )
        checker.check(fourier_pair_integral(fhat, ghat, d).trace() == gaussian(expected), f"mixed support, d = {d}")




def _visibility_sum(operator: ExactOperator, d: int, half: int) -> Fraction:
    """
    ∫ |Tr(AU)|^{2·half} dU summed over monomial integrals.

    Tr(AU) = Σ_{i,j} A_{ji} U_{ij}.
    """
    pairs = list(product(range(d), repeat=2))
    total = ZERO
    for left in product(pairs, repeat=half):
        left_weight = math.prod((operator[j, i] for i, j in left), start=ONE)
        if not left_weight:
            continue
        rows = tuple(i + 1 for i, _ in left)
        cols = tuple(j + 1 for _, j in left)
        for right in product(pairs, repeat=half):
            rows2 = tuple(i + 1 for i, _ in right)
            if sorted(rows2) != sorted(rows):
                continue
            cols2 = tuple(j + 1 for _, j in right)
            right_weight = math.prod((operator[j, i] for i, j in right), start=ONE)
            if right_weight:
                total = total + left_weight * conjugate(right_weight) * gaussian(
                    monomial_integral(rows, cols, rows2, cols2, d)
                )
    return real_value(total, "visibility moment")


@exact_identity("visibility", "Second and fourth moments of |Tr(AU)| against monomial sums")
def check_visibility(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "visibility")
    for _, d in params.sweep([None], range(2, 5)):
        identity = ExactOperator.identity((d,))
        checker.check(visibility_moments(identity, 2) == 1, f"A = 1, order 2, d = {d}")
        checker.check(visibility_moments(identity, 4) == closed_moment_tr4(1, d), f"A = 1, order 4, d = {d}")
        try:
            visibility_moments(identity, 3)
            checker.check(False, "order 3 was accepted")
        except ArgumentError:
            checker.check(True, "")

        if d <= 3:
            operator = random_operator((d,), generator)
            checker.check(
                visibility_moments(operator, 2) == _visibility_sum(operator, d, 1), f"order 2, d = {d}"
            )
            if d == 2:
                checker.check(
                    visibility_moments(operator, 4) == _visibility_sum(operator, d, 2), "order 4, d = 2"
                )

    for dims in ((2, 2), (2, 3)):
        size = math.prod(dims)
        checker.check(
            visibility_moment_multipartite(ExactOperator.identity((size,)), dims) == 1,
            f"multipartite identity, dims {dims}"
        )


@exact_identity("superop", "Twirled superoperators keep Tr Phi and Tr Phi(1)")
def check_superop(params: VerifyParams, checker: Checker) -> None:
    generator = identity_generator(params, "superop")
    for _, d in params.sweep([None], range(2, 5)):
        def identity_map(operator: ExactOperator) -> ExactOperator:
            return operator

        checker.check(superop_trace(identity_map, d) == gaussian(d * d), f"Tr id, d = {d}")
        checker.check(superop_trace_of_identity(identity_map, d) == gaussian(d), f"Tr id(1), d = {d}")
        checker.check(superop_twirl_coeffs(d * d, d, d) == (0, 1), f"identity coefficients, d = {d}")
        checker.check(depolarizing_parameter(d * d, d) == 1, f"identity channel, d = {d}")
        checker.check(depolarizing_parameter(1, d) == 0, f"depolarizing channel, d = {d}")
        checker.check(sphere_moment2_superop(d, d * d, d) == 1, f"<psi|psi>^2, d = {d}")

        kraus = random_operator((d,), generator)

        def conjugation(operator: ExactOperator, kraus=kraus) -> ExactOperator:
            return kraus @ operator @ kraus.adjoint()

        twirled = twirl_superoperator(conjugation, d)
        checker.check(
            superop_trace(twirled, d) == superop_trace(conjugation, d), f"Tr Phi preserved, d = {d}"
        )
        checker.check(
            superop_trace_of_identity(twirled, d) == superop_trace_of_identity(conjugation, d),
            f"Tr Phi(1) preserved, d = {d}"
        )
        sample = random_operator((d,), generator)
        checker.check(
            twirl_superoperator(twirled, d)(sample) == twirled(sample), f"twirl idempotent, d = {d}"
        )


"""'''''''''''''''''''''''''''
Floating point cross-checks
'''''''''''''''''''''''''''"""


@exact_identity("projector_commutation", "C_l commutes with V^(xk) for sampled unitaries V")
def check_projector_commutation(params: VerifyParams, checker: Checker) -> None:
    rng = RngStream(params.seed_or_default(), zlib.crc32(b"projector_commutation"))
    for k, d in params.sweep(range(1, 5), [2, 3]):
        perms = list(all_permutations(k))
        for pi in perms:
            checker.check(
                numpy.array_equal(permutation_matrix(pi, d), permutation_operator(pi, d).to_numpy()),
                f"P{pi.to_cycle_text()}, d = {d}"
            )
        sigma, tau = perms[-1], perms[len(perms) // 2]
        checker.check(
            numpy.array_equal(
                permutation_matrix(sigma, d) @ permutation_matrix(tau, d),
                permutation_matrix(sigma * tau, d)
            ),
            f"P(s)P(t) = P(st), k = {k}, d = {d}"
        )

        unitaries = haar_batch(d, 20, rng.child(k * 16 + d).generator())
        projectors = [central_projector_matrix(lam, d) for lam in partitions_of(k, d)]
        for unitary in unitaries:
            power = kron_power(unitary, k)
            error = max(max_abs(projector @ power - power @ projector) for projector in projectors)
            checker.check(error < FLOAT_TOLERANCE, f"k = {k}, d = {d} (error {error:.3g})")


@exact_identity("haar_unitarity", "Sampled unitaries satisfy U^dagger U = 1")
def check_haar_unitarity(params: VerifyParams, checker: Checker) -> None:
    rng = RngStream(params.seed_or_default(), zlib.crc32(b"haar_unitarity"))
    for _, d in params.sweep([None], [1, 2, 4, 8, 16, 32]):
        residual = unitarity_residual(haar_batch(d, 10, rng.child(d).generator()))
        checker.check(residual < 1e-12, f"d = {d} (residual {residual:.3g})")


@exact_identity("sampling_determinism", "Equal seeds give bitwise equal estimates")
def check_sampling_determinism(params: VerifyParams, checker: Checker) -> None:
    seed = params.seed_or_default()
    for _, d in params.sweep([None], [2, 3]):
        def observable(unitary: numpy.ndarray) -> float:
            return abs(numpy.trace(unitary)) ** 2

        first = mc_moment(observable, d, 200, RngStream(seed, 7))
        second = mc_moment(observable, d, 200, RngStream(seed, 7))
        checker.check(
            first.estimate == second.estimate and first.stderr == second.stderr, f"d = {d}"
        )
        other = mc_moment(observable, d, 200, RngStream(seed, 8))
        checker.check(other.estimate != first.estimate, f"distinct streams, d = {d}")
