"""
Oracles module.

Character-free reference computations with sympy: the Gram system of
the permutation operators, solved exactly, gives both the twirl and
the Weingarten function without any representation theory.
"""

from fractions import Fraction
from typing import Dict, List, Tuple

import sympy

from haarmoments.combinatorics.permutations import Permutation, all_permutations
from haarmoments.output.error_handler import ArgumentError
from haarmoments.weingarten.exact_operator import ExactOperator
from haarmoments.weingarten.group_algebra import GroupAlgebraElement
from haarmoments.weingarten.scalars import gaussian, imag_part, real_part


def _to_fraction(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def gram_matrix(k: int, d: int) -> Tuple[List[Permutation], sympy.Matrix]:
    """
    G_{στ} = Tr(P(σ)†P(τ)) = d^{#cycles(σ⁻¹τ)}.

    :param k: Degree
    :param d: Dimension
    :return: Permutations in row order and the Gram matrix
    """
    perms = list(all_permutations(k))
    matrix = sympy.Matrix(
        len(perms),
        len(perms),
        lambda i, j: sympy.Integer(d) ** (perms[i].inverse() * perms[j]).num_cycles()
    )
    return perms, matrix


def _solve(matrix: sympy.Matrix, rhs: List[Fraction]) -> List[Fraction]:
    """One solution of a consistent system, free parameters set to 0."""
    vector = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in rhs])
    solution, params = matrix.gauss_jordan_solve(vector)
    if params.shape[0]:
        solution = solution.subs({param: 0 for param in params})
    return [_to_fraction(entry) for entry in solution]


def gram_projection(operator: ExactOperator) -> ExactOperator:
    """
    Hilbert–Schmidt projection of A onto span{P(π)}, from the Gram
    system G c = t with t_σ = Tr(P(σ)†A).

    When d < k the Gram matrix is singular; every solution gives the
    same operator.

    :param operator: Operator A on (C^d)^{⊗k}
    :return: Projection of A, equal to the twirl E_k(A)
    """
    d, k = operator.d, operator.k
    perms, matrix = gram_matrix(k, d)
    targets = [operator.permutation_trace(pi.inverse()) for pi in perms]

    real = _solve(matrix, [real_part(t) for t in targets])
    imaginary = _solve(matrix, [imag_part(t) for t in targets])
    return GroupAlgebraElement(
        k,
        {pi: gaussian(re, im) for pi, re, im in zip(perms, real, imaginary)}
    ).operator(d)


def weingarten_from_gram(k: int, d: int) -> Dict[Permutation, Fraction]:
    """
    Wg(σ) as the (e, σ) entry of G⁻¹.

    :param k: Degree
    :param d: Dimension, d ≥ k so that G is invertible
    :return: Permutations mapped to Wg values
    :raises ArgumentError: If d < k
    """
    if d < k:
        raise ArgumentError("bad_dimension", "d", k, d)
    perms, matrix = gram_matrix(k, d)
    inverse = matrix.inv()
    identity_row = perms.index(Permutation.identity(k))
    return {
        pi: _to_fraction(inverse[identity_row, column])
        for column, pi in enumerate(perms)
    }
