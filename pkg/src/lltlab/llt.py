"""LLT polynomials in three normalizations, plus the Macdonald sum.

The raw normalization follows the inversion generating series over
semistandard fillings.  The cospin normalization shifts q down by the
minimal inversion number; it is computed twice, once through the
per-filling cospin statistic and once through the shift, and the two
routes must agree.  The mac normalization shifts by the arm statistic
of a ribbon tuple and feeds the Macdonald polynomial sum.
"""

from __future__ import annotations

from .errors import LLTLabError
from .ring import QTPoly, shift_q
from .shapes import ColoredTuple, a_stat, maj_stat, ribbon_tuples_for
from .symfunc import (
    FUNDAMENTAL,
    MONOMIAL_Q,
    QSymExpansion,
    SymExpansion,
    monomialq_to_schur,
)
from .tableaux import des_set, enumerate_ssyt, enumerate_syt, inv, inv_cospin


class CospinMismatch(LLTLabError):
    pass


class NotRibbon(LLTLabError):
    pass


def _collect(tup: ColoredTuple, statistic) -> QSymExpansion:
    """Sum q^statistic(T) x^T over semistandard fillings, collected in
    the monomial quasisymmetric basis.

    Only packed fillings (entries using an initial segment 1..k with no
    gaps) contribute monomial coefficients; max_entry = |nu| suffices
    for a homogeneous function of that degree.
    """
    n = tup.size()
    coeffs = {}
    for T in enumerate_ssyt(tup, n):
        alpha = T.packed_weight()
        if alpha is None:
            continue
        prior = coeffs.get(alpha, QTPoly.zero())
        coeffs[alpha] = prior + QTPoly.monomial(1, statistic(T), 0)
    return QSymExpansion(MONOMIAL_Q, coeffs, n)


def llt(tup: ColoredTuple) -> QSymExpansion:
    """Inversion generating series of a colored tuple, mqsym basis."""
    return _collect(tup, inv)


def min_inv(tup: ColoredTuple) -> int:
    """Minimal inversion number over all semistandard fillings."""
    n = tup.size()
    best = None
    for T in enumerate_ssyt(tup, n):
        value = inv(T)
        if best is None or value < best:
            best = value
            if best == 0:
                break
    if best is None:
        raise ValueError("tuple has no fillings")
    return best


def llt_cospin(tup: ColoredTuple) -> QSymExpansion:
    """LLT in the cospin normalization, computed through two routes.

    Route one sums q^{inv_cospin(T)}, route two shifts the raw series
    down by the minimal inversion number.  Disagreement means the
    cospin statistic lost its defining property and is reported, never
    papered over.
    """
    direct = _collect(tup, inv_cospin)
    shifted = llt(tup).map_coefficients(
        lambda p, d=min_inv(tup): shift_q(p, -d)
    )
    if direct != shifted:
        raise CospinMismatch(
            "cospin statistic disagrees with the min-inversion shift on %r" % (tup,)
        )
    return direct


def llt_mac(tup: ColoredTuple) -> QSymExpansion:
    """LLT shifted by the arm statistic; defined on ribbon tuples."""
    for shape in tup.shapes:
        if not shape.is_ribbon():
            raise NotRibbon("component %r is not a ribbon" % (shape,))
    shift = a_stat(tup)
    return llt(tup).map_coefficients(lambda p: shift_q(p, -shift))


def llt_fundamental(tup: ColoredTuple) -> QSymExpansion:
    """LLT expanded over standard fillings in the fundamental basis."""
    n = tup.size()
    coeffs = {}
    for T in enumerate_syt(tup):
        alpha = _descent_composition(des_set(T), n)
        prior = coeffs.get(alpha, QTPoly.zero())
        coeffs[alpha] = prior + QTPoly.monomial(1, inv(T), 0)
    return QSymExpansion(FUNDAMENTAL, coeffs, n)


def _descent_composition(descents, n):
    parts = []
    prev = 0
    for d in sorted(descents):
        parts.append(d - prev)
        prev = d
    parts.append(n - prev)
    return tuple(parts)


def macdonald_monomialq(lam) -> QSymExpansion:
    """Modified Macdonald polynomial, kept in the monomial
    quasisymmetric basis.

    Sums t^{maj} llt_mac over all ribbon tuples attached to the
    partition (one ribbon per column, anchored at content zero).
    """
    total = None
    for tup in ribbon_tuples_for(lam):
        piece = llt_mac(tup).scaled(QTPoly.monomial(1, 0, maj_stat(tup)))
        total = piece if total is None else total + piece
    if total is None:
        raise ValueError("macdonald needs a nonempty partition")
    return total


def macdonald(lam) -> SymExpansion:
    """Modified Macdonald polynomial as a Schur expansion."""
    return monomialq_to_schur(macdonald_monomialq(lam))
