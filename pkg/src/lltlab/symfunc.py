"""Quasisymmetric and symmetric functions of one fixed degree.

Everything is stored basis-theoretically: an expansion is a map from
compositions (or partitions) to coefficients in Z[q^{+-1}, t].  Nothing
is ever expanded into explicit variables.

Bases:
  * ``mqsym`` - monomial quasisymmetric, indexed by compositions
  * ``fund``  - fundamental quasisymmetric, indexed by compositions
  * ``msym``  - monomial symmetric, indexed by partitions
  * ``schur`` - Schur, indexed by partitions
  * ``elem``  - elementary, indexed by partitions
"""

from __future__ import annotations

import functools
import itertools

from .errors import LLTLabError
from .ring import QTPoly
from .shapes import check_partition, dominates, partitions_of, transpose

MONOMIAL_Q = "mqsym"
FUNDAMENTAL = "fund"
MONOMIAL_S = "msym"
SCHUR = "schur"
ELEMENTARY = "elem"

_QSYM_BASES = (MONOMIAL_Q, FUNDAMENTAL)
_SYM_BASES = (MONOMIAL_S, SCHUR, ELEMENTARY)


class NotSymmetric(LLTLabError):
    """Raised when a quasisymmetric function fails the symmetry test.

    Carries a witness: two compositions that sort to the same partition
    but have different coefficients.
    """

    def __init__(self, first, second, first_coeff, second_coeff):
        self.witness = (first, second)
        super().__init__(
            "coefficient of %s is %s but coefficient of %s is %s"
            % (first, first_coeff, second, second_coeff)
        )


def compositions_of(n: int):
    """All compositions of n, one per subset of {1, .., n-1}."""
    if n == 0:
        yield ()
        return
    for bits in itertools.product((0, 1), repeat=n - 1):
        parts = []
        run = 1
        for cut in bits:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def subset_of_composition(alpha) -> frozenset:
    """Partial sums of a composition, without the total."""
    total = 0
    out = []
    for part in alpha[:-1]:
        total += part
        out.append(total)
    return frozenset(out)


def composition_of_subset(subset, n: int) -> tuple:
    """Composition of n whose partial sums are the given subset."""
    cuts = sorted(subset)
    if n == 0:
        if cuts:
            raise ValueError("subset must be empty for n = 0")
        return ()
    if cuts and (cuts[0] < 1 or cuts[-1] > n - 1):
        raise ValueError("subset must lie inside [1..n-1]")
    prev = 0
    parts = []
    for cut in cuts:
        if cut == prev:
            raise ValueError("subset has a repeated cut")
        parts.append(cut - prev)
        prev = cut
    parts.append(n - prev)
    return tuple(parts)


def _coerce_coeff(value) -> QTPoly:
    if isinstance(value, QTPoly):
        return value
    return QTPoly.integer(value)


def _check_composition(alpha) -> tuple:
    alpha = tuple(int(a) for a in alpha)
    if any(a <= 0 for a in alpha):
        raise ValueError("composition parts must be positive: %r" % (alpha,))
    return alpha


class _Expansion:
    """Shared plumbing for the two expansion classes."""

    __slots__ = ("basis", "degree", "_coeffs")

    _bases = ()

    def __init__(self, basis, coeffs, degree):
        if basis not in self._bases:
            raise ValueError("unknown basis %r" % (basis,))
        cleaned = {}
        for key, value in dict(coeffs).items():
            key = self._check_key(key)
            if sum(key) != degree:
                raise ValueError(
                    "index %s does not have degree %d" % (key, degree)
                )
            value = _coerce_coeff(value)
            if not value.is_zero():
                cleaned[key] = value
        self.basis = basis
        self.degree = degree
        self._coeffs = cleaned

    def items(self):
        """Pairs (index, coefficient) in reverse-lexicographic index order."""
        return [(key, self._coeffs[key]) for key in sorted(self._coeffs, reverse=True)]

    def support(self):
        return sorted(self._coeffs, reverse=True)

    def coefficient(self, key) -> QTPoly:
        return self._coeffs.get(self._check_key(key), QTPoly.zero())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.basis == other.basis
            and self.degree == other.degree
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self.basis, self.degree, frozenset(self._coeffs.items())))

    def _require_same_frame(self, other):
        if type(other) is not type(self) or other.basis != self.basis:
            raise ValueError("mixed bases: %r and %r" % (self.basis, getattr(other, "basis", None)))
        if other.degree != self.degree:
            raise ValueError("mixed degrees: %d and %d" % (self.degree, other.degree))

    def __add__(self, other):
        self._require_same_frame(other)
        out = dict(self._coeffs)
        for key, value in other._coeffs.items():
            out[key] = out.get(key, QTPoly.zero()) + value
        return type(self)(self.basis, out, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor):
        factor = _coerce_coeff(factor)
        return type(self)(
            self.basis,
            {key: value * factor for key, value in self._coeffs.items()},
            self.degree,
        )

    def map_coefficients(self, fn):
        """Apply fn to every coefficient, dropping resulting zeros."""
        return type(self)(
            self.basis,
            {key: fn(value) for key, value in self._coeffs.items()},
            self.degree,
        )

    def __repr__(self):
        return "%s(%r, %d terms, degree %d)" % (
            type(self).__name__,
            self.basis,
            len(self._coeffs),
            self.degree,
        )


class QSymExpansion(_Expansion):
    """Quasisymmetric function indexed by compositions."""

    _bases = _QSYM_BASES

    @staticmethod
    def _check_key(key):
        return _check_composition(key)

    @classmethod
    def zero(cls, basis, degree):
        return cls(basis, {}, degree)

    @classmethod
    def monomial(cls, alpha):
        alpha = _check_composition(alpha)
        return cls(MONOMIAL_Q, {alpha: 1}, sum(alpha))

    @classmethod
    def fundamental(cls, n, subset):
        return cls(FUNDAMENTAL, {composition_of_subset(subset, n): 1}, n)

    def __mul__(self, other):
        if self.basis != MONOMIAL_Q:
            raise ValueError("products are only implemented in the mqsym basis")
        self._require_same_frame_basis(other)
        out = {}
        for alpha, left in self._coeffs.items():
            for beta, right in other._coeffs.items():
                coeff = left * right
                for gamma, mult in _quasi_shuffle(alpha, beta):
                    prior = out.get(gamma, QTPoly.zero())
                    out[gamma] = prior + coeff * mult
        return QSymExpansion(MONOMIAL_Q, out, self.degree + other.degree)

    def _require_same_frame_basis(self, other):
        if not isinstance(other, QSymExpansion) or other.basis != self.basis:
            raise ValueError("mixed bases in product")


class SymExpansion(_Expansion):
    """Symmetric function indexed by partitions."""

    _bases = _SYM_BASES

    @staticmethod
    def _check_key(key):
        return check_partition(key)

    @classmethod
    def zero(cls, basis, degree):
        return cls(basis, {}, degree)

    @classmethod
    def schur(cls, lam):
        lam = check_partition(lam)
        return cls(SCHUR, {lam: 1}, sum(lam))

    @classmethod
    def elementary(cls, lam):
        lam = check_partition(lam)
        return cls(ELEMENTARY, {lam: 1}, sum(lam))

    def __mul__(self, other):
        if self.basis != ELEMENTARY:
            raise ValueError("products are only implemented in the elem basis")
        if not isinstance(other, SymExpansion) or other.basis != ELEMENTARY:
            raise ValueError("mixed bases in product")
        out = {}
        for lam, left in self._coeffs.items():
            for mu, right in other._coeffs.items():
                key = tuple(sorted(lam + mu, reverse=True))
                prior = out.get(key, QTPoly.zero())
                out[key] = prior + left * right
        return SymExpansion(ELEMENTARY, out, self.degree + other.degree)


@functools.lru_cache(maxsize=None)
def _quasi_shuffle(alpha, beta):
    """Overlapping shuffles of two compositions with multiplicities."""
    if not alpha:
        return ((beta, 1),)
    if not beta:
        return ((alpha, 1),)
    counts = {}
    for head, tail_pairs in (
        ((alpha[0],), _quasi_shuffle(alpha[1:], beta)),
        ((beta[0],), _quasi_shuffle(alpha, beta[1:])),
        ((alpha[0] + beta[0],), _quasi_shuffle(alpha[1:], beta[1:])),
    ):
        for gamma, mult in tail_pairs:
            key = head + gamma
            counts[key] = counts.get(key, 0) + mult
    return tuple(sorted(counts.items()))


@functools.lru_cache(maxsize=None)
def kostka(lam, mu) -> int:
    """Number of semistandard fillings of shape lam with content mu."""
    lam = check_partition(lam)
    mu = check_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("kostka needs |lam| = |mu|")
    if not lam:
        return 1
    if not dominates(lam, mu):
        return 0
    # Peel the entries equal to len(mu): they occupy a horizontal strip.
    last = mu[-1]
    rest = mu[:-1]
    total = 0
    for inner in _horizontal_strip_removals(lam, last):
        total += kostka(inner, rest)
    return total


def _horizontal_strip_removals(lam, size):
    """Partitions inner <= lam with lam/inner a horizontal strip of the
    given size (no two removed cells in the same column)."""
    rows = len(lam)
    results = []

    def walk(row, remaining, prefix):
        if row == rows:
            if remaining == 0:
                results.append(tuple(p for p in prefix if p > 0))
            return
        lower_bound = lam[row + 1] if row + 1 < rows else 0
        upper = lam[row]
        # prefix constraint: the strip condition needs inner[row] >= lam[row+1]
        # (that is the no-two-in-a-column condition) and inner must stay a
        # partition: inner[row] <= inner[row-1] handled by construction since
        # inner[row] <= lam[row] <= inner[row-1] is not automatic; check it.
        for keep in range(upper, lower_bound - 1, -1):
            removed = upper - keep
            if removed > remaining:
                continue
            if prefix and keep > prefix[-1]:
                continue
            walk(row + 1, remaining - removed, prefix + [keep])

    walk(0, size, [])
    return results


def fundamental_to_monomialq(f: QSymExpansion) -> QSymExpansion:
    """Expand fundamentals into monomials: F_{n,A} = sum of M over all
    compositions refining the composition of A."""
    if f.basis != FUNDAMENTAL:
        raise ValueError("expected a fund expansion")
    n = f.degree
    out = {}
    for alpha, coeff in f.items():
        base = subset_of_composition(alpha)
        others = [i for i in range(1, n) if i not in base]
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                gamma = composition_of_subset(base | set(extra), n)
                prior = out.get(gamma, QTPoly.zero())
                out[gamma] = prior + coeff
    return QSymExpansion(MONOMIAL_Q, out, n)


def monomialq_to_fundamental(f: QSymExpansion) -> QSymExpansion:
    """Inverse of fundamental_to_monomialq, by subset inclusion-exclusion."""
    if f.basis != MONOMIAL_Q:
        raise ValueError("expected an mqsym expansion")
    n = f.degree
    out = {}
    for alpha, coeff in f.items():
        base = subset_of_composition(alpha)
        others = [i for i in range(1, n) if i not in base]
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                gamma = composition_of_subset(base | set(extra), n)
                prior = out.get(gamma, QTPoly.zero())
                term = coeff if r % 2 == 0 else -coeff
                out[gamma] = prior + term
    return QSymExpansion(FUNDAMENTAL, out, n)


def _distinct_rearrangements(lam):
    return sorted(set(itertools.permutations(lam)), reverse=True)


def monomialq_to_msym(f: QSymExpansion) -> SymExpansion:
    """Collect a symmetric mqsym expansion into monomial symmetric terms.

    Raises NotSymmetric with a witness pair when two rearrangements of
    the same partition carry different coefficients.
    """
    if f.basis != MONOMIAL_Q:
        raise ValueError("expected an mqsym expansion")
    seen = {}
    for alpha, _ in f.items():
        lam = tuple(sorted(alpha, reverse=True))
        seen.setdefault(lam, alpha)
    out = {}
    for lam in seen:
        reference = f.coefficient(lam)
        for alpha in _distinct_rearrangements(lam):
            coeff = f.coefficient(alpha)
            if coeff != reference:
                raise NotSymmetric(lam, alpha, reference, coeff)
        out[lam] = reference
    return SymExpansion(MONOMIAL_S, out, f.degree)


def msym_to_schur(f: SymExpansion) -> SymExpansion:
    """Solve the unitriangular Kostka system m-coefficients ->
    Schur coefficients, walking partitions in lex-descending order."""
    if f.basis != MONOMIAL_S:
        raise ValueError("expected an msym expansion")
    n = f.degree
    schur_coeffs = {}
    for lam in sorted(partitions_of(n), reverse=True):
        value = f.coefficient(lam)
        for mu, d in schur_coeffs.items():
            k = kostka(mu, lam)
            if k:
                value = value - d * k
        if not value.is_zero():
            schur_coeffs[lam] = value
    return SymExpansion(SCHUR, schur_coeffs, n)


def monomialq_to_schur(f: QSymExpansion) -> SymExpansion:
    return msym_to_schur(monomialq_to_msym(f))


def schur_to_monomialq(f: SymExpansion) -> QSymExpansion:
    """Expand Schur terms into mqsym via Kostka numbers."""
    if f.basis != SCHUR:
        raise ValueError("expected a schur expansion")
    n = f.degree
    out = {}
    for lam, coeff in f.items():
        for mu in partitions_of(n):
            k = kostka(lam, mu)
            if not k:
                continue
            for alpha in _distinct_rearrangements(mu):
                prior = out.get(alpha, QTPoly.zero())
                out[alpha] = prior + coeff * k
    return QSymExpansion(MONOMIAL_Q, out, n)


def schur_to_elementary(f: SymExpansion) -> SymExpansion:
    """Invert e_mu = sum_lam K_{lam' mu} s_lam, walking the e-indices in
    lex-ascending order so dominated indices are already known."""
    if f.basis != SCHUR:
        raise ValueError("expected a schur expansion")
    n = f.degree
    elem_coeffs = {}
    for mu in sorted(partitions_of(n)):
        value = f.coefficient(transpose(mu))
        for nu, g in elem_coeffs.items():
            k = kostka(mu, nu)
            if k:
                value = value - g * k
        if not value.is_zero():
            elem_coeffs[mu] = value
    return SymExpansion(ELEMENTARY, elem_coeffs, n)


def elementary_to_schur(f: SymExpansion) -> SymExpansion:
    if f.basis != ELEMENTARY:
        raise ValueError("expected an elem expansion")
    n = f.degree
    out = {}
    for mu, coeff in f.items():
        for lam in partitions_of(n):
            k = kostka(transpose(lam), mu)
            if not k:
                continue
            prior = out.get(lam, QTPoly.zero())
            out[lam] = prior + coeff * k
    return SymExpansion(SCHUR, out, n)


def hook_coefficients(f: QSymExpansion) -> dict:
    """Schur coefficients on hooks (k, 1^{n-k}) read off a fundamental
    expansion: the hook coefficient equals the coefficient of the hook
    composition itself."""
    if f.basis != FUNDAMENTAL:
        raise ValueError("expected a fund expansion")
    n = f.degree
    out = {}
    for k in range(1, n + 1):
        alpha = (k,) + (1,) * (n - k)
        out[k] = f.coefficient(alpha)
    return out


def render(expansion) -> str:
    """One `index : coefficient` line per term, indices reverse-lex."""
    lines = []
    for key, coeff in expansion.items():
        label = "(" + ",".join(str(p) for p in key) + ")"
        lines.append("%s: %s" % (label, coeff))
    return "\n".join(lines)
