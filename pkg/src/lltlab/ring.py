"""Exact arithmetic in the ring Z[q, q^-1, t].

Polynomials are stored as a dict mapping (q_exponent, t_exponent) to a
nonzero integer coefficient.  The q exponent may be negative, the t
exponent may not.  There is no floating point anywhere in this module
and no coefficient size limit beyond Python's own integers.

The canonical term order is lexicographic, descending, on the pair
(q exponent, t exponent).  Printing, hashing and iteration all use it,
so equal polynomials render identically.
"""

from __future__ import annotations

from .errors import LLTLabError


class NotDivisible(LLTLabError):
    """Raised by exact_divide when the quotient does not exist in Z[q,q^-1,t]."""


class NegativeExponentSubstitution(LLTLabError):
    """Raised when substituting a non-unit into a Laurent polynomial."""


class QTPoly:
    """A Laurent polynomial in q, ordinary in t, over the integers.

    Instances are immutable by convention: every operation returns a new
    object and nothing mutates ``_terms`` after construction.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for (qe, te), coeff in items:
                if te < 0:
                    raise ValueError("t exponent must be nonnegative, got %r" % (te,))
                if coeff:
                    key = (int(qe), int(te))
                    total = clean.get(key, 0) + coeff
                    if total:
                        clean[key] = total
                    elif key in clean:
                        del clean[key]
        self._terms = clean
        self._hash = None

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero() -> "QTPoly":
        return QTPoly()

    @staticmethod
    def one() -> "QTPoly":
        return QTPoly({(0, 0): 1})

    @staticmethod
    def integer(c: int) -> "QTPoly":
        return QTPoly({(0, 0): c})

    @staticmethod
    def monomial(coeff: int, q_exp: int = 0, t_exp: int = 0) -> "QTPoly":
        return QTPoly({(q_exp, t_exp): coeff})

    # ------------------------------------------------------------------
    # inspection

    def items(self):
        """Terms in canonical order: lexicographic descending on (q, t)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def coefficient(self, q_exp: int, t_exp: int = 0) -> int:
        return self._terms.get((q_exp, t_exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_q_exponent(self) -> int:
        """Smallest q exponent present; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return min(qe for qe, _ in self._terms)

    def max_q_exponent(self) -> int:
        if not self._terms:
            return 0
        return max(qe for qe, _ in self._terms)

    def uses_t(self) -> bool:
        return any(te for _, te in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QTPoly.integer(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.items()))
        return self._hash

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        if isinstance(other, int):
            other = QTPoly.integer(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            total = merged.get(key, 0) + coeff
            if total:
                merged[key] = total
            elif key in merged:
                del merged[key]
        out = QTPoly.__new__(QTPoly)
        out._terms = merged
        out._hash = None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = QTPoly.__new__(QTPoly)
        out._terms = {key: -c for key, c in self._terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = QTPoly.integer(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return QTPoly()
            out = QTPoly.__new__(QTPoly)
            out._terms = {key: c * other for key, c in self._terms.items()}
            out._hash = None
            return out
        if not isinstance(other, QTPoly):
            return NotImplemented
        product: dict[tuple[int, int], int] = {}
        for (qa, ta), ca in self._terms.items():
            for (qb, tb), cb in other._terms.items():
                key = (qa + qb, ta + tb)
                total = product.get(key, 0) + ca * cb
                if total:
                    product[key] = total
                elif key in product:
                    del product[key]
        out = QTPoly.__new__(QTPoly)
        out._terms = product
        out._hash = None
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = QTPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # rendering

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (qe, te), coeff in self.items():
            mono = []
            if qe:
                mono.append("q" if qe == 1 else "q^%d" % qe)
            if te:
                mono.append("t" if te == 1 else "t^%d" % te)
            body = "*".join(mono)
            mag = abs(coeff)
            if body and mag == 1:
                text = body
            elif body:
                text = "%d*%s" % (mag, body)
            else:
                text = "%d" % mag
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + text)
            else:
                pieces.append(("- " if coeff < 0 else "+ ") + text)
        return " ".join(pieces)

    def __repr__(self):
        return "QTPoly(%s)" % str(self)


ZERO = QTPoly.zero()
ONE = QTPoly.one()
Q = QTPoly.monomial(1, 1, 0)
T = QTPoly.monomial(1, 0, 1)


def q_integer(n: int) -> QTPoly:
    """The q-analogue [n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise ValueError("q_integer expects n >= 0, got %d" % n)
    return QTPoly({(i, 0): 1 for i in range(n)})


def shift_q(poly: QTPoly, delta: int) -> QTPoly:
    """Multiply by q^delta.  The result may pick up negative q exponents."""
    out = QTPoly.__new__(QTPoly)
    out._terms = {(qe + delta, te): c for (qe, te), c in poly._terms.items()}
    out._hash = None
    return out


def _as_poly(value) -> QTPoly:
    if isinstance(value, QTPoly):
        return value
    if isinstance(value, int):
        return QTPoly.integer(value)
    raise TypeError("expected QTPoly or int, got %r" % type(value))


def _laurent_unit_inverse(image: QTPoly):
    """Inverse of +-q^k, or None when the image is not such a unit."""
    if len(image._terms) != 1:
        return None
    ((qe, te), coeff), = image._terms.items()
    if te != 0 or coeff not in (1, -1):
        return None
    return QTPoly.monomial(coeff, -qe, 0)


def substitute_q(poly: QTPoly, image) -> QTPoly:
    """Substitute ``image`` for q, keeping t untouched.

    Terms with negative q exponents are only substitutable when the image
    is a unit of the Laurent ring (that is, +-q^k); anything else raises
    NegativeExponentSubstitution.
    """
    image = _as_poly(image)
    neg = poly.min_q_exponent() < 0
    inverse = None
    if neg:
        inverse = _laurent_unit_inverse(image)
        if inverse is None:
            raise NegativeExponentSubstitution(
                "cannot substitute %s for q in a polynomial with negative "
                "q exponents" % image
            )
    by_q: dict[int, QTPoly] = {}
    for (qe, te), coeff in poly._terms.items():
        by_q.setdefault(qe, QTPoly())
        by_q[qe] = by_q[qe] + QTPoly.monomial(coeff, 0, te)
    result = QTPoly()
    for qe, part in by_q.items():
        factor = image ** qe if qe >= 0 else inverse ** (-qe)
        result = result + part * factor
    return result


def substitute_t(poly: QTPoly, image) -> QTPoly:
    """Substitute ``image`` for t.  t exponents are never negative."""
    image = _as_poly(image)
    result = QTPoly()
    for (qe, te), coeff in poly._terms.items():
        result = result + QTPoly.monomial(coeff, qe, 0) * (image ** te)
    return result


def swap_qt(poly: QTPoly) -> QTPoly:
    """Exchange the roles of q and t.  Requires all q exponents >= 0."""
    if poly.min_q_exponent() < 0:
        raise NegativeExponentSubstitution("cannot move a negative q exponent onto t")
    return QTPoly({(te, qe): c for (qe, te), c in poly._terms.items()})


# ----------------------------------------------------------------------
# exact division

def _t_poly_divide(num: dict[int, int], den: dict[int, int]) -> dict[int, int]:
    """Exact division in Z[t] on sparse dicts; raises NotDivisible."""
    if not den:
        raise NotDivisible("division by zero")
    num = dict(num)
    quot: dict[int, int] = {}
    den_deg = max(den)
    den_lead = den[den_deg]
    while num:
        deg = max(num)
        if deg < den_deg:
            raise NotDivisible("remainder of t degree %d" % deg)
        lead = num[deg]
        if lead % den_lead:
            raise NotDivisible("leading coefficient %d not divisible by %d" % (lead, den_lead))
        c = lead // den_lead
        shift = deg - den_deg
        quot[shift] = c
        for d, dc in den.items():
            k = d + shift
            total = num.get(k, 0) - c * dc
            if total:
                num[k] = total
            elif k in num:
                del num[k]
    return quot


def exact_divide(numerator: QTPoly, divisor: QTPoly) -> QTPoly:
    """Divide exactly in Z[q, q^-1, t], raising NotDivisible otherwise.

    The computation is long division in q with coefficients in Z[t]; the
    Z[t] coefficients are themselves divided exactly, so a failed division
    anywhere surfaces as NotDivisible rather than a wrong answer.
    """
    numerator = _as_poly(numerator)
    divisor = _as_poly(divisor)
    if divisor.is_zero():
        raise NotDivisible("division by the zero polynomial")
    if numerator.is_zero():
        return QTPoly()

    shift_num = numerator.min_q_exponent()
    shift_div = divisor.min_q_exponent()

    num_by_q: dict[int, dict[int, int]] = {}
    for (qe, te), c in numerator._terms.items():
        num_by_q.setdefault(qe - shift_num, {})[te] = c
    div_by_q: dict[int, dict[int, int]] = {}
    for (qe, te), c in divisor._terms.items():
        div_by_q.setdefault(qe - shift_div, {})[te] = c

    div_deg = max(div_by_q)
    div_lead = div_by_q[div_deg]
    quot_terms: dict[tuple[int, int], int] = {}
    while num_by_q:
        deg = max(num_by_q)
        if deg < div_deg:
            raise NotDivisible("remainder of q degree %d" % deg)
        coeff_t = _t_poly_divide(num_by_q[deg], div_lead)
        qshift = deg - div_deg
        for te, c in coeff_t.items():
            quot_terms[(qshift + shift_num - shift_div, te)] = c
        for dq, dcoeff in div_by_q.items():
            target = num_by_q.setdefault(dq + qshift, {})
            for dt, dc in dcoeff.items():
                for nt, ncf in coeff_t.items():
                    k = dt + nt
                    total = target.get(k, 0) - dc * ncf
                    if total:
                        target[k] = total
                    elif k in target:
                        del target[k]
            if not target:
                del num_by_q[dq + qshift]
    return QTPoly(quot_terms)
