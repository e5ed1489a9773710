"""Exact bivariate Laurent polynomials in ``x`` and ``y`` with integer coefficients.

A :class:`BiPoly` is an immutable map ``(i, j) -> c`` standing for the sum of
``c * x**i * y**j``.  Coefficients are Python ints, so nothing overflows.

Iteration and rendering use graded lexicographic order on ``(i + j, i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotDivisible, SignPatternViolation, UndefinedAtZero

__all__ = [
    "BiPoly",
    "CoefficientMatrix",
    "ZERO",
    "ONE",
    "X",
    "Y",
    "add",
    "sub",
    "mul",
    "neg",
    "divide_exact",
    "equal_up_to_unit",
    "det",
    "det_cofactor",
    "evaluate",
    "normalize_unit",
    "to_coeff_matrix",
]

Exponent = tuple[int, int]


def _grlex(key: Exponent) -> tuple[int, int]:
    return (key[0] + key[1], key[0])


class BiPoly:
    """Integer-coefficient Laurent polynomial in two variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: dict[Exponent, int] = {}
        if terms:
            for (i, j), c in terms.items():
                c = int(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int]) -> "BiPoly":
        # terms must already be free of zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: int, i: int = 0, j: int = 0) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[int]]) -> "BiPoly":
        acc: dict[Exponent, int] = {}
        for i, j, c in triples:
            acc[(i, j)] = acc.get((i, j), 0) + c
        return cls(acc)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, int]]:
        for key in sorted(self._terms, key=_grlex):
            yield key, self._terms[key]

    def coeff(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0, 0)
        return (min(i for i, _ in self._terms), min(j for _, j in self._terms))

    def max_exponents(self) -> Exponent:
        if not self._terms:
            return (0, 0)
        return (max(i for i, _ in self._terms), max(j for _, j in self._terms))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (i, j), c = next(iter(self._terms.items()))
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return BiPoly({(i * e, j * e): c ** (-e)})
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by ``x**di * y**dj``."""
        return BiPoly._raw({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, ((i, j), c) in enumerate(self.items()):
            mono = _monomial_text(i, j)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if n == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"

    def to_json(self) -> list[list[int]]:
        """Term list ``[[i, j, c], ...]`` in graded-lex order."""
        return [[i, j, c] for (i, j), c in self.items()]


def _monomial_text(i: int, j: int) -> str:
    factors = []
    for var, e in (("x", i), ("y", j)):
        if e == 1:
            factors.append(var)
        elif e:
            factors.append(f"{var}^{e}")
    return "*".join(factors) or "1"


ZERO = BiPoly()
ONE = BiPoly.const(1)
X = BiPoly.monomial(1, 1, 0)
Y = BiPoly.monomial(1, 0, 1)


def add(p: BiPoly, q: BiPoly) -> BiPoly:
    return p + q


def sub(p: BiPoly, q: BiPoly) -> BiPoly:
    return p - q


def mul(p: BiPoly, q: BiPoly) -> BiPoly:
    return p * q


def neg(p: BiPoly) -> BiPoly:
    return -p


# -- exact division -----------------------------------------------------


def _lex_lead(terms: Mapping[Exponent, int]) -> Exponent:
    # leading term under lex order with y > x
    return max(terms, key=lambda k: (k[1], k[0]))


def divide_exact(p: BiPoly, d: BiPoly) -> BiPoly:
    """Return ``q`` with ``q * d == p`` in the Laurent ring, or raise NotDivisible.

    Both operands are shifted to have minimal exponents zero; a Laurent
    quotient then exists exactly when the shifted polynomial quotient does,
    and ordinary long division (lex, y > x) finds it.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    (pi, pj), (di, dj) = p.min_exponents(), d.min_exponents()
    rem = {(i - pi, j - pj): c for (i, j), c in p._terms.items()}
    dd = {(i - di, j - dj): c for (i, j), c in d._terms.items()}
    lead = _lex_lead(dd)
    lead_c = dd[lead]
    quot: dict[Exponent, int] = {}
    while rem:
        k = _lex_lead(rem)
        c = rem[k]
        ei, ej = k[0] - lead[0], k[1] - lead[1]
        if ei < 0 or ej < 0 or c % lead_c:
            raise NotDivisible(f"{p} is not divisible by {d}")
        qc = c // lead_c
        quot[(ei, ej)] = qc
        for (i, j), dc in dd.items():
            kk = (i + ei, j + ej)
            v = rem.get(kk, 0) - qc * dc
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return BiPoly._raw(quot).shift(pi - di, pj - dj)


# -- determinants -------------------------------------------------------


def det(matrix: Sequence[Sequence[BiPoly]]) -> BiPoly:
    """Fraction-free (Bareiss) determinant of a square matrix of BiPoly.

    Zero pivots are handled by swapping in a lower row with a nonzero entry.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return ONE
    m = [[BiPoly._coerce(e) for e in row] for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            a_ik = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j]
                if a_ik and row_k[j]:
                    num = num - a_ik * row_k[j]
                row_i[j] = num if prev == ONE else divide_exact(num, prev)
            row_i[k] = ZERO
        prev = pivot
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def det_cofactor(matrix: Sequence[Sequence[BiPoly]]) -> BiPoly:
    """Determinant by Laplace expansion along rows; minors memoized by column set.

    Slow but independent of :func:`det`; used as its test oracle.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    memo: dict[int, BiPoly] = {}

    def minor(row: int, cols: int) -> BiPoly:
        # cols: bitmask of columns still available for rows row..n-1
        if row == n:
            return ONE
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = ZERO
        parity = 0
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = matrix[row][c]
            if entry:
                term = entry * minor(row + 1, cols & ~(1 << c))
                total = total - term if parity else total + term
            parity ^= 1
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


# -- evaluation and normalization --------------------------------------


def evaluate(p: BiPoly, a: int, b: int) -> int:
    """Exact integer value of ``p`` at ``x = a``, ``y = b``."""
    total = 0
    for (i, j), c in p._terms.items():
        total += c * _int_power(a, i) * _int_power(b, j)
    return total


def _int_power(base: int, e: int) -> int:
    if e >= 0:
        return base**e
    if base == 0:
        raise UndefinedAtZero("negative exponent evaluated at zero")
    if base in (1, -1):
        return base ** (-e)
    raise ValueError("negative exponent needs a unit base for an integer result")


def normalize_unit(p: BiPoly) -> BiPoly:
    """Multiply ``p`` by the unit ``±x^a y^b`` that puts it in canonical form.

    Canonical means minimal exponents are zero and terms of even total degree
    are positive, odd total degree negative.
    """
    if p.is_zero():
        raise ValueError("cannot normalize the zero polynomial")
    mi, mj = p.min_exponents()
    q = p.shift(-mi, -mj)
    signs = {((i + j) % 2 == 0) == (c > 0) for (i, j), c in q._terms.items()}
    if len(signs) != 1:
        raise SignPatternViolation(f"{p} does not alternate sign with total degree")
    return q if signs.pop() else -q


def equal_up_to_unit(p: BiPoly, q: BiPoly) -> bool:
    """True when ``p == ±x^a y^b * q`` for some integers a, b."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    (pi, pj), (qi, qj) = p.min_exponents(), q.min_exponents()
    ps, qs = p.shift(-pi, -pj), q.shift(-qi, -qj)
    return ps == qs or ps == -qs


# -- coefficient matrix -------------------------------------------------


@dataclass(frozen=True)
class CoefficientMatrix:
    """Dense coefficient array of a polynomial.

    ``rows`` is stored top to bottom as displayed: ``rows[-1]`` holds the
    ``y**min_j`` coefficients, column ``k`` holds ``x**(min_i + k)``.
    """

    rows: tuple[tuple[int, ...], ...]
    min_i: int = 0
    min_j: int = 0

    def coeff(self, i: int, j: int) -> int:
        col = i - self.min_i
        row = len(self.rows) - 1 - (j - self.min_j)
        if 0 <= row < len(self.rows) and 0 <= col < len(self.rows[0]):
            return self.rows[row][col]
        return 0

    def bottom_row(self) -> tuple[int, ...]:
        return self.rows[-1]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def render(self) -> str:
        width = max(len(str(c)) for r in self.rows for c in r)
        lines = [" ".join(str(c).rjust(width) for c in r) for r in self.rows]
        lines.append(f"(bottom row = y^{self.min_j}, left column = x^{self.min_i})")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"rows": self.as_lists(), "min_i": self.min_i, "min_j": self.min_j}


def to_coeff_matrix(p: BiPoly) -> CoefficientMatrix:
    """Rolfsen-style coefficient array: column i (left to right), row j (bottom to top)."""
    if p.is_zero():
        return CoefficientMatrix(((0,),))
    (mi, mj), (ai, aj) = p.min_exponents(), p.max_exponents()
    rows = tuple(
        tuple(p.coeff(i, j) for i in range(mi, ai + 1)) for j in range(aj, mj - 1, -1)
    )
    return CoefficientMatrix(rows, mi, mj)
