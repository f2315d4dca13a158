"""Exact arithmetic in multi-quadratic extensions of the rationals.

Values are finite sums  sum_d  c_d * sqrt(d)  with rational coefficients c_d,
indexed by square-free integer radicands d.  The key d = 1 holds the rational
part.  Negative radicands are permitted and denote i*sqrt(|d|), so the type
also covers the complex scalars needed for unitary irrep coefficients.  The
set {sqrt(d) : d square-free} is linearly independent over Q, hence the
coefficient map is a canonical form and equality is map equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

__all__ = ["AlgebraicReal", "ZERO", "ONE", "sqrt_int"]

Rat = int | Fraction
_FRACTION_ZERO = Fraction(0)


@lru_cache(maxsize=4096)
def _square_free(n: int) -> tuple[int, int]:
    """Decompose n = m**2 * c with c square-free (c carries the sign of n)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    m, c = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            m *= p ** (e // 2)
            if e % 2:
                c *= p
        p += 1 if p == 2 else 2
    return m, sign * c * n


def _prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


class AlgebraicReal:
    """Immutable element of Q(sqrt(d_1), ..., sqrt(d_k)); radicands may grow
    dynamically under multiplication."""

    __slots__ = ("_terms",)

    def __init__(self, value: Rat | Mapping[int, Rat] | "AlgebraicReal" = 0):
        if isinstance(value, AlgebraicReal):
            object.__setattr__(self, "_terms", value._terms)
            return
        if isinstance(value, (int, Fraction)):
            value = {1: value}
        terms: dict[int, Fraction] = {}
        for d, c in value.items():
            if d == 0:
                raise ValueError("radicand 0 is not allowed")
            c = Fraction(c)
            if not c:
                continue
            m, core = _square_free(d)
            terms[core] = terms.get(core, Fraction(0)) + c * m
        object.__setattr__(self, "_terms", {d: c for d, c in terms.items() if c})

    # -- constructors -------------------------------------------------------

    @classmethod
    def sqrt(cls, d: int) -> "AlgebraicReal":
        """sqrt(d) for an integer d; d < 0 gives i*sqrt(|d|)."""
        return cls({d: 1})

    @classmethod
    def rational(cls, num: Rat, den: int = 1) -> "AlgebraicReal":
        return cls(Fraction(num, den) if den != 1 else Fraction(num))

    # -- canonical-map access -----------------------------------------------

    @property
    def terms(self) -> dict[int, Fraction]:
        """Copy of the canonical coefficient map (radicand -> coefficient)."""
        return dict(self._terms)

    def coefficient(self, d: int) -> Fraction:
        m, core = _square_free(d)
        return self._terms.get(core, Fraction(0)) / m if m else Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return set(self._terms) <= {1}

    def is_real(self) -> bool:
        return all(d > 0 for d in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    # -- ring structure -----------------------------------------------------

    def _coerce(self, other) -> "AlgebraicReal | None":
        if isinstance(other, AlgebraicReal):
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicReal(other)
        return None

    def __add__(self, other) -> "AlgebraicReal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        terms = dict(self._terms)
        for d, c in o._terms.items():
            s = terms.get(d, _FRACTION_ZERO) + c
            if s:
                terms[d] = s
            else:
                terms.pop(d, None)
        out = AlgebraicReal.__new__(AlgebraicReal)
        object.__setattr__(out, "_terms", terms)
        return out

    __radd__ = __add__

    def __neg__(self) -> "AlgebraicReal":
        out = AlgebraicReal.__new__(AlgebraicReal)
        object.__setattr__(out, "_terms", {d: -c for d, c in self._terms.items()})
        return out

    def __sub__(self, other) -> "AlgebraicReal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "AlgebraicReal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "AlgebraicReal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self is ONE:
            return o
        if o is ONE:
            return self
        if not self._terms or not o._terms:
            return ZERO
        terms: dict[int, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in o._terms.items():
                if a == 1:
                    m, core = 1, b
                elif b == 1:
                    m, core = 1, a
                elif a == b:
                    m, core = abs(a), 1
                else:
                    m, core = _square_free(a * b)
                # principal branch: i*sqrt(x) * i*sqrt(y) = -sqrt(x*y)
                coeff = ca * cb * m if m != 1 else ca * cb
                if a < 0 and b < 0:
                    coeff = -coeff
                s = terms.get(core, _FRACTION_ZERO) + coeff
                if s:
                    terms[core] = s
                else:
                    terms.pop(core, None)
        out = AlgebraicReal.__new__(AlgebraicReal)
        object.__setattr__(out, "_terms", terms)
        return out

    __rmul__ = __mul__

    def _atom_conjugate(self, atom: int) -> "AlgebraicReal":
        """Galois conjugate negating terms whose radicand contains `atom`
        (a prime, or -1 meaning the sign of the radicand)."""
        if atom == -1:
            flipped = {d: (-c if d < 0 else c) for d, c in self._terms.items()}
        else:
            flipped = {d: (-c if d % atom == 0 else c) for d, c in self._terms.items()}
        out = AlgebraicReal.__new__(AlgebraicReal)
        object.__setattr__(out, "_terms", flipped)
        return out

    def inverse(self) -> "AlgebraicReal":
        """Exact multiplicative inverse, by clearing one radicand atom at a
        time with Galois conjugates until the denominator is rational."""
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        x = self
        mult = ONE
        while True:
            atoms: set[int] = set()
            for d in x._terms:
                if d < 0:
                    atoms.add(-1)
                atoms.update(_prime_divisors(d))
            if not atoms:
                break
            conj = x._atom_conjugate(min(atoms))
            mult = mult * conj
            x = x * conj
        return mult * AlgebraicReal(1 / x._terms[1])

    def __truediv__(self, other) -> "AlgebraicReal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "AlgebraicReal":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "AlgebraicReal":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "AlgebraicReal":
        """Complex conjugation: negates the i*sqrt(|d|) terms."""
        return self._atom_conjugate(-1)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _bounds(self, prec: int) -> tuple[Fraction, Fraction]:
        """Rational lower/upper bounds with sqrt(d) enclosed to 2**-prec."""
        scale = 1 << prec
        lo = hi = Fraction(0)
        for d, c in self._terms.items():
            if d == 1:
                lo += c
                hi += c
                continue
            r = math.isqrt(d * scale * scale)
            rlo, rhi = Fraction(r, scale), Fraction(r + 1, scale)
            if c >= 0:
                lo += c * rlo
                hi += c * rhi
            else:
                lo += c * rhi
                hi += c * rlo
        return lo, hi

    def compare(self, other) -> int:
        """-1, 0, or 1.  Equality is decided exactly first, then the sign of
        the difference by interval refinement (terminates since the value is
        then known to be nonzero)."""
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        diff = self - o
        if not diff._terms:
            return 0
        if not diff.is_real():
            raise ValueError("cannot order non-real values")
        prec = 8
        while True:
            lo, hi = diff._bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def sign(self) -> int:
        return self.compare(ZERO)

    # -- numeric views ------------------------------------------------------

    def __float__(self) -> float:
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return sum(float(c) * math.sqrt(d) for d, c in self._terms.items())

    def to_complex(self) -> complex:
        z = 0j
        for d, c in self._terms.items():
            if d > 0:
                z += float(c) * math.sqrt(d)
            else:
                z += 1j * float(c) * math.sqrt(-d)
        return z

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- presentation / serialization ----------------------------------------

    def _sorted_terms(self) -> Iterator[tuple[int, Fraction]]:
        for d in sorted(self._terms, key=lambda d: (d != 1, d < 0, abs(d))):
            yield d, self._terms[d]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in self._sorted_terms():
            if d == 1:
                body = str(c)
            else:
                rad = f"sqrt({d})"
                if c == 1:
                    body = rad
                elif c == -1:
                    body = f"-{rad}"
                else:
                    body = f"{c}*{rad}"
            if parts and not body.startswith("-"):
                parts.append(f"+ {body}")
            elif parts:
                parts.append(f"- {body[1:]}")
            else:
                parts.append(body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraicReal({self})"

    def to_json(self) -> dict[str, list[str]]:
        return {
            str(d): [str(c.numerator), str(c.denominator)]
            for d, c in self._sorted_terms()
        }

    @classmethod
    def from_json(cls, data: Mapping[str, list[str]]) -> "AlgebraicReal":
        return cls({int(d): Fraction(int(nd[0]), int(nd[1])) for d, nd in data.items()})


ZERO = AlgebraicReal(0)
ONE = AlgebraicReal(1)


def sqrt_int(d: int) -> AlgebraicReal:
    """Module-level shorthand for AlgebraicReal.sqrt."""
    return AlgebraicReal.sqrt(d)
