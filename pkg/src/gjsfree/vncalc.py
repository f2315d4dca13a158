"""Symbolic calculus on tracial direct sums of scalars, matrix algebras, the
group von Neumann algebra of the integers, and interpolated free group
factors.  Free products are computed only through the supported closed-form
rewrite rules; anything else raises a typed error naming the missing rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .algnum import ONE, ZERO, AlgebraicReal
from .errors import UnsupportedShapeError

__all__ = [
    "ScalarC",
    "MatrixAlg",
    "LF",
    "VNExpression",
    "free_poisson_algebra",
    "multi_matrix_left_regular",
    "ampliate",
    "deampliate_matrix",
    "free_product",
    "free_product_scalar_lf_pair",
    "free_product_scalar_lf_matrix",
    "free_product_scalar_lz_multimatrix",
    "power_free_product",
    "irrep_factor",
    "m1_expression",
    "m2_expression",
    "m0_expression",
]


@dataclass(frozen=True)
class ScalarC:
    """The complex scalars."""

    def __str__(self) -> str:
        return "C"


@dataclass(frozen=True)
class MatrixAlg:
    """d x d complex matrices, d >= 2 (d = 1 normalizes to ScalarC)."""

    d: int

    def __str__(self) -> str:
        return f"M{self.d}"


@dataclass(frozen=True)
class LF:
    """Interpolated free group factor with parameter r > 1; r = 1 is kept as
    the canonical form of the group von Neumann algebra of the integers."""

    r: AlgebraicReal

    def __str__(self) -> str:
        return "LZ" if self.r == ONE else f"LF({self.r})"


Atom = ScalarC | MatrixAlg | LF


def _atom_cmp(a: Atom, b: Atom) -> int:
    rank = {ScalarC: 0, MatrixAlg: 1, LF: 2}
    ra, rb = rank[type(a)], rank[type(b)]
    if ra != rb:
        return ra - rb
    if isinstance(a, MatrixAlg):
        return a.d - b.d
    if isinstance(a, LF):
        return a.r.compare(b.r)
    return 0


def _normalize_atom(atom: Atom) -> Atom:
    if isinstance(atom, MatrixAlg):
        if atom.d < 1:
            raise ValueError("matrix size must be positive")
        return ScalarC() if atom.d == 1 else atom
    if isinstance(atom, LF):
        r = AlgebraicReal(atom.r)
        if r.compare(ONE) < 0:
            raise ValueError(f"free group factor parameter {r} < 1")
        return LF(r)
    return atom


@dataclass(frozen=True)
class VNExpression:
    """Weighted direct sum of atoms; weights are positive and sum to one.
    Zero-weight summands are dropped, matrix size one becomes a scalar, and
    summands are kept in a canonical order (duplicates stay separate: they
    are distinct central summands)."""

    summands: tuple[tuple[Atom, AlgebraicReal], ...]

    def __post_init__(self):
        total = ZERO
        for atom, w in self.summands:
            if w.compare(ZERO) <= 0:
                raise ValueError("weights must be positive")
            total = total + w
        if self.summands and total != ONE:
            raise ValueError(f"weights sum to {total}, not 1")
        if not self.summands:
            raise ValueError("expression needs at least one summand")

    @classmethod
    def of(cls, summands: Iterable[tuple[Atom, AlgebraicReal | int | Fraction]]) -> "VNExpression":
        cleaned = []
        for atom, w in summands:
            w = AlgebraicReal(w)
            if w.is_zero():
                continue
            cleaned.append((_normalize_atom(atom), w))
        cleaned.sort(key=cmp_to_key(lambda s1, s2: _atom_cmp(s1[0], s2[0]) or s1[1].compare(s2[1])))
        return cls(tuple(cleaned))

    @classmethod
    def factor(cls, atom: Atom) -> "VNExpression":
        return cls.of([(atom, ONE)])

    def is_factor(self) -> bool:
        return len(self.summands) == 1

    def single_atom(self) -> Atom:
        if not self.is_factor():
            raise ValueError(f"{self} is not a single factor")
        return self.summands[0][0]

    def __str__(self) -> str:
        if self.is_factor():
            return str(self.summands[0][0])
        return " (+) ".join(f"({w})*{atom}" for atom, w in self.summands)

    __repr__ = __str__

    def to_json(self) -> dict:
        out = []
        for atom, w in self.summands:
            if isinstance(atom, ScalarC):
                a = {"kind": "C"}
            elif isinstance(atom, MatrixAlg):
                a = {"kind": "M", "d": atom.d}
            elif atom.r == ONE:
                a = {"kind": "LZ"}
            else:
                a = {"kind": "LF", "r": atom.r.to_json()}
            out.append({"atom": a, "weight": w.to_json()})
        return {"summands": out}

    @classmethod
    def from_json(cls, data: dict) -> "VNExpression":
        summands = []
        for rec in data["summands"]:
            a = rec["atom"]
            if a["kind"] == "C":
                atom: Atom = ScalarC()
            elif a["kind"] == "M":
                atom = MatrixAlg(int(a["d"]))
            elif a["kind"] == "LZ":
                atom = LF(ONE)
            elif a["kind"] == "LF":
                atom = LF(AlgebraicReal.from_json(a["r"]))
            else:
                raise ValueError(f"unknown atom kind {a['kind']!r}")
            summands.append((atom, AlgebraicReal.from_json(rec["weight"])))
        return cls.of(summands)


def free_poisson_algebra(delta: AlgebraicReal) -> VNExpression:
    """Von Neumann algebra of a free Poisson element with rate 1/delta and
    jump delta: an atom of mass 1 - 1/delta plus a diffuse part."""
    inv = AlgebraicReal(delta).inverse()
    return VNExpression.of([(ScalarC(), ONE - inv), (LF(ONE), inv)])


def multi_matrix_left_regular(profile: Sequence[int]) -> VNExpression:
    """Multi-matrix algebra with block sizes from `profile`, traced in the
    left regular representation (block weights d^2/n)."""
    n = sum(d * d for d in profile)
    return VNExpression.of(
        [(MatrixAlg(d), AlgebraicReal(Fraction(d * d, n))) for d in profile]
    )


# -- ampliation ----------------------------------------------------------------


def ampliate(e: VNExpression, alpha: AlgebraicReal | int | Fraction) -> VNExpression:
    """Ampliation of a single factor atom by alpha > 0."""
    alpha = AlgebraicReal(alpha)
    if alpha.compare(ZERO) <= 0:
        raise ValueError("ampliation parameter must be positive")
    atom = e.single_atom()
    if isinstance(atom, LF):
        r = (atom.r - ONE) / (alpha * alpha) + ONE
        return VNExpression.factor(LF(r))
    d = 1 if isinstance(atom, ScalarC) else atom.d
    if not alpha.is_rational() or (alpha.as_fraction() * d).denominator != 1:
        raise UnsupportedShapeError(
            f"ampliation of M{d} by {alpha} is not an integer matrix size"
        )
    return VNExpression.factor(MatrixAlg(int(alpha.as_fraction() * d)))


def deampliate_matrix(e: VNExpression, d: int) -> VNExpression:
    """Given the value of a d x d matrix amplification, recover the base
    algebra summand-wise: weights persist and each factor compresses by 1/d."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d == 1:
        return e
    out = []
    for atom, w in e.summands:
        if isinstance(atom, LF):
            if atom.r == ONE:
                raise UnsupportedShapeError("summand LZ is not a factor; cannot compress")
            out.append((LF((atom.r - ONE) * (d * d) + ONE), w))
        elif isinstance(atom, MatrixAlg) and atom.d % d == 0:
            out.append((MatrixAlg(atom.d // d), w))
        else:
            raise UnsupportedShapeError(f"summand {atom} admits no 1/{d} compression")
    return VNExpression.of(out)


# -- closed-form free product rules ---------------------------------------------


def _as_scalar_plus_lf(e: VNExpression) -> tuple[AlgebraicReal, AlgebraicReal] | None:
    """Match (1-alpha)C (+) alpha LF(r); returns (alpha, r) with r = 1 when the
    LF part is absent, or None when the expression has another shape."""
    alpha, r = ZERO, ONE
    seen_c = seen_lf = False
    for atom, w in e.summands:
        if isinstance(atom, ScalarC) and not seen_c:
            seen_c = True
        elif isinstance(atom, LF) and not seen_lf:
            seen_lf = True
            alpha, r = w, atom.r
        else:
            return None
    return alpha, r


def _as_single_matrix(e: VNExpression) -> int | None:
    if e.is_factor() and isinstance(e.summands[0][0], MatrixAlg):
        return e.summands[0][0].d
    return None


def _as_left_regular_multimatrix(e: VNExpression) -> list[int] | None:
    dims = []
    for atom, _ in e.summands:
        if isinstance(atom, ScalarC):
            dims.append(1)
        elif isinstance(atom, MatrixAlg):
            dims.append(atom.d)
        else:
            return None
    n = sum(d * d for d in dims)
    for (atom, w), d in zip(e.summands, dims):
        if w != AlgebraicReal(Fraction(d * d, n)):
            return None
    return dims


def _require_branch(branch: str | None, boundary: int) -> str:
    """Pick 'factor' or 'atomic' from the comparison sign; an explicit branch
    must sit on its side of the boundary (equality admits both)."""
    auto = "factor" if boundary >= 0 else "atomic"
    if branch is None:
        return auto
    if branch not in ("factor", "atomic"):
        raise ValueError(f"unknown branch {branch!r}")
    if branch != auto and boundary != 0:
        raise ValueError(f"branch {branch!r} is invalid off the boundary")
    return branch


def free_product_scalar_lf_pair(
    r: AlgebraicReal,
    alpha: AlgebraicReal,
    s: AlgebraicReal,
    beta: AlgebraicReal,
    branch: str | None = None,
) -> VNExpression:
    """((1-alpha)C (+) alpha LF(r)) * ((1-beta)C (+) beta LF(s)) for
    r, s >= 1 and 0 <= alpha, beta <= 1.  The two branches agree when
    alpha + beta = 1."""
    r, alpha, s, beta = map(AlgebraicReal, (r, alpha, s, beta))
    if alpha.is_zero() and beta.is_zero():
        return VNExpression.factor(ScalarC())
    chosen = _require_branch(branch, (alpha + beta).compare(ONE))
    if chosen == "factor":
        arg = (
            r * alpha * alpha
            + 2 * alpha * (ONE - alpha)
            + s * beta * beta
            + 2 * beta * (ONE - beta)
        )
        return VNExpression.factor(LF(arg))
    total = alpha + beta
    arg = (r * alpha * alpha + s * beta * beta + 4 * alpha * beta) / (total * total)
    return VNExpression.of([(ScalarC(), ONE - total), (LF(arg), total)])


def free_product_scalar_lf_matrix(
    r: AlgebraicReal,
    alpha: AlgebraicReal,
    d: int,
    branch: str | None = None,
) -> VNExpression:
    """((1-alpha)C (+) alpha LF(r)) * M_d for r >= 1, 0 <= alpha <= 1.  The
    branches agree when alpha = 1/d^2."""
    r, alpha = AlgebraicReal(r), AlgebraicReal(alpha)
    dd = AlgebraicReal(Fraction(1, d * d))
    chosen = _require_branch(branch, alpha.compare(dd))
    if chosen == "factor":
        arg = r * alpha * alpha + 2 * alpha * (ONE - alpha) + ONE - dd
        return VNExpression.factor(LF(arg))
    d4 = AlgebraicReal(Fraction(1, d ** 4))
    arg = r * d4 - 2 * d4 + ONE + dd
    w = alpha * (d * d)
    return VNExpression.of([(MatrixAlg(d), ONE - w), (LF(arg), w)])


def free_product_scalar_lz_multimatrix(
    alpha: AlgebraicReal, dims: Sequence[int]
) -> VNExpression:
    """((1-alpha)C (+) alpha LZ) * (left-regular multi-matrix with block sizes
    `dims`), in the free-dimension form: the exponent subtracts the sum of
    squared block weights over squared block sizes."""
    alpha = AlgebraicReal(alpha)
    n = sum(d * d for d in dims)
    if alpha.compare(AlgebraicReal(Fraction(1, n))) < 0:
        raise UnsupportedShapeError(
            f"free product with atom weight alpha={alpha} < 1/{n} is outside the rule set"
        )
    correction = ZERO
    for d in dims:
        w = AlgebraicReal(Fraction(d * d, n))
        correction = correction + w * w / (d * d)
    arg = 2 * alpha - alpha * alpha + ONE - correction
    return VNExpression.factor(LF(arg))


def free_product(e1: VNExpression, e2: VNExpression) -> VNExpression:
    """Dispatch a free product over the supported operand shapes; raises
    UnsupportedShapeError when no rule applies."""
    for a, b in ((e1, e2), (e2, e1)):
        sl = _as_scalar_plus_lf(a)
        if sl is None:
            continue
        alpha, r = sl
        if alpha.is_zero():
            return b  # free product with the scalars alone is trivial
        sl2 = _as_scalar_plus_lf(b)
        if sl2 is not None:
            beta, s = sl2
            return free_product_scalar_lf_pair(r, alpha, s, beta)
        d = _as_single_matrix(b)
        if d is not None:
            return free_product_scalar_lf_matrix(r, alpha, d)
        dims = _as_left_regular_multimatrix(b)
        if dims is not None:
            if r != ONE:
                raise UnsupportedShapeError(
                    "no rule for (C (+) LF(r>1)) * multi-matrix; the diffuse part must be LZ"
                )
            return free_product_scalar_lz_multimatrix(alpha, dims)
    raise UnsupportedShapeError(f"no free product rule for shapes {e1} and {e2}")


def power_free_product(
    delta: AlgebraicReal, n_copies: int, branch: str | None = None
) -> VNExpression:
    """N-fold free product of (1-1/delta)C (+) (1/delta) LZ in closed form;
    the branches agree when N = delta."""
    delta = AlgebraicReal(delta)
    if delta.compare(ONE) <= 0:
        raise ValueError("delta must exceed 1")
    if n_copies < 1:
        raise ValueError("need at least one copy")
    inv = delta.inverse()
    chosen = _require_branch(branch, AlgebraicReal(n_copies).compare(delta))
    if chosen == "factor":
        return VNExpression.factor(LF(n_copies * (2 * inv - inv * inv)))
    w = n_copies * inv
    return VNExpression.of(
        [(ScalarC(), ONE - w), (LF(2 - AlgebraicReal(Fraction(1, n_copies))), w)]
    )


# -- the tower parameters --------------------------------------------------------


def irrep_factor(d: int, n: int) -> VNExpression:
    """Algebra generated by the entries of one d-dimensional irrep's unit
    matrix, derived by the rule chain (free product with M_d, then matrix
    compression) and cross-checked against the closed power formula."""
    if d * d > n:
        raise ValueError(f"irrep dimension {d} impossible in dimension {n}")
    delta = AlgebraicReal.sqrt(n)
    generator = free_poisson_algebra(delta)
    amplified = free_product(generator, VNExpression.factor(MatrixAlg(d)))
    chained = deampliate_matrix(amplified, d)
    closed = power_free_product(delta, d * d)
    if chained != closed:
        raise RuntimeError(
            f"rule chain {chained} disagrees with closed form {closed} for d={d}, n={n}"
        )
    return chained


def m1_expression(profile: Sequence[int]) -> VNExpression:
    """First tower factor for a dimension profile (sum of squares n > 1):
    the free product of the per-irrep algebras."""
    profile = list(profile)
    n = sum(d * d for d in profile)
    if not profile or n <= 1:
        raise ValueError("profile must have sum of squares > 1")
    out: VNExpression | None = None
    for d in profile:
        block = irrep_factor(d, n)
        out = block if out is None else free_product(out, block)
    return out


def m2_expression(profile: Sequence[int]) -> VNExpression:
    """Second tower factor: free product of the free Poisson generator's
    algebra with the left-regular multi-matrix algebra."""
    profile = list(profile)
    n = sum(d * d for d in profile)
    if not profile or n <= 1:
        raise ValueError("profile must have sum of squares > 1")
    generator = free_poisson_algebra(AlgebraicReal.sqrt(n))
    return free_product(generator, multi_matrix_left_regular(profile))


def m0_expression(profile: Sequence[int]) -> VNExpression:
    """Base tower factor: the 1/n compression of the second factor."""
    n = sum(d * d for d in profile)
    return ampliate(m2_expression(profile), Fraction(1, n))
