"""Finite-dimensional Kac algebra data model.

An algebra is stored through its structure constants over a distinguished
basis: multiplication, unit, comultiplication, counit, antipode, star,
the normalised trace functional and the integral element.  All constants are
exact (:class:`~gjsfree.algnum.AlgebraicReal`), validation is an exhaustive
check of the axioms on basis tuples, and irreducible-representation data for
the dual is user-supplied and validated rather than computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algnum import ONE, ZERO, AlgebraicReal
from .errors import KacValidationError

__all__ = [
    "Vector",
    "KacAlgebra",
    "Irrep",
    "IrrepData",
    "MatrixUnitBasis",
    "ValidationReport",
    "validate",
    "group_algebra",
    "dual_group_algebra",
    "phi_moment",
    "to_matrix_units",
    "from_matrix_units",
    "kac_to_json",
    "kac_from_json",
]

Vector = tuple[AlgebraicReal, ...]


def vec_zero(n: int) -> Vector:
    return (ZERO,) * n


def vec_unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c: AlgebraicReal, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def vec_is_zero(u: Vector) -> bool:
    return all(a.is_zero() for a in u)


def _mat_inverse(rows: list[list[AlgebraicReal]]) -> list[list[AlgebraicReal]]:
    """Exact Gauss-Jordan inverse; raises KacValidationError on singularity."""
    n = len(rows)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if pivot is None:
            raise KacValidationError("matrix-unit basis matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [r[n:] for r in aug]


@dataclass(frozen=True, eq=False)
class KacAlgebra:
    """Structure constants of an n-dimensional Kac algebra.

    mult[i][j] is the coefficient vector of e_i * e_j; comult[i][j][k] the
    coefficient of e_j (x) e_k in the coproduct of e_i; antipode[i] and
    star[i] the images of e_i (star extends conjugate-linearly)."""

    name: str
    dim: int
    basis: tuple[str, ...]
    mult: tuple[tuple[Vector, ...], ...]
    unit: Vector
    comult: tuple[tuple[Vector, ...], ...]
    counit: Vector
    antipode: tuple[Vector, ...]
    star: tuple[Vector, ...]
    phi: Vector
    integral: Vector
    _caches: dict = field(default_factory=dict, repr=False)

    @property
    def delta(self) -> AlgebraicReal:
        """Modulus sqrt(n) of the associated planar algebra."""
        return AlgebraicReal.sqrt(self.dim)

    def basis_vector(self, i: int) -> Vector:
        return vec_unit(self.dim, i)

    def element(self, label: str) -> Vector:
        return self.basis_vector(self.basis.index(label))

    def multiply(self, u: Vector, v: Vector) -> Vector:
        out = list(vec_zero(self.dim))
        for i, ci in enumerate(u):
            if ci.is_zero():
                continue
            for j, cj in enumerate(v):
                if cj.is_zero():
                    continue
                c = ci * cj
                for k, m in enumerate(self.mult[i][j]):
                    if not m.is_zero():
                        out[k] = out[k] + c * m
        return tuple(out)

    def multiply_many(self, vectors: Sequence[Vector]) -> Vector:
        out = self.unit
        for v in vectors:
            out = self.multiply(out, v)
        return out

    def phi_of(self, u: Vector) -> AlgebraicReal:
        out = ZERO
        for c, p in zip(u, self.phi):
            out = out + c * p
        return out

    def counit_of(self, u: Vector) -> AlgebraicReal:
        out = ZERO
        for c, e in zip(u, self.counit):
            out = out + c * e
        return out

    def antipode_of(self, u: Vector) -> Vector:
        out = vec_zero(self.dim)
        for i, c in enumerate(u):
            if not c.is_zero():
                out = vec_add(out, vec_scale(c, self.antipode[i]))
        return out

    def star_of(self, u: Vector) -> Vector:
        out = vec_zero(self.dim)
        for i, c in enumerate(u):
            if not c.is_zero():
                out = vec_add(out, vec_scale(c.conj(), self.star[i]))
        return out

    def iterated_coproduct(self, i: int, legs: int) -> dict[tuple[int, ...], AlgebraicReal]:
        """Sparse expansion of the (legs)-fold coproduct of basis element i."""
        if legs < 1:
            raise ValueError("need at least one leg")
        cache = self._caches.setdefault("coproduct", {})
        key = (i, legs)
        if key in cache:
            return cache[key]
        if legs == 1:
            out = {(i,): ONE}
        else:
            prev = self.iterated_coproduct(i, legs - 1)
            out = {}
            for idx, c in prev.items():
                last = idx[-1]
                row = self.comult[last]
                for j in range(self.dim):
                    for k in range(self.dim):
                        cjk = row[j][k]
                        if cjk.is_zero():
                            continue
                        key2 = idx[:-1] + (j, k)
                        acc = out.get(key2, ZERO) + c * cjk
                        if acc.is_zero():
                            out.pop(key2, None)
                        else:
                            out[key2] = acc
        cache[key] = out
        return out


@dataclass(frozen=True, eq=False)
class Irrep:
    """Matrix units gamma_pq of one irreducible representation of the dual,
    as coefficient vectors in the algebra basis (0-indexed p, q)."""

    dim: int
    units: tuple[tuple[Vector, ...], ...]


@dataclass(frozen=True, eq=False)
class IrrepData:
    irreps: tuple[Irrep, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.irreps)


@dataclass
class ValidationReport:
    checks: list[dict] = field(default_factory=list)

    def record(self, name: str, passed: bool, witness: str | None = None) -> None:
        entry: dict = {"check": name, "status": "pass" if passed else "fail"}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def failures(self) -> list[dict]:
        return [c for c in self.checks if c["status"] == "fail"]

    def to_json(self) -> list[dict]:
        return list(self.checks)


def _tensor_eq(a: dict[tuple[int, int], AlgebraicReal], b: dict[tuple[int, int], AlgebraicReal]) -> bool:
    keys = set(a) | set(b)
    return all(a.get(k, ZERO) == b.get(k, ZERO) for k in keys)


def validate(k: KacAlgebra) -> ValidationReport:
    """Exact pass/fail report for every Kac algebra axiom, checked on
    structure constants (exhaustive over basis tuples)."""
    n = k.dim
    rep = ValidationReport()

    def check(name: str, fail_witness: str | None) -> None:
        rep.record(name, fail_witness is None, fail_witness)

    w = None
    for i in range(n):
        e = k.basis_vector(i)
        if k.multiply(k.unit, e) != e or k.multiply(e, k.unit) != e:
            w = f"unit law fails at basis {i}"
            break
    check("unit-law", w)

    w = None
    for i in range(n):
        for j in range(n):
            for l in range(n):
                lhs = k.multiply(k.mult[i][j], k.basis_vector(l))
                rhs = k.multiply(k.basis_vector(i), k.mult[j][l])
                if lhs != rhs:
                    w = f"associativity fails at ({i},{j},{l})"
                    break
            if w:
                break
        if w:
            break
    check("mult-associative", w)

    w = None
    for i in range(n):
        if w:
            break
        t = k.comult[i]
        left: dict[tuple[int, int, int], AlgebraicReal] = {}
        right: dict[tuple[int, int, int], AlgebraicReal] = {}
        for j in range(n):
            for c in range(n):
                if t[j][c].is_zero():
                    continue
                for a in range(n):
                    for b in range(n):
                        v = t[j][c] * k.comult[j][a][b]
                        if not v.is_zero():
                            left[(a, b, c)] = left.get((a, b, c), ZERO) + v
        for a in range(n):
            for c2 in range(n):
                if t[a][c2].is_zero():
                    continue
                for b in range(n):
                    for c in range(n):
                        v = t[a][c2] * k.comult[c2][b][c]
                        if not v.is_zero():
                            right[(a, b, c)] = right.get((a, b, c), ZERO) + v
        keys = set(left) | set(right)
        for key in keys:
            if left.get(key, ZERO) != right.get(key, ZERO):
                w = f"coassociativity fails at basis {i}, leg {key}"
                break
    check("comult-coassociative", w)

    w = None
    for i in range(n):
        left_v = list(vec_zero(n))
        right_v = list(vec_zero(n))
        for j in range(n):
            for l in range(n):
                c = k.comult[i][j][l]
                if c.is_zero():
                    continue
                left_v[l] = left_v[l] + k.counit[j] * c
                right_v[j] = right_v[j] + k.counit[l] * c
        if tuple(left_v) != k.basis_vector(i) or tuple(right_v) != k.basis_vector(i):
            w = f"counit law fails at basis {i}"
            break
    check("counit-law", w)

    w = None
    for i in range(n):
        if w:
            break
        for j in range(n):
            prod = k.mult[i][j]
            lhs: dict[tuple[int, int], AlgebraicReal] = {}
            for m, c in enumerate(prod):
                if c.is_zero():
                    continue
                for a in range(n):
                    for b in range(n):
                        v = c * k.comult[m][a][b]
                        if not v.is_zero():
                            lhs[(a, b)] = lhs.get((a, b), ZERO) + v
            rhs: dict[tuple[int, int], AlgebraicReal] = {}
            for a1 in range(n):
                for b1 in range(n):
                    c1 = k.comult[i][a1][b1]
                    if c1.is_zero():
                        continue
                    for a2 in range(n):
                        for b2 in range(n):
                            c2 = k.comult[j][a2][b2]
                            if c2.is_zero():
                                continue
                            cc = c1 * c2
                            va = k.mult[a1][a2]
                            vb = k.mult[b1][b2]
                            for a, ca in enumerate(va):
                                if ca.is_zero():
                                    continue
                                for b, cb in enumerate(vb):
                                    if cb.is_zero():
                                        continue
                                    v = cc * ca * cb
                                    key = (a, b)
                                    acc = rhs.get(key, ZERO) + v
                                    if acc.is_zero():
                                        rhs.pop(key, None)
                                    else:
                                        rhs[key] = acc
            lhs = {key: v for key, v in lhs.items() if not v.is_zero()}
            if not _tensor_eq(lhs, rhs):
                w = f"comultiplication is not multiplicative at ({i},{j})"
                break
    check("comult-homomorphism", w)

    unit_cp: dict[tuple[int, int], AlgebraicReal] = {}
    for i, c in enumerate(k.unit):
        if c.is_zero():
            continue
        for a in range(n):
            for b in range(n):
                v = c * k.comult[i][a][b]
                if not v.is_zero():
                    unit_cp[(a, b)] = unit_cp.get((a, b), ZERO) + v
    expect = {}
    for a, ca in enumerate(k.unit):
        for b, cb in enumerate(k.unit):
            v = ca * cb
            if not v.is_zero():
                expect[(a, b)] = v
    check("comult-unit", None if _tensor_eq(unit_cp, expect) else "coproduct of 1 is not 1 (x) 1")

    w = None
    if k.counit_of(k.unit) != ONE:
        w = "counit of 1 is not 1"
    else:
        for i in range(n):
            for j in range(n):
                if k.counit_of(k.mult[i][j]) != k.counit[i] * k.counit[j]:
                    w = f"counit not multiplicative at ({i},{j})"
                    break
            if w:
                break
    check("counit-homomorphism", w)

    w = None
    for i in range(n):
        left_v = vec_zero(n)
        right_v = vec_zero(n)
        for a in range(n):
            for b in range(n):
                c = k.comult[i][a][b]
                if c.is_zero():
                    continue
                left_v = vec_add(left_v, vec_scale(c, k.multiply(k.antipode[a], k.basis_vector(b))))
                right_v = vec_add(right_v, vec_scale(c, k.multiply(k.basis_vector(a), k.antipode[b])))
        target = vec_scale(k.counit[i], k.unit)
        if left_v != target or right_v != target:
            w = f"antipode law fails at basis {i}"
            break
    check("antipode-law", w)

    w = None
    for i in range(n):
        if k.antipode_of(k.antipode[i]) != k.basis_vector(i):
            w = f"antipode not involutive at basis {i}"
            break
    check("antipode-involutive", w)

    w = None
    for i in range(n):
        for j in range(n):
            if k.antipode_of(k.mult[i][j]) != k.multiply(k.antipode[j], k.antipode[i]):
                w = f"antipode not an antihomomorphism at ({i},{j})"
                break
        if w:
            break
    check("antipode-antiautomorphism", w)

    w = None
    for i in range(n):
        if k.star_of(k.star[i]) != k.basis_vector(i):
            w = f"star not involutive at basis {i}"
            break
    check("star-involution", w)

    w = None
    for i in range(n):
        for j in range(n):
            if k.star_of(k.mult[i][j]) != k.multiply(k.star[j], k.star[i]):
                w = f"star not an antiautomorphism at ({i},{j})"
                break
        if w:
            break
    check("star-antiautomorphism", w)

    w = None
    for i in range(n):
        if k.star_of(k.antipode[i]) != k.antipode_of(k.star[i]):
            w = f"antipode and star do not commute at basis {i}"
            break
    check("antipode-star-commute", w)

    w = None
    for i in range(n):
        if w:
            break
        lhs: dict[tuple[int, int], AlgebraicReal] = {}
        for m, c in enumerate(k.antipode[i]):
            if c.is_zero():
                continue
            for a in range(n):
                for b in range(n):
                    v = c * k.comult[m][a][b]
                    if not v.is_zero():
                        key = (a, b)
                        acc = lhs.get(key, ZERO) + v
                        if acc.is_zero():
                            lhs.pop(key, None)
                        else:
                            lhs[key] = acc
        rhs: dict[tuple[int, int], AlgebraicReal] = {}
        for a in range(n):
            for b in range(n):
                c = k.comult[i][a][b]
                if c.is_zero():
                    continue
                for x, cx in enumerate(k.antipode[b]):
                    if cx.is_zero():
                        continue
                    for y, cy in enumerate(k.antipode[a]):
                        if cy.is_zero():
                            continue
                        v = c * cx * cy
                        key = (x, y)
                        acc = rhs.get(key, ZERO) + v
                        if acc.is_zero():
                            rhs.pop(key, None)
                        else:
                            rhs[key] = acc
        if not _tensor_eq(lhs, rhs):
            w = f"coproduct-antipode flip consistency fails at basis {i}"
    check("comult-antipode-flip", w)

    w = None
    if k.phi_of(k.unit) != ONE:
        w = "phi(1) is not 1"
    else:
        for i in range(n):
            for j in range(n):
                if k.phi_of(k.mult[i][j]) != k.phi_of(k.mult[j][i]):
                    w = f"phi not tracial at ({i},{j})"
                    break
            if w:
                break
    check("phi-tracial", w)

    w = None
    for i in range(n):
        lhs_v = k.multiply(k.basis_vector(i), k.integral)
        rhs_v = vec_scale(k.counit[i], k.integral)
        if lhs_v != rhs_v:
            w = f"integral not absorbing at basis {i}"
            break
    check("integral-absorbing", w)

    check(
        "phi-of-integral",
        None if k.phi_of(k.integral) == AlgebraicReal(Fraction(1, n)) else f"phi(h) != 1/{n}",
    )

    return rep


def validate_irreps(k: KacAlgebra, data: IrrepData) -> ValidationReport:
    """Exact checks tying irrep matrix units to the algebra: dimension count,
    linear independence, star/antipode compatibility and orthonormality."""
    n = k.dim
    rep = ValidationReport()

    rep.record(
        "irrep-dimension-sum",
        sum(d * d for d in data.dims) == n,
        None if sum(d * d for d in data.dims) == n else f"sum d^2 = {sum(d*d for d in data.dims)} != {n}",
    )

    try:
        MatrixUnitBasis(k, data)
        rep.record("units-linear-basis", True)
    except KacValidationError as exc:
        rep.record("units-linear-basis", False, str(exc))

    w = None
    for g, irrep in enumerate(data.irreps):
        for p in range(irrep.dim):
            for q in range(irrep.dim):
                if k.star_of(irrep.units[p][q]) != k.antipode_of(irrep.units[q][p]):
                    w = f"unit ({g},{p},{q}): star != antipode of transpose"
                    break
            if w:
                break
        if w:
            break
    rep.record("units-star-antipode", w is None, w)

    w = None
    units = [
        (g, p, q, irrep.units[p][q], irrep.dim)
        for g, irrep in enumerate(data.irreps)
        for p in range(irrep.dim)
        for q in range(irrep.dim)
    ]
    for g1, p1, q1, u1, d1 in units:
        if w:
            break
        for g2, p2, q2, u2, d2 in units:
            scale = AlgebraicReal.sqrt(d1) * AlgebraicReal.sqrt(d2)
            inner = scale * k.phi_of(k.multiply(k.star_of(u2), u1))
            expected = ONE if (g1, p1, q1) == (g2, p2, q2) else ZERO
            if inner != expected:
                w = f"<({g1},{p1},{q1}), ({g2},{p2},{q2})> = {inner}"
                break
    rep.record("units-orthonormal", w is None, w)

    return rep


class MatrixUnitBasis:
    """Change of basis between the algebra basis and the matrix-unit basis.

    Symbols are (irrep index, p, q) triples in deterministic order; the
    inverse basis matrix is computed exactly once."""

    def __init__(self, k: KacAlgebra, data: IrrepData):
        self.algebra = k
        self.data = data
        self.symbols: list[tuple[int, int, int]] = [
            (g, p, q)
            for g, irrep in enumerate(data.irreps)
            for p in range(irrep.dim)
            for q in range(irrep.dim)
        ]
        if len(self.symbols) != k.dim:
            raise KacValidationError(
                f"{len(self.symbols)} matrix units for dimension {k.dim}"
            )
        cols = [data.irreps[g].units[p][q] for (g, p, q) in self.symbols]
        rows = [[cols[j][i] for j in range(k.dim)] for i in range(k.dim)]
        self._inv = _mat_inverse(rows)
        self.dims = [data.irreps[g].dim for (g, p, q) in self.symbols]
        self.cache: dict = {}

    def to_units(self, element: Vector) -> Vector:
        if len(element) != self.algebra.dim:
            raise ValueError("element has wrong dimension")
        out = []
        for row in self._inv:
            acc = ZERO
            for c, x in zip(row, element):
                if not c.is_zero() and not x.is_zero():
                    acc = acc + c * x
            out.append(acc)
        return tuple(out)

    def from_units(self, coeffs: Vector) -> Vector:
        out = vec_zero(self.algebra.dim)
        for c, (g, p, q) in zip(coeffs, self.symbols):
            if not c.is_zero():
                out = vec_add(out, vec_scale(c, self.data.irreps[g].units[p][q]))
        return out

    def expand(self, element: Vector) -> list[tuple[tuple[int, int, int], AlgebraicReal]]:
        """Sparse matrix-unit expansion: [(symbol, coefficient), ...]."""
        coeffs = self.to_units(element)
        return [(sym, c) for sym, c in zip(self.symbols, coeffs) if not c.is_zero()]


def to_matrix_units(k: KacAlgebra, data: IrrepData, element: Vector) -> Vector:
    """Coefficients of an element over the matrix-unit basis."""
    return _unit_basis(k, data).to_units(element)


def from_matrix_units(k: KacAlgebra, data: IrrepData, coeffs: Vector) -> Vector:
    return _unit_basis(k, data).from_units(coeffs)


_basis_cache: dict[tuple[int, int], tuple[KacAlgebra, IrrepData, MatrixUnitBasis]] = {}


def _unit_basis(k: KacAlgebra, data: IrrepData) -> MatrixUnitBasis:
    key = (id(k), id(data))
    hit = _basis_cache.get(key)
    if hit is not None and hit[0] is k and hit[1] is data:
        return hit[2]
    basis = MatrixUnitBasis(k, data)
    _basis_cache[key] = (k, data, basis)
    return basis


def phi_moment(k: KacAlgebra, elements: Sequence[Vector]) -> AlgebraicReal:
    """phi(a_1 a_2 ... a_m) by iterated multiplication."""
    if not elements:
        raise ValueError("need at least one element")
    for a in elements:
        if len(a) != k.dim:
            raise ValueError("element has wrong dimension")
    return k.phi_of(k.multiply_many(elements))


# -- constructors ------------------------------------------------------------


def _check_group_table(table: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Returns (identity index, inverse table); raises ValueError if the
    table is not a group."""
    n = len(table)
    for row in table:
        if len(row) != n or any(not (0 <= x < n) for x in row):
            raise ValueError("table is not a square array over {0..n-1}")
    identity = None
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            identity = e
            break
    if identity is None:
        raise ValueError("table has no identity element")
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if table[table[i][j]][l] != table[i][table[j][l]]:
                    raise ValueError(f"table is not associative at ({i},{j},{l})")
    inverse = []
    for i in range(n):
        inv = next((j for j in range(n) if table[i][j] == identity and table[j][i] == identity), None)
        if inv is None:
            raise ValueError(f"element {i} has no inverse")
        inverse.append(inv)
    return identity, inverse


def group_algebra(
    table: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    name: str = "group-algebra",
) -> tuple[KacAlgebra, IrrepData]:
    """The group algebra of a finite group given by its Cayley table, with
    grouplike coproduct; the dual is commutative, so every irrep is a
    one-dimensional evaluation and its matrix unit is the group element."""
    n = len(table)
    identity, inverse = _check_group_table(table)
    labels = tuple(labels) if labels else tuple(f"g{i}" for i in range(n))
    if len(labels) != n:
        raise ValueError("label count does not match table size")
    mult = tuple(tuple(vec_unit(n, table[i][j]) for j in range(n)) for i in range(n))
    comult = tuple(
        tuple(tuple(ONE if (j == i and l == i) else ZERO for l in range(n)) for j in range(n))
        for i in range(n)
    )
    k = KacAlgebra(
        name=name,
        dim=n,
        basis=labels,
        mult=mult,
        unit=vec_unit(n, identity),
        comult=comult,
        counit=(ONE,) * n,
        antipode=tuple(vec_unit(n, inverse[i]) for i in range(n)),
        star=tuple(vec_unit(n, inverse[i]) for i in range(n)),
        phi=tuple(ONE if i == identity else ZERO for i in range(n)),
        integral=tuple(AlgebraicReal(Fraction(1, n)) for _ in range(n)),
    )
    data = IrrepData(tuple(Irrep(1, ((vec_unit(n, i),),)) for i in range(n)))
    return k, data


def dual_group_algebra(
    table: Sequence[Sequence[int]],
    irreps: Sequence[Sequence[Sequence[Sequence[AlgebraicReal]]]],
    labels: Sequence[str] | None = None,
    name: str = "dual-group-algebra",
) -> tuple[KacAlgebra, IrrepData]:
    """Functions on a finite group as a Kac algebra (pointwise product,
    convolution coproduct).  `irreps[r][g]` must be the exact unitary matrix
    of group element g in the r-th irrep of the group; the set must be
    complete (sum of squared dimensions = |G|)."""
    n = len(table)
    identity, inverse = _check_group_table(table)
    labels = tuple(labels) if labels else tuple(f"d{i}" for i in range(n))

    reps: list[list[list[list[AlgebraicReal]]]] = [
        [[[AlgebraicReal(x) for x in row] for row in mat] for mat in rep] for rep in irreps
    ]
    dims = []
    for r, rep in enumerate(reps):
        if len(rep) != n:
            raise KacValidationError(f"irrep {r}: expected {n} matrices")
        d = len(rep[0])
        dims.append(d)
        ident = [[ONE if a == b else ZERO for b in range(d)] for a in range(d)]
        if rep[identity] != ident:
            raise KacValidationError(f"irrep {r}: identity matrix is wrong")
        for g in range(n):
            mat = rep[g]
            if len(mat) != d or any(len(row) != d for row in mat):
                raise KacValidationError(f"irrep {r}: ragged matrix at {g}")
            # unitarity: conjugate transpose times matrix is the identity
            for a in range(d):
                for b in range(d):
                    acc = ZERO
                    for c in range(d):
                        acc = acc + mat[c][a].conj() * mat[c][b]
                    if acc != (ONE if a == b else ZERO):
                        raise KacValidationError(f"irrep {r}: matrix {g} is not unitary")
            for h in range(n):
                for a in range(d):
                    for b in range(d):
                        acc = ZERO
                        for c in range(d):
                            acc = acc + rep[g][a][c] * rep[h][c][b]
                        if acc != rep[table[g][h]][a][b]:
                            raise KacValidationError(
                                f"irrep {r}: homomorphism fails at ({g},{h})"
                            )
    if sum(d * d for d in dims) != n:
        raise KacValidationError(f"irreps are incomplete: sum d^2 = {sum(d*d for d in dims)} != {n}")

    mult = tuple(
        tuple(vec_unit(n, i) if i == j else vec_zero(n) for j in range(n)) for i in range(n)
    )
    comult = tuple(
        tuple(
            tuple(ONE if table[a][b] == g else ZERO for b in range(n)) for a in range(n)
        )
        for g in range(n)
    )
    k = KacAlgebra(
        name=name,
        dim=n,
        basis=labels,
        mult=mult,
        unit=(ONE,) * n,
        comult=comult,
        counit=tuple(ONE if g == identity else ZERO for g in range(n)),
        antipode=tuple(vec_unit(n, inverse[g]) for g in range(n)),
        star=tuple(vec_unit(n, g) for g in range(n)),
        phi=tuple(AlgebraicReal(Fraction(1, n)) for _ in range(n)),
        integral=vec_unit(n, identity),
    )
    irrep_objs = []
    for r, rep in enumerate(reps):
        d = dims[r]
        units = tuple(
            tuple(
                tuple(rep[g][p][q] for g in range(n))
                for q in range(d)
            )
            for p in range(d)
        )
        irrep_objs.append(Irrep(d, units))
    return k, IrrepData(tuple(irrep_objs))


# -- JSON interchange --------------------------------------------------------


def _vec_to_json(v: Vector) -> list:
    return [x.to_json() for x in v]


def _vec_from_json(data: list, n: int) -> Vector:
    if len(data) != n:
        raise KacValidationError(f"coefficient vector has length {len(data)}, expected {n}")
    return tuple(AlgebraicReal.from_json(x) for x in data)


def kac_to_json(k: KacAlgebra, data: IrrepData) -> dict:
    comult = []
    for i in range(k.dim):
        triples = []
        for j in range(k.dim):
            for l in range(k.dim):
                if not k.comult[i][j][l].is_zero():
                    triples.append([j, l, k.comult[i][j][l].to_json()])
        comult.append([i, triples])
    return {
        "name": k.name,
        "dim": k.dim,
        "basis": list(k.basis),
        "mult": [[i, j, _vec_to_json(k.mult[i][j])] for i in range(k.dim) for j in range(k.dim)],
        "unit": _vec_to_json(k.unit),
        "comult": comult,
        "counit": _vec_to_json(k.counit),
        "antipode": [_vec_to_json(v) for v in k.antipode],
        "star": [_vec_to_json(v) for v in k.star],
        "phi": _vec_to_json(k.phi),
        "integral": _vec_to_json(k.integral),
        "irreps": [
            {
                "dim": r.dim,
                "units": [
                    [p, q, _vec_to_json(r.units[p][q])]
                    for p in range(r.dim)
                    for q in range(r.dim)
                ],
            }
            for r in data.irreps
        ],
    }


def kac_from_json(source: dict | str) -> tuple[KacAlgebra, IrrepData]:
    """Load and fully validate a Kac algebra spec (dict, JSON text, or path)."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError:
            with open(source) as fh:
                data = json.load(fh)
    else:
        data = source
    n = int(data["dim"])
    mult_rows = [[None] * n for _ in range(n)]
    for i, j, vec in data["mult"]:
        mult_rows[i][j] = _vec_from_json(vec, n)
    if any(v is None for row in mult_rows for v in row):
        raise KacValidationError("mult table is incomplete")
    comult = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i, triples in data["comult"]:
        for j, l, c in triples:
            comult[i][j][l] = AlgebraicReal.from_json(c)
    k = KacAlgebra(
        name=data.get("name", "spec"),
        dim=n,
        basis=tuple(data["basis"]),
        mult=tuple(tuple(row) for row in mult_rows),
        unit=_vec_from_json(data["unit"], n),
        comult=tuple(tuple(tuple(row) for row in mat) for mat in comult),
        counit=_vec_from_json(data["counit"], n),
        antipode=tuple(_vec_from_json(v, n) for v in data["antipode"]),
        star=tuple(_vec_from_json(v, n) for v in data["star"]),
        phi=_vec_from_json(data["phi"], n),
        integral=_vec_from_json(data["integral"], n),
    )
    irreps = []
    for rec in data["irreps"]:
        d = int(rec["dim"])
        units = [[None] * d for _ in range(d)]
        for p, q, vec in rec["units"]:
            units[p][q] = _vec_from_json(vec, n)
        if any(u is None for row in units for u in row):
            raise KacValidationError("irrep units are incomplete")
        irreps.append(Irrep(d, tuple(tuple(row) for row in units)))
    irrep_data = IrrepData(tuple(irreps))

    report = validate(k)
    if not report.ok:
        raise KacValidationError(f"axiom validation failed: {report.failures()}")
    report2 = validate_irreps(k, irrep_data)
    if not report2.ok:
        raise KacValidationError(f"irrep validation failed: {report2.failures()}")
    return k, irrep_data
