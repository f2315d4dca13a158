"""Algebraic models of the first two graded algebras of the GJS tower over a
Kac algebra: the tensor-algebra picture with its trace via matrix-unit free
cumulants, the crossed-product picture with both trace routes (cumulant kernel
and loop/induced-partition expansion), and R-cyclicity/freeness verification.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algnum import ONE, ZERO, AlgebraicReal
from .errors import CapExceeded
from .kac import (
    IrrepData,
    KacAlgebra,
    MatrixUnitBasis,
    ValidationReport,
    Vector,
    _unit_basis,
    phi_moment,
    vec_add,
    vec_scale,
    vec_zero,
)
from .ncpart import (
    FunctionTable,
    NCPartition,
    _nc_class_indices,
    enumerate_nc_of,
    moments_to_cumulants,
)

__all__ = [
    "Letter",
    "Word",
    "X",
    "kac_letter",
    "CrossedElement",
    "kappa_matrix_units",
    "unit_word_moment",
    "tau1",
    "free_poisson_moment",
    "matrix_moment",
    "induced_partition",
    "tau2",
    "tau2_diagrammatic",
    "verify_r_cyclic",
    "verify_freeness",
    "MAX_WORD_LEN",
]

MAX_WORD_LEN = 12
POISSON_CAP = 14
MATRIX_MOMENT_CAP = 8


@dataclass(frozen=True)
class Letter:
    """One letter of a generator word: the distinguished free Poisson
    generator, or an element of the acting Kac algebra."""

    kind: str
    coeffs: Vector | None = None

    def __post_init__(self):
        if self.kind not in ("X", "kac"):
            raise ValueError(f"unknown letter kind {self.kind!r}")
        if (self.kind == "kac") != (self.coeffs is not None):
            raise ValueError("kac letters carry coefficients; X does not")

    def to_json(self) -> dict:
        if self.kind == "X":
            return {"kind": "X"}
        return {"kind": "kac", "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Letter":
        if data["kind"] == "X":
            return X
        return cls("kac", tuple(AlgebraicReal.from_json(c) for c in data["coeffs"]))


X = Letter("X")


def kac_letter(coeffs: Iterable[AlgebraicReal]) -> Letter:
    return Letter("kac", tuple(AlgebraicReal(c) for c in coeffs))


@dataclass(frozen=True)
class Word:
    """Finite product of letters; positions are 1-based so they double as
    partition ground elements."""

    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def x_positions(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, l in enumerate(self.letters) if l.kind == "X")

    @property
    def kac_positions(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, l in enumerate(self.letters) if l.kind == "kac")

    def to_json(self) -> dict:
        return {"letters": [l.to_json() for l in self.letters]}

    @classmethod
    def from_json(cls, data: dict) -> "Word":
        return cls(tuple(Letter.from_json(l) for l in data["letters"]))


# -- first graded algebra: trace via matrix-unit cumulants -------------------


@lru_cache(maxsize=None)
def _kernel_power(delta: AlgebraicReal, d: int, t: int) -> AlgebraicReal:
    return (delta / d) ** (t - 1)


def kappa_matrix_units(
    delta: AlgebraicReal,
    dims: Sequence[int],
    letters: Sequence[tuple[int, int, int]],
) -> AlgebraicReal:
    """Free cumulant of matrix-unit generators: (delta/d)^(t-1) when all
    letters belong to one irrep and the indices form a cycle
    (q_1 = p_2, ..., q_t = p_1; a single letter must be diagonal), else 0."""
    t = len(letters)
    if t == 0:
        raise ValueError("need at least one letter")
    g0 = letters[0][0]
    if any(g != g0 for g, _, _ in letters):
        return ZERO
    for s in range(t):
        if letters[s][2] != letters[(s + 1) % t][1]:
            return ZERO
    return _kernel_power(delta, dims[g0], t)


def unit_word_moment(
    basis: MatrixUnitBasis, symbols: tuple[tuple[int, int, int], ...]
) -> AlgebraicReal:
    """Trace of a word of matrix units in the first graded algebra: sum of
    the cumulant kernel's multiplicative extension over NC(t).  Memoized on
    the basis object."""
    memo = basis.cache.setdefault("unit_moments", {})
    val = memo.get(symbols)
    if val is not None:
        return val
    delta = basis.algebra.delta
    dims = basis.data.dims
    total = ZERO
    for classes in _nc_class_indices(len(symbols)):
        prod = ONE
        for c in classes:
            prod = prod * kappa_matrix_units(delta, dims, tuple(symbols[x] for x in c))
            if prod.is_zero():
                break
        total = total + prod
    memo[symbols] = total
    return total


def tau1(
    k: KacAlgebra,
    irreps: IrrepData,
    word: Sequence[Vector],
    max_len: int = MAX_WORD_LEN,
) -> AlgebraicReal:
    """Trace of a product of 2-box elements in the first graded algebra:
    multilinear expansion over the matrix-unit basis of the cumulant-kernel
    moment."""
    t = len(word)
    if t == 0:
        return ONE
    if t > max_len:
        raise CapExceeded(f"word length {t} exceeds cap {max_len}")
    basis = _unit_basis(k, irreps)
    expansions = [basis.expand(v) for v in word]
    total = ZERO
    for combo in itertools.product(*expansions):
        coeff = ONE
        for _, c in combo:
            coeff = coeff * c
        if coeff.is_zero():
            continue
        m = unit_word_moment(basis, tuple(sym for sym, _ in combo))
        if not m.is_zero():
            total = total + coeff * m
    return total


def free_poisson_moment(
    rate: AlgebraicReal, jump: AlgebraicReal, t: int, cap: int = POISSON_CAP
) -> AlgebraicReal:
    """t-th moment of the free Poisson law: sum over NC(t) of
    rate^(#classes) * jump^t, aggregated with the Narayana count of
    partitions by class number."""
    if t < 1:
        raise ValueError("t must be positive")
    if t > cap:
        raise CapExceeded(f"moment order {t} exceeds cap {cap}")
    rate = AlgebraicReal(rate)
    total = ZERO
    for classes in range(1, t + 1):
        narayana = math.comb(t, classes) * math.comb(t, classes - 1) // t
        total = total + narayana * rate**classes
    return total * AlgebraicReal(jump) ** t


def matrix_moment(
    k: KacAlgebra,
    irreps: IrrepData,
    gamma: int,
    t: int,
    cap: int = MATRIX_MOMENT_CAP,
) -> AlgebraicReal:
    """Normalised trace of the t-th power of the matrix of gamma's units:
    (1/d) sum over index cycles i_1..i_t of the trace of the unit word."""
    if t < 1:
        raise ValueError("t must be positive")
    if t > cap:
        raise CapExceeded(f"moment order {t} exceeds cap {cap}")
    basis = _unit_basis(k, irreps)
    d = irreps.irreps[gamma].dim
    total = ZERO
    for idx in itertools.product(range(d), repeat=t):
        symbols = tuple(
            (gamma, idx[s], idx[(s + 1) % t]) for s in range(t)
        )
        total = total + unit_word_moment(basis, symbols)
    return total / d


# -- second graded algebra: two trace routes ---------------------------------


def induced_partition(pi: NCPartition, e_indices: Iterable[int]) -> NCPartition:
    """Coarsest partition of the complementary index set whose union with pi
    stays non-crossing: the transitive closure of e ~ e' when every class of
    pi lies entirely inside or entirely outside the open interval (e, e')."""
    e_sorted = tuple(sorted(e_indices))
    d_set = set(pi.ground)
    if d_set & set(e_sorted):
        raise ValueError("index sets are not disjoint")
    t = len(e_sorted) + len(d_set)
    if set(e_sorted) | d_set != set(range(1, t + 1)):
        raise ValueError("index sets must partition {1..t}")
    parent = {e: e for e in e_sorted}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a_pos in range(len(e_sorted)):
        for b_pos in range(a_pos + 1, len(e_sorted)):
            e, e2 = e_sorted[a_pos], e_sorted[b_pos]
            ok = True
            for c in pi.classes:
                inside = sum(1 for x in c if e < x < e2)
                if inside not in (0, len(c)):
                    ok = False
                    break
            if ok:
                parent[find(e)] = find(e2)
    groups: dict[int, list[int]] = {}
    for e in e_sorted:
        groups.setdefault(find(e), []).append(e)
    return NCPartition.of(*groups.values()) if groups else NCPartition._unsafe((), ())


def _phi_moment_table(k: KacAlgebra) -> FunctionTable:
    table = k._caches.get("phi_moments")
    if table is None:
        table = FunctionTable(
            lambda args: phi_moment(k, args), t_max=MAX_WORD_LEN, name="phi"
        )
        k._caches["phi_moments"] = table
    return table


def _phi_cumulant_table(k: KacAlgebra) -> FunctionTable:
    table = k._caches.get("phi_cumulants")
    if table is None:
        table = moments_to_cumulants(_phi_moment_table(k))
        k._caches["phi_cumulants"] = table
    return table


def tau2(k: KacAlgebra, word: Word, max_len: int = MAX_WORD_LEN) -> AlgebraicReal:
    """Trace on the crossed-product picture via the mixed cumulant kernel:
    blocks of the free Poisson generator contribute delta^(size-1), blocks of
    Kac letters contribute the free cumulant of the phi-moment family, and
    blocks mixing the two kinds vanish."""
    t = len(word)
    if t == 0:
        return ONE
    if t > max_len:
        raise CapExceeded(f"word length {t} exceeds cap {max_len}")
    delta = k.delta
    kappa_phi = _phi_cumulant_table(k)
    letters = word.letters
    total = ZERO
    for classes in _nc_class_indices(t):
        prod = ONE
        for c in classes:
            kinds = {letters[x].kind for x in c}
            if len(kinds) > 1:
                prod = ZERO
                break
            if "X" in kinds:
                prod = prod * delta ** (len(c) - 1)
            else:
                prod = prod * kappa_phi(tuple(letters[x].coeffs for x in c))
            if prod.is_zero():
                break
        if not prod.is_zero():
            total = total + prod
    return total


def tau2_diagrammatic(
    k: KacAlgebra, word: Word, max_len: int = MAX_WORD_LEN
) -> AlgebraicReal:
    """Trace on the crossed-product picture via the loop expansion: sum over
    non-crossing partitions of the free-Poisson positions, each weighted by
    delta^(positions - classes) times the phi-moment product over the induced
    partition of the Kac positions."""
    t = len(word)
    if t == 0:
        return ONE
    if t > max_len:
        raise CapExceeded(f"word length {t} exceeds cap {max_len}")
    delta = k.delta
    d_pos = word.x_positions
    e_pos = word.kac_positions
    letters = word.letters
    phi_table = _phi_moment_table(k)
    total = ZERO
    for pi in enumerate_nc_of(d_pos):
        weight = delta ** (len(d_pos) - pi.num_classes)
        tilde = induced_partition(pi, e_pos)
        for c in tilde.classes:
            weight = weight * phi_table(tuple(letters[x - 1].coeffs for x in c))
            if weight.is_zero():
                break
        if not weight.is_zero():
            total = total + weight
    return total


# -- crossed product model ----------------------------------------------------


class CrossedElement:
    """Element of the crossed product of the tensor algebra by the acting
    Kac algebra: a formal sum of basis terms (index word | group part) with
    exact coefficients.  Immutable once built."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: KacAlgebra, terms: dict[tuple[tuple[int, ...], int], AlgebraicReal] | None = None):
        self.algebra = algebra
        self.terms = {key: c for key, c in (terms or {}).items() if not c.is_zero()}

    # constructors

    @classmethod
    def zero(cls, k: KacAlgebra) -> "CrossedElement":
        return cls(k)

    @classmethod
    def one(cls, k: KacAlgebra) -> "CrossedElement":
        return cls(k, {((), j): c for j, c in enumerate(k.unit) if not c.is_zero()})

    @classmethod
    def acting(cls, k: KacAlgebra, a: Vector) -> "CrossedElement":
        """The element (empty word | a): the acting copy of the algebra."""
        return cls(k, {((), j): c for j, c in enumerate(a) if not c.is_zero()})

    @classmethod
    def tensor_word(cls, k: KacAlgebra, letters: Sequence[Vector]) -> "CrossedElement":
        """The element (x_1 (x) ... (x) x_m | 1)."""
        terms: dict[tuple[tuple[int, ...], int], AlgebraicReal] = {}
        for combo in itertools.product(*[list(enumerate(v)) for v in letters]):
            coeff = ONE
            for _, c in combo:
                coeff = coeff * c
            if coeff.is_zero():
                continue
            wkey = tuple(i for i, _ in combo)
            for j, cu in enumerate(k.unit):
                if not cu.is_zero():
                    key = (wkey, j)
                    acc = terms.get(key, ZERO) + coeff * cu
                    terms[key] = acc
        return cls(k, terms)

    @classmethod
    def generator(cls, k: KacAlgebra) -> "CrossedElement":
        """The distinguished degree-one generator: the unit as a tensor letter."""
        return cls.tensor_word(k, [k.unit])

    @classmethod
    def from_word(cls, k: KacAlgebra, word: Word) -> "CrossedElement":
        out = cls.one(k)
        for letter in word.letters:
            factor = (
                cls.generator(k) if letter.kind == "X" else cls.acting(k, letter.coeffs)
            )
            out = out * factor
        return out

    # algebra operations

    def _add_term(self, terms: dict, key, c: AlgebraicReal) -> None:
        acc = terms.get(key, ZERO) + c
        if acc.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = acc

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        if self.algebra is not other.algebra:
            raise ValueError("elements live over different algebras")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            self._add_term(terms, key, c)
        return CrossedElement(self.algebra, terms)

    def __sub__(self, other: "CrossedElement") -> "CrossedElement":
        return self + other.scale(AlgebraicReal(-1))

    def scale(self, c) -> "CrossedElement":
        c = AlgebraicReal(c)
        return CrossedElement(
            self.algebra, {key: c * v for key, v in self.terms.items()}
        )

    def __mul__(self, other: "CrossedElement") -> "CrossedElement":
        """Crossed multiplication: the group part acts on the incoming tensor
        word through the iterated coproduct, leg by leg, before the group
        parts multiply."""
        if self.algebra is not other.algebra:
            raise ValueError("elements live over different algebras")
        k = self.algebra
        out: dict[tuple[tuple[int, ...], int], AlgebraicReal] = {}
        for (w1, j1), c1 in self.terms.items():
            for (w2, j2), c2 in other.terms.items():
                base = c1 * c2
                s = len(w2)
                for legs, cc in k.iterated_coproduct(j1, s + 1).items():
                    coeff0 = base * cc
                    if coeff0.is_zero():
                        continue
                    partial: list[tuple[tuple[int, ...], AlgebraicReal]] = [((), coeff0)]
                    for pos in range(s):
                        vec = k.mult[legs[pos]][w2[pos]]
                        nxt = []
                        for pref, co in partial:
                            for idx, m in enumerate(vec):
                                if not m.is_zero():
                                    nxt.append((pref + (idx,), co * m))
                        partial = nxt
                        if not partial:
                            break
                    group_vec = k.mult[legs[s]][j2]
                    for pref, co in partial:
                        for idx, m in enumerate(group_vec):
                            if not m.is_zero():
                                self._add_term(out, (w1 + pref, idx), co * m)
        return CrossedElement(k, out)

    def dagger(self) -> "CrossedElement":
        """Conjugate-linear involutive antihomomorphism: tensor words reverse
        with letters sent through antipode-then-star, group parts through
        star, composed as (1|a)^dagger (w|1)^dagger."""
        k = self.algebra
        out = CrossedElement.zero(k)
        for (w, j), c in self.terms.items():
            left = CrossedElement.acting(k, k.star[j]).scale(c.conj())
            reversed_letters = [k.star_of(k.antipode[i]) for i in reversed(w)]
            right = CrossedElement.tensor_word(k, reversed_letters)
            out = out + left * right
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossedElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    def degrees(self) -> set[int]:
        return {len(w) for w, _ in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (w, j), c in sorted(self.terms.items()):
            wtxt = "(x)".join(self.algebra.basis[i] for i in w) if w else "1"
            bits.append(f"({c})*[{wtxt} | {self.algebra.basis[j]}]")
        return " + ".join(bits)

    __repr__ = __str__


# -- verification suites -------------------------------------------------------


def verify_r_cyclic(
    k: KacAlgebra, irreps: IrrepData, gamma: int, t_max: int = 6
) -> ValidationReport:
    """Checks that the matrix of gamma's units is uniformly R-cyclic: entry
    cumulants recovered from trace moments match the determining sequence,
    and the matrix's own moments match the free Poisson law."""
    rep = ValidationReport()
    basis = _unit_basis(k, irreps)
    delta = k.delta
    dims = irreps.dims
    d = dims[gamma]
    symbols = [(gamma, p, q) for p in range(d) for q in range(d)]
    moment_table = FunctionTable(
        lambda syms: unit_word_moment(basis, syms), t_max=t_max, name="unit-moments"
    )
    kappa_rec = moments_to_cumulants(moment_table)

    witness = None
    for t in range(1, t_max + 1):
        for combo in itertools.product(symbols, repeat=t):
            expected = kappa_matrix_units(delta, dims, combo)
            if kappa_rec(combo) != expected:
                witness = f"order {t} cumulant at {combo}"
                break
        if witness:
            break
    rep.record(f"uniform-r-cyclic-cumulants(gamma={gamma}, t<={t_max})", witness is None, witness)

    witness = None
    rate, jump = delta.inverse(), delta
    for t in range(1, t_max + 1):
        lhs = matrix_moment(k, irreps, gamma, t, cap=max(t_max, MATRIX_MOMENT_CAP))
        rhs = free_poisson_moment(rate, jump, t)
        if lhs != rhs:
            witness = f"order {t}: {lhs} != {rhs}"
            break
    rep.record(f"matrix-moments-free-poisson(gamma={gamma}, t<={t_max})", witness is None, witness)
    return rep


def verify_freeness(k: KacAlgebra, irreps: IrrepData, t_max: int = 6) -> ValidationReport:
    """Checks that mixed cumulants across distinct irreps vanish, order by
    order up to t_max, with cumulants recovered from trace moments."""
    rep = ValidationReport()
    basis = _unit_basis(k, irreps)
    symbols = list(basis.symbols)
    moment_table = FunctionTable(
        lambda syms: unit_word_moment(basis, syms), t_max=t_max, name="unit-moments"
    )
    kappa_rec = moments_to_cumulants(moment_table)

    for t in range(2, t_max + 1):
        witness = None
        checked = 0
        for combo in itertools.product(symbols, repeat=t):
            if len({sym[0] for sym in combo}) < 2:
                continue
            checked += 1
            if not kappa_rec(combo).is_zero():
                witness = f"nonzero mixed cumulant at {combo}"
                break
        rep.record(
            f"mixed-cumulants-vanish(order={t}, checked={checked})",
            witness is None,
            witness,
        )
    return rep
