"""Non-crossing partition lattice: enumeration, Mobius function, multiplicative
extensions, moment/cumulant transforms, the Temperley-Lieb bijection and loop
counting for partition closures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .algnum import ONE, AlgebraicReal
from .errors import CapExceeded

__all__ = [
    "NCPartition",
    "TLPairing",
    "FunctionTable",
    "catalan",
    "enumerate_nc",
    "enumerate_nc_of",
    "mobius",
    "multiplicative_extension",
    "moments_to_cumulants",
    "cumulants_to_moments",
    "tl_from_nc",
    "nc_from_tl",
    "closure_loop_count",
]

ENUMERATION_CAP = 14
TRANSFORM_CAP = 12


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _is_noncrossing(classes: Sequence[Sequence[int]]) -> bool:
    # two classes cross iff their merged label sequence alternates >= 4 runs
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            a, b = classes[i], classes[j]
            merged = sorted([(x, 0) for x in a] + [(x, 1) for x in b])
            runs = 1
            for k in range(1, len(merged)):
                if merged[k][1] != merged[k - 1][1]:
                    runs += 1
            if runs >= 4:
                return False
    return True


@dataclass(frozen=True)
class NCPartition:
    """Non-crossing partition of a finite totally ordered set of positive
    integers.  Classes are sorted internally and ordered by their minima."""

    ground: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            if list(cls) != sorted(cls) or len(set(cls)) != len(cls):
                raise ValueError(f"class {cls} is not sorted & distinct")
            if seen & set(cls):
                raise ValueError("classes are not disjoint")
            seen.update(cls)
        if seen != set(self.ground) or list(self.ground) != sorted(set(self.ground)):
            raise ValueError("classes do not partition the ground set")
        if list(self.classes) != sorted(self.classes, key=lambda c: c[0]):
            raise ValueError("classes must be ordered by minima")
        if not _is_noncrossing(self.classes):
            raise ValueError(f"partition {list(self.classes)} is crossing")

    @staticmethod
    def _unsafe(ground: tuple[int, ...], classes: tuple[tuple[int, ...], ...]) -> "NCPartition":
        self = object.__new__(NCPartition)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "classes", classes)
        return self

    @classmethod
    def of(cls, *classes: Iterable[int]) -> "NCPartition":
        cl = tuple(sorted((tuple(sorted(c)) for c in classes), key=lambda c: c[0]))
        ground = tuple(sorted(x for c in cl for x in c))
        return cls(ground, cl)

    @classmethod
    def full(cls, n: int) -> "NCPartition":
        """The one-class partition 1_n."""
        g = tuple(range(1, n + 1))
        return cls(g, (g,))

    @classmethod
    def singletons(cls, n: int) -> "NCPartition":
        """The all-singletons partition 0_n."""
        g = tuple(range(1, n + 1))
        return cls(g, tuple((i,) for i in g))

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_of(self, x: int) -> tuple[int, ...]:
        for c in self.classes:
            if x in c:
                return c
        raise KeyError(x)

    def leader_vector(self) -> tuple[int, ...]:
        leader = {x: c[0] for c in self.classes for x in c}
        return tuple(leader[x] for x in self.ground)

    def refines(self, other: "NCPartition") -> bool:
        """self <= other in the refinement order (same ground set)."""
        if self.ground != other.ground:
            return False
        owner = {x: i for i, c in enumerate(other.classes) for x in c}
        return all(len({owner[x] for x in c}) == 1 for c in self.classes)

    def restrict(self, subset: Iterable[int]) -> "NCPartition":
        sub = set(subset)
        if not sub <= set(self.ground):
            raise ValueError("subset is not contained in the ground set")
        classes = tuple(
            tuple(x for x in c if x in sub) for c in self.classes if sub & set(c)
        )
        return NCPartition._unsafe(tuple(sorted(sub)), classes)

    def union(self, other: "NCPartition") -> "NCPartition":
        """Disjoint-ground union; validates the result is non-crossing."""
        if set(self.ground) & set(other.ground):
            raise ValueError("ground sets overlap")
        classes = tuple(sorted(self.classes + other.classes, key=lambda c: c[0]))
        return NCPartition(tuple(sorted(self.ground + other.ground)), classes)

    def canonical_key(self) -> tuple[tuple[int, ...], ...]:
        """Classes relabeled along the order isomorphism ground -> [m]."""
        rank = {x: i + 1 for i, x in enumerate(self.ground)}
        return tuple(tuple(rank[x] for x in c) for c in self.classes)

    def to_json(self) -> dict:
        return {"n": self.size, "classes": [list(c) for c in self.classes]}

    @classmethod
    def from_json(cls, data: dict) -> "NCPartition":
        return cls.of(*data["classes"])

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.classes) + "}"


def _enumerate_ground(ground: tuple[int, ...]) -> list[NCPartition]:
    """All non-crossing partitions of `ground`, lexicographic by leader vector.

    Scans positions left to right keeping a stack of open classes whose
    leaders increase bottom to top; an element either joins a stack class
    (closing everything above it) or opens a new class.
    """
    n = len(ground)
    if n == 0:
        return [NCPartition._unsafe((), ())]
    out: list[NCPartition] = []
    classes: list[list[int]] = []
    stack: list[int] = []

    def rec(i: int) -> None:
        if i == n:
            out.append(
                NCPartition._unsafe(ground, tuple(tuple(c) for c in classes))
            )
            return
        x = ground[i]
        for depth in range(len(stack)):
            popped = stack[depth + 1 :]
            del stack[depth + 1 :]
            classes[stack[depth]].append(x)
            rec(i + 1)
            classes[stack[depth]].pop()
            stack.extend(popped)
        classes.append([x])
        stack.append(len(classes) - 1)
        rec(i + 1)
        stack.pop()
        classes.pop()

    rec(0)
    return out


def enumerate_nc(n: int) -> list[NCPartition]:
    """All of NC(n), deterministically ordered (count is catalan(n))."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > ENUMERATION_CAP:
        raise CapExceeded(f"NC({n}) exceeds the enumeration cap {ENUMERATION_CAP}")
    return _enumerate_ground(tuple(range(1, n + 1)))


def enumerate_nc_of(ground: Iterable[int]) -> list[NCPartition]:
    """All non-crossing partitions of an arbitrary index set (may be empty)."""
    g = tuple(sorted(ground))
    if len(g) > ENUMERATION_CAP:
        raise CapExceeded(f"NC of {len(g)} points exceeds the enumeration cap")
    return _enumerate_ground(g)


@lru_cache(maxsize=None)
def _nc_cached(n: int) -> tuple[NCPartition, ...]:
    return tuple(_enumerate_ground(tuple(range(1, n + 1))))


@lru_cache(maxsize=None)
def _nc_class_indices(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Classes of each partition of NC(n) as 0-based index tuples (hot loops)."""
    return tuple(
        tuple(tuple(x - 1 for x in c) for c in pi.classes) for pi in _nc_cached(n)
    )


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for k in range(len(sub)):
            yield sub[:k] + [[first] + sub[k]] + sub[k + 1 :]
        yield [[first]] + sub


_mu_memo: dict[tuple[tuple[int, ...], ...], int] = {}


def _mu_to_top(classes: tuple[tuple[int, ...], ...]) -> int:
    """mu(sigma, 1_m) for sigma given by canonically labeled classes."""
    if len(classes) == 1:
        return 1
    cached = _mu_memo.get(classes)
    if cached is not None:
        return cached
    # the defining recursion sum_{sigma <= tau <= 1} mu(tau, 1) = 0
    total = 0
    for grouping in _set_partitions(list(classes)):
        if len(grouping) == len(classes):
            continue  # tau = sigma
        merged = tuple(
            sorted((tuple(sorted(x for c in grp for x in c)) for grp in grouping),
                   key=lambda c: c[0])
        )
        if _is_noncrossing(merged):
            total += _mu_to_top(merged)
    _mu_memo[classes] = -total
    return -total


def mobius(rho: NCPartition, pi: NCPartition) -> int:
    """Mobius function of the interval [rho, pi] in NC; the interval factors
    over the classes of pi into full intervals of smaller NC lattices."""
    if not rho.refines(pi):
        raise ValueError("rho does not refine pi")
    result = 1
    for c in pi.classes:
        result *= _mu_to_top(rho.restrict(c).canonical_key())
    return result


class FunctionTable:
    """Arity-indexed family of multilinear-functional values: maps an argument
    tuple of any length up to `t_max` to an AlgebraicReal, memoizing."""

    def __init__(self, fn: Callable[[tuple], AlgebraicReal], *, t_max: int, name: str = ""):
        self._fn = fn
        self.t_max = t_max
        self.name = name
        self._memo: dict[tuple, AlgebraicReal] = {}

    @classmethod
    def from_mapping(cls, mapping: dict[tuple, AlgebraicReal], *, t_max: int, name: str = "") -> "FunctionTable":
        def fn(args: tuple) -> AlgebraicReal:
            try:
                return mapping[args]
            except KeyError:
                raise KeyError(f"table {name!r} has no entry for {args}") from None

        return cls(fn, t_max=t_max, name=name)

    def __call__(self, args: tuple) -> AlgebraicReal:
        t = len(args)
        if t < 1:
            raise ValueError("argument tuple must be nonempty")
        if t > self.t_max:
            raise CapExceeded(f"arity {t} exceeds table cap {self.t_max}")
        val = self._memo.get(args)
        if val is None:
            val = AlgebraicReal(self._fn(args))
            self._memo[args] = val
        return val


def multiplicative_extension(f: FunctionTable | Callable[[tuple], AlgebraicReal],
                             pi: NCPartition, args: tuple) -> AlgebraicReal:
    """f_pi(args): product over classes of f on the class arguments listed
    with increasing indices.  args[i] corresponds to the i-th ground element."""
    if len(args) != len(pi.ground):
        raise ValueError(f"expected {len(pi.ground)} arguments, got {len(args)}")
    pos = {g: i for i, g in enumerate(pi.ground)}
    out = ONE
    for c in pi.classes:
        out = out * f(tuple(args[pos[x]] for x in c))
        if out.is_zero():
            break
    return out


def moments_to_cumulants(phi: FunctionTable, t_max: int | None = None) -> FunctionTable:
    """Cumulant table paired with `phi`: the inverse of summing multiplicative
    extensions over NC(n), solved by peeling the full-partition term."""
    cap = min(phi.t_max, t_max if t_max is not None else phi.t_max)
    if cap > TRANSFORM_CAP:
        raise CapExceeded(f"transform cap is {TRANSFORM_CAP}, requested {cap}")

    def kappa_fn(args: tuple) -> AlgebraicReal:
        total = phi(args)
        for classes in _nc_class_indices(len(args)):
            if len(classes) == 1:
                continue
            prod = ONE
            for c in classes:
                prod = prod * table(tuple(args[x] for x in c))
                if prod.is_zero():
                    break
            total = total - prod
        return total

    table = FunctionTable(kappa_fn, t_max=cap, name=f"cumulants({phi.name})")
    return table


def cumulants_to_moments(kappa: FunctionTable, t_max: int | None = None) -> FunctionTable:
    """Moment table paired with `kappa`: sums kappa's multiplicative extension
    over all of NC(n)."""
    cap = min(kappa.t_max, t_max if t_max is not None else kappa.t_max)
    if cap > TRANSFORM_CAP:
        raise CapExceeded(f"transform cap is {TRANSFORM_CAP}, requested {cap}")

    def phi_fn(args: tuple) -> AlgebraicReal:
        total = AlgebraicReal(0)
        for classes in _nc_class_indices(len(args)):
            prod = ONE
            for c in classes:
                prod = prod * kappa(tuple(args[x] for x in c))
                if prod.is_zero():
                    break
            total = total + prod
        return total

    return FunctionTable(phi_fn, t_max=cap, name=f"moments({kappa.name})")


@dataclass(frozen=True)
class TLPairing:
    """Perfect non-crossing matching on 2n points; point 2i-1 is the left leg
    and 2i the right leg of box i."""

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pts = [p for a in self.arcs for p in a]
        if sorted(pts) != list(range(1, 2 * self.n + 1)):
            raise ValueError("arcs are not a perfect matching on 2n points")
        for a, b in self.arcs:
            if a >= b:
                raise ValueError("arcs must be stored (low, high)")
        for i in range(len(self.arcs)):
            for j in range(i + 1, len(self.arcs)):
                a, b = self.arcs[i], self.arcs[j]
                if a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]:
                    raise ValueError(f"arcs {a} and {b} cross")
        if list(self.arcs) != sorted(self.arcs):
            raise ValueError("arcs must be sorted")

    @classmethod
    def of(cls, n: int, arcs: Iterable[Iterable[int]]) -> "TLPairing":
        return cls(n, tuple(sorted(tuple(sorted(a)) for a in arcs)))

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_json(cls, data: dict) -> "TLPairing":
        return cls.of(data["n"], data["arcs"])


def tl_from_nc(pi: NCPartition) -> TLPairing:
    """Diagram of a non-crossing partition of [n]: each class {c_1<...<c_k}
    contributes the arcs (2c_j, 2c_{j+1}-1) and the return arc (2c_k, 2c_1-1)."""
    n = pi.size
    if pi.ground != tuple(range(1, n + 1)):
        raise ValueError("partition must live on {1..n}")
    arcs = []
    for c in pi.classes:
        for j in range(len(c) - 1):
            arcs.append((2 * c[j], 2 * c[j + 1] - 1))
        arcs.append((2 * c[-1], 2 * c[0] - 1))
    return TLPairing.of(n, arcs)


def nc_from_tl(t: TLPairing) -> NCPartition:
    """Inverse of tl_from_nc: arcs join right legs to left legs; following
    them yields the cyclic class structure."""
    succ: dict[int, int] = {}
    for a, b in t.arcs:
        even, odd = (a, b) if a % 2 == 0 else (b, a)
        if even % 2 or odd % 2 == 0:
            raise ValueError(f"arc ({a},{b}) does not join a right leg to a left leg")
        succ[even // 2] = (odd + 1) // 2
    classes = []
    seen: set[int] = set()
    for i in range(1, t.n + 1):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = succ[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = succ[j]
        classes.append(cyc)
    return NCPartition.of(*classes)


def closure_loop_count(pi: NCPartition) -> int:
    """Number of loops in the closed-up diagram of pi: cycles of the union of
    the diagram matching with the wrap-around matching {2i, 2i+1}, plus one
    for the outer closure strand."""
    n = pi.size
    diagram = {p: q for a in tl_from_nc(pi).arcs for p, q in (a, a[::-1])}
    closure = {}
    for i in range(1, n):
        closure[2 * i] = 2 * i + 1
        closure[2 * i + 1] = 2 * i
    closure[2 * n] = 1
    closure[1] = 2 * n
    cycles = 0
    seen: set[int] = set()
    for start in range(1, 2 * n + 1):
        if start in seen:
            continue
        cycles += 1
        p, use_diagram = start, True
        while True:
            seen.add(p)
            p = diagram[p] if use_diagram else closure[p]
            use_diagram = not use_diagram
            if p == start and use_diagram:
                break
    return cycles + 1
