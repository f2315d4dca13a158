"""Built-in Kac algebra instances: cyclic group algebras, the symmetric group
on three letters, and their duals.  Irreps are exact unitary matrices; cyclic
characters are available whenever the needed root of unity lives in a
multi-quadratic field (orders 1, 2, 3, 4, 6)."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algnum import ONE, ZERO, AlgebraicReal
from .kac import IrrepData, KacAlgebra, dual_group_algebra, group_algebra

__all__ = [
    "BUILTIN_NAMES",
    "builtin",
    "cyclic_table",
    "cyclic_characters",
    "s3_table",
    "s3_irreps",
]


def cyclic_table(m: int) -> list[list[int]]:
    return [[(i + j) % m for j in range(m)] for i in range(m)]


def cyclic_labels(m: int) -> list[str]:
    if m == 2:
        return ["e", "u"]
    return ["e"] + [f"g{i}" if i > 1 else "g" for i in range(1, m)]


_ROOTS_OF_UNITY: dict[int, AlgebraicReal] = {
    1: ONE,
    2: AlgebraicReal(-1),
    3: AlgebraicReal({1: Fraction(-1, 2), -3: Fraction(1, 2)}),
    4: AlgebraicReal.sqrt(-1),
    6: AlgebraicReal({1: Fraction(1, 2), -3: Fraction(1, 2)}),
}


def cyclic_characters(m: int) -> list[list[list[list[AlgebraicReal]]]]:
    """All m characters of Z/m as 1x1 matrices, exact; only orders whose
    primitive root of unity is multi-quadratic are supported."""
    if m not in _ROOTS_OF_UNITY:
        raise ValueError(
            f"exact characters of Z/{m} need a degree-{m} root of unity outside "
            "multi-quadratic fields; supply them via the JSON loader instead"
        )
    omega = _ROOTS_OF_UNITY[m]
    powers = [ONE]
    for _ in range(1, m):
        powers.append(powers[-1] * omega)
    return [[[[powers[(j * k) % m]]] for j in range(m)] for k in range(m)]


def _perm_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(p)))


def _s3_elements() -> list[tuple[int, ...]]:
    return sorted(itertools.permutations(range(3)))


def s3_table() -> list[list[int]]:
    elems = _s3_elements()
    index = {p: i for i, p in enumerate(elems)}
    return [[index[_perm_compose(p, q)] for q in elems] for p in elems]


def s3_labels() -> list[str]:
    names = {
        (0, 1, 2): "e",
        (0, 2, 1): "(12)",
        (1, 0, 2): "(01)",
        (1, 2, 0): "(012)",
        (2, 0, 1): "(021)",
        (2, 1, 0): "(02)",
    }
    return [names[p] for p in _s3_elements()]


def _s3_standard_rep() -> list[list[list[AlgebraicReal]]]:
    """The 2-dimensional irrep as exact orthogonal matrices over Q(sqrt 3):
    permutation action on the plane x+y+z=0 in an orthonormal basis."""
    inv_sqrt2 = AlgebraicReal({2: Fraction(1, 2)})
    inv_sqrt6 = AlgebraicReal({6: Fraction(1, 6)})
    v = [
        (inv_sqrt2, -inv_sqrt2, ZERO),
        (inv_sqrt6, inv_sqrt6, AlgebraicReal(-2) * inv_sqrt6),
    ]
    mats = []
    for p in _s3_elements():
        inv = [0] * 3
        for i in range(3):
            inv[p[i]] = i
        mat = []
        for a in range(2):
            row = []
            for b in range(2):
                acc = ZERO
                for j in range(3):
                    acc = acc + v[a][j] * v[b][inv[j]]
                row.append(acc)
            mat.append(row)
        mats.append(mat)
    return mats


def s3_irreps() -> list[list[list[list[AlgebraicReal]]]]:
    """Trivial, sign, and standard 2-dimensional irreps of S3."""
    elems = _s3_elements()

    def sign(p: tuple[int, ...]) -> int:
        s = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    s = -s
        return s

    trivial = [[[ONE]] for _ in elems]
    sgn = [[[AlgebraicReal(sign(p))]] for p in elems]
    return [trivial, sgn, _s3_standard_rep()]


BUILTIN_NAMES = ("c2", "c3", "c4", "c6", "s3", "dual-c2", "dual-c3", "dual-c4", "dual-s3")


def builtin(name: str) -> tuple[KacAlgebra, IrrepData]:
    """A named built-in Kac algebra with its irrep data."""
    key = name.lower()
    if key.startswith("c") and key[1:].isdigit():
        m = int(key[1:])
        return group_algebra(cyclic_table(m), cyclic_labels(m), name=key)
    if key == "s3":
        return group_algebra(s3_table(), s3_labels(), name="s3")
    if key.startswith("dual-c") and key[6:].isdigit():
        m = int(key[6:])
        return dual_group_algebra(
            cyclic_table(m),
            cyclic_characters(m),
            [f"d_{l}" for l in cyclic_labels(m)],
            name=key,
        )
    if key == "dual-s3":
        return dual_group_algebra(
            s3_table(),
            s3_irreps(),
            [f"d_{l}" for l in s3_labels()],
            name="dual-s3",
        )
    raise KeyError(f"unknown built-in {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
