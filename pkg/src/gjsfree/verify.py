"""Cross-module verification suites.

Each suite checks one family of identities linking independent code paths
(loop counts against class counts, transform pairs against the Mobius
function, trace kernels against the free Poisson law, rule branches against
each other, quadrature against combinatorics) and returns a pass/fail report.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .algnum import ONE, ZERO, AlgebraicReal
from .catalog import builtin
from .gjs import (
    Letter,
    Word,
    X,
    free_poisson_moment,
    kac_letter,
    tau2,
    tau2_diagrammatic,
    verify_freeness,
    verify_r_cyclic,
)
from mpmath import mp

from .kac import IrrepData, KacAlgebra, ValidationReport, validate, validate_irreps
from .mp_oracle import FreePoissonParams, mp_moment_mpf, to_mpf
from .ncpart import (
    FunctionTable,
    NCPartition,
    closure_loop_count,
    cumulants_to_moments,
    enumerate_nc,
    mobius,
    moments_to_cumulants,
    multiplicative_extension,
)
from .vncalc import (
    free_product_scalar_lf_matrix,
    free_product_scalar_lf_pair,
    power_free_product,
)

__all__ = [
    "euler_suite",
    "mobius_suite",
    "rcyclic_suite",
    "freeness_suite",
    "tau2_routes_suite",
    "dykema_boundaries_suite",
    "mp_suite",
    "kac_axioms_suite",
]


def euler_suite(max_n: int = 8) -> ValidationReport:
    """Loop count of every closed-up diagram equals n - #classes + 2."""
    rep = ValidationReport()
    for n in range(1, max_n + 1):
        witness = None
        count = 0
        for pi in enumerate_nc(n):
            count += 1
            if closure_loop_count(pi) != n - pi.num_classes + 2:
                witness = f"partition {pi}"
                break
        rep.record(f"closure-loops(n={n}, partitions={count})", witness is None, witness)
    return rep


def _random_sqrt2_value(rng: random.Random) -> AlgebraicReal:
    return AlgebraicReal(
        {
            1: Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            2: Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
        }
    )


def _random_table(rng: random.Random, alphabet: int, t_max: int) -> FunctionTable:
    values: dict[tuple, AlgebraicReal] = {}

    def fill(prefix: tuple) -> None:
        if prefix:
            values[prefix] = _random_sqrt2_value(rng)
        if len(prefix) < t_max:
            for a in range(alphabet):
                fill(prefix + (a,))

    fill(())
    return FunctionTable.from_mapping(values, t_max=t_max, name="random")


def mobius_suite(
    max_n: int = 6, seeds: int = 50, tuples_per_n: int = 2, alphabet: int = 2
) -> ValidationReport:
    """Moment/cumulant transform pair on random tables: roundtrip plus the
    four equivalent summation conditions, including the interval-restricted
    ones for every coarser partition."""
    rep = ValidationReport()
    fails = {name: None for name in ("roundtrip", "full-sum", "mobius-inversion", "restricted-sum", "restricted-inversion")}
    for seed in range(seeds):
        rng = random.Random(10_000 + seed)
        phi = _random_table(rng, alphabet, max_n)
        kappa = moments_to_cumulants(phi)
        phi_back = cumulants_to_moments(kappa)
        for n in range(1, max_n + 1):
            top = NCPartition.full(n)
            lattice = enumerate_nc(n)
            for _ in range(tuples_per_n):
                args = tuple(rng.randrange(alphabet) for _ in range(n))
                tag = f"seed={seed}, n={n}, args={args}"
                if phi_back(args) != phi(args):
                    fails["roundtrip"] = fails["roundtrip"] or tag
                lhs = ZERO
                for pi in lattice:
                    lhs = lhs + multiplicative_extension(kappa, pi, args)
                if lhs != phi(args):
                    fails["full-sum"] = fails["full-sum"] or tag
                lhs = ZERO
                for pi in lattice:
                    lhs = lhs + mobius(pi, top) * multiplicative_extension(phi, pi, args)
                if lhs != kappa(args):
                    fails["mobius-inversion"] = fails["mobius-inversion"] or tag
                for tau in lattice:
                    below = [pi for pi in lattice if pi.refines(tau)]
                    lhs = ZERO
                    for pi in below:
                        lhs = lhs + multiplicative_extension(kappa, pi, args)
                    if lhs != multiplicative_extension(phi, tau, args):
                        fails["restricted-sum"] = fails["restricted-sum"] or f"{tag}, tau={tau}"
                        break
                for tau in lattice:
                    below = [pi for pi in lattice if pi.refines(tau)]
                    lhs = ZERO
                    for pi in below:
                        lhs = lhs + mobius(pi, tau) * multiplicative_extension(phi, pi, args)
                    if lhs != multiplicative_extension(kappa, tau, args):
                        fails["restricted-inversion"] = fails["restricted-inversion"] or f"{tag}, tau={tau}"
                        break
    for name, witness in fails.items():
        rep.record(f"{name}(n<={max_n}, seeds={seeds})", witness is None, witness)
    return rep


def _resolve(spec: str | tuple[KacAlgebra, IrrepData]) -> tuple[KacAlgebra, IrrepData]:
    if isinstance(spec, str):
        return builtin(spec)
    return spec


def rcyclic_suite(
    spec: str | tuple[KacAlgebra, IrrepData] = "dual-s3",
    t_max: int = 4,
    gammas: Sequence[int] | None = None,
) -> ValidationReport:
    k, irreps = _resolve(spec)
    rep = ValidationReport()
    for gamma in gammas if gammas is not None else range(len(irreps.irreps)):
        sub = verify_r_cyclic(k, irreps, gamma, t_max=t_max)
        rep.checks.extend(sub.checks)
    return rep


def freeness_suite(
    spec: str | tuple[KacAlgebra, IrrepData] = "dual-s3", t_max: int = 4
) -> ValidationReport:
    k, irreps = _resolve(spec)
    return verify_freeness(k, irreps, t_max=t_max)


def _random_word(rng: random.Random, k: KacAlgebra, length: int) -> Word:
    letters = []
    for _ in range(length):
        roll = rng.random()
        if roll < 1 / 3:
            letters.append(X)
        elif roll < 2 / 3:
            letters.append(kac_letter(k.basis_vector(rng.randrange(k.dim))))
        else:
            letters.append(
                kac_letter([AlgebraicReal(rng.randint(-2, 2)) for _ in range(k.dim)])
            )
    return Word(tuple(letters))


def tau2_routes_suite(
    spec: str | tuple[KacAlgebra, IrrepData] = "c2",
    max_len: int = 5,
    samples: int = 0,
    seed: int = 0,
    exhaustive: bool = True,
) -> ValidationReport:
    """Equality of the cumulant-kernel and loop-expansion routes for the
    crossed-product trace, on exhaustive generator words and/or random words
    with arbitrary exact coefficients."""
    k, _ = _resolve(spec)
    rep = ValidationReport()

    if exhaustive:
        letters = [X] + [kac_letter(k.basis_vector(i)) for i in range(k.dim)]
        witness = None
        count = 0
        stack: list[tuple[Letter, ...]] = [()]
        while stack:
            prefix = stack.pop()
            if 0 < len(prefix):
                word = Word(prefix)
                count += 1
                if tau2(k, word, max_len=max_len) != tau2_diagrammatic(k, word, max_len=max_len):
                    witness = f"word of kinds {[l.kind for l in prefix]}"
                    break
            if len(prefix) < max_len:
                stack.extend(prefix + (l,) for l in letters)
        rep.record(
            f"trace-routes-exhaustive(len<={max_len}, words={count})", witness is None, witness
        )

    if samples:
        rng = random.Random(seed)
        witness = None
        for i in range(samples):
            word = _random_word(rng, k, rng.randint(1, max_len))
            if tau2(k, word, max_len=max_len) != tau2_diagrammatic(k, word, max_len=max_len):
                witness = f"sample {i}: {word.to_json()}"
                break
        rep.record(f"trace-routes-sampled(n={samples}, len<={max_len})", witness is None, witness)
    return rep


def dykema_boundaries_suite() -> ValidationReport:
    """On each rule's branch boundary the two closed forms must agree."""
    rep = ValidationReport()
    half = AlgebraicReal(Fraction(1, 2))

    cases = [
        (ONE, half, ONE, half),
        (AlgebraicReal(3), AlgebraicReal(Fraction(1, 4)), AlgebraicReal(2), AlgebraicReal(Fraction(3, 4))),
        (AlgebraicReal(Fraction(3, 2)), AlgebraicReal(Fraction(2, 3)), ONE, AlgebraicReal(Fraction(1, 3))),
    ]
    witness = None
    for r, a, s, b in cases:
        hi = free_product_scalar_lf_pair(r, a, s, b, branch="factor")
        lo = free_product_scalar_lf_pair(r, a, s, b, branch="atomic")
        if hi != lo:
            witness = f"(r={r}, alpha={a}, s={s}, beta={b}): {hi} vs {lo}"
            break
    rep.record("scalar-lf-pair-boundary", witness is None, witness)

    cases2 = [
        (ONE, AlgebraicReal(Fraction(1, 4)), 2),
        (AlgebraicReal(2), AlgebraicReal(Fraction(1, 9)), 3),
    ]
    witness = None
    for r, a, d in cases2:
        hi = free_product_scalar_lf_matrix(r, a, d, branch="factor")
        lo = free_product_scalar_lf_matrix(r, a, d, branch="atomic")
        if hi != lo:
            witness = f"(r={r}, alpha={a}, d={d}): {hi} vs {lo}"
            break
    rep.record("scalar-lf-matrix-boundary", witness is None, witness)

    witness = None
    for delta, n_copies in ((AlgebraicReal(2), 2), (AlgebraicReal(3), 3), (AlgebraicReal(4), 4)):
        hi = power_free_product(delta, n_copies, branch="factor")
        lo = power_free_product(delta, n_copies, branch="atomic")
        if hi != lo:
            witness = f"(delta={delta}, N={n_copies}): {hi} vs {lo}"
            break
    rep.record("power-free-product-boundary", witness is None, witness)
    return rep


def mp_suite(k_max: int = 10, tol: float = 1e-6) -> ValidationReport:
    """Quadrature moments of the Marchenko-Pastur density against the
    combinatorial free Poisson moments, over a 3x3 (rate, jump) grid.  The
    difference is taken at high working precision: top moments reach ~1e10,
    where the tolerance is finer than one float64 ulp."""
    rep = ValidationReport()
    rates = [Fraction(1, 2), Fraction(1), Fraction(2)]
    jumps = [AlgebraicReal(1), AlgebraicReal.sqrt(2), AlgebraicReal.sqrt(6)]
    witness = None
    checks = 0
    with mp.workdps(40):
        for rate in rates:
            for jump in jumps:
                params = FreePoissonParams(rate, jump)
                for k in range(1, k_max + 1):
                    exact = to_mpf(free_poisson_moment(AlgebraicReal(rate), jump, k))
                    approx = mp_moment_mpf(params, k, tol=tol / 100)
                    checks += 1
                    if abs(exact - approx) > tol:
                        witness = f"rate={rate}, jump={jump}, k={k}: |{exact} - {approx}|"
                        break
                expected_atom = max(0.0, 1.0 - float(rate))
                if abs(params.atom_mass - expected_atom) > tol:
                    witness = witness or f"atom mass at rate={rate}"
                total = mp_moment_mpf(params, 0, tol=tol / 100)
                checks += 1
                if abs(total - 1) > tol:
                    witness = witness or f"total mass {total} at rate={rate}, jump={jump}"
                if witness:
                    break
            if witness:
                break
    rep.record(f"mp-vs-combinatorics(k<={k_max}, checks={checks})", witness is None, witness)
    return rep


def kac_axioms_suite(names: Sequence[str] = ("c2", "c3", "c4", "s3", "dual-s3")) -> ValidationReport:
    rep = ValidationReport()
    for name in names:
        k, irreps = builtin(name)
        sub = validate(k)
        sub2 = validate_irreps(k, irreps)
        ok = sub.ok and sub2.ok
        first_fail = (sub.failures() + sub2.failures() or [{}])[0]
        rep.record(f"kac-axioms({name})", ok, None if ok else str(first_fail))
    return rep
