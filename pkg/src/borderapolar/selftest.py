"""Built-in invariant suites, runnable from the command line at two scales.

Each suite re-derives one family of exact identities from scratch and
reports an instance count; the desk scale is sized for a coffee-break run,
the deep scale raises dimensions, factors, and bounds by one notch.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import bounds as bounds_mod
from . import diagonal_maps as dmaps
from .apolarity import (
    HomPoly,
    SymTensor,
    ann_piece,
    ann_sym_piece,
    depolarize,
    is_concise,
    polarize,
)
from .grading import dim_piece, monomials, ones, segre_ring, veronese_ring
from .ideals import (
    PointSet,
    degrees_up_to,
    diagonal_points,
    expand,
    generic_hf,
    hilbert_function,
    point_ideal,
    very_general_points,
)
from .transfer import (
    check_condition_ii,
    check_condition_iii,
    comon_certificate,
    rho_ideal,
    sigma,
    upsilon,
)
from .linalg import Subspace


@dataclass
class ScaleConfig:
    max_n: int
    max_d: int
    bound: int
    instances: int


SCALES = {
    "desk": ScaleConfig(max_n=3, max_d=3, bound=3, instances=4),
    "deep": ScaleConfig(max_n=4, max_d=4, bound=4, instances=8),
}


@dataclass
class SuiteResult:
    name: str
    instances: int
    passed: bool
    seconds: float
    detail: str = ""


def diagonal_tensor(n: int, d: int) -> SymTensor:
    return SymTensor(n, d, {tuple([j] * d): 1 for j in range(n)})


def sum_of_powers_tensor(n: int, d: int, forms) -> SymTensor:
    """sum_j l_j^{tensor d} for linear forms given by coefficient vectors."""
    entries = {}
    for idx in itertools.product(range(n), repeat=d):
        val = Fraction(0)
        for l in forms:
            term = Fraction(1)
            for i in idx:
                term *= l[i]
            val += term
        if val:
            entries[idx] = val
    return SymTensor(n, d, entries)


def random_forms(n: int, count: int, rng: random.Random, bound: int = 5):
    while True:
        forms = [
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))
            for _ in range(count)
        ]
        if all(any(f) for f in forms):
            return forms


def random_symmetric_tensor(n: int, d: int, rng: random.Random) -> SymTensor:
    ring = veronese_ring(n)
    terms = {}
    for mono in monomials(ring, d):
        c = rng.randint(-5, 5)
        if c:
            terms[mono] = Fraction(c)
    if not terms:
        terms[tuple([d] + [0] * (n - 1))] = Fraction(1)
    return polarize(HomPoly(n, d, terms))


# -- the suites -----------------------------------------------------------------

def suite_pi_kernel_direct_sum(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    for n in range(2, cfg.max_n + 1):
        for d in range(2, cfg.max_d + 1):
            ring = segre_ring(n, d)
            expanded = expand(dmaps.ir_generators(n, d), ring, cfg.bound)
            for u in degrees_up_to(ring, cfg.bound):
                count += 1
                k = sum(u)
                want = dmaps.ir_piece(n, d, u)
                if expanded.piece(u) != want:
                    return SuiteResult(
                        "pi-kernel-direct-sum", count, False,
                        time.perf_counter() - t0,
                        f"generator expansion differs from ker pi at n={n} d={d} u={u}",
                    )
                if dim_piece(ring, u) - want.dim != math.comb(n + k - 1, k):
                    return SuiteResult(
                        "pi-kernel-direct-sum", count, False,
                        time.perf_counter() - t0,
                        f"codimension of the diagonal ideal wrong at n={n} d={d} u={u}",
                    )
                if not dmaps.direct_sum_check(n, d, u):
                    return SuiteResult(
                        "pi-kernel-direct-sum", count, False,
                        time.perf_counter() - t0,
                        f"direct sum fails at n={n} d={d} u={u}",
                    )
    return SuiteResult("pi-kernel-direct-sum", count, True, time.perf_counter() - t0)


def suite_counting(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    for n in range(1, cfg.max_n + 2):
        for r in range(0, cfg.bound + 3):
            count += 1
            seqs = sum(
                1 for _ in itertools.combinations_with_replacement(range(n), r)
            )
            if seqs != math.comb(n + r - 1, r):
                return SuiteResult(
                    "counting", count, False, time.perf_counter() - t0,
                    f"sequence count mismatch at n={n} r={r}",
                )
            if seqs != dim_piece(veronese_ring(n), r):
                return SuiteResult(
                    "counting", count, False, time.perf_counter() - t0,
                    f"dimension formula mismatch at n={n} r={r}",
                )
    return SuiteResult("counting", count, True, time.perf_counter() - t0)


def suite_degree_one_image(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    shapes = [(2, 3), (2, 4), (3, 3)]
    if cfg.max_n >= 4:
        shapes.append((3, 4))
    for n, d in shapes:
        for _ in range(cfg.instances):
            count += 1
            f = random_symmetric_tensor(n, d, rng)
            lifted = _pi_image(n, d, ones(d), ann_piece(f, ones(d)))
            target = ann_sym_piece(depolarize(f), d)
            if lifted != target:
                return SuiteResult(
                    "degree-one-image", count, False, time.perf_counter() - t0,
                    f"projected annihilator differs at n={n} d={d}",
                )
    return SuiteResult("degree-one-image", count, True, time.perf_counter() - t0)


def _pi_image(n, d, u, sub) -> Subspace:
    from .linalg import image

    return image(dmaps.pi_matrix(n, d, u), sub)


def suite_upsilon_transport(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    d = 3
    for n in sorted({2, cfg.max_n}):
        for r in range(n, math.comb(n + 1, 2) + 1):
            count += 1
            zs = very_general_points(veronese_ring(n), r, cfg.bound, rng)
            ideal = point_ideal(zs, cfg.bound)
            lifted = upsilon(ideal, d, cfg.bound)
            diag = point_ideal(diagonal_points(zs, d), cfg.bound,
                               provenance="diagonal-points")
            for u in lifted.degrees():
                if hilbert_function(lifted, u) != generic_hf(r, lifted.ring, u):
                    return SuiteResult(
                        "upsilon-transport", count, False, time.perf_counter() - t0,
                        f"Hilbert transport fails at n={n} r={r} u={u}",
                    )
                if lifted.piece(u) != diag.piece(u):
                    return SuiteResult(
                        "upsilon-transport", count, False, time.perf_counter() - t0,
                        f"lifted ideal differs from diagonal points at n={n} r={r} u={u}",
                    )
            back = rho_ideal(lifted)
            twisted = sigma(lifted)
            for k in range(cfg.bound + 1):
                if back.piece(k) != ideal.piece(k) or twisted.piece(k) != ideal.piece(k):
                    return SuiteResult(
                        "upsilon-transport", count, False, time.perf_counter() - t0,
                        f"round trip fails at n={n} r={r} degree {k}",
                    )
    return SuiteResult("upsilon-transport", count, True, time.perf_counter() - t0)


def suite_pipeline(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    d = 3
    for n in range(2, cfg.max_n + 1):
        count += 1
        f = diagonal_tensor(n, d)
        pts = [tuple(1 if j == t else 0 for j in range(n)) for t in range(n)]
        zs = PointSet(veronese_ring(n), tuple(pts))
        ideal = point_ideal(zs, d + 1)
        lifted = upsilon(ideal, d, d + 1)
        cert = comon_certificate(f, n, lifted)
        if not cert.verdict:
            return SuiteResult(
                "pipeline", count, False, time.perf_counter() - t0,
                f"pipeline certificate fails for the diagonal tensor, n={n}: {cert.failure}",
            )
        two = check_condition_ii(lifted, f)
        three = check_condition_iii(lifted, f)
        if not (two.verdict and three.verdict):
            return SuiteResult(
                "pipeline", count, False, time.perf_counter() - t0,
                f"containment conditions fail for the diagonal tensor, n={n}",
            )
    return SuiteResult("pipeline", count, True, time.perf_counter() - t0)


def suite_sharpness(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    for n in (2, min(cfg.max_n, 3)):
        for _ in range(cfg.instances):
            count += 1
            forms = random_forms(n, n, rng)
            f = sum_of_powers_tensor(n, 3, forms)
            if not is_concise(f):
                continue
            if bounds_mod.is_sharp(f).verdict != bounds_mod.is_111_sharp(f).verdict:
                return SuiteResult(
                    "sharpness-coherence", count, False, time.perf_counter() - t0,
                    f"sharpness tests disagree at n={n}",
                )
    return SuiteResult("sharpness-coherence", count, True, time.perf_counter() - t0)


def suite_macaulay(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    count = 0
    for a in range(1, 7):
        for m in range(0, 101):
            count += 1
            rep = bounds_mod.macaulay_rep(m, a)
            if rep.reconstruct() != m:
                return SuiteResult(
                    "macaulay", count, False, time.perf_counter() - t0,
                    f"reconstruction fails at m={m} a={a}",
                )
            if m <= a and bounds_mod.macaulay_bound(m, a) != m:
                return SuiteResult(
                    "macaulay", count, False, time.perf_counter() - t0,
                    f"degenerate bound fails at m={m} a={a}",
                )
    return SuiteResult("macaulay", count, True, time.perf_counter() - t0)


def suite_negative_controls(cfg: ScaleConfig, rng: random.Random) -> SuiteResult:
    t0 = time.perf_counter()
    n, d = 2, 3
    f = diagonal_tensor(n, d)
    zs = PointSet(veronese_ring(n), ((1, 0), (0, 1)))
    ideal = point_ideal(zs, d + 1)
    lifted = upsilon(ideal, d, d + 1)
    u_first = (d, 0, 0)
    ring = lifted.ring
    bad_rows = list(lifted.piece(u_first).basis)
    # swap in a vector that is visibly not apolar: the pure power monomial
    bad_rows[0] = tuple(
        1 if i == 0 else 0 for i in range(dim_piece(ring, u_first))
    )
    perturbed = lifted.with_piece(
        u_first,
        Subspace.from_rows(dim_piece(ring, u_first), bad_rows),
    )
    cert = check_condition_iii(perturbed, f)
    ok = not cert.verdict
    try:
        sigma(point_ideal(PointSet(ring, (((1, 2), (3, 4), (5, 7)),)), 2))
        ok = False
    except ValueError:
        pass
    try:
        comon_certificate(f, math.comb(n + 1, 2) + 1, lifted)
        ok = False
    except ValueError:
        pass
    return SuiteResult(
        "negative-controls", 3, ok, time.perf_counter() - t0,
        "" if ok else "an invalid input was accepted",
    )


SUITES = (
    ("counting", suite_counting),
    ("macaulay", suite_macaulay),
    ("pi-kernel-direct-sum", suite_pi_kernel_direct_sum),
    ("degree-one-image", suite_degree_one_image),
    ("upsilon-transport", suite_upsilon_transport),
    ("pipeline", suite_pipeline),
    ("sharpness-coherence", suite_sharpness),
    ("negative-controls", suite_negative_controls),
)


def run_selftest(scale: str = "desk", jobs: int = 1, seed: int = 0):
    """Run every suite; returns (results, all_passed)."""
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; choose from {sorted(SCALES)}")
    cfg = SCALES[scale]
    tasks = [(name, fn, random.Random(seed + k)) for k, (name, fn) in enumerate(SUITES)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: t[1](cfg, t[2]), tasks))
    else:
        results = [fn(cfg, r) for _, fn, r in tasks]
    return results, all(r.passed for r in results)
