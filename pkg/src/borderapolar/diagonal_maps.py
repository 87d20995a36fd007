"""The diagonal machinery: the collapse map pi, its section psi, rho, tau, and I_R.

pi sends every factor's variable a(i,j) to b_j, so its kernel on each graded
piece is the corresponding piece of the diagonal ideal I_R (the 2x2 mixed
minors).  psi_u splits a sorted Veronese monomial into consecutive blocks of
sizes u_1,...,u_d and is a section of pi, giving the decomposition
S_u = (I_R)_u + psi_u(V_|u|) with zero intersection.
"""

from __future__ import annotations

from functools import lru_cache

from .grading import (
    PieceElement,
    RingKind,
    check_degree,
    degree_total,
    dim_piece,
    monomials,
    rank_monomial,
    segre_ring,
    veronese_ring,
)
from .linalg import QQ, Matrix, Subspace, image, kernel


def _require_kind(el: PieceElement, kind: RingKind, what: str):
    if el.ring.kind is not kind:
        raise ValueError(f"{what} expects ring kind {kind.value}, got {el.ring.kind.value}")


def _collapse(mono) -> tuple:
    """Column sums of a Segre exponent table: the pi-image monomial."""
    n = len(mono[0])
    return tuple(sum(row[j] for row in mono) for j in range(n))


@lru_cache(maxsize=None)
def pi_matrix(n: int, d: int, u: tuple, field=QQ) -> Matrix:
    """Matrix of pi on the degree-u piece, V_{|u|} x S_u, entries 0/1."""
    ring_s = segre_ring(n, d)
    ring_v = veronese_ring(n)
    u = check_degree(ring_s, u)
    k = degree_total(u)
    nrows = dim_piece(ring_v, k)
    cols = monomials(ring_s, u)
    rows = [[0] * len(cols) for _ in range(nrows)]
    for col, mono in enumerate(cols):
        rows[rank_monomial(ring_v, _collapse(mono))][col] = 1
    return Matrix(rows, ncols=len(cols), field=field)


def pi(theta: PieceElement) -> PieceElement:
    """Ring-map image under a(i,j) -> b_j, on one graded piece."""
    _require_kind(theta, RingKind.SEGRE_COORD, "pi")
    ring_v = veronese_ring(theta.ring.n)
    k = degree_total(theta.degree)
    zero = theta.coords[0] * 0
    out = [zero] * dim_piece(ring_v, k)
    basis = monomials(theta.ring, theta.degree)
    for i, c in enumerate(theta.coords):
        if c:
            out[rank_monomial(ring_v, _collapse(basis[i]))] += c
    return PieceElement(ring_v, k, tuple(out))


def rho(theta: PieceElement) -> PieceElement:
    """a(1,j) -> b_j and every other factor's variable to zero."""
    _require_kind(theta, RingKind.SEGRE_COORD, "rho")
    u = theta.degree
    ring_v = veronese_ring(theta.ring.n)
    k = u[0]
    zero = theta.coords[0] * 0
    out = [zero] * dim_piece(ring_v, k)
    if all(ui == 0 for ui in u[1:]):
        basis = monomials(theta.ring, u)
        for i, c in enumerate(theta.coords):
            if c:
                out[rank_monomial(ring_v, basis[i][0])] += c
    return PieceElement(ring_v, k, tuple(out))


def tau(g: PieceElement, d: int) -> PieceElement:
    """The inclusion b_j -> a(1,j), landing in degree (k,0,...,0)."""
    _require_kind(g, RingKind.VERONESE_COORD, "tau")
    return psi(tuple([g.degree] + [0] * (d - 1)), g, d=d)


def _split_blocks(delta: tuple, u: tuple) -> tuple:
    """Sorted variable indices of a Veronese monomial, split into u-sized blocks."""
    n = len(delta)
    idx = [j for j, e in enumerate(delta) for _ in range(e)]
    rows = []
    pos = 0
    for ui in u:
        row = [0] * n
        for j in idx[pos:pos + ui]:
            row[j] += 1
        rows.append(tuple(row))
        pos += ui
    return tuple(rows)


@lru_cache(maxsize=None)
def psi_matrix(n: int, d: int, u: tuple, field=QQ) -> Matrix:
    """Matrix of psi_u, S_u x V_{|u|}, entries 0/1; pi . psi is the identity."""
    ring_s = segre_ring(n, d)
    ring_v = veronese_ring(n)
    u = check_degree(ring_s, u)
    k = degree_total(u)
    dom = monomials(ring_v, k)
    nrows = dim_piece(ring_s, u)
    rows = [[0] * len(dom) for _ in range(nrows)]
    for col, delta in enumerate(dom):
        rows[rank_monomial(ring_s, _split_blocks(delta, u))][col] = 1
    return Matrix(rows, ncols=len(dom), field=field)


def psi(u, g: PieceElement, d: int | None = None) -> PieceElement:
    """Section of pi on the degree-u piece, by block-splitting sorted monomials."""
    _require_kind(g, RingKind.VERONESE_COORD, "psi")
    if d is None:
        d = len(tuple(u))
    ring_s = segre_ring(g.ring.n, d)
    u = check_degree(ring_s, u)
    if degree_total(u) != g.degree:
        raise ValueError(f"|u| = {degree_total(u)} does not match element degree {g.degree}")
    zero = g.coords[0] * 0
    out = [zero] * dim_piece(ring_s, u)
    dom = monomials(g.ring, g.degree)
    for i, c in enumerate(g.coords):
        if c:
            out[rank_monomial(ring_s, _split_blocks(dom[i], u))] += c
    return PieceElement(ring_s, u, tuple(out))


# -- the diagonal ideal -----------------------------------------------------------

def ir_generators(n: int, d: int) -> list:
    """The 2x2 mixed minors a(i,j)a(k,l) - a(i,l)a(k,j), i<k factors, j<l variables."""
    ring = segre_ring(n, d)
    gens = []
    for i in range(d):
        for k in range(i + 1, d):
            deg = tuple(1 if t in (i, k) else 0 for t in range(d))
            for j in range(n):
                for l in range(j + 1, n):
                    def mono(ji, jk):
                        return tuple(
                            tuple(
                                1 if (t == i and v == ji) or (t == k and v == jk) else 0
                                for v in range(n)
                            )
                            for t in range(d)
                        )
                    gens.append(
                        PieceElement.from_terms(
                            ring, deg, {mono(j, l): 1, mono(l, j): -1}
                        )
                    )
    return gens


@lru_cache(maxsize=None)
def ir_piece(n: int, d: int, u: tuple, field=QQ) -> Subspace:
    """Degree-u piece of the diagonal ideal, computed as ker pi on S_u."""
    ring_s = segre_ring(n, d)
    u = check_degree(ring_s, u)
    ker = kernel(pi_matrix(n, d, u, field))
    return Subspace(
        dim_piece(ring_s, u), tuple(tuple(r) for r in ker.rows), (ring_s, u), field
    )


def psi_image(n: int, d: int, u: tuple, field=QQ) -> Subspace:
    """psi_u(V_{|u|}) as a subspace of S_u."""
    ring_v = veronese_ring(n)
    k = degree_total(u)
    full_v = Subspace.full(dim_piece(ring_v, k), field=field)
    return image(psi_matrix(n, d, tuple(u), field), full_v)


def direct_sum_check(n: int, d: int, u) -> bool:
    """(I_R)_u and psi_u(V_{|u|}) meet trivially and fill S_u."""
    ring_s = segre_ring(n, d)
    u = check_degree(ring_s, u)
    a = ir_piece(n, d, u)
    b = psi_image(n, d, u)
    return a.intersect(b).dim == 0 and a.dim + b.dim == dim_piece(ring_s, u)


# -- degree enumerators used by the transfer pipeline ------------------------------

def two_ones_degrees(d: int) -> list:
    """All 0/1 degree vectors with exactly two ones (where I_R has its generators)."""
    out = []
    for i in range(d):
        for k in range(i + 1, d):
            out.append(tuple(1 if t in (i, k) else 0 for t in range(d)))
    return out


def staircase_degrees(d: int) -> list:
    """The staircase 0, e_1, e_1+e_2, ..., e_1+...+e_{d-1}."""
    return [tuple(1 if t < m else 0 for t in range(d)) for m in range(d)]


def proper_unit_box_degrees(d: int) -> list:
    """All 0/1 degree vectors strictly between 0 and (1,...,1)."""
    out = []
    for mask in range(1, (1 << d) - 1):
        out.append(tuple((mask >> t) & 1 for t in range(d)))
    out.sort(key=lambda u: (sum(u), tuple(-x for x in u)))
    return out
