"""Tensors, forms, polarization, and the apolarity (contraction) action.

The coordinate rings act on their graded duals by partial differentiation:
a Segre-side variable contracts one tensor factor against the dual basis,
and a Veronese-side variable differentiates a form.  Annihilator pieces are
kernels of the induced linear maps, so any nonzero rescaling of the pairing
yields the same subspaces.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .grading import (
    PieceElement,
    RingKind,
    check_degree,
    dim_piece,
    monomials,
    segre_ring,
    veronese_ring,
)
from .linalg import QQ, Matrix, Subspace, kernel, rank


class HomPoly:
    """Homogeneous degree-d form in n dual variables, sparse exact coefficients."""

    __slots__ = ("n", "d", "terms", "field")

    def __init__(self, n: int, d: int, terms: dict, field=QQ):
        self.n = int(n)
        self.d = int(d)
        self.field = field
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            if sum(exps) != self.d:
                raise ValueError(f"exponents {exps} do not sum to degree {self.d}")
            c = field.of(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def __eq__(self, other):
        return (
            isinstance(other, HomPoly)
            and (self.n, self.d) == (other.n, other.d)
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"HomPoly(n={self.n}, d={self.d}, {len(self.terms)} terms)"


class GeneralTensor:
    """Element of a tensor product of copies of C^n, indexed over `factors`.

    `factors` records which of the original d slots the tensor still lives on;
    contraction returns tensors on the surviving slots.
    """

    __slots__ = ("n", "order", "entries", "field", "factors")

    def __init__(self, n: int, order: int, entries: dict, field=QQ, factors=None):
        self.n = int(n)
        self.order = int(order)
        self.field = field
        self.factors = tuple(range(order)) if factors is None else tuple(factors)
        if len(self.factors) != self.order:
            raise ValueError("factor labels do not match the tensor order")
        clean = {}
        for idx, c in entries.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.order or any(not 0 <= i < self.n for i in idx):
                raise ValueError(f"index tuple {idx} out of range")
            c = field.of(c)
            if c:
                clean[idx] = c
        self.entries = clean

    @property
    def d(self) -> int:
        return self.order

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, idx):
        return self.entries.get(tuple(idx), self.field.zero)

    def __eq__(self, other):
        return (
            isinstance(other, GeneralTensor)
            and (self.n, self.order, self.factors) == (other.n, other.order, other.factors)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, order={self.order}, {len(self.entries)} entries)"


class SymTensor(GeneralTensor):
    """Symmetric tensor: every stored entry is constant on its permutation orbit."""

    def __init__(self, n: int, order: int, entries: dict, field=QQ, factors=None):
        super().__init__(n, order, entries, field=field, factors=factors)
        for idx, c in self.entries.items():
            for perm in itertools.permutations(idx):
                if self.entries.get(perm, self.field.zero) != c:
                    raise ValueError(
                        f"not symmetric: entry at {idx} is {c}, at {perm} is "
                        f"{self.entries.get(perm, self.field.zero)}"
                    )


def as_symmetric(f: GeneralTensor) -> SymTensor:
    if isinstance(f, SymTensor):
        return f
    return SymTensor(f.n, f.order, f.entries, field=f.field, factors=f.factors)


# -- polarization ---------------------------------------------------------------

def _gamma_factorial(exps) -> int:
    out = 1
    for e in exps:
        out *= math.factorial(e)
    return out


def polarize(p: HomPoly) -> SymTensor:
    """Symmetric tensor of a form: each orbit carries coeff * gamma!/d!."""
    scale_den = math.factorial(p.d)
    entries = {}
    for exps, a in p.terms.items():
        c = a * p.field.of(Fraction(_gamma_factorial(exps), scale_den))
        base = tuple(j for j, e in enumerate(exps) for _ in range(e))
        for idx in set(itertools.permutations(base)):
            entries[idx] = c
    return SymTensor(p.n, p.d, entries, field=p.field)


def depolarize(f: GeneralTensor) -> HomPoly:
    """Inverse of polarize; requires a symmetric input."""
    f = as_symmetric(f)
    fac_d = math.factorial(f.order)
    terms = {}
    for idx, c in f.entries.items():
        if tuple(sorted(idx)) != idx:
            continue
        exps = tuple(idx.count(j) for j in range(f.n))
        terms[exps] = c * f.field.of(Fraction(fac_d, _gamma_factorial(exps)))
    return HomPoly(f.n, f.order, terms, field=f.field)


# -- contraction ----------------------------------------------------------------

def _check_segre_element(theta: PieceElement, n: int, d: int):
    if theta.ring.kind is not RingKind.SEGRE_COORD:
        raise ValueError(f"expected an element of the Segre coordinate ring, got {theta.ring}")
    if theta.ring.n != n or theta.ring.d != d:
        raise ValueError(
            f"ring shape mismatch: element has (n,d)=({theta.ring.n},{theta.ring.d}), "
            f"tensor has ({n},{d})"
        )


def contract_tensor(theta: PieceElement, f: GeneralTensor) -> GeneralTensor:
    """Apply a Segre-side element to a multilinear tensor.

    Degrees above (1,...,1) on the surviving factors kill everything; a
    square-free monomial selects one index per contracted factor and slices.
    """
    d = theta.ring.d
    _check_segre_element(theta, f.n, d)
    u = theta.degree
    live = set(f.factors)
    selected = [i for i in range(d) if u[i] >= 1]
    remaining = tuple(i for i in f.factors if u[i] == 0)
    pos_of = {i: k for k, i in enumerate(f.factors)}
    dead = any(u[i] > 1 for i in range(d)) or any(i not in live for i in selected)
    out: dict = {}
    if not dead:
        basis = monomials(theta.ring, u)
        for col, c in enumerate(theta.coords):
            if not c:
                continue
            row_sel = {}
            for i in selected:
                row = basis[col][i]
                row_sel[i] = next(j for j, e in enumerate(row) if e)
            for idx, val in f.entries.items():
                if any(idx[pos_of[i]] != row_sel[i] for i in selected):
                    continue
                key = tuple(idx[pos_of[i]] for i in remaining)
                acc = out.get(key, f.field.zero) + c * val
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
    return GeneralTensor(f.n, len(remaining), out, field=f.field, factors=remaining)


def contract_poly(g: PieceElement, p: HomPoly) -> HomPoly:
    """Apply a Veronese-side element to a form by iterated differentiation."""
    if g.ring.kind is not RingKind.VERONESE_COORD:
        raise ValueError(f"expected an element of the Veronese coordinate ring, got {g.ring}")
    if g.ring.n != p.n:
        raise ValueError("variable count mismatch")
    k = g.degree
    if k > p.d:
        return HomPoly(p.n, max(p.d - k, 0), {}, field=p.field)
    basis = monomials(g.ring, k)
    out: dict = {}
    for col, b in enumerate(g.coords):
        if not b:
            continue
        delta = basis[col]
        for gamma, a in p.terms.items():
            if any(dj > gj for dj, gj in zip(delta, gamma)):
                continue
            fall = 1
            for dj, gj in zip(delta, gamma):
                fall *= math.factorial(gj) // math.factorial(gj - dj)
            mu = tuple(gj - dj for gj, dj in zip(gamma, delta))
            acc = out.get(mu, p.field.zero) + a * b * fall
            if acc:
                out[mu] = acc
            else:
                out.pop(mu, None)
    return HomPoly(p.n, p.d - k, out, field=p.field)


# -- annihilator pieces -----------------------------------------------------------

def _require_full_tensor(f: GeneralTensor):
    if f.factors != tuple(range(f.order)):
        raise ValueError("annihilators are computed for tensors on all original factors")


def ann_piece(f: GeneralTensor, u) -> Subspace:
    """Degree-u piece of the apolar ideal of a multilinear tensor."""
    _require_full_tensor(f)
    ring = segre_ring(f.n, f.order)
    u = check_degree(ring, u)
    dim = dim_piece(ring, u)
    tag = (ring, u)
    if any(ui > 1 for ui in u):
        return Subspace.full(dim, piece=tag, field=f.field)
    selected = [i for i, ui in enumerate(u) if ui == 1]
    remaining = [i for i, ui in enumerate(u) if ui == 0]
    basis = monomials(ring, u)
    selectors = []
    for mono in basis:
        selectors.append({i: next(j for j, e in enumerate(mono[i]) if e) for i in selected})
    rows = []
    for tail in itertools.product(range(f.n), repeat=len(remaining)):
        row = []
        for sel in selectors:
            idx = [0] * f.order
            for i, j in sel.items():
                idx[i] = j
            for i, j in zip(remaining, tail):
                idx[i] = j
            row.append(f.entry(idx))
        rows.append(row)
    ker = kernel(Matrix(rows, ncols=dim, field=f.field))
    return Subspace(dim, tuple(tuple(r) for r in ker.rows), tag, f.field)


def ann_sym_piece(p: HomPoly, k: int) -> Subspace:
    """Degree-k piece of the apolar ideal of a form: the catalecticant kernel."""
    ring = veronese_ring(p.n)
    k = int(k)
    if k < 0:
        raise ValueError("negative degree")
    dim = dim_piece(ring, k)
    tag = (ring, k)
    if k > p.d:
        return Subspace.full(dim, piece=tag, field=p.field)
    cod = monomials(ring, p.d - k)
    dom = monomials(ring, k)
    rows = []
    for mu in cod:
        row = []
        for delta in dom:
            gamma = tuple(m + dl for m, dl in zip(mu, delta))
            a = p.terms.get(gamma)
            if a is None:
                row.append(p.field.zero)
            else:
                fall = 1
                for gj, dj in zip(gamma, delta):
                    fall *= math.factorial(gj) // math.factorial(gj - dj)
                row.append(a * fall)
        rows.append(row)
    ker = kernel(Matrix(rows, ncols=dim, field=p.field))
    return Subspace(dim, tuple(tuple(r) for r in ker.rows), tag, p.field)


# -- flattenings ------------------------------------------------------------------

def flattening_ranks(f: GeneralTensor) -> tuple:
    """Rank of each one-factor flattening C^n -> tensor on the other factors."""
    _require_full_tensor(f)
    ranks = []
    others = lambda i: [k for k in range(f.order) if k != i]  # noqa: E731
    for i in range(f.order):
        cols = {}
        for idx, c in f.entries.items():
            key = tuple(idx[k] for k in others(i))
            cols.setdefault(key, {})[idx[i]] = c
        col_keys = sorted(cols)
        rows = [
            [cols[key].get(j, f.field.zero) for key in col_keys]
            for j in range(f.n)
        ]
        ranks.append(rank(Matrix(rows, ncols=max(len(col_keys), 1), field=f.field)))
    return tuple(ranks)


def is_concise(f: GeneralTensor) -> bool:
    """True when every one-factor flattening has full rank n."""
    if f.is_zero:
        return False
    return all(r == f.n for r in flattening_ranks(f))


def flattening_lower_bound(f: GeneralTensor) -> int:
    """max flattening rank: a lower bound for the border rank."""
    if f.is_zero:
        return 0
    return max(flattening_ranks(f))
