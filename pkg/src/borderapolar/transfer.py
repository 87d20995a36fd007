"""Transport of truncated ideals between the Veronese and Segre settings.

Desymmetrization adds the diagonal ideal and the psi-images of the input
pieces; symmetrization collects pi-images along the staircase degrees; the
first-factor restriction rho recovers a Z-graded ideal.  The certificate
checkers decide the containment conditions under which a border rank
decomposition on the Segre side descends to the Veronese side, and record
witness dimensions plus an honest statement of what was and was not tested.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field as dc_field

from .apolarity import (
    GeneralTensor,
    SymTensor,
    ann_piece,
    ann_sym_piece,
    depolarize,
    flattening_ranks,
)
from .diagonal_maps import ir_piece, pi_matrix, psi_matrix, staircase_degrees
from .grading import (
    RingKind,
    degree_total,
    dim_piece,
    ones,
    segre_ring,
    veronese_ring,
)
from .linalg import Subspace, image
from .ideals import (
    TruncatedIdeal,
    degrees_up_to,
    generic_hf,
    hilbert_function,
    is_saturated_degreewise,
    _piece_tag,
)

SLIP_CERTIFIED = {"point", "upsilon-of-point", "rho-of-certified", "diagonal-points"}


def slip_label(provenance: str) -> str:
    if provenance in SLIP_CERTIFIED:
        return f"Slip-certified ({provenance})"
    return f"Slip-unknown ({provenance} ideal)"


@dataclass
class Certificate:
    """Structured verdict of one checker: what was tested, at which degrees."""

    check: str
    inputs_digest: str
    verdict: bool
    witnesses: list = dc_field(default_factory=list)
    tested_bound: int | None = None
    slip_provenance: str | None = None
    failure: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict

    def add(self, **kw):
        self.witnesses.append(kw)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "inputs_digest": self.inputs_digest,
            "verdict": "pass" if self.verdict else "fail",
            "tested_bound": self.tested_bound,
            "slip_provenance": self.slip_provenance,
            "failure": self.failure,
            "witnesses": [
                {k: _plain(v) for k, v in w.items()} for w in self.witnesses
            ],
        }


def _plain(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def digest_of(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
        h.update(b"\x00")
    return h.hexdigest()[:16]


def ideal_digest(j: TruncatedIdeal) -> str:
    payload = [(u, j.pieces[u].basis) for u in j.degrees()]
    return digest_of(j.ring, j.bound, payload)


def tensor_digest(f: GeneralTensor) -> str:
    return digest_of(f.n, f.order, sorted(f.entries.items()))


# -- the three transport maps ---------------------------------------------------

def upsilon(i: TruncatedIdeal, d: int, bound: int | None = None,
            provenance: str | None = None) -> TruncatedIdeal:
    """Desymmetrize a Z-graded ideal: piece at u is (I_R)_u + psi_u(I_{|u|})."""
    if i.ring.kind is not RingKind.VERONESE_COORD:
        raise ValueError("desymmetrization expects an ideal in the Veronese ring")
    bound = i.bound if bound is None else bound
    if bound > i.bound:
        raise ValueError(f"requested bound {bound} exceeds the input bound {i.bound}")
    n = i.ring.n
    ring_s = segre_ring(n, d)
    pieces = {}
    for u in degrees_up_to(ring_s, bound):
        base = ir_piece(n, d, u, i.field)
        lifted = image(psi_matrix(n, d, u, i.field), i.piece(degree_total(u)))
        pieces[u] = Subspace.from_rows(
            dim_piece(ring_s, u),
            list(base.basis) + list(lifted.basis),
            piece=_piece_tag(ring_s, u),
            field=i.field,
        )
    if provenance is None:
        provenance = "upsilon-of-point" if i.provenance in ("point", "diagonal-points") else "user"
    return TruncatedIdeal(ring_s, bound, pieces, None, provenance, i.field)


def contains_diagonal_ideal(j: TruncatedIdeal) -> bool:
    ring = j.ring
    return all(
        j.pieces[u].contains(ir_piece(ring.n, ring.d, u, j.field))
        for u in j.degrees()
    )


def sigma(j: TruncatedIdeal) -> TruncatedIdeal:
    """Symmetrize an ideal containing I_R: degree N = a*d + m collects pi(J_{a1+s_m})."""
    ring = j.ring
    if ring.kind is not RingKind.SEGRE_COORD:
        raise ValueError("symmetrization expects an ideal in the Segre coordinate ring")
    if not contains_diagonal_ideal(j):
        raise ValueError(
            "symmetrization is undefined: the ideal does not contain the diagonal ideal"
        )
    n, d = ring.n, ring.d
    ring_v = veronese_ring(n)
    stairs = staircase_degrees(d)
    pieces = {}
    for total in range(j.bound + 1):
        a, m = divmod(total, d)
        u = tuple(a + s for s in stairs[m])
        pieces[total] = Subspace(
            dim_piece(ring_v, total),
            image(pi_matrix(n, d, u, j.field), j.piece(u)).basis,
            _piece_tag(ring_v, total),
            j.field,
        )
    provenance = "point" if j.provenance in ("upsilon-of-point", "diagonal-points") else "user"
    return TruncatedIdeal(ring_v, j.bound, pieces, None, provenance, j.field)


def rho_ideal(j: TruncatedIdeal) -> TruncatedIdeal:
    """Restriction to the first factor: degree-k piece is rho(J_{(k,0,...,0)})."""
    ring = j.ring
    if ring.kind is not RingKind.SEGRE_COORD:
        raise ValueError("rho expects an ideal in the Segre coordinate ring")
    n, d = ring.n, ring.d
    ring_v = veronese_ring(n)
    pieces = {}
    for k in range(j.bound + 1):
        u = tuple([k] + [0] * (d - 1))
        pieces[k] = Subspace(
            dim_piece(ring_v, k),
            image(pi_matrix(n, d, u, j.field), j.piece(u)).basis,
            _piece_tag(ring_v, k),
            j.field,
        )
    provenance = (
        "rho-of-certified" if j.provenance in SLIP_CERTIFIED else "user"
    )
    return TruncatedIdeal(ring_v, j.bound, pieces, None, provenance, j.field)


# -- containment bookkeeping ------------------------------------------------------

def _apolarity_witnesses(j: TruncatedIdeal, f: GeneralTensor, up_to: int):
    """Degreewise containment J_u in Ann(F)_u for |u| <= up_to; pieces above the
    unit box are full, so only 0/1 degrees need a kernel computation."""
    failures = []
    checked = []
    for u in j.degrees():
        if degree_total(u) > up_to:
            continue
        if any(x > 1 for x in u):
            continue
        ann = ann_piece(f, u)
        ok = ann.contains(j.pieces[u])
        checked.append({"degree": u, "dim_ideal": j.pieces[u].dim,
                        "dim_ann": ann.dim, "ok": ok})
        if not ok:
            failures.append(u)
    return checked, failures


def check_condition_iii(j: TruncatedIdeal, f: GeneralTensor) -> Certificate:
    """pi(J_{(d,0,...,0)}) inside pi(J_1), after verifying J is apolar to F."""
    ring = j.ring
    n, d = ring.n, ring.d
    if j.bound < d:
        raise ValueError(f"need the truncation bound >= {d}, got {j.bound}")
    cert = Certificate(
        check="condition-iii",
        inputs_digest=digest_of(tensor_digest(f), ideal_digest(j)),
        verdict=False,
        tested_bound=j.bound,
        slip_provenance=slip_label(j.provenance),
    )
    checked, failures = _apolarity_witnesses(j, f, d)
    cert.witnesses.extend(checked)
    if failures:
        cert.failure = f"ideal is not apolar to the tensor at degree {failures[0]}"
        return cert
    u_first = tuple([d] + [0] * (d - 1))
    lhs = image(pi_matrix(n, d, u_first, j.field), j.piece(u_first))
    rhs = image(pi_matrix(n, d, ones(d), j.field), j.piece(ones(d)))
    ok = rhs.contains(lhs)
    cert.add(stage="pi-containment", degree=u_first, dim_lhs=lhs.dim,
             dim_rhs=rhs.dim, ok=ok)
    cert.verdict = ok
    if not ok:
        cert.failure = f"pi(J_{u_first}) is not inside pi(J_{ones(d)})"
    return cert


def check_condition_ii(j: TruncatedIdeal, f: GeneralTensor,
                       bound: int | None = None) -> Certificate:
    """I_R inside J and pi(J_u) independent of u within each total degree."""
    ring = j.ring
    n, d = ring.n, ring.d
    bound = j.bound if bound is None else min(bound, j.bound)
    cert = Certificate(
        check="condition-ii",
        inputs_digest=digest_of(tensor_digest(f), ideal_digest(j), bound),
        verdict=False,
        tested_bound=bound,
        slip_provenance=slip_label(j.provenance),
    )
    checked, failures = _apolarity_witnesses(j, f, d)
    cert.witnesses.extend(checked)
    if failures:
        cert.failure = f"ideal is not apolar to the tensor at degree {failures[0]}"
        return cert
    for u in j.degrees():
        if degree_total(u) > bound:
            continue
        if not j.pieces[u].contains(ir_piece(n, d, u, j.field)):
            cert.add(stage="diagonal-containment", degree=u, ok=False)
            cert.failure = f"the diagonal ideal is not inside J at degree {u}"
            return cert
    cert.add(stage="diagonal-containment", ok=True)
    verdict = True
    for total in range(bound + 1):
        degs = [u for u in j.degrees() if degree_total(u) == total]
        images = [image(pi_matrix(n, d, u, j.field), j.pieces[u]) for u in degs]
        same = all(im == images[0] for im in images[1:])
        cert.add(stage="pi-image-equality", total_degree=total,
                 dims=tuple(im.dim for im in images), ok=same)
        if not same:
            verdict = False
            cert.failure = f"pi-images differ within total degree {total}"
            break
    cert.verdict = verdict
    return cert


# -- the full pipeline -------------------------------------------------------------

def comon_certificate(f: SymTensor, r: int, j: TruncatedIdeal) -> Certificate:
    """Run the full transfer pipeline for a symmetric tensor and a candidate ideal.

    Checks conciseness, the flattening lower bound against r, the generic
    Hilbert function, apolarity, degreewise saturation where the bound allows,
    and the pi-containment condition; on success it also produces rho(J) and
    verifies that it is apolar to the corresponding form with the expected
    Hilbert function.
    """
    if not isinstance(f, SymTensor):
        raise TypeError("the transfer pipeline requires a symmetric tensor")
    n, d = f.n, f.order
    if not n <= r <= math.comb(n + 1, 2):
        raise ValueError(
            f"r={r} outside the admissible range [{n}, {math.comb(n + 1, 2)}]"
        )
    cert = Certificate(
        check="comon-transfer",
        inputs_digest=digest_of(tensor_digest(f), r, ideal_digest(j)),
        verdict=False,
        tested_bound=j.bound,
        slip_provenance=slip_label(j.provenance),
    )
    ranks = flattening_ranks(f)
    concise = all(rk == n for rk in ranks)
    cert.add(stage="conciseness", flattening_ranks=ranks, ok=concise)
    if not concise:
        cert.failure = "tensor is not concise"
        return cert
    flb = max(ranks)
    cert.add(stage="flattening-lower-bound", bound=flb, r=r, ok=flb <= r)
    if flb > r:
        cert.failure = f"flattening lower bound {flb} exceeds r={r}"
        return cert
    hf_ok = True
    for u in j.degrees():
        have = hilbert_function(j, u)
        want = generic_hf(r, j.ring, u)
        if have != want:
            hf_ok = False
            cert.add(stage="hilbert-function", degree=u, have=have, want=want, ok=False)
            break
    cert.add(stage="hilbert-function", ok=hf_ok)
    if not hf_ok:
        cert.failure = "Hilbert function differs from the generic one"
        return cert
    checked, failures = _apolarity_witnesses(j, f, d)
    cert.witnesses.extend(checked)
    if failures:
        cert.failure = f"ideal is not apolar to the tensor at degree {failures[0]}"
        return cert
    sat_degrees = [u for u in j.degrees() if degree_total(u) + d <= j.bound]
    sat_ok = all(is_saturated_degreewise(j, u) for u in sat_degrees)
    cert.add(stage="saturation", tested_degrees=len(sat_degrees), ok=sat_ok)
    if not sat_ok:
        cert.failure = "a testable degree fails the degreewise saturation check"
        return cert
    u_first = tuple([d] + [0] * (d - 1))
    lhs = image(pi_matrix(n, d, u_first, j.field), j.piece(u_first))
    rhs = image(pi_matrix(n, d, ones(d), j.field), j.piece(ones(d)))
    cond = rhs.contains(lhs)
    cert.add(stage="pi-containment", dim_lhs=lhs.dim, dim_rhs=rhs.dim, ok=cond)
    if not cond:
        cert.failure = f"pi(J_{u_first}) is not inside pi(J_{ones(d)})"
        return cert
    restricted = rho_ideal(j)
    p = depolarize(f)
    ann_d = ann_sym_piece(p, d)
    apolar = ann_d.contains(restricted.piece(d))
    cert.add(stage="rho-apolarity", degree=d, dim=restricted.piece(d).dim,
             dim_ann=ann_d.dim, ok=apolar)
    hf_v = all(
        hilbert_function(restricted, k) == generic_hf(r, restricted.ring, k)
        for k in range(restricted.bound + 1)
    )
    cert.add(stage="rho-hilbert-function", ok=hf_v)
    cert.verdict = apolar and hf_v
    if not cert.verdict:
        cert.failure = "the restricted ideal fails the Veronese-side checks"
    return cert
