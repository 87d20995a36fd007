"""Command-line interface: annihilators, Hilbert functions, ideal transport,
certificate checks, and the built-in selftest suites.

File formats are JSON with exact coefficients serialized as strings ("-3/7").
Exit codes: 0 for success/pass, 1 for a failed check, 2 for usage or parse
errors.  Defaults for the seed and the optional prime modulus can come from
the environment (BORDERAPOLAR_SEED, BORDERAPOLAR_MODULUS); flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .apolarity import (
    GeneralTensor,
    ann_piece,
    ann_sym_piece,
    as_symmetric,
    depolarize,
    polarize,
    HomPoly,
)
from .grading import (
    PieceElement,
    RingKind,
    RingSpec,
    check_degree,
    degree_total,
    dim_piece,
    format_element,
    format_monomial,
    monomials,
    segre_ring,
    veronese_ring,
)
from .ideals import (
    PointSet,
    TruncatedIdeal,
    degrees_up_to,
    diagonal_ideal,
    expand,
    hilbert_function,
    is_ideal_closed,
    point_ideal,
)
from .linalg import Subspace, field_for_modulus
from .selftest import SCALES, run_selftest
from .transfer import Certificate, comon_certificate, rho_ideal, sigma, upsilon
from . import bounds as bounds_mod


class UsageError(Exception):
    """Bad flags, malformed files, out-of-range parameters: exit code 2."""


class CheckFailure(Exception):
    """A well-posed check ran and failed: exit code 1."""


@dataclass
class RunConfig:
    modulus: int | None = None
    seed: int = 0
    degree_bound: int | None = None
    output: str | None = None
    fmt: str = "text"
    jobs: int = 1

    @property
    def field(self):
        try:
            return field_for_modulus(self.modulus)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


# -- scalar and file parsing -----------------------------------------------------

def parse_scalar(raw, where: str) -> Fraction:
    try:
        if isinstance(raw, bool):
            raise ValueError("booleans are not coefficients")
        if isinstance(raw, int):
            return Fraction(raw)
        if isinstance(raw, str):
            return Fraction(raw.strip())
        raise ValueError(f"unsupported coefficient type {type(raw).__name__}")
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficient at {where}: {raw!r} ({exc})") from exc


def fmt_scalar(x) -> str:
    return str(x)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def load_tensor_file(path: str, cfg: RunConfig):
    """Returns (data, kind) where kind is 'poly' or 'tensor'."""
    data = _load_json(path)
    for key in ("n", "d", "representation"):
        if key not in data:
            raise UsageError(f"{path}: missing field {key!r}")
    n, d = int(data["n"]), int(data["d"])
    rep = data["representation"]
    field = cfg.field
    if rep == "poly":
        terms = {}
        for t, item in enumerate(data.get("terms", [])):
            where = f"{path}:terms[{t}]"
            exps = item.get("exps")
            if not isinstance(exps, list) or len(exps) != n:
                raise UsageError(f"{where}: exps must be a length-{n} list")
            c = parse_scalar(item.get("coeff", 0), where + ".coeff")
            key = tuple(int(e) for e in exps)
            if sum(key) != d:
                raise UsageError(f"{where}: exponents sum to {sum(key)}, expected {d}")
            terms[key] = terms.get(key, Fraction(0)) + c
        try:
            return HomPoly(n, d, terms, field=field), "poly"
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from exc
    if rep == "tensor":
        entries = {}
        for t, item in enumerate(data.get("entries", [])):
            where = f"{path}:entries[{t}]"
            idx = item.get("idx")
            if not isinstance(idx, list) or len(idx) != d:
                raise UsageError(f"{where}: idx must be a length-{d} list")
            c = parse_scalar(item.get("coeff", 0), where + ".coeff")
            key = tuple(int(i) - 1 for i in idx)
            if any(not 0 <= i < n for i in key):
                raise UsageError(f"{where}: indices must lie in 1..{n}")
            entries[key] = entries.get(key, Fraction(0)) + c
        try:
            return GeneralTensor(n, d, entries, field=field), "tensor"
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from exc
    raise UsageError(f"{path}: representation must be 'poly' or 'tensor', got {rep!r}")


def tensor_from_file(path: str, cfg: RunConfig):
    """A tensor in T_1, polarizing a 'poly' file."""
    obj, kind = load_tensor_file(path, cfg)
    return polarize(obj) if kind == "poly" else obj


def _ring_from_header(data: dict, path: str) -> RingSpec:
    kind = data.get("ring")
    n = int(data.get("n", 0))
    d = int(data.get("d", 1))
    if kind == "S":
        return segre_ring(n, d)
    if kind == "V":
        return veronese_ring(n, d)
    raise UsageError(f"{path}: ring must be 'S' or 'V', got {kind!r}")


def _parse_degree(ring: RingSpec, raw, where: str):
    try:
        return check_degree(ring, raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{where}: bad degree {raw!r} ({exc})") from exc


def load_ideal_file(path: str, cfg: RunConfig) -> TruncatedIdeal:
    """Generators are expanded to the bound; explicit pieces are trusted but
    validated for closure.  Loaded ideals carry unknown provenance."""
    data = _load_json(path)
    ring = _ring_from_header(data, path)
    if "bound" not in data:
        raise UsageError(f"{path}: missing field 'bound'")
    file_bound = int(data["bound"])
    bound = file_bound
    if cfg.degree_bound is not None:
        bound = min(bound, cfg.degree_bound)
    field = cfg.field
    if "pieces" in data:
        pieces = {}
        for t, item in enumerate(data["pieces"]):
            where = f"{path}:pieces[{t}]"
            u = _parse_degree(ring, item.get("degree"), where)
            dim = dim_piece(ring, u)
            rows = [
                [parse_scalar(x, f"{where}.basis") for x in row]
                for row in item.get("basis", [])
            ]
            if any(len(row) != dim for row in rows):
                raise UsageError(f"{where}: basis rows must have length {dim}")
            pieces[u] = Subspace.from_rows(dim, rows, piece=(ring, u), field=field)
        missing = [u for u in degrees_up_to(ring, bound) if u not in pieces]
        if missing:
            raise UsageError(f"{path}: missing pieces for degrees {missing[:4]}...")
        ideal = TruncatedIdeal(ring, bound, pieces, None, "user", field)
        if not is_ideal_closed(ideal):
            raise UsageError(f"{path}: the stored pieces are not ideal-closed")
        return ideal
    gens = []
    for t, item in enumerate(data.get("generators", [])):
        where = f"{path}:generators[{t}]"
        u = _parse_degree(ring, item.get("degree"), where)
        if degree_total(u) > file_bound:
            raise UsageError(
                f"{where}: generator degree {u} exceeds the file's bound {file_bound}"
            )
        terms = {}
        for s, term in enumerate(item.get("terms", [])):
            mono = term.get("monomial")
            c = parse_scalar(term.get("coeff", 0), f"{where}.terms[{s}].coeff")
            if ring.is_multigraded:
                mono = tuple(tuple(int(e) for e in row) for row in mono)
            else:
                mono = tuple(int(e) for e in mono)
            terms[mono] = terms.get(mono, Fraction(0)) + c
        try:
            gens.append(PieceElement.from_terms(ring, u, terms, field=field))
        except (ValueError, IndexError) as exc:
            raise UsageError(f"{where}: {exc}") from exc
    return expand(gens, ring, bound, provenance="user", field=field)


def dump_ideal(ideal: TruncatedIdeal) -> dict:
    ring = ideal.ring
    return {
        "ring": "S" if ring.is_multigraded else "V",
        "n": ring.n,
        "d": ring.d,
        "bound": ideal.bound,
        "pieces": [
            {
                "degree": list(u) if isinstance(u, tuple) else u,
                "dim": ideal.pieces[u].dim,
                "basis": [
                    [fmt_scalar(x) for x in row] for row in ideal.pieces[u].basis
                ],
            }
            for u in ideal.degrees()
        ],
    }


def load_points(path: str, n: int, cfg: RunConfig) -> PointSet:
    data = _load_json(path)
    pts = data.get("points")
    if not isinstance(pts, list) or not pts:
        raise UsageError(f"{path}: expected a nonempty 'points' list")
    parsed = []
    for t, p in enumerate(pts):
        if not isinstance(p, list) or len(p) != n:
            raise UsageError(f"{path}:points[{t}]: expected {n} coordinates")
        parsed.append(tuple(parse_scalar(x, f"{path}:points[{t}]") for x in p))
    try:
        return PointSet(veronese_ring(n), tuple(parsed), field=cfg.field)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


# -- output ------------------------------------------------------------------------

def _emit(text: str, cfg: RunConfig):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_payload(payload: dict, text_lines: list, cfg: RunConfig):
    if cfg.fmt == "json":
        _emit(json.dumps(payload, indent=2, sort_keys=True), cfg)
    else:
        _emit("\n".join(text_lines), cfg)


def certificate_lines(cert: Certificate) -> list:
    lines = [
        f"check:      {cert.check}",
        f"inputs:     {cert.inputs_digest}",
        f"verdict:    {'pass' if cert.verdict else 'FAIL'}",
    ]
    if cert.slip_provenance:
        lines.append(f"membership: {cert.slip_provenance}")
    if cert.tested_bound is not None:
        lines.append(f"tested up to total degree {cert.tested_bound}")
    if cert.failure:
        lines.append(f"failure:    {cert.failure}")
    for w in cert.witnesses:
        parts = [f"{k}={v}" for k, v in w.items()]
        lines.append("  - " + ", ".join(parts))
    return lines


def emit_certificate(cert: Certificate, cfg: RunConfig):
    _emit_payload(cert.to_dict(), certificate_lines(cert), cfg)


# -- subcommands ----------------------------------------------------------------------

def cmd_ann(args, cfg: RunConfig) -> int:
    obj, kind = load_tensor_file(args.tensor, cfg)
    raw = args.degree
    if "," in raw:
        degree = tuple(int(x) for x in raw.split(","))
        f = polarize(obj) if kind == "poly" else obj
        ring = segre_ring(f.n, f.order)
        u = _parse_degree(ring, degree, "--degree")
        sub = ann_piece(f, u)
    else:
        k = int(raw)
        if kind == "poly":
            p = obj
        else:
            try:
                p = depolarize(as_symmetric(obj))
            except ValueError as exc:
                raise UsageError(
                    f"a Veronese-side degree needs a symmetric tensor: {exc}"
                ) from exc
        ring = veronese_ring(p.n)
        u = _parse_degree(ring, k, "--degree")
        sub = ann_sym_piece(p, k)
    ring_desc = f"ring S, n={ring.n}, d={ring.d}" if ring.is_multigraded else f"ring V, n={ring.n}"
    lines = [
        ring_desc,
        f"degree {u}: piece dimension {dim_piece(ring, u)}, annihilator dimension {sub.dim}",
    ]
    if sub.is_full:
        lines.append("the annihilator is the full graded piece")
    for row in sub.basis:
        lines.append("  " + format_element(ring, u, row))
    payload = {
        "ring": "S" if ring.is_multigraded else "V",
        "n": ring.n,
        "d": ring.d,
        "degree": list(u) if isinstance(u, tuple) else u,
        "dim_piece": dim_piece(ring, u),
        "dim": sub.dim,
        "full": sub.is_full,
        "monomials": [format_monomial(ring, m) for m in monomials(ring, u)],
        "basis": [[fmt_scalar(x) for x in row] for row in sub.basis],
    }
    _emit_payload(payload, lines, cfg)
    return 0


def _ideal_from_args(args, cfg: RunConfig) -> TruncatedIdeal:
    if getattr(args, "diagonal", None):
        n, d = args.diagonal
        bound = cfg.degree_bound if cfg.degree_bound is not None else d + 1
        return diagonal_ideal(int(n), int(d), bound)
    if not args.ideal:
        raise UsageError("provide an ideal file or --diagonal N D")
    return load_ideal_file(args.ideal, cfg)


def cmd_hf(args, cfg: RunConfig) -> int:
    degrees = list(args.degrees)
    if getattr(args, "diagonal", None) and args.ideal:
        # with --diagonal the leading positional is really a degree
        degrees.insert(0, args.ideal)
        args.ideal = None
    ideal = _ideal_from_args(args, cfg)
    ring = ideal.ring
    rows = []
    for raw in degrees:
        u = _parse_degree(
            ring, tuple(int(x) for x in raw.split(",")) if "," in raw else int(raw),
            "degree",
        )
        if degree_total(u) > ideal.bound:
            raise UsageError(
                f"degree {u} exceeds the truncation bound {ideal.bound}"
            )
        rows.append((u, hilbert_function(ideal, u)))
    width = max(len(str(u)) for u, _ in rows)
    lines = [f"{str(u):>{width}}  {hf}" for u, hf in rows]
    payload = {
        "values": [
            {"degree": list(u) if isinstance(u, tuple) else u, "hf": hf}
            for u, hf in rows
        ]
    }
    _emit_payload(payload, lines, cfg)
    return 0


def _transport(args, cfg: RunConfig, fn_name: str) -> int:
    ideal = load_ideal_file(args.ideal, cfg)
    if fn_name == "upsilon":
        if ideal.ring.kind is not RingKind.VERONESE_COORD:
            raise UsageError("desymmetrization expects an ideal in the V ring")
        d = args.factors
        bound = cfg.degree_bound if cfg.degree_bound is not None else ideal.bound
        try:
            out = upsilon(ideal, d, bound)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif fn_name == "sigma":
        try:
            out = sigma(ideal)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        if ideal.ring.kind is not RingKind.SEGRE_COORD:
            raise UsageError("the restriction expects an ideal in the S ring")
        out = rho_ideal(ideal)
    payload = dump_ideal(out)
    lines = [
        f"ring {payload['ring']}, n={payload['n']}, d={payload['d']}, bound {payload['bound']}"
    ]
    for item in payload["pieces"]:
        lines.append(f"degree {item['degree']}: dim {item['dim']}")
    _emit_payload(payload, lines, cfg)
    return 0


def cmd_check(args, cfg: RunConfig) -> int:
    f = tensor_from_file(args.tensor, cfg)
    try:
        f = as_symmetric(f)
    except ValueError as exc:
        raise UsageError(f"the check needs a symmetric tensor: {exc}") from exc
    n, d = f.n, f.order
    bound = cfg.degree_bound if cfg.degree_bound is not None else d + 1
    if args.points:
        zs = load_points(args.points, n, cfg)
        if zs.count != args.r:
            raise UsageError(
                f"decomposition hint has {zs.count} points but r={args.r}"
            )
        ideal = upsilon(point_ideal(zs, bound), d, bound)
    elif args.ideal:
        ideal = load_ideal_file(args.ideal, cfg)
    else:
        raise UsageError("provide an ideal file or a --points decomposition hint")
    try:
        cert = comon_certificate(f, args.r, ideal)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    payload = cert.to_dict()
    lines = certificate_lines(cert)
    if args.sharp_check:
        try:
            sharp = bounds_mod.is_sharp(f)
            payload["sharp"] = sharp.to_dict()
            lines.append("")
            lines.extend(certificate_lines(sharp))
            if d == 3:
                sharp111 = bounds_mod.is_111_sharp(f)
                payload["sharp111"] = sharp111.to_dict()
                lines.append("")
                lines.extend(certificate_lines(sharp111))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    _emit_payload(payload, lines, cfg)
    return 0 if cert.verdict else 1


def cmd_selftest(args, cfg: RunConfig) -> int:
    results, ok = run_selftest(scale=args.scale, jobs=cfg.jobs, seed=cfg.seed)
    width = max(len(r.name) for r in results)
    lines = [f"{'suite':<{width}}  instances  seconds  result"]
    for r in results:
        lines.append(
            f"{r.name:<{width}}  {r.instances:>9}  {r.seconds:>7.2f}  "
            f"{'pass' if r.passed else 'FAIL ' + r.detail}"
        )
    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    payload = {
        "scale": args.scale,
        "overall": "pass" if ok else "fail",
        "suites": [
            {
                "name": r.name,
                "instances": r.instances,
                "seconds": round(r.seconds, 3),
                "result": "pass" if r.passed else "fail",
                "detail": r.detail,
            }
            for r in results
        ],
    }
    _emit_payload(payload, lines, cfg)
    return 0 if ok else 1


# -- argument wiring -------------------------------------------------------------------

def _env_int(name: str):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"environment variable {name} must be an integer") from exc


def _add_common(sp):
    sp.add_argument("--modulus", type=int, default=None,
                    help="work over Z/p for a prime p > 2^20 (probabilistic verdicts)")
    sp.add_argument("--seed", type=int, default=None, help="seed for randomized suites")
    sp.add_argument("--degree-bound", type=int, default=None,
                    help="override the truncation bound")
    sp.add_argument("--jobs", type=int, default=1,
                    help="parallel workers for independent sub-checks")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--output", default=None, help="write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="borderapolar",
        description="Exact multigraded apolarity and border-rank certificate transfer.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ann", help="print a basis of one annihilator piece")
    p.add_argument("tensor", help="tensor/polynomial JSON file")
    p.add_argument("degree", help="an integer (V side) or comma-separated vector (S side)")
    _add_common(p)

    p = sub.add_parser("hf", help="Hilbert function values of a truncated ideal")
    p.add_argument("ideal", nargs="?", help="ideal JSON file")
    p.add_argument("degrees", nargs="+", help="degrees, integers or comma-separated vectors")
    p.add_argument("--diagonal", nargs=2, type=int, metavar=("N", "D"),
                   help="use the built-in diagonal ideal instead of a file")
    _add_common(p)

    p = sub.add_parser("upsilon", help="desymmetrize a V-side ideal into the S ring")
    p.add_argument("ideal")
    p.add_argument("--factors", type=int, required=True, help="number of Segre factors d")
    _add_common(p)

    p = sub.add_parser("sigma", help="symmetrize an S-side ideal containing the diagonal ideal")
    p.add_argument("ideal")
    _add_common(p)

    p = sub.add_parser("rho", help="restrict an S-side ideal to the first factor")
    p.add_argument("ideal")
    _add_common(p)

    p = sub.add_parser("check", help="run the full transfer certificate pipeline")
    p.add_argument("tensor")
    p.add_argument("r", type=int, help="target border rank")
    p.add_argument("--ideal", default=None, help="candidate ideal JSON file")
    p.add_argument("--points", default=None,
                   help="JSON decomposition hint: r points on the Veronese side")
    p.add_argument("--sharp-check", action="store_true",
                   help="attach sharpness certificates")
    _add_common(p)

    p = sub.add_parser("selftest", help="run the built-in invariant suites")
    p.add_argument("--scale", choices=sorted(SCALES), default="desk")
    _add_common(p)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        cfg = RunConfig(
            modulus=args.modulus if args.modulus is not None else _env_int("BORDERAPOLAR_MODULUS"),
            seed=args.seed if args.seed is not None else (_env_int("BORDERAPOLAR_SEED") or 0),
            degree_bound=args.degree_bound,
            output=args.output,
            fmt=args.format,
            jobs=max(1, args.jobs),
        )
        cfg.field  # validate the modulus eagerly
        handler = {
            "ann": cmd_ann,
            "hf": cmd_hf,
            "upsilon": lambda a, c: _transport(a, c, "upsilon"),
            "sigma": lambda a, c: _transport(a, c, "sigma"),
            "rho": lambda a, c: _transport(a, c, "rho"),
            "check": cmd_check,
            "selftest": cmd_selftest,
        }[args.command]
        return handler(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:  # pragma: no cover
        return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
