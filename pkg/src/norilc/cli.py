"""Command line: norilc <command> --input FILE [--format json|tsv] [--box] [--seed N] [--jobs N].

Exit status 0 on success, 1 on bad input, 2 when a computed invariant that
must hold fails to verify.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import parallel
from .algebra import composition_length
from .bridge import motive_sweep
from .errors import InputError, VerificationError
from .localcoh import (
    cellular_check,
    lyubeznik_table,
    mayer_vietoris,
    prop3_run,
    relative_dims,
    skeleton_stratification,
    strat_complex,
)
from .monomial import SqfIdeal, local_cohomology_dims, mask_str
from .nori import Representation, end_algebra, subdiagram, vertex_module
from .ratlin import fmt_rat

COMMANDS = ("lc", "lyu", "mv", "relc", "strat", "prop3", "nori-end", "nori-length", "motive")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str
    format: str = "json"
    box: bool = False
    seed: int = 0
    jobs: int = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="norilc", description="Local cohomology of monomial ideals and commutant algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="JSON input file")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--box", action="store_true", help="report dimensions per subset of the degree box")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.jobs < 1:
        raise InputError("--jobs must be at least 1")
    if ns.seed < 0 or ns.seed >= 2**64:
        raise InputError("--seed must be an unsigned 64-bit integer")
    return RunConfig(ns.command, ns.input, ns.format, ns.box, ns.seed, ns.jobs)


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _field(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"input needs a {key!r} field ({what})")
    return obj[key]


def _ideal(obj, key=None) -> SqfIdeal:
    src = obj if key is None else _field(obj, key, "an ideal")
    try:
        return SqfIdeal.from_json(src)
    except InputError as exc:
        where = f"{key}: " if key else ""
        raise InputError(f"{where}{exc}") from None


def _dims_block(dims: dict, n: int, box: bool) -> dict:
    out = {}
    for k, row in dims.items():
        if box:
            out[str(k)] = {mask_str(s, n): v for s, v in enumerate(row)}
        else:
            out[str(k)] = sum(row)
    return out


def _tsv_dims(dims: dict, n: int, box: bool) -> list[str]:
    lines = []
    if box:
        lines.append("degree\tsubset\tdim")
        for k, row in dims.items():
            for s, v in enumerate(row):
                lines.append(f"{k}\t{mask_str(s, n)}\t{v}")
    else:
        lines.append("degree\tdim")
        for k, row in dims.items():
            lines.append(f"{k}\t{sum(row)}")
    return lines


# ----------------------------------------------------------------------
# commands: each returns (payload, tsv lines, verified)


def cmd_lc(obj, cfg):
    i = _ideal(obj)
    dims = local_cohomology_dims(i, "cech")
    payload = {"ideal": i.to_json(), "height": i.height, "local_cohomology": _dims_block(dims, i.n, cfg.box)}
    return payload, _tsv_dims(dims, i.n, cfg.box), True


def cmd_lyu(obj, cfg):
    i = _ideal(obj)
    t = lyubeznik_table(i)
    return t.to_json(), t.to_tsv().split("\n"), True


def cmd_mv(obj, cfg):
    i, j = _ideal(obj, "i"), _ideal(obj, "j")
    if i.n != j.n:
        raise InputError("i and j must have the same n")
    rep = mayer_vietoris(i, j)
    payload = {"exact": rep.exact, "matches_intersection": rep.matches_intersection, "failures": rep.failures}
    payload["dims"] = {name: _dims_block(per, i.n, cfg.box) for name, per in rep.dims.items()}
    lines = [f"exact\t{str(rep.exact).lower()}", f"matches_intersection\t{str(rep.matches_intersection).lower()}"]
    for name, per in rep.dims.items():
        for line in _tsv_dims(per, i.n, cfg.box)[1:]:
            lines.append(f"{name}\t{line}")
    return payload, lines, rep.exact and rep.matches_intersection


def cmd_relc(obj, cfg):
    y = _ideal(obj, "y")
    zobj = _field(obj, "z", "an ideal, or null for the empty set")
    z = None if zobj is None else _ideal(obj, "z")
    if z is not None and z.n != y.n:
        raise InputError("y and z must have the same n")
    dims = relative_dims(y, z)
    payload = {"y": y.to_json(), "z": None if z is None else z.to_json(), "relative": _dims_block(dims, y.n, cfg.box)}
    return payload, _tsv_dims(dims, y.n, cfg.box), True


def cmd_strat(obj, cfg):
    i = _ideal(obj)
    s = skeleton_stratification(i)
    cell = cellular_check(s)
    payload = {"levels": [lev.to_json() for lev in s.levels], "cellular": cell.cellular, "report": cell.levels}
    lines = [f"level\t{k}\t{lev}" for k, lev in enumerate(s.levels)]
    lines.append(f"cellular\t{str(cell.cellular).lower()}")
    ok = cell.cellular
    if cell.cellular:
        rep = strat_complex(s)
        payload["complex"] = {
            "matches": rep.matches,
            "terms": _dims_block({k: tuple(p.dim(k) for p in rep.complex.parts) for k in rep.complex.degrees()}, i.n, cfg.box),
            "cohomology": _dims_block(rep.dims, i.n, cfg.box),
        }
        lines.append(f"matches\t{str(rep.matches).lower()}")
        lines += [f"cohomology\t{x}" for x in _tsv_dims(rep.dims, i.n, cfg.box)[1:]]
        ok = rep.matches
    return payload, lines, ok


def cmd_prop3(obj, cfg):
    i, j = _ideal(obj, "i"), _ideal(obj, "j")
    if i.n != j.n:
        raise InputError("i and j must have the same n")
    rep = prop3_run(i, j)
    payload = rep.to_json()
    lines = [f"height\t{rep.h}", f"a\t{'none' if rep.candidate is None else rep.candidate}", f"checked\t{len(rep.checked)}"]
    return payload, lines, True


def _diagram_input(obj):
    diag = obj.get("diagram", obj) if isinstance(obj, dict) else obj
    r = Representation.from_json(diag)
    verts = obj.get("subdiagram") if isinstance(obj, dict) else None
    f = r.full() if verts is None else subdiagram(r, verts)
    return r, f


def _mat(m):
    return [[fmt_rat(x) for x in row] for row in m.to_lists()]


def cmd_nori_end(obj, cfg):
    r, f = _diagram_input(obj)
    a = end_algebra(r, f)
    payload = {
        "vertices": list(f.vertices),
        "dim": a.dim,
        "basis": [[_mat(m) for m in b] for b in a.basis],
        "unit": [fmt_rat(x) for x in a.unit],
    }
    lines = [f"dim\t{a.dim}", "vertices\t" + ",".join(f.vertices)]
    return payload, lines, True


def cmd_nori_length(obj, cfg):
    r, f = _diagram_input(obj)
    v = _field(obj, "vertex", "the vertex whose module is measured")
    a = end_algebra(r, f)
    m = vertex_module(r, f, v, a)
    cs = composition_length(m, a, seed=cfg.seed)
    payload = {"vertex": v, "dim": m.dim, "algebra_dim": a.dim, "length": cs.length, "certified": cs.certified,
               "series_dims": [b.cols for b in cs.series]}
    if cs.note:
        payload["note"] = cs.note
    lines = [f"length\t{cs.length}", f"certified\t{str(cs.certified).lower()}"]
    return payload, lines, True


def cmd_motive(obj, cfg):
    i = _ideal(obj)
    entries = motive_sweep(i, cfg.seed)
    payload = [e.to_json() for e in entries]
    lines = ["r\ti\tlambda\tmotivic_length\tcertified"]
    lines += [f"{e.r}\t{e.i}\t{e.lam}\t{e.motivic_length}\t{str(e.certified).lower()}" for e in entries]
    return payload, lines, True


HANDLERS = {
    "lc": cmd_lc,
    "lyu": cmd_lyu,
    "mv": cmd_mv,
    "relc": cmd_relc,
    "strat": cmd_strat,
    "prop3": cmd_prop3,
    "nori-end": cmd_nori_end,
    "nori-length": cmd_nori_length,
    "motive": cmd_motive,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    obj = load_json(cfg.input)
    with parallel.jobs(cfg.jobs):
        payload, lines, ok = HANDLERS[cfg.command](obj, cfg)
    if cfg.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0 if ok else 2


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except InputError as exc:
        print(f"norilc: error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"norilc: verification failed: {exc}", file=sys.stderr)
        return 2
