"""Command-line driver: ``srlim <command> [options] < complex.json``.

The input document is ``{"vertices": [...], "facets": [[...], ...]}``.  Every
command prints one JSON report with the fields ``command``, ``input_digest``,
``result`` and ``version``.  Exit status: 0 on success, 1 when a mathematical
check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .diagrams import exp_cohomology_diagram, is_fat, limit, validate_twin
from .higher_limits import bk_e2_table, higher_limits
from .linalg import QQ, CoefficientDomain
from .rational import (
    automorphism_generators,
    ci_detect,
    hilbert_ci_identity,
    koszul_cohomology_check,
    minimal_model,
)
from .simplicial import SimplicialComplex, from_facets, minimal_nonfaces
from .stanley_reisner import hilbert_function, hilbert_series, sr_basis
from .verify import kan_extension_check, verify_all


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Documents


def parse_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed document: {e}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be an object")
    extra = set(doc) - {"vertices", "facets"}
    if extra:
        raise InputError(f"unknown fields: {sorted(extra)}")
    if "vertices" not in doc or "facets" not in doc:
        raise InputError("document needs 'vertices' and 'facets'")
    verts, facets = doc["vertices"], doc["facets"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise InputError("'vertices' must be an array of strings")
    if not isinstance(facets, list) or not all(
            isinstance(f, list) and all(isinstance(v, str) for v in f) for f in facets):
        raise InputError("'facets' must be an array of arrays of strings")
    return doc


def normalize_document(doc: dict) -> dict:
    """Sorted labels and facets; facets reduced to the maximal faces."""
    k = complex_from_document(doc)
    labels = sorted(k.labels)
    facets = sorted(sorted(k.face_labels(f)) for f in k.facets if f)
    return {"vertices": labels, "facets": facets}


def complex_from_document(doc: dict) -> SimplicialComplex:
    try:
        return from_facets(doc["vertices"], doc["facets"])
    except ValueError as e:
        raise InputError(str(e)) from None


def serialize_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def document_digest(doc: dict) -> str:
    return hashlib.sha256(serialize_document(normalize_document(doc)).encode()).hexdigest()


# ---------------------------------------------------------------------------
# Commands; each returns (result, ok)


def _summaries(xs) -> list:
    return [x.to_json() for x in xs]


def cmd_faces(k, dom, args):
    return {"faces": [k.face_labels(f) for f in k.faces], "f_vector": k.f_vector(),
            "facets": k.facet_labels()}, True


def cmd_nonfaces(k, dom, args):
    return {"minimal_nonfaces": [k.face_labels(f) for f in minimal_nonfaces(k)]}, True


def cmd_hilbert(k, dom, args):
    s = hilbert_series(k, verify_to=max(args.max_degree, 10))
    return {"coefficients": [hilbert_function(k, j) for j in range(args.max_degree + 1)],
            "series": {"numerator": list(s.numerator), "denominator_power": s.denominator_power,
                       "text": str(s)}}, True


def cmd_sr_basis(k, dom, args):
    return {"degree": args.degree,
            "basis": [m.monomial(k.labels) for m in sr_basis(k, args.degree)]}, True


def cmd_lim(k, dom, args):
    lim = limit(exp_cohomology_diagram(k, args.degree, dom).contra)
    return {"degree": args.degree, "limit": lim.summary().to_json()}, True


def cmd_higher_lim(k, dom, args):
    lims = higher_limits(exp_cohomology_diagram(k, args.degree, dom).contra, args.imax)
    return {"degree": args.degree, "lim": _summaries(lims)}, True


def cmd_bk_table(k, dom, args):
    table = bk_e2_table(k, dom, args.imax, args.jmax)
    return {"table": table.to_json(), "text": table.format()}, True


def _per_degree(k, dom, args, check):
    degrees = range(args.jmax + 1)
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        results = list(pool.map(lambda j: check(exp_cohomology_diagram(k, j, dom)), degrees))
    out, ok = [], True
    for j, res in zip(degrees, results):
        entry = {"degree": j, "pass": res.ok}
        if not res.ok:
            entry["witness"] = k.face_labels(res.witness) if isinstance(res.witness, tuple) and \
                all(isinstance(v, int) for v in res.witness) else str(res.witness)
            entry["detail"] = res.detail
            ok = False
        out.append(entry)
    return {"degrees": out, "pass": ok}, ok


def cmd_fat_check(k, dom, args):
    return _per_degree(k, dom, args, lambda t: is_fat(t.contra))


def cmd_twin_check(k, dom, args):
    return _per_degree(k, dom, args, validate_twin)


def cmd_kan_check(k, dom, args):
    out, ok = [], True
    for mu in k.facets:
        if not mu:
            continue
        for j in range(args.jmax + 1):
            res = kan_extension_check(k, mu, j, dom, args.nmax)
            entry = {"facet": k.face_labels(mu), "degree": j, "pass": res.ok}
            if not res.ok:
                entry["witness"] = res.witness
                entry["detail"] = res.detail
                ok = False
            out.append(entry)
    return {"cases": out, "pass": ok}, ok


def cmd_ci(k, dom, args):
    p = ci_detect(k)
    return (p.to_json() if p else p.to_json(k)), True


def _require_ci(k):
    p = ci_detect(k)
    if not p:
        return None, {"ci": False, **p.to_json(k)}
    return p, None


def cmd_model(k, dom, args):
    p, err = _require_ci(k)
    if err:
        return err, False
    model = minimal_model(p)
    return {"ci": True, "model": model.to_json(),
            "d_squared_zero": model.check_d_squared().ok}, True


def cmd_koszul_check(k, dom, args):
    p, err = _require_ci(k)
    if err:
        return err, False
    kz = koszul_cohomology_check(p, args.cutoff)
    hi = hilbert_ci_identity(p, args.cutoff)
    out = {"koszul": {"pass": kz.ok, "dims": kz.data.get("dims")},
           "hilbert_identity": {"pass": hi.ok}}
    if not kz.ok:
        out["koszul"].update(witness_degree=kz.witness, detail=kz.detail)
    if not hi.ok:
        out["hilbert_identity"].update(witness_degree=hi.witness, detail=hi.detail)
    return out, kz.ok and hi.ok


def cmd_aut_gens(k, dom, args):
    p, err = _require_ci(k)
    if err:
        return err, False
    return automorphism_generators(p).to_json(), True


def cmd_verify_all(k, dom, args):
    res = verify_all(k, dom, threads=args.threads)
    return res, res["pass"]


COMMANDS = {
    "faces": cmd_faces,
    "nonfaces": cmd_nonfaces,
    "hilbert": cmd_hilbert,
    "sr-basis": cmd_sr_basis,
    "lim": cmd_lim,
    "higher-lim": cmd_higher_lim,
    "bk-table": cmd_bk_table,
    "fat-check": cmd_fat_check,
    "twin-check": cmd_twin_check,
    "kan-check": cmd_kan_check,
    "ci": cmd_ci,
    "model": cmd_model,
    "koszul-check": cmd_koszul_check,
    "aut-gens": cmd_aut_gens,
    "verify-all": cmd_verify_all,
}


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", help="read the complex from this file instead of stdin")
    common.add_argument("--coeffs", default="Q", help="Q, Z, F2, F3 or F<p>")
    common.add_argument("--threads", type=_positive, default=1)
    parser = argparse.ArgumentParser(prog="srlim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "hilbert":
            p.add_argument("--max-degree", type=_nonneg, default=10)
        elif name in ("sr-basis", "lim"):
            p.add_argument("--degree", type=_nonneg, default=1)
        elif name == "higher-lim":
            p.add_argument("--degree", type=_nonneg, default=1)
            p.add_argument("--imax", type=_nonneg, default=5)
        elif name == "bk-table":
            p.add_argument("--jmax", type=_nonneg, default=3)
            p.add_argument("--imax", type=_nonneg, default=5)
        elif name in ("fat-check", "twin-check"):
            p.add_argument("--jmax", type=_nonneg, default=3)
        elif name == "kan-check":
            p.add_argument("--jmax", type=_nonneg, default=2)
            p.add_argument("--nmax", type=_nonneg, default=4)
        elif name == "koszul-check":
            p.add_argument("--cutoff", type=_nonneg, default=10)
    return parser


def _echo(args) -> dict:
    """The command with its options, minus I/O and threading."""
    skip = {"command", "file", "threads"}
    return {"name": args.command, "options": {k: v for k, v in sorted(vars(args).items()) if k not in skip}}


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        dom = CoefficientDomain.parse(args.coeffs)
        args.coeffs = dom.name
        if args.file:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                raise InputError(f"cannot read {args.file}: {e.strerror}") from None
        else:
            text = stdin.read()
        doc = parse_document(text)
        k = complex_from_document(doc)
        digest = document_digest(doc)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    if args.command in ("model", "koszul-check", "aut-gens") and dom != QQ:
        print("error: rational models are defined over Q only", file=stderr)
        return 2
    result, ok = COMMANDS[args.command](k, dom, args)
    report = {"command": _echo(args), "input_digest": digest, "result": result,
              "version": __version__}
    stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
