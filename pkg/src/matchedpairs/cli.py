"""Batch command line: every command reads or writes JSON documents.

Exit codes: 0 when every check passes, 1 when a mathematical violation is
found, 2 for malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from ._search import SizeGuardExceeded
from .doubles import double, generalized_double, validate_morphism
from .drinfeld import DrinfeldDouble, certify_drinfeld_iso, check_vanishing_rule
from .fleet import BUILDERS, S3_ROTATIONS, S3_TRANSPOSITION, standard_morphisms
from .groupoid import coarse, cyclic_group, discrete, symmetric_group, validate_groupoid
from .hopf import (build_weak_hopf, certify_drinfeld_element, certify_duality, certify_r_matrix,
                   certify_weak_hopf, drinfeld_element, r_matrix)
from .matched import (MatchedPair, check_derived_identities, dual, make_conjugation_pair, make_group_pair,
                      make_initial, make_MXY, make_semi, make_terminal, validate_matched_pair)
from .report import ValidationReport
from .reps import validate_representation
from .rotations import RotationPair, certify_braiding, check_rotation_pair, enumerate_rotation_pairs, \
    enumerate_rotations

EXIT_OK, EXIT_VIOLATION, EXIT_MALFORMED = 0, 1, 2

DEFAULT_MAX_CELLS = 64
DEFAULT_MAX_CANDIDATES = 200_000


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- examples

def named_groupoid(name: str):
    """``s3``, ``cN``, ``coarseN`` or ``discreteN``."""
    if name == "s3":
        return symmetric_group(3)
    for prefix, build in (("coarse", coarse), ("discrete", discrete)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            n = int(name[len(prefix):])
            if n < 1:
                break
            return build([chr(ord("A") + i) for i in range(n)])
    if name.startswith("c") and name[1:].isdigit() and int(name[1:]) >= 1:
        return cyclic_group(int(name[1:]))
    raise UsageError(f"unknown groupoid {name!r} (use s3, cN, coarseN or discreteN)")


def subgroup_labels(sigma_name: str, sigma, name: str) -> list:
    if sigma_name == "s3":
        table = {"1": [(0, 1, 2)], "c3": S3_ROTATIONS, "c2": S3_TRANSPOSITION, "s3": list(sigma.arrows)}
        if name in table:
            return table[name]
    elif sigma_name.startswith("c"):
        n = len(sigma)
        if name == "1":
            return [0]
        if name.startswith("c") and name[1:].isdigit():
            k = int(name[1:])
            if k >= 1 and n % k == 0:
                return [i * (n // k) for i in range(k)]
    raise UsageError(f"unknown subgroup {name!r} of {sigma_name}")


def example_pair(kind: str, params: list[str]) -> MatchedPair:
    def count(s):
        if not s.isdigit() or int(s) < 1:
            raise UsageError(f"expected a positive integer, got {s!r}")
        return int(s)

    def points(n):
        return [chr(ord("A") + i) for i in range(n)]

    def need(k):
        if len(params) != k:
            raise UsageError(f"example {kind} takes {k} parameter(s)")

    if kind in ("initial", "terminal"):
        need(1)
        return (make_initial if kind == "initial" else make_terminal)(points(count(params[0])))
    if kind == "mxy":
        need(2)
        m, n = count(params[0]), count(params[1])
        return make_MXY(list(range(m)), [chr(ord("a") + i) for i in range(n)])
    if kind == "group":
        need(3)
        sigma = named_groupoid(params[0])
        if sigma.n_objects != 1:
            raise UsageError("group pairs need a group")
        try:
            return make_group_pair(sigma, subgroup_labels(params[0], sigma, params[1]),
                                   subgroup_labels(params[0], sigma, params[2]))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if kind == "bundle":
        need(1)
        return make_conjugation_pair(named_groupoid(params[0]))
    if kind == "semi":
        need(2)
        if params[1] not in ("vertical", "horizontal"):
            raise UsageError("semi side must be vertical or horizontal")
        return make_semi(named_groupoid(params[0]), params[1])
    if kind == "fleet":
        need(1)
        if params[0] not in BUILDERS:
            raise UsageError(f"unknown fleet pair {params[0]!r}; choose from {', '.join(BUILDERS)}")
        return BUILDERS[params[0]]()
    raise UsageError(f"unknown example {kind!r}")


# ---------------------------------------------------------------- checks

def pair_reports(M: MatchedPair) -> list[ValidationReport]:
    rep = validate_matched_pair(M)
    out = [rep]
    if rep.ok:
        out.append(check_derived_identities(M))
    return out


def validate_document(obj, kind: str) -> dict[str, list[ValidationReport]]:
    """Reports keyed by structure name (a single document uses its kind)."""
    if kind == "groupoid":
        return {kind: [validate_groupoid(obj)]}
    if kind == "matched_pair":
        return {kind: pair_reports(obj)}
    if kind == "morphism":
        reps = pair_reports(obj.source) + pair_reports(obj.target)
        if all(r.ok for r in reps):
            reps.append(validate_morphism(obj))
        return {kind: reps}
    if kind == "representation":
        reps = pair_reports(obj.pair)
        if all(r.ok for r in reps):
            reps.append(validate_representation(obj.pair, obj))
        return {kind: reps}
    if kind == "rotation_pair":
        M, pair = obj
        reps = pair_reports(M)
        if all(r.ok for r in reps):
            reps.append(check_rotation_pair(M, pair.xi, pair.eta))
        return {kind: reps}
    ws = obj
    out: dict = {}
    for n, G in ws.groupoids.items():
        out[f"groupoid:{n}"] = [validate_groupoid(G)]
    for n, M in ws.pairs.items():
        out[f"pair:{n}"] = pair_reports(M)
    for n, m in ws.morphisms.items():
        out[f"morphism:{n}"] = [validate_morphism(m)]
    for n, R in ws.representations.items():
        out[f"representation:{n}"] = [validate_representation(R.pair, R)]
    for n, (pn, p) in ws.rotation_pairs.items():
        out[f"rotation_pair:{n}"] = [check_rotation_pair(ws.pairs[pn], p.xi, p.eta)]
    return out


def _all_ok(reports) -> bool:
    return all(r.ok for r in reports)


def _skip(reason: str) -> dict:
    return {"skipped": reason}


# ---------------------------------------------------------------- commands

class Result:
    def __init__(self, doc: dict, ok: bool = True):
        self.doc = doc
        self.ok = ok


def _load_pair(path: str) -> tuple[MatchedPair | None, Result | None]:
    """A matched pair document, or an exit-1 result when it fails validation."""
    doc = io.parse(_read(path))
    if doc["kind"] != "matched_pair":
        raise io.DocumentError(f"expected a matched_pair document, got {doc['kind']}")
    M = io.from_json(doc)
    reps = pair_reports(M)
    if not _all_ok(reps):
        return None, Result({"kind": "report", "input_valid": False, "validation": [r.as_dict() for r in reps]},
                            False)
    return M, None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise io.DocumentError(f"cannot read {path}: {exc.strerror}") from exc


def _guard(M: MatchedPair, args) -> str | None:
    if len(M.cells) > args.max_cells:
        return f"{len(M.cells)} cells exceed --max-cells {args.max_cells}"
    return None


def cmd_validate(args) -> Result:
    doc = io.parse(_read(args.path))
    obj = io.from_json(doc)
    reports = validate_document(obj, doc["kind"])
    ok = all(_all_ok(r) for r in reports.values())
    return Result({"kind": "report", "command": "validate", "document": doc["kind"], "ok": ok,
                   "reports": {k: [r.as_dict() for r in v] for k, v in reports.items()}}, ok)


def cmd_example(args) -> Result:
    return Result(io.to_json(example_pair(args.name, args.params)))


def cmd_double(args) -> Result:
    M, bad = _load_pair(args.path)
    return bad or Result(io.to_json(double(M)))


def cmd_dual(args) -> Result:
    M, bad = _load_pair(args.path)
    return bad or Result(io.to_json(dual(M)))


def cmd_gendouble(args) -> Result:
    doc = io.parse(_read(args.path))
    if doc["kind"] == "morphism":
        m = io.from_json(doc)
        reps = validate_document(m, "morphism")["morphism"]
        if not _all_ok(reps):
            return Result({"kind": "report", "input_valid": False, "validation": [r.as_dict() for r in reps]}, False)
    elif doc["kind"] == "matched_pair":
        M, bad = _load_pair(args.path)
        if bad:
            return bad
        morphisms = standard_morphisms(M)
        if args.morphism not in morphisms:
            raise UsageError(f"--morphism must be one of {', '.join(morphisms)}")
        m = morphisms[args.morphism]
    else:
        raise io.DocumentError("gendouble needs a morphism or matched_pair document")
    return Result(io.to_json(generalized_double(m)))


def braiding_section(M: MatchedPair, args, certify: bool = False) -> dict:
    guard = _guard(M, args)
    if guard:
        return _skip(guard)
    try:
        rots = list(enumerate_rotations(M, args.max_candidates))
    except SizeGuardExceeded as exc:
        return _skip(f"{exc} (--max-candidates)")
    pairs = enumerate_rotation_pairs(M, rots)
    entries = []
    for p in pairs:
        entry = {"xi": list(p.xi), "eta": list(p.eta), "check": check_rotation_pair(M, p.xi, p.eta).as_dict()}
        if certify:
            entry["braiding"] = certify_braiding(M, p).as_dict()
        entries.append(entry)
    return {"rotations": [list(r) for r in rots], "rotation_count": len(rots),
            "pair_count": len(pairs), "pairs": entries}


def _section_ok(section) -> bool:
    """True unless some nested report says ``ok: false``."""
    if isinstance(section, dict):
        if section.get("ok") is False:
            return False
        return all(_section_ok(v) for v in section.values())
    if isinstance(section, list):
        return all(_section_ok(v) for v in section)
    return True


def cmd_enumerate_braidings(args) -> Result:
    M, bad = _load_pair(args.path)
    if bad:
        return bad
    sec = braiding_section(M, args, certify=args.certify)
    return Result(dict(sec, kind="braidings"), _section_ok(sec))


def hopf_summary(W) -> dict:
    return {"dimension": W.n, "unit_support": len(W.unit()),
            "source_idempotents": len(W.source_idempotents()),
            "target_idempotents": len(W.target_idempotents())}


def cmd_build_hopf(args) -> Result:
    M, bad = _load_pair(args.path)
    if bad:
        return bad
    if _guard(M, args):
        return Result(dict(_skip(_guard(M, args)), kind="weak_hopf"))
    W = build_weak_hopf(M)
    doc = dict(hopf_summary(W), kind="weak_hopf")
    doc["basis"] = [io.label_to_json(W.label(i)) for i in range(W.n)]
    doc["counit"] = [W.counit_basis(i) for i in range(W.n)]
    doc["antipode"] = [W.antipode_basis(i) for i in range(W.n)]
    doc["coproduct"] = [[list(t) for t in W.delta_basis(i)] for i in range(W.n)]
    return Result(doc)


def hopf_section(M: MatchedPair, args) -> dict:
    guard = _guard(M, args)
    if guard:
        return _skip(guard)
    W = build_weak_hopf(M)
    return dict(hopf_summary(W), axioms=certify_weak_hopf(W).as_dict(),
                duality=certify_duality(W, build_weak_hopf(dual(M))).as_dict())


def cmd_check_hopf(args) -> Result:
    M, bad = _load_pair(args.path)
    if bad:
        return bad
    sec = hopf_section(M, args)
    return Result(dict(sec, kind="hopf_check"), _section_ok(sec))


def r_matrix_section(M: MatchedPair, args, pairs: list[RotationPair] | None = None) -> dict:
    guard = _guard(M, args)
    if guard:
        return _skip(guard)
    if pairs is None:
        try:
            pairs = enumerate_rotation_pairs(M, max_nodes=args.max_candidates)
        except SizeGuardExceeded as exc:
            return _skip(f"{exc} (--max-candidates)")
    W = build_weak_hopf(M)
    out = []
    for p in pairs:
        R = r_matrix(W, p)
        out.append({
            "xi": list(p.xi), "eta": list(p.eta),
            "r_support": sorted([a, b] for (a, b), _ in R),
            "r_matrix": certify_r_matrix(W, R).as_dict(),
            "drinfeld_element_support": sorted(k for k, _ in drinfeld_element(W, R)),
            "drinfeld_element": certify_drinfeld_element(W, p, R).as_dict(),
        })
    return {"pair_count": len(pairs), "pairs": out}


def cmd_r_matrix(args) -> Result:
    doc = io.parse(_read(args.path))
    if doc["kind"] == "rotation_pair":
        M, p = io.from_json(doc)
        reps = pair_reports(M)
        if not _all_ok(reps):
            return Result({"kind": "report", "input_valid": False, "validation": [r.as_dict() for r in reps]}, False)
        sec = r_matrix_section(M, args, [p])
    elif doc["kind"] == "matched_pair":
        M, bad = _load_pair(args.path)
        if bad:
            return bad
        sec = r_matrix_section(M, args)
    else:
        raise io.DocumentError("r-matrix needs a matched_pair or rotation_pair document")
    return Result(dict(sec, kind="r_matrices"), _section_ok(sec))


def drinfeld_section(M: MatchedPair, args) -> dict:
    guard = _guard(M, args)
    if guard:
        return _skip(guard)
    DD = DrinfeldDouble(M)
    DM = double(M)
    return {"dimension": DD.dim, "double_cells": len(DM.cells),
            "isomorphism": certify_drinfeld_iso(DD, DM).as_dict(),
            "vanishing_rule": check_vanishing_rule(DD).as_dict()}


def cmd_drinfeld_double(args) -> Result:
    M, bad = _load_pair(args.path)
    if bad:
        return bad
    sec = drinfeld_section(M, args)
    return Result(dict(sec, kind="drinfeld_double"), _section_ok(sec))


def cmd_report(args) -> Result:
    M, bad = _load_pair(args.path)
    if bad:
        return bad
    doc: dict = {"kind": "full_report", "cells": len(M.cells),
                 "validation": [r.as_dict() for r in pair_reports(M)]}
    guard = _guard(M, args)
    if guard:
        doc["double"] = doc["dual"] = _skip(guard)
    else:
        D = double(M)
        doc["double"] = {"cells": len(D.cells), "validation": validate_matched_pair(D).as_dict()}
        doc["dual"] = {"validation": validate_matched_pair(dual(M)).as_dict()}
    doc["braidings"] = braiding_section(M, args)
    doc["weak_hopf"] = hopf_section(M, args)
    pairs = None
    if "pairs" in doc["braidings"]:
        pairs = [RotationPair(tuple(p["xi"]), tuple(p["eta"])) for p in doc["braidings"]["pairs"]]
    doc["r_matrices"] = r_matrix_section(M, args, pairs) if pairs is not None else doc["braidings"]
    doc["drinfeld_double"] = drinfeld_section(M, args)
    ok = _section_ok(doc)
    doc["ok"] = ok
    return Result(doc, ok)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON result here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS,
                        help="skip heavy sections for pairs with more cells (default %(default)s)")
    common.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES,
                        help="search budget for rotation enumeration (default %(default)s)")

    parser = argparse.ArgumentParser(prog="matchedpairs",
                                     description="Exact computations with finite matched pairs of groupoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, path=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if path:
            p.add_argument("path", help="input JSON document")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "validate any document")
    p = add("example", cmd_example, "emit a standard matched pair", path=False)
    p.add_argument("name", help="initial | terminal | mxy | group | bundle | semi | fleet")
    p.add_argument("params", nargs="*", help="e.g. 'mxy 2 2', 'group s3 c3 c2', 'bundle coarse2', 'semi s3 vertical'")
    add("double", cmd_double, "the double D(V,H)")
    add("dual", cmd_dual, "the dual pair (H,V)")
    p = add("gendouble", cmd_gendouble, "generalized double of a morphism")
    p.add_argument("--morphism", default="identity",
                   help="for a matched_pair input: identity | initial | terminal | initial;terminal")
    p = add("enumerate-braidings", cmd_enumerate_braidings, "rotations and matched pairs of rotations")
    p.add_argument("--certify", action="store_true", help="also certify each braiding on representations")
    add("build-hopf", cmd_build_hopf, "structure maps of k(V,H)")
    add("check-hopf", cmd_check_hopf, "certify the weak Hopf axioms and the duality pairing")
    add("r-matrix", cmd_r_matrix, "R-matrices and Drinfeld elements of rotation pairs")
    add("drinfeld-double", cmd_drinfeld_double, "Drinfeld double and its isomorphism with k(D(V,H))")
    add("report", cmd_report, "every check in one document")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (io.DocumentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    text = io.dumps(result.doc, args.pretty)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))
    return EXIT_OK if result.ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
