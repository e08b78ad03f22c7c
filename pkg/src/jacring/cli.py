"""Command-line surface.

Every ring subcommand reads a spec file from --spec or stdin and emits one
machine-readable result document on stdout (JSON by default, --csv for a
delimited table).  Exit codes: 0 success, 1 bad input, 2 a theorem-backed
check failed on input that passed the smoothness gate, so CI can tell bugs
from bad data.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .cache import ENV_VAR, ResultCache, make_key
from .duality import (
    dual_kernel_report,
    pairing_report,
    wedge_ideal_membership,
)
from .field import Field, FieldError, QQ
from .geom import connectivity_bounds, hodge_table, torelli_report
from .graded import mono_to_str
from .koszul import (
    KoszulInstance,
    full_b1_instance,
    middle_homology,
    random_subspace_instance,
)
from .parser import ParseError
from .ring import (
    RingSpec,
    SocleError,
    SpecError,
    dim_b,
    ladder_report,
    quotient_piece,
    smoothness_heuristic,
)
from .specfile import (
    PRESET_NAMES,
    SpecFile,
    SpecFileError,
    parse_specfile,
    preset,
    preset_descriptions,
)
from .verify import run_verify

INPUT_ERROR = 1
VIOLATION = 2

_INPUT_ERRORS = (SpecFileError, ParseError, SpecError, SocleError, FieldError,
                 ValueError, OSError)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit_json(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"


def _emit_csv(doc: dict) -> str:
    payload = doc.get("table")
    lines = []
    if payload:
        headers = list(payload[0].keys())
        lines.append(",".join(headers))
        for row in payload:
            lines.append(",".join(_csv_cell(row.get(h)) for h in headers))
    else:
        lines.append("key,value")
        for k in sorted(doc):
            lines.append(f"{k},{_csv_cell(doc[k])}")
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    value = _jsonable(value)
    if isinstance(value, (dict, list)):
        text = json.dumps(value, sort_keys=True)
    else:
        text = str(value)
    if any(ch in text for ch in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _read_spec(args) -> SpecFile:
    if args.spec:
        with open(args.spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    sf = parse_specfile(text)
    if args.modp:
        field = Field.prime(args.modp)
        sf = SpecFile(field, sf.n, [f.map_field(field) for f in sf.F],
                      [g.map_field(field) for g in sf.G],
                      sf.assume_smooth, sf.seed)
    if getattr(args, "assume_smooth", False):
        sf.assume_smooth = True
    return sf


def _base_doc(command: str, sf: SpecFile, spec: RingSpec, cli_args: dict) -> dict:
    return {
        "tool": "jacring",
        "version": __version__,
        "subcommand": command,
        "args": cli_args,
        "spec_hash": sf.content_hash(),
        "field": spec.field.describe(),
        "n": spec.n,
        "r": spec.r,
        "s": spec.s,
        "d": list(spec.d),
        "e": list(spec.e),
        "warnings": spec.warnings,
    }


def _require_smooth(spec: RingSpec):
    if spec.assume_smooth:
        return
    heur = smoothness_heuristic(spec)
    if not heur["pass"]:
        raise SocleError(f"transversality heuristic failed: {heur['reason']}")


# -- subcommand handlers: return (doc, exit_code) ------------------------------


def _cmd_dim(sf, spec, args):
    doc = {"q": args.q, "l": args.l,
           "dim": dim_b(spec, args.q, args.l),
           "dim_ambient": spec.dim_ambient(args.q, args.l)}
    return doc, 0


def _cmd_basis(sf, spec, args):
    piece = quotient_piece(spec, args.q, args.l)
    table = [{"index": i, "monomial": mono_to_str(piece.ambient.monomials[amb])}
             for i, amb in enumerate(piece.standard)]
    return {"q": args.q, "l": args.l, "dim": piece.dim,
            "dim_ambient": piece.ambient.dim, "table": table}, 0


def _cmd_socle(sf, spec, args):
    heur = smoothness_heuristic(spec)
    doc = {"socle_twist": spec.socle_twist, "socle_q": spec.n - spec.r,
           "heuristic": heur, "socle_dim": heur.get("socle_dim")}
    code = 0 if (heur["pass"] or spec.assume_smooth) else INPUT_ERROR
    return doc, code


def _cmd_pairing(sf, spec, args):
    _require_smooth(spec)
    rep = pairing_report(spec, args.p, args.l)
    doc = rep.as_dict()
    doc["kernel_left_basis"] = rep.kernel_left
    bad = (rep.case.startswith("II-2") and not rep.perfect) or (
        rep.case == "II-3-injective" and rep.kernel_left)
    return doc, VIOLATION if bad else 0


def _cmd_kernel2(sf, spec, args):
    _require_smooth(spec)
    rep = dual_kernel_report(spec)
    mem = wedge_ideal_membership(spec)
    rep["membership"] = mem
    ok = (rep["equal"] and rep["surjective"] and mem["ok"]
          and rep["kernel_dim"] == rep["expected_kernel_dim"])
    return rep, 0 if ok else VIOLATION


def _parse_vector_file(path: str, dim: int, field) -> list[dict]:
    vectors = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != dim:
                raise SpecFileError(
                    f"vector has {len(parts)} entries, expected dim B_1(0) = {dim}",
                    lineno)
            vec = {}
            for i, tok in enumerate(parts):
                c = field.coerce(Fraction(tok))
                if c != 0:
                    vec[i] = c
            vectors.append(vec)
    return vectors


def _cmd_koszul(sf, spec, args):
    _require_smooth(spec)
    if args.V:
        b1 = quotient_piece(spec, 1, 0)
        vectors = _parse_vector_file(args.V, b1.dim, spec.field)
        inst = KoszulInstance(spec, vectors, args.p, args.q, args.l)
    elif args.codim is not None:
        inst = random_subspace_instance(spec, args.codim, args.seed,
                                        args.p, args.q, args.l)
    else:
        inst = full_b1_instance(spec, args.p, args.q, args.l)
    rep = middle_homology(inst)
    return rep, VIOLATION if rep["violation"] else 0


def _cmd_hodge(sf, spec, args):
    _require_smooth(spec)
    table = hodge_table(spec, args.l)
    doc = {"l": table["l"], "twist": table["twist"], "table": table["rows"]}
    return doc, 0


def _cmd_torelli(sf, spec, args):
    _require_smooth(spec)
    rep = torelli_report(spec, args.q)
    bad = rep["predicate"] and not rep["surjective"]
    return rep, VIOLATION if bad else 0


def _cmd_bounds(sf, spec, args):
    doc = connectivity_bounds(spec.n, spec.r, spec.s, spec.d, spec.e,
                              args.t, args.c)
    return doc, 0


def _cmd_lemma53(sf, spec, args):
    _require_smooth(spec)
    rep = ladder_report(spec, args.q, args.l)
    return rep, 0 if rep["exact"] else VIOLATION


def _cmd_verify(sf, spec, args):
    doc = run_verify(spec, seed=args.seed, thorough=args.thorough)
    if not doc.get("input_ok"):
        return doc, INPUT_ERROR
    table = [{"check": c["name"], "ok": c["ok"]} for c in doc["checks"]]
    doc["table"] = table
    return doc, VIOLATION if doc["violations"] else 0


_HANDLERS = {
    "dim": _cmd_dim,
    "basis": _cmd_basis,
    "socle": _cmd_socle,
    "pairing": _cmd_pairing,
    "kernel2": _cmd_kernel2,
    "koszul": _cmd_koszul,
    "hodge": _cmd_hodge,
    "torelli": _cmd_torelli,
    "bounds": _cmd_bounds,
    "lemma53": _cmd_lemma53,
    "verify": _cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="jacring",
        description="Exact Jacobian rings of open complete intersections.")
    sub = top.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="input spec file (default: stdin)")
    common.add_argument("--modp", type=int, metavar="P",
                        help="route all arithmetic through GF(P)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized features")
    common.add_argument("--csv", action="store_true",
                        help="emit a delimited table instead of JSON")
    common.add_argument("--assume-smooth", action="store_true",
                        help="skip the transversality heuristic gate")
    common.add_argument("--cache-dir", help=f"cache directory (or ${ENV_VAR})")
    common.add_argument("--no-cache", action="store_true",
                        help="do not read or write the result cache")

    p = sub.add_parser("preset", help="print a shipped spec file")
    p.add_argument("name", nargs="?", choices=PRESET_NAMES)
    p.add_argument("--field", default="Q", help="'Q' or 'gfp <p>'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, help="ambient dimension (random preset)")
    p.add_argument("--d", type=int, nargs="+",
                   help="complete-intersection degrees (random preset)")
    p.add_argument("--e", type=int, nargs="*",
                   help="divisor degrees (random preset)")
    p.add_argument("--list", action="store_true", help="describe known presets")

    q = sub.add_parser("dim", parents=[common],
                       help="dimension of one bigraded quotient piece")
    q.add_argument("q", type=int)
    q.add_argument("l", type=int)

    q = sub.add_parser("basis", parents=[common],
                       help="standard-monomial basis of one piece")
    q.add_argument("q", type=int)
    q.add_argument("l", type=int)

    sub.add_parser("socle", parents=[common],
                   help="socle dimension and the transversality heuristic")

    q = sub.add_parser("pairing", parents=[common],
                       help="trace pairing at (p, l): rank, kernel, case")
    q.add_argument("p", type=int)
    q.add_argument("l", type=int)

    sub.add_parser("kernel2", parents=[common],
                   help="kernel of the dual duality map against the wedge span")

    q = sub.add_parser("koszul", parents=[common],
                       help="middle homology of the three-term complex at (p,q,l)")
    q.add_argument("p", type=int)
    q.add_argument("q", type=int)
    q.add_argument("l", type=int)
    grp = q.add_mutually_exclusive_group()
    grp.add_argument("--codim", type=int,
                     help="use a random subspace of this codimension")
    grp.add_argument("--V", metavar="FILE",
                     help="file of spanning vectors over the basis of B_1(0)")

    q = sub.add_parser("hodge", parents=[common],
                       help="primitive log Hodge numbers at a twist")
    q.add_argument("l", type=int, nargs="?", default=0)

    q = sub.add_parser("torelli", parents=[common],
                       help="degree predicate and multiplication surjectivity")
    q.add_argument("q", type=int)

    q = sub.add_parser("bounds", parents=[common],
                       help="connectivity vanishing bounds for user-supplied c")
    q.add_argument("t", type=int, help="cohomological degree")
    q.add_argument("c", type=int, help="generality defect of the family")

    q = sub.add_parser("lemma53", parents=[common],
                       help="exactness of the two restriction sequences")
    q.add_argument("q", type=int)
    q.add_argument("l", type=int)

    q = sub.add_parser("verify", parents=[common],
                       help="run the full invariant battery")
    q.add_argument("--thorough", action="store_true")

    return top


def _cli_args_echo(args) -> dict:
    skip = {"command", "spec", "cache_dir", "no_cache"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None and v is not False}


def _run_preset(args) -> int:
    if args.list:
        sys.stdout.write(_emit_json(preset_descriptions()))
        return 0
    if args.name is None:
        raise SpecFileError("preset needs a name (or --list)")
    field = QQ
    words = args.field.split()
    if words != ["Q"]:
        if len(words) == 2 and words[0] == "gfp":
            field = Field.prime(int(words[1]))
        else:
            raise SpecFileError(f"unknown field {args.field!r}")
    sf = preset(args.name, field=field, seed=args.seed, n=args.n,
                degrees=args.d, divisor_degrees=args.e)
    sys.stdout.write(sf.canonical_text())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "preset":
            return _run_preset(args)
        sf = _read_spec(args)
        spec = sf.to_ringspec()
        doc = _base_doc(args.command, sf, spec, _cli_args_echo(args))

        cache = None
        key = None
        if not args.no_cache:
            cache = ResultCache(args.cache_dir)
            key = make_key({
                "spec": sf.content_hash(),
                "command": args.command,
                "args": doc["args"],
                "csv": args.csv,
                "version": __version__,
            })
            hit = cache.get(key)
            if hit is not None:
                envelope = json.loads(hit)
                sys.stdout.write(envelope["body"])
                return envelope["exit"]

        payload, code = _HANDLERS[args.command](sf, spec, args)
        doc.update(payload)
        body = _emit_csv(doc) if args.csv else _emit_json(doc)
        if cache is not None:
            cache.put(key, json.dumps({"exit": code, "body": body}))
        sys.stdout.write(body)
        return code
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"jacring: error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
