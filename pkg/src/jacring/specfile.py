"""The on-disk input format, shipped presets, and the random instance maker.

Text format, line oriented, '#' comments:

    field Q              # or: field gfp <prime>
    n 3
    F 4: x0^4 + x1^4 + x2^4 + x3^4
    G 1: x0 + x1 + x2
    option assume-smooth
    option seed 7

A JSON document with the same fields is accepted wherever the text form is
(detected by a leading '{').  Canonical serialization is deterministic, and
the content hash of that canonical text identifies the input everywhere.
"""

from __future__ import annotations

import hashlib
import json
import random

from .field import Field, FieldError, QQ
from .parser import ParseError, parse_poly, poly_to_str
from .poly import HomogPoly, monomials_of_degree
from .ring import RingSpec, SpecError, smoothness_heuristic


class SpecFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line


class SpecFile:
    def __init__(self, field: Field, n: int, F: list[HomogPoly],
                 G: list[HomogPoly], assume_smooth: bool = False,
                 seed: int | None = None):
        self.field = field
        self.n = n
        self.F = F
        self.G = G
        self.assume_smooth = assume_smooth
        self.seed = seed

    def to_ringspec(self) -> RingSpec:
        return RingSpec(self.n, self.F, self.G, self.field,
                        assume_smooth=self.assume_smooth)

    def canonical_text(self) -> str:
        lines = [f"field {self.field.describe()}", f"n {self.n}"]
        for f in self.F:
            lines.append(f"F {f.degree}: {poly_to_str(f)}")
        for g in self.G:
            lines.append(f"G {g.degree}: {poly_to_str(g)}")
        if self.assume_smooth:
            lines.append("option assume-smooth")
        if self.seed is not None:
            lines.append(f"option seed {self.seed}")
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]


def _parse_field_words(words: list[str], lineno: int) -> Field:
    if words == ["Q"]:
        return QQ
    if len(words) == 2 and words[0] == "gfp":
        try:
            return Field.prime(int(words[1]))
        except (ValueError, FieldError) as exc:
            raise SpecFileError(f"bad prime field: {exc}", lineno)
    raise SpecFileError(f"unknown field {' '.join(words)!r}; use 'Q' or 'gfp <p>'",
                        lineno)


def parse_specfile(text: str) -> SpecFile:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _from_json(stripped)
    field = QQ
    n = None
    F: list[tuple[int, str, int]] = []
    G: list[tuple[int, str, int]] = []
    assume_smooth = False
    seed = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "field":
            field = _parse_field_words(rest.split(), lineno)
        elif head == "n":
            try:
                n = int(rest.strip())
            except ValueError:
                raise SpecFileError(f"bad dimension {rest.strip()!r}", lineno)
        elif head in ("F", "G"):
            decl, _, expr = rest.partition(":")
            try:
                degree = int(decl.strip())
            except ValueError:
                raise SpecFileError(f"bad declared degree {decl.strip()!r}", lineno)
            if not expr.strip():
                raise SpecFileError("missing polynomial expression", lineno)
            (F if head == "F" else G).append((degree, expr, lineno))
        elif head == "option":
            opt = rest.split()
            if opt == ["assume-smooth"]:
                assume_smooth = True
            elif len(opt) == 2 and opt[0] == "seed":
                try:
                    seed = int(opt[1])
                except ValueError:
                    raise SpecFileError(f"bad seed {opt[1]!r}", lineno)
            else:
                raise SpecFileError(f"unknown option {rest.strip()!r}", lineno)
        else:
            raise SpecFileError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise SpecFileError("missing 'n <dimension>' line")
    fs, gs = [], []
    for target, triples in ((fs, F), (gs, G)):
        for degree, expr, lineno in triples:
            try:
                poly = parse_poly(expr, n, field)
            except ParseError as exc:
                raise SpecFileError(f"bad polynomial: {exc}", lineno)
            if poly.is_zero:
                raise SpecFileError("form is identically zero", lineno)
            if poly.degree != degree:
                raise SpecFileError(
                    f"declared degree {degree} but expression has degree "
                    f"{poly.degree}", lineno)
            target.append(poly)
    return SpecFile(field, n, fs, gs, assume_smooth, seed)


def _from_json(text: str) -> SpecFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"bad JSON spec: {exc}")
    fdesc = doc.get("field", "Q")
    if isinstance(fdesc, str):
        field = _parse_field_words(fdesc.split(), None)
    elif isinstance(fdesc, dict) and "gfp" in fdesc:
        field = Field.prime(int(fdesc["gfp"]))
    else:
        raise SpecFileError(f"unknown field {fdesc!r}")
    try:
        n = int(doc["n"])
    except KeyError:
        raise SpecFileError("missing 'n'")
    options = doc.get("options", {})

    def forms(key):
        out = []
        for item in doc.get(key, []):
            if isinstance(item, dict):
                degree, expr = int(item["degree"]), item["expr"]
            else:
                degree, expr = int(item[0]), item[1]
            try:
                poly = parse_poly(expr, n, field)
            except ParseError as exc:
                raise SpecFileError(f"bad polynomial in {key}: {exc}")
            if poly.degree != degree:
                raise SpecFileError(
                    f"{key} entry declares degree {degree}, expression has "
                    f"{poly.degree}")
            out.append(poly)
        return out

    return SpecFile(field, n, forms("F"), forms("G"),
                    bool(options.get("assume-smooth", False)),
                    options.get("seed"))


# -- shipped presets ----------------------------------------------------------

_PRESET_SOURCES = {
    "fermat-quartic": ("K3 quartic surface", 3,
                       [(4, "x0^4 + x1^4 + x2^4 + x3^4")], []),
    "fermat-quintic": ("quintic threefold", 4,
                       [(5, "x0^5 + x1^5 + x2^5 + x3^5 + x4^5")], []),
    "quartic-curve": ("plane quartic curve", 2,
                      [(4, "x0^4 + x1^4 + x2^4")], []),
    "elliptic-line": ("plane cubic plus a transversal line", 2,
                      [(3, "x0^3 + x1^3 + x2^3")], [(1, "x0 + x1 + x2")]),
    "conic-two-lines": ("smooth conic plus two coordinate lines", 2,
                        [(2, "x0^2 + x1^2 + x2^2")], [(1, "x0"), (1, "x1")]),
    "cubic-three-lines": ("plane cubic plus the coordinate triangle", 2,
                          [(3, "x0^3 + x1^3 + x2^3")],
                          [(1, "x0"), (1, "x1"), (1, "x2")]),
    "singular-cubic": ("cubic with a singular point, for negative tests", 2,
                       [(3, "x0^3 + x1^3 - x0*x1*x2")], []),
}

PRESET_NAMES = tuple(_PRESET_SOURCES) + ("random",)


def preset(name: str, field: Field = QQ, seed: int | None = None,
           n: int | None = None, degrees: list[int] | None = None,
           divisor_degrees: list[int] | None = None) -> SpecFile:
    if name == "random":
        return random_specfile(
            seed if seed is not None else 0,
            field=field,
            n=n if n is not None else 2,
            degrees=degrees or [3],
            divisor_degrees=divisor_degrees if divisor_degrees is not None else [1],
        )
    try:
        _, pn, fsrc, gsrc = _PRESET_SOURCES[name]
    except KeyError:
        known = ", ".join(PRESET_NAMES)
        raise SpecFileError(f"unknown preset {name!r}; known presets: {known}")
    fs = [parse_poly(expr, pn, field) for _, expr in fsrc]
    gs = [parse_poly(expr, pn, field) for _, expr in gsrc]
    return SpecFile(field, pn, fs, gs)


def preset_descriptions() -> dict:
    out = {name: desc for name, (desc, *_rest) in _PRESET_SOURCES.items()}
    out["random"] = "seeded random forms, retried until the socle checks pass"
    return out


def _random_form(rng: random.Random, n: int, degree: int, field: Field) -> HomogPoly:
    terms = {}
    for expo in monomials_of_degree(n + 1, degree):
        if field.is_rationals:
            c = rng.choice([x for x in range(-9, 10) if x != 0])
        else:
            c = rng.randrange(field.p)
        terms[expo] = c
    return HomogPoly.from_terms(n + 1, terms, field)


def random_specfile(seed: int, field: Field = QQ, n: int = 2,
                    degrees: list[int] = (3,), divisor_degrees: list[int] = (1,),
                    max_attempts: int = 32) -> SpecFile:
    """Random dense forms of the given shape, retried until the socle passes.

    Coefficients are uniform in {-9..9} without 0 over the rationals, or
    uniform residues over a prime field.  Generic forms are transversal, so
    the retry cap is hit only by very unlucky shapes.
    """
    rng = random.Random(seed)
    for _ in range(max_attempts):
        F = [_random_form(rng, n, d, field) for d in degrees]
        G = [_random_form(rng, n, e, field) for e in divisor_degrees]
        try:
            spec = RingSpec(n, F, G, field)
        except SpecError:
            continue
        if spec.n - spec.r >= 1 and smoothness_heuristic(spec)["pass"]:
            return SpecFile(field, n, spec.F, spec.G, seed=seed)
    raise SpecFileError(
        f"no transversal instance found in {max_attempts} attempts (seed {seed})")
