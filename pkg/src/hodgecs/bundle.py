"""Ring-bundle documents: parsing, canonical serialization, class literals.

A ring bundle is a single JSON document:

    {
      "name": "blp4",
      "n": 4,
      "hodge": [1, 2, 2, 2, 1],
      "basis": [["1"], ["H", "E"], ...],
      "products": [{"da": 1, "ia": 0, "db": 1, "ib": 0, "out": ["1", "0"]}, ...],
      "integral": ["1"],
      "samples": [{"name": "omega", "flag": "kahler", "coeffs": ["2", "-1"]}]
    }

Rationals are exact strings "p/q" (the denominator is omitted when 1).
Product records store each unordered pair once; a document carrying both
orders with different outputs is rejected as a commutativity violation.
Serialization is canonical (sorted keys, reduced rationals, records sorted by
(da, ia, db, ib), zero products omitted), so parse then serialize
canonicalizes any valid document and round-trips canonical ones byte-exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import BundleSemanticError, BundleSyntaxError
from .gaussian import rational_from_str, rational_to_str
from .ring import (
    FLAG_NONE,
    POSITIVE_FLAGS,
    ClassVector,
    IntersectionRing,
    RingSample,
    canonical_product_key,
    validate_ring,
)

_REQUIRED_FIELDS = ("name", "n", "hodge", "basis", "products", "integral")
_ALLOWED_FIELDS = _REQUIRED_FIELDS + ("samples",)


def _semantic(message: str, path: str, constraint: str) -> BundleSemanticError:
    return BundleSemanticError(message, path=path, constraint=constraint)


def _want(value, typ, path: str):
    # bool is an int subclass but never a valid count/index in this format.
    if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
        raise _semantic(
            f"expected {typ.__name__}, got {type(value).__name__}", path, "type"
        )
    return value


def _rational(value, path: str) -> Fraction:
    _want(value, str, path)
    try:
        return rational_from_str(value)
    except ValueError as exc:
        raise _semantic(str(exc), path, "rational") from None


def parse_ring_bundle(text: str, source: str = "<string>") -> IntersectionRing:
    """Parse and fully validate a ring bundle document.

    Syntax problems raise :class:`BundleSyntaxError` with line/column;
    constraint violations raise :class:`BundleSemanticError` carrying the
    field path and the name of the first failing constraint.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleSyntaxError(f"{source}: {exc.msg}", line=exc.lineno, col=exc.colno) from None

    _want(doc, dict, "$")
    for key in _REQUIRED_FIELDS:
        if key not in doc:
            raise _semantic(f"missing field {key!r}", "$", "required-field")
    for key in doc:
        if key not in _ALLOWED_FIELDS:
            raise _semantic(f"unknown field {key!r}", "$", "unknown-field")

    name = _want(doc["name"], str, "name")
    n = _want(doc["n"], int, "n")
    hodge = [_want(h, int, f"hodge[{i}]") for i, h in enumerate(_want(doc["hodge"], list, "hodge"))]
    basis = []
    for p, row in enumerate(_want(doc["basis"], list, "basis")):
        basis.append([_want(lab, str, f"basis[{p}][{i}]") for i, lab in enumerate(_want(row, list, f"basis[{p}]"))])

    products = {}
    seen: dict[tuple[int, int, int, int], tuple[int, tuple[Fraction, ...]]] = {}
    for r, rec in enumerate(_want(doc["products"], list, "products")):
        path = f"products[{r}]"
        _want(rec, dict, path)
        for fieldname in ("da", "ia", "db", "ib", "out"):
            if fieldname not in rec:
                raise _semantic(f"missing field {fieldname!r}", path, "required-field")
        da = _want(rec["da"], int, f"{path}.da")
        ia = _want(rec["ia"], int, f"{path}.ia")
        db = _want(rec["db"], int, f"{path}.db")
        ib = _want(rec["ib"], int, f"{path}.ib")
        out = tuple(
            _rational(c, f"{path}.out[{i}]")
            for i, c in enumerate(_want(rec["out"], list, f"{path}.out"))
        )
        key = canonical_product_key(da, ia, db, ib)
        if key in seen:
            prev_record, prev_out = seen[key]
            constraint = "commutativity" if prev_out != out else "duplicate-product"
            raise _semantic(
                f"pair ({da},{ia})x({db},{ib}) already given by products[{prev_record}]"
                + ("" if prev_out == out else " with a different output"),
                path, constraint,
            )
        seen[key] = (r, out)
        products[(da, ia, db, ib)] = out

    integral = [
        _rational(c, f"integral[{i}]")
        for i, c in enumerate(_want(doc["integral"], list, "integral"))
    ]

    samples = []
    for s, rec in enumerate(doc.get("samples", [])):
        path = f"samples[{s}]"
        _want(rec, dict, path)
        for fieldname in ("name", "flag", "coeffs"):
            if fieldname not in rec:
                raise _semantic(f"missing field {fieldname!r}", path, "required-field")
        flag = _want(rec["flag"], str, f"{path}.flag")
        if flag not in POSITIVE_FLAGS:
            raise _semantic(f"flag must be kahler or nef, got {flag!r}", f"{path}.flag", "flag")
        coeffs = tuple(
            _rational(c, f"{path}.coeffs[{i}]")
            for i, c in enumerate(_want(rec["coeffs"], list, f"{path}.coeffs"))
        )
        samples.append(RingSample(_want(rec["name"], str, f"{path}.name"), flag, coeffs))

    try:
        ring = IntersectionRing(name, n, hodge, basis, products, integral, samples)
    except ValueError as exc:
        raise _semantic(str(exc), "$", "structure") from None

    report = validate_ring(ring)
    if not report.ok:
        first = report.issues[0]
        err = _semantic(first.message, first.location, first.check)
        err.issues = report.issues
        raise err
    return ring


def serialize_ring_bundle(ring: IntersectionRing) -> str:
    """Canonical serialization: stable ordering, reduced rationals, newline-terminated."""
    records = []
    for key in sorted(ring.products):
        da, ia, db, ib = key
        records.append({
            "da": da, "ia": ia, "db": db, "ib": ib,
            "out": [rational_to_str(c) for c in ring.products[key]],
        })
    doc = {
        "name": ring.name,
        "n": ring.n,
        "hodge": list(ring.hodge),
        "basis": [list(row) for row in ring.basis_labels],
        "products": records,
        "integral": [rational_to_str(c) for c in ring.integral],
        "samples": [
            {
                "name": s.name,
                "flag": s.flag,
                "coeffs": [rational_to_str(c) for c in s.coeffs],
            }
            for s in ring.samples
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- class literals ------------------------------------------------------------

def parse_class_literal(ring: IntersectionRing, degree: int, text: str) -> ClassVector:
    """Parse a human-written class like "3*H - 1/2*E" in the given degree.

    Terms are separated by + or -; each term is an optional rational
    coefficient, a '*', and a basis label of that degree (a bare label means
    coefficient 1). Coefficients are real rationals.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty class literal")
    coeffs = [Fraction(0)] * ring.dim(degree)
    pos = 0
    sign = 1
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        pos = 1
    if pos == len(compact):
        raise ValueError(f"dangling sign in class literal {text!r}")
    while pos < len(compact):
        end = pos
        while end < len(compact) and compact[end] not in "+-":
            end += 1
        term = compact[pos:end]
        if not term:
            raise ValueError(f"misplaced sign in class literal {text!r}")
        if "*" in term:
            coef_text, label = term.split("*", 1)
            coef = rational_from_str(coef_text)
        else:
            coef, label = Fraction(1), term
        try:
            idx = ring.label_index(degree, label)
        except KeyError:
            raise ValueError(
                f"unknown degree-{degree} basis label {label!r} in {text!r}"
            ) from None
        coeffs[idx] += sign * coef
        if end == len(compact):
            break
        sign = -1 if compact[end] == "-" else 1
        pos = end + 1
        if pos == len(compact):
            raise ValueError(f"dangling sign in class literal {text!r}")
    return ring.class_vector(degree, coeffs, FLAG_NONE)


def resolve_class(ring: IntersectionRing, degree: int, text: str) -> ClassVector:
    """Resolve "sample:NAME" to a declared sample, else parse a literal."""
    if text.startswith("sample:"):
        cls = ring.sample(text[len("sample:"):])
        if cls.degree != degree:
            raise ValueError(f"sample {text!r} has degree {cls.degree}, wanted {degree}")
        return cls
    return parse_class_literal(ring, degree, text)
