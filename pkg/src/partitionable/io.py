"""Facet files, certificates and Hasse diagrams.

Facet file::

    # comment
    compact          # optional: every character of a token is a vertex
    1 2 5
    3 4 5
    ---              # optional: generators of the relative part follow
    5
    {}               # the empty face alone (relative part {∅})

Tokens made of digits become ints; anything else stays a string.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .complex import VOID, Complex, RelComplex, as_rel, fmt_face, sort_faces, sorted_vertices
from .errors import HashMismatch, ParseError, SchemaError
from .partition import Interval, PartitionScheme, ShellingOrder, Verdict, verify_partitioning, verify_shelling

SEPARATOR = "---"
EMPTY_TOKEN = "{}"
FORMAT = "partitionable-certificate"
VERSION = 1


def _token(tok: str):
    return int(tok) if tok.isdigit() else tok


def parse_facet_file(text: str) -> RelComplex:
    compact = False
    blocks: list[list] = [[]]
    seen_facet = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "compact":
            if seen_facet:
                raise ParseError("'compact' must come before any facet", lineno)
            compact = True
            continue
        if line == SEPARATOR:
            if len(blocks) == 2:
                raise ParseError("more than one '---' separator", lineno)
            blocks.append([])
            continue
        seen_facet = True
        if line == EMPTY_TOKEN:
            blocks[-1].append(frozenset())
            continue
        tokens = line.replace(",", " ").split()
        if compact:
            verts = [_token(ch) for tok in tokens for ch in tok]
        else:
            verts = [_token(tok) for tok in tokens]
        if len(set(verts)) != len(verts):
            raise ParseError(f"repeated vertex in {line!r}", lineno)
        blocks[-1].append(frozenset(verts))
    total = Complex(blocks[0])
    relative = Complex(blocks[1]) if len(blocks) == 2 else VOID
    return RelComplex(total, relative)


def _printable(v) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, int):
        return v >= 0
    return (
        isinstance(v, str)
        and v != ""
        and not v.isdigit()
        and not any(ch.isspace() or ch in "#," for ch in v)
        and v not in (SEPARATOR, EMPTY_TOKEN, "compact")
    )


def _compactable(vertices) -> bool:
    return bool(vertices) and all(
        (isinstance(v, int) and 0 <= v <= 9) or (isinstance(v, str) and len(v) == 1) for v in vertices
    )


def format_facet_file(x, compact: bool | None = None) -> str:
    """Canonical text; ``parse_facet_file`` inverts it exactly."""
    rc = as_rel(x)
    verts = rc.total.vertices
    bad = [v for v in verts if not _printable(v)]
    if bad:
        raise SchemaError(f"vertex label {bad[0]!r} cannot be written to a facet file")
    if compact is None:
        compact = _compactable(verts)
    sep = "" if compact else " "

    def line(face):
        if not face:
            return EMPTY_TOKEN
        return sep.join(str(v) for v in sorted_vertices(face))

    out = ["compact"] if compact else []
    out += [line(f) for f in rc.total.sorted_facets()]
    if not rc.relative.is_void:
        out.append(SEPARATOR)
        out += [line(f) for f in rc.relative.sorted_facets()]
    return "\n".join(out) + "\n"


def target_hash(x) -> str:
    text = format_facet_file(x, compact=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Certificate:
    kind: str  # "partitioning" or "shelling"
    payload: object  # PartitionScheme or ShellingOrder
    relative: Complex
    target_hash: str

    @classmethod
    def make(cls, rc, payload) -> "Certificate":
        rc = as_rel(rc)
        kind = "shelling" if isinstance(payload, ShellingOrder) else "partitioning"
        return cls(kind, payload, rc.relative, target_hash(rc))


def _face_json(face) -> list:
    return list(sorted_vertices(face))


def _face_from_json(items, where: str) -> frozenset:
    if not isinstance(items, list) or not all(
        isinstance(v, (int, str)) and not isinstance(v, bool) for v in items
    ):
        raise SchemaError(f"{where}: a face must be a list of ints or strings")
    return frozenset(items)


def write_certificate(cert: Certificate) -> str:
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "kind": cert.kind,
        "target_hash": cert.target_hash,
        "relative": [_face_json(f) for f in cert.relative.sorted_facets()],
    }
    if cert.kind == "partitioning":
        doc["intervals"] = [[_face_json(iv.min), _face_json(iv.max)] for iv in cert.payload]
    else:
        doc["order"] = [_face_json(f) for f in cert.payload]
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def read_certificate(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"certificate is not JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise SchemaError("not a partitionable certificate")
    if doc.get("version") != VERSION:
        raise SchemaError(f"unsupported version {doc.get('version')!r}")
    kind = doc.get("kind")
    digest = doc.get("target_hash")
    if not isinstance(digest, str):
        raise SchemaError("missing target_hash")
    relative = Complex(_face_from_json(f, "relative") for f in doc.get("relative", []))
    if kind == "partitioning":
        raw = doc.get("intervals")
        if not isinstance(raw, list):
            raise SchemaError("missing intervals")
        intervals = []
        for n, pair in enumerate(raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"interval {n}: expected [min, max]")
            lo = _face_from_json(pair[0], f"interval {n}")
            hi = _face_from_json(pair[1], f"interval {n}")
            if not lo <= hi:
                raise SchemaError(f"interval {n}: min is not contained in max")
            intervals.append(Interval(lo, hi))
        payload = PartitionScheme(tuple(intervals))
    elif kind == "shelling":
        raw = doc.get("order")
        if not isinstance(raw, list):
            raise SchemaError("missing order")
        payload = ShellingOrder(tuple(_face_from_json(f, f"step {n}") for n, f in enumerate(raw)))
    else:
        raise SchemaError(f"unknown certificate kind {kind!r}")
    return Certificate(kind, payload, relative, digest)


def certificate_target(rc, cert: Certificate) -> RelComplex:
    """The relative complex a certificate speaks about, checked by hash.

    A file without a relative block takes the certificate's relative part.
    """
    rc = as_rel(rc)
    target = rc if not rc.relative.is_void else RelComplex(rc.total, cert.relative)
    if target_hash(target) != cert.target_hash:
        raise HashMismatch("certificate does not belong to this complex")
    return target


def verify_certificate(rc, cert: Certificate) -> Verdict:
    target = certificate_target(rc, cert)
    if cert.kind == "shelling":
        return verify_shelling(target, cert.payload)
    return verify_partitioning(target, cert.payload)


def _hsv(i: int, n: int) -> str:
    return f"{i / max(n, 1):.3f} 0.45 0.95"


def emit_hasse_dot(x, scheme: PartitionScheme | None = None, name: str = "hasse") -> str:
    """Graphviz text for the face poset, one fill colour per interval."""
    rc = as_rel(x)
    faces = sort_faces(rc.faces)
    ids = {f: f"f{i}" for i, f in enumerate(faces)}
    colour: dict = {}
    intervals = list(scheme) if scheme is not None else []
    for i, iv in enumerate(intervals):
        for f in iv.faces():
            colour[f] = _hsv(i, len(intervals))
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for f in faces:
        label = fmt_face(f).replace('"', '\\"')
        attrs = [f'label="{label}"']
        if f in colour:
            attrs += ["style=filled", f'fillcolor="{colour[f]}"']
        out.append(f"  {ids[f]} [{', '.join(attrs)}];")
    for f in faces:
        for v in sorted_vertices(f):
            g = f - {v}
            if g in ids:
                out.append(f"  {ids[g]} -> {ids[f]};")
    out.append("}")
    return "\n".join(out) + "\n"
