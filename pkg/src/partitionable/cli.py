"""Command line interface.

Exit status: 0 success, 1 a valid negative answer (not partitionable, no
shelling, verification failed), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructors as cons
from .complex import EMPTY_FACE, Complex, RelComplex, boundary, euler_char, f_vector, h_vector
from .corpus import NAMES, corpus, subdivide
from .errors import PartitionError
from .io import (
    Certificate,
    certificate_target,
    emit_hasse_dot,
    format_facet_file,
    parse_facet_file,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .partition import SearchConfig, decide_partitionable, find_shelling, scheme_from_shelling
from .surfaces import boundary_cycles, classify_surface, validate_dunce_hat

OK, NEGATIVE, ERROR = 0, 1, 2

CONSTRUCT_KINDS = ("disk", "mobius", "mobius0", "annulus", "rp2", "rp2-0", "dunce", "graph")


def _load(path: str) -> RelComplex:
    return parse_facet_file(Path(path).read_text(encoding="utf-8"))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(vec) -> str:
    return "(" + ",".join(str(x) for x in vec) + ")"


def _save_certificate(rc: RelComplex, payload, out: str | None) -> int:
    cert = Certificate.make(rc, payload)
    verdict = verify_certificate(rc, cert)
    if not verdict:
        print(f"internal error: fresh certificate fails: {verdict.message}", file=sys.stderr)
        return ERROR
    _emit(write_certificate(cert), out)
    return OK


def _describe(c: Complex) -> str:
    if c.dim == 2 and c.is_pure:
        try:
            cls = classify_surface(c)
            return f"{cls.kind} (chi={cls.chi}, orientable={cls.orientable}, boundary={cls.boundary_components})"
        except PartitionError as exc:
            verdict = validate_dunce_hat(c)
            if verdict:
                return f"dunce hat (corner {verdict.witness.v!r})"
            return f"not a surface: {exc}"
    if c.dim == 1 and c.is_pure:
        return "graph"
    return "unclassified"


def cmd_info(args) -> int:
    rc = _load(args.file)
    print(f"facets={len(rc.facets)} dim={rc.dim} pure={rc.is_pure}")
    print(f"f={_fmt(f_vector(rc))}")
    print(f"h={_fmt(h_vector(rc))}")
    print(f"reduced_euler={euler_char(rc)}")
    if rc.relative.is_void:
        print(f"class={_describe(rc.total)}")
    return OK


def cmd_classify(args) -> int:
    print(_describe(_load(args.file).total))
    return OK


def cmd_decide(args) -> int:
    rc = _load(args.file)
    res = decide_partitionable(rc, SearchConfig(node_budget=args.budget))
    if not res:
        print(f"not partitionable: {res.reason}" + (f" {res.witness}" if res.witness else ""))
        return NEGATIVE
    print(f"partitionable: {res.scheme}")
    return OK


def cmd_partition(args) -> int:
    rc = _load(args.file)
    res = decide_partitionable(rc, SearchConfig(node_budget=args.budget))
    if not res:
        print(f"not partitionable: {res.reason}", file=sys.stderr)
        return NEGATIVE
    return _save_certificate(rc, res.scheme, args.output)


def cmd_shell(args) -> int:
    rc = _load(args.file)
    res = find_shelling(rc, node_budget=args.budget)
    if not res:
        print(f"not shellable: {res.reason}", file=sys.stderr)
        return NEGATIVE
    return _save_certificate(rc, res.shelling, args.output)


def cmd_verify(args) -> int:
    rc = _load(args.file)
    cert = read_certificate(Path(args.certificate).read_text(encoding="utf-8"))
    verdict = verify_certificate(rc, cert)
    if not verdict:
        print(f"invalid {cert.kind}: {verdict.message}")
        return NEGATIVE
    print(f"valid {cert.kind} ({len(cert.payload)} steps)")
    return OK


def cmd_construct(args) -> int:
    rc = _load(args.file)
    c = rc.total
    kind = args.kind
    if kind == "disk":
        upsilon = rc.relative if not rc.relative.is_void else boundary(c)
        return _save_certificate(RelComplex(c, upsilon), cons.shell_disk_relative(c, upsilon), args.output)
    if kind == "graph":
        res = cons.partition_graph_rel_empty(c)
        if not res:
            print(f"not partitionable: {res.reason} {res.witness}", file=sys.stderr)
            return NEGATIVE
        return _save_certificate(RelComplex(c, EMPTY_FACE), res.scheme, args.output)
    if kind == "mobius":
        target, scheme = RelComplex(c, boundary(c)), cons.partition_mobius_rel_boundary(c)
    elif kind == "mobius0":
        target, scheme = RelComplex(c, EMPTY_FACE), cons.partition_mobius_rel_empty(c)
    elif kind == "annulus":
        scheme = cons.partition_annulus(c, args.mode)
        rel = {"rel_empty": EMPTY_FACE, "rel_full_boundary": boundary(c)}.get(args.mode)
        if rel is None:
            rel = boundary_cycles(c)[0]
        target = RelComplex(c, rel)
    elif kind == "rp2":
        target, scheme = RelComplex(c), cons.partition_rp2(c, "plain")
    elif kind == "rp2-0":
        target, scheme = RelComplex(c, EMPTY_FACE), cons.partition_rp2(c, "rel_empty")
    else:
        if args.corner:
            v = cons.detect_corner(c).v
            target, scheme = RelComplex(c, Complex([(v,)])), cons.partition_dunce_hat_rel_corner(c)
        else:
            target, scheme = RelComplex(c), cons.partition_dunce_hat(c)
    return _save_certificate(target, scheme, args.output)


def cmd_subdivide(args) -> int:
    rc = _load(args.file)
    if not rc.relative.is_void:
        raise PartitionError("subdivide takes a file without a relative part")
    _emit(format_facet_file(subdivide(rc.total, args.times)), args.output)
    return OK


def cmd_corpus(args) -> int:
    _emit(format_facet_file(corpus(args.name)), args.output)
    return OK


def cmd_hasse(args) -> int:
    rc = _load(args.file)
    scheme = None
    if args.certificate:
        cert = read_certificate(Path(args.certificate).read_text(encoding="utf-8"))
        rc = certificate_target(rc, cert)
        if cert.kind == "partitioning":
            scheme = cert.payload
        else:
            scheme = scheme_from_shelling(rc, cert.payload)
    _emit(emit_hasse_dot(rc, scheme), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partitionable", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="f- and h-vector, Euler characteristic, class")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("classify", help="recognise a surface or a dunce hat")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    for name, func, helptext in (
        ("decide", cmd_decide, "decide partitionability"),
        ("partition", cmd_partition, "search a partitioning and write a certificate"),
        ("shell", cmd_shell, "search a shelling and write a certificate"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.add_argument("--budget", type=int, default=10**7, help="search node budget")
        if name != "decide":
            s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="check a certificate against a facet file")
    s.add_argument("file")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="run a constructive partitioner")
    s.add_argument("kind", choices=CONSTRUCT_KINDS)
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--mode", default="rel_empty", choices=cons.ANNULUS_MODES,
                   help="annulus relative part")
    s.add_argument("--corner", action="store_true", help="dunce hat relative to its corner")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("subdivide", help="barycentric subdivision")
    s.add_argument("file")
    s.add_argument("-n", "--times", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("corpus", help="write a built-in complex")
    s.add_argument("name", choices=NAMES)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("hasse", help="face poset as Graphviz text")
    s.add_argument("file")
    s.add_argument("certificate", nargs="?")
    s.add_argument("--dot", action="store_true", help="emit DOT (the only format)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_hasse)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PartitionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
