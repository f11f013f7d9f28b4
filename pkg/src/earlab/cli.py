"""Command-line front end: fixtures in, decompositions and verdicts out.

Four subcommands:

``gen``
    Write a standard input family (lattice, matroid, complex) as canonical
    JSON and print its digest.
``decompose``
    Run one of the five ear constructions on a fixture, verify the
    decomposition axioms, and emit the full report.
``verify``
    Re-check something: a decomposition report (``ced``), an h- or g-vector
    (``h-inequalities``, ``m-vector``), flag-vector dominance of a poset or
    complex (``flag-inequalities``), Cohen-Macaulayness (``cm``, ``2cm``),
    or the flag reciprocity identity on every ear of a report
    (``reciprocity``).
``experiment``
    Observation-only scan over rank selections of a shellable complex,
    including selections through the top rank where no construction is
    claimed; exits 0 unless the input itself is unusable.

Reports are canonical JSON on stdout (or ``--output``); repeated runs with
identical inputs and flags produce byte-identical documents.  Wall time,
digests of stdout reports, and warnings go to stderr.  Exit codes: 0 all
checks passed, 2 a precondition failed, 3 a check ran and failed, 4 I/O or
schema trouble.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import Mapping, Optional

from .complexes import (
    SimplicialComplex,
    boundary_complex,
    build_complex,
    complex_from_json,
    complex_to_json,
    f_h_vectors,
    face_poset,
    is_cm_and_2cm,
    order_complex,
    search_shelling,
)
from .decompositions import (
    EarDecomposition,
    decompose_face_poset,
    decompose_geometric,
    decompose_rank_selected_boolean,
    decompose_rank_selected_supersolvable,
    decompose_supersolvable,
    verify_ced,
)
from .errors import BadParams, EarlabError, Inconsistent, SizeLimit
from .flags import (
    ball_flag_reciprocity,
    g_and_m_check,
    g_vector,
    is_m_vector,
    macaulay_pseudopower,
    verify_flag_inequalities,
    verify_h_inequalities,
)
from .labelings import EdgeLabeling
from .lattices import (
    Lattice,
    boolean_lattice,
    lattice_from_json,
    lattice_to_json,
    partition_lattice,
)
from .matroids import (
    graphic_matroid,
    lattice_of_flats,
    matroid_from_json,
    matroid_to_json,
    uniform_matroid,
)
from .posets import (
    canonical_dumps,
    labels_from_json,
    poset_from_json,
    rank_select,
    with_bounds,
)

RUN_SCHEMA = "earlab.run/1"
VERIFY_SCHEMA = "earlab.verify/1"
EXPERIMENT_SCHEMA = "earlab.experiment/1"

DEFAULT_CAPS = {"lattice": 200, "descent": 8, "homology": 5000}

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_FAILED = 3
EXIT_IO = 4

COMPLEX_FIXTURES = {
    "triangle": [["a", "b", "c"]],
    "two-triangles": [["a", "b", "c"], ["a", "b", "d"]],
    "tetrahedron-boundary": [
        ["a", "b", "c"],
        ["a", "b", "d"],
        ["a", "c", "d"],
        ["b", "c", "d"],
    ],
    "square": [["a", "b"], ["b", "c"], ["c", "d"], ["a", "d"]],
    "bowtie": [["a", "b", "c"], ["a", "d", "e"]],
}


class SchemaTrouble(Exception):
    """Unreadable file, malformed JSON, or a document of the wrong kind."""


# -- plumbing ------------------------------------------------------------------


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _emit(doc: Mapping, output: Optional[str]) -> None:
    text = canonical_dumps(doc)
    digest = _digest(text)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        print(f"sha256 {digest} {output}")
    else:
        sys.stdout.write(text)
        print(f"sha256 {digest}", file=sys.stderr)


def _load_document(path: str) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaTrouble(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaTrouble(f"{path} is not JSON: {exc}") from exc
    if not isinstance(doc, dict) or not str(doc.get("schema", "")).startswith("earlab."):
        raise SchemaTrouble(f"{path} has no earlab schema field")
    return doc


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise BadParams(f"{what} must be a comma list of integers, got {text!r}") from exc


def _str_list(text: str) -> list[str]:
    return [x for x in text.split(",") if x != ""]


def _edge_list(text: str) -> list[tuple[int, int]]:
    out = []
    for part in _str_list(text):
        bits = part.split("-")
        if len(bits) != 2:
            raise BadParams(f"edge {part!r} is not of the form u-v")
        try:
            out.append((int(bits[0]), int(bits[1])))
        except ValueError as exc:
            raise BadParams(f"edge {part!r} has non-integer ends") from exc
    return out


def _cap_checker(args):
    def check(kind: str, actual: int) -> None:
        limit = getattr(args, f"cap_{kind}", DEFAULT_CAPS[kind])
        default = DEFAULT_CAPS[kind]
        if actual <= default:
            return
        if actual <= limit:
            _warn(f"{kind} size {actual} is above the default cap {default}")
            return
        raise SizeLimit(
            f"{kind} size {actual} exceeds the cap {limit}; raise --cap-{kind} to proceed"
        )

    return check


def _threads_note() -> None:
    raw = os.environ.get("EARLAB_THREADS")
    if raw is None:
        return
    try:
        n = int(raw)
        if n < 1:
            raise ValueError
    except ValueError:
        _warn(f"EARLAB_THREADS={raw!r} is not a positive integer; ignored")
        return
    print(f"threads capped at {n} (constructions run sequentially)", file=sys.stderr)


# -- input materialization -------------------------------------------------------


def _lattice_and_labels(doc: Mapping) -> tuple[Lattice, Optional[EdgeLabeling]]:
    schema = doc.get("schema")
    if schema not in ("earlab.lattice/1", "earlab.poset/1"):
        raise SchemaTrouble(f"expected a lattice or poset document, got {schema!r}")
    lat = lattice_from_json(doc)
    raw = labels_from_json(lat.poset, doc)
    lab = EdgeLabeling(lat.poset, raw) if raw else None
    return lat, lab


def _geometric_input(doc: Mapping) -> Lattice:
    schema = doc.get("schema")
    if schema == "earlab.matroid/1":
        return lattice_of_flats(matroid_from_json(doc))
    if schema in ("earlab.lattice/1", "earlab.poset/1"):
        return lattice_from_json(doc)
    raise SchemaTrouble(f"expected a matroid, lattice, or poset document, got {schema!r}")


def _flag_face_poset(c: SimplicialComplex):
    """The graded bounded poset whose flag vectors the dominance suite
    checks for a complex: proper face ranks only, with the facet rank
    dropped (the suite's guarantees stop below the facets)."""
    fp = face_poset(c, include_empty=True, graded=True)
    d = c.dim + 1
    if d < 2:
        raise BadParams("the complex has no proper face ranks below the facets")
    return with_bounds(rank_select(fp, range(1, d)))


def _run_construction(rec: Mapping, doc: Optional[Mapping], cap) -> EarDecomposition:
    """One resolution path for ``decompose`` and for re-verification."""
    name = rec.get("construction")
    ranks = rec.get("ranks")
    if name == "rank-boolean":
        r = int(rec["rank"])
        cap("descent", r)
        cap("lattice", 2**r)
        return decompose_rank_selected_boolean(r, ranks or ())
    if doc is None:
        raise SchemaTrouble("this construction needs an input document")
    if name in ("supersolvable", "rank-supersolvable"):
        lat, lab = _lattice_and_labels(doc)
        cap("lattice", lat.poset.n)
        cap("descent", lat.rank)
        if name == "supersolvable":
            return decompose_supersolvable(lat, lab)
        return decompose_rank_selected_supersolvable(lat, lab, ranks or ())
    if name == "face-poset":
        if doc.get("schema") != "earlab.complex/1":
            raise SchemaTrouble("face-poset needs a complex document")
        c = complex_from_json(doc)
        cap("lattice", len(c.faces()))
        cap("descent", c.dim + 1)
        return decompose_face_poset(c, rec.get("shelling"), ranks or ())
    if name == "geometric":
        lat = _geometric_input(doc)
        cap("lattice", lat.poset.n)
        cap("descent", lat.rank)
        return decompose_geometric(lat, rec.get("atom_order"), ranks)
    raise BadParams(f"unknown construction {name!r}")


# -- gen -------------------------------------------------------------------------


def cmd_gen(args) -> int:
    family = args.family
    if family == "boolean":
        if args.rank is None:
            raise BadParams("gen boolean needs --rank")
        doc = lattice_to_json(boolean_lattice(args.rank))
    elif family == "partition":
        if args.n is None:
            raise BadParams("gen partition needs --n")
        doc = lattice_to_json(partition_lattice(args.n))
    elif family == "uniform-matroid":
        if args.rank is None or args.size is None:
            raise BadParams("gen uniform-matroid needs --rank and --size")
        doc = matroid_to_json(uniform_matroid(args.rank, args.size))
    elif family == "graphic-matroid":
        if args.vertices is None or not args.edges:
            raise BadParams("gen graphic-matroid needs --vertices and --edges")
        doc = matroid_to_json(graphic_matroid(args.vertices, _edge_list(args.edges)))
    elif family == "flats":
        if not args.input:
            raise BadParams("gen flats needs --input with a matroid document")
        src = _load_document(args.input)
        if src.get("schema") != "earlab.matroid/1":
            raise SchemaTrouble("gen flats expects a matroid document")
        doc = lattice_to_json(lattice_of_flats(matroid_from_json(src)))
    elif family == "complex-fixture":
        if args.name not in COMPLEX_FIXTURES:
            raise BadParams(
                f"unknown fixture {args.name!r}; choose from {sorted(COMPLEX_FIXTURES)}"
            )
        doc = complex_to_json(build_complex(COMPLEX_FIXTURES[args.name]))
    else:
        raise BadParams(f"unknown family {family!r}")
    _emit(doc, args.output)
    return EXIT_OK


# -- decompose ---------------------------------------------------------------------


def _args_record(args) -> dict:
    rec: dict = {"construction": args.construction}
    if args.construction == "rank-boolean":
        if args.rank is None:
            raise BadParams("rank-boolean needs --rank")
        rec["rank"] = args.rank
    if args.ranks is not None:
        rec["ranks"] = _int_list(args.ranks, "--ranks")
    if args.atom_order:
        rec["atom_order"] = _str_list(args.atom_order)
    if args.shelling:
        rec["shelling"] = _int_list(args.shelling, "--shelling")
    return rec


def cmd_decompose(args) -> int:
    name = args.construction
    needs_input = name != "rank-boolean"
    if needs_input and not args.input:
        raise BadParams(f"--input is required for --construction {name}")
    if not needs_input and args.input:
        raise BadParams("rank-boolean builds its own lattice; drop --input")
    if name in ("rank-boolean", "rank-supersolvable", "face-poset") and args.ranks is None:
        raise BadParams(f"--construction {name} needs --ranks")
    if name == "supersolvable" and args.ranks is not None:
        raise BadParams("supersolvable decomposes the full proper part; use rank-supersolvable for selections")

    rec = _args_record(args)
    doc = _load_document(args.input) if args.input else None
    dec = _run_construction(rec, doc, _cap_checker(args))
    ced = verify_ced(dec.complex, dec)

    report = {
        "schema": RUN_SCHEMA,
        "command": "decompose",
        "args": rec,
        "input": None
        if doc is None
        else {"digest": _digest(canonical_dumps(doc)), "document": doc},
        "decomposition": dec.to_json(),
        "ced": ced,
    }
    _emit(report, args.output)
    return EXIT_OK if ced["ok"] else EXIT_FAILED


# -- verify ----------------------------------------------------------------------


def _report_parts(doc: Mapping) -> tuple[dict, dict, Optional[dict]]:
    """(args record, stored decomposition, embedded input document)."""
    schema = doc.get("schema")
    if schema == RUN_SCHEMA and doc.get("command") == "decompose":
        src = doc.get("input")
        return dict(doc["args"]), dict(doc["decomposition"]), (src or {}).get("document")
    if schema == "earlab.decomposition/1":
        if doc.get("construction") != "rank-boolean":
            raise SchemaTrouble(
                "bare decomposition documents carry no input; verify the run report instead"
            )
        params = doc.get("params", {})
        rec = {
            "construction": "rank-boolean",
            "rank": params.get("r"),
            "ranks": params.get("ranks"),
        }
        return rec, dict(doc), None
    raise SchemaTrouble(f"cannot verify a document with schema {schema!r}")


def _rebuild_from_report(args) -> tuple[EarDecomposition, dict, bool]:
    if not args.input:
        raise BadParams("this check needs --input with a decomposition run report")
    doc = _load_document(args.input)
    rec, stored, src = _report_parts(doc)
    dec = _run_construction(rec, src, _cap_checker(args))
    fresh = [[list(c) for c in ear.chains] for ear in dec.ears]
    kept = [e.get("chains") for e in stored.get("ears", [])]
    return dec, rec, fresh == kept


def _verify_ced(args) -> tuple[dict, bool]:
    dec, rec, chains_match = _rebuild_from_report(args)
    ced = verify_ced(dec.complex, dec)
    if not chains_match:
        _warn("stored ear chains differ from the reconstruction")
    body = {
        "construction": rec["construction"],
        "chains_match": chains_match,
        "ced": ced,
    }
    return body, chains_match and bool(ced["ok"])


def _verify_reciprocity(args) -> tuple[dict, bool]:
    dec, rec, chains_match = _rebuild_from_report(args)
    colors = {
        v: dec.poset.rank_of(v) for ear in dec.ears for v in ear.complex.vertices
    }
    rows = []
    ok = chains_match
    for k, ear in enumerate(dec.ears):
        good = ball_flag_reciprocity(
            ear.complex, colors, len(dec.ranks), boundary_complex(ear.complex)
        )
        rows.append({"ear": k + 1, "ok": good})
        ok = ok and good
    body = {
        "construction": rec["construction"],
        "chains_match": chains_match,
        "ears": rows,
    }
    return body, ok


def _h_source(args) -> list[int]:
    if args.h:
        return _int_list(args.h, "--h")
    if args.input:
        doc = _load_document(args.input)
        schema = doc.get("schema")
        if schema == "earlab.complex/1":
            _, h = f_h_vectors(complex_from_json(doc))
            return list(h)
        if schema == RUN_SCHEMA:
            h = doc.get("ced", {}).get("h_checks", {}).get("h")
            if h is None:
                raise SchemaTrouble("run report carries no h-vector table")
            return list(h)
        raise SchemaTrouble(f"cannot take an h-vector from schema {schema!r}")
    raise BadParams("need --h or --input")


def _verify_h_inequalities(args) -> tuple[dict, bool]:
    h = _h_source(args)
    ok, failures = verify_h_inequalities(h)
    return {"h": h, "failures": failures}, ok


def _m_witness(g: list[int]) -> Optional[dict]:
    if not g:
        return {"reason": "empty sequence"}
    if g[0] != 1:
        return {"index": 0, "reason": "must start at 1"}
    for i, x in enumerate(g):
        if x < 0:
            return {"index": i, "reason": "negative entry"}
    for i in range(2, len(g)):
        bound = macaulay_pseudopower(g[i - 1], i - 1)
        if g[i] > bound:
            return {"index": i, "value": g[i], "bound": bound}
    return None


def _verify_m_vector(args) -> tuple[dict, bool]:
    if args.g:
        g = _int_list(args.g, "--g")
    else:
        g = list(g_vector(_h_source(args)))
    ok = is_m_vector(g)
    body: dict = {"g": g}
    if not ok:
        body["witness"] = _m_witness(g)
    return body, ok


def _verify_flag_inequalities(args) -> tuple[dict, bool]:
    if not args.input:
        raise BadParams("flag-inequalities needs --input")
    doc = _load_document(args.input)
    schema = doc.get("schema")
    if schema == "earlab.complex/1":
        p = _flag_face_poset(complex_from_json(doc))
    elif schema in ("earlab.lattice/1", "earlab.poset/1"):
        p = poset_from_json(doc)
    else:
        raise SchemaTrouble(f"cannot take flag vectors from schema {schema!r}")
    rep = verify_flag_inequalities(p, m_cap=args.cap_descent)
    return rep, rep["violations"] == 0


def _verify_cm(args, want_two: bool) -> tuple[dict, bool]:
    if not args.input:
        raise BadParams("cm checks need --input with a complex document")
    doc = _load_document(args.input)
    if doc.get("schema") != "earlab.complex/1":
        raise SchemaTrouble("cm checks expect a complex document")
    c = complex_from_json(doc)
    _cap_checker(args)("homology", len(c.facets))
    cm, two = is_cm_and_2cm(c)
    body = {"cm": cm, "two_cm": two}
    return body, (two if want_two else cm)


def cmd_verify(args) -> int:
    what = args.what
    if what == "ced":
        body, ok = _verify_ced(args)
    elif what == "reciprocity":
        body, ok = _verify_reciprocity(args)
    elif what == "h-inequalities":
        body, ok = _verify_h_inequalities(args)
    elif what == "m-vector":
        body, ok = _verify_m_vector(args)
    elif what == "flag-inequalities":
        body, ok = _verify_flag_inequalities(args)
    elif what == "cm":
        body, ok = _verify_cm(args, want_two=False)
    elif what == "2cm":
        body, ok = _verify_cm(args, want_two=True)
    else:
        raise BadParams(f"unknown check {what!r}")
    report = {"schema": VERIFY_SCHEMA, "what": what, "ok": ok, "result": body}
    _emit(report, args.output)
    return EXIT_OK if ok else EXIT_FAILED


# -- experiment --------------------------------------------------------------------


def _all_rank_subsets(d: int) -> list[tuple[int, ...]]:
    out = []
    for mask in range(1, 1 << d):
        out.append(tuple(i + 1 for i in range(d) if mask >> i & 1))
    out.sort(key=lambda s: (len(s), s))
    return out


def cmd_experiment(args) -> int:
    if args.name != "rank-selection":
        raise BadParams(f"unknown experiment {args.name!r}")
    if args.input:
        doc = _load_document(args.input)
        if doc.get("schema") != "earlab.complex/1":
            raise SchemaTrouble("the experiment expects a complex document")
        c = complex_from_json(doc)
    elif args.fixture:
        if args.fixture not in COMPLEX_FIXTURES:
            raise BadParams(f"unknown fixture {args.fixture!r}")
        c = build_complex(COMPLEX_FIXTURES[args.fixture])
    else:
        raise BadParams("need --input or --fixture")
    cap = _cap_checker(args)
    cap("homology", len(c.facets))
    d = c.dim + 1
    cap("descent", d)

    shellable = search_shelling(c) is not None
    fp = face_poset(c, include_empty=True, graded=True)

    rows = []
    for S in _all_rank_subsets(d):
        sel = rank_select(fp, S)
        delta = order_complex(sel)
        _, h = f_h_vectors(delta)
        cm, two = is_cm_and_2cm(delta)
        ineq_ok, failures = verify_h_inequalities(h)
        g, m_ok = g_and_m_check(h)
        rows.append(
            {
                "S": list(S),
                "includes_top": d in S,
                "h": list(h),
                "cm": cm,
                "two_cm": two,
                "h_inequalities_ok": ineq_ok,
                "g_is_m_vector": m_ok,
                "necessary_conditions_ok": bool(two and ineq_ok and m_ok),
            }
        )
    report = {
        "schema": EXPERIMENT_SCHEMA,
        "name": "rank-selection",
        "complex": complex_to_json(c),
        "shellable": shellable,
        "note": "observations only; no construction is claimed for selections through the top rank",
        "rows": rows,
    }
    _emit(report, args.output)
    return EXIT_OK


# -- wiring ------------------------------------------------------------------------


def _add_caps(sub) -> None:
    sub.add_argument("--cap-lattice", type=int, default=DEFAULT_CAPS["lattice"])
    sub.add_argument("--cap-descent", type=int, default=DEFAULT_CAPS["descent"])
    sub.add_argument("--cap-homology", type=int, default=DEFAULT_CAPS["homology"])


def _add_io(sub) -> None:
    sub.add_argument("--input")
    sub.add_argument("--output")
    sub.add_argument("--format", choices=["json"], default="json")


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="earlab", description=__doc__.splitlines()[0])
    subs = top.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="write a standard fixture as canonical JSON")
    gen.add_argument(
        "family",
        choices=[
            "boolean",
            "partition",
            "uniform-matroid",
            "graphic-matroid",
            "flats",
            "complex-fixture",
        ],
    )
    gen.add_argument("--rank", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--size", type=int)
    gen.add_argument("--vertices", type=int)
    gen.add_argument("--edges", help="comma list of u-v pairs, vertices 0-based")
    gen.add_argument("--name", help="complex fixture name")
    _add_io(gen)
    gen.set_defaults(func=cmd_gen)

    dec = subs.add_parser("decompose", help="run a construction and verify the axioms")
    dec.add_argument(
        "--construction",
        required=True,
        choices=[
            "supersolvable",
            "rank-boolean",
            "rank-supersolvable",
            "face-poset",
            "geometric",
        ],
    )
    dec.add_argument("--rank", type=int, help="rank of the boolean lattice (rank-boolean)")
    dec.add_argument("--ranks", help="comma list of selected ranks")
    dec.add_argument("--atom-order", help="comma list of atom names (geometric)")
    dec.add_argument("--shelling", help="comma list of facet indices (face-poset)")
    _add_io(dec)
    _add_caps(dec)
    dec.set_defaults(func=cmd_decompose)

    ver = subs.add_parser("verify", help="re-check reports, vectors, or complexes")
    ver.add_argument(
        "--what",
        required=True,
        choices=[
            "ced",
            "h-inequalities",
            "flag-inequalities",
            "m-vector",
            "cm",
            "2cm",
            "reciprocity",
        ],
    )
    ver.add_argument("--h", help="comma list, an h-vector")
    ver.add_argument("--g", help="comma list, a g-vector")
    _add_io(ver)
    _add_caps(ver)
    ver.set_defaults(func=cmd_verify)

    exp = subs.add_parser("experiment", help="observation-only scans")
    exp.add_argument("name", choices=["rank-selection"])
    exp.add_argument("--fixture", help="built-in complex fixture name")
    _add_io(exp)
    _add_caps(exp)
    exp.set_defaults(func=cmd_experiment)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    args = _parser().parse_args(argv)
    _threads_note()
    t0 = time.monotonic()
    try:
        return args.func(args)
    except SchemaTrouble as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Inconsistent as exc:
        print(f"error: Inconsistent: {exc}", file=sys.stderr)
        return EXIT_IO
    except EarlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        print(f"wall {time.monotonic() - t0:.3f}s", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
