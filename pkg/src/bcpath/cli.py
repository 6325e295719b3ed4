"""Command line front end.

    bcpath classify   --input doc.txt
    bcpath region     --input doc.txt --svg scene.svg
    bcpath plan       --input doc.txt
    bcpath extend     --input doc.txt
    bcpath check-path --input doc.txt
    bcpath render     --input doc.txt --output scene.svg
    bcpath batch      --input a.txt --input b.txt --jobs 4
    bcpath batch      --generate 100 --seed 7

Exit codes: 0 success, 2 infeasible / no free candidate / invalid path,
3 parse or schema error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .docformat import DocumentError, ProblemDocument, parse_problem_document
from .render import render_scene
from .report import run_problem
from .sampling import random_documents

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_PARSE = 3

VERB_SECTIONS = {
    "classify": ("proximity", "candidates"),
    "region": ("proximity", "region"),
    "plan": ("proximity", "candidates", "plan", "gradient"),
    "extend": ("proximity", "extend"),
    "check-path": ("proximity", "path"),
    "render": ("proximity", "candidates", "region", "plan", "path"),
}


def _read(source: Optional[str]) -> Tuple[bytes, str]:
    if source is None or source == "-":
        return sys.stdin.buffer.read(), "<stdin>"
    return Path(source).read_bytes(), source


def _write(target: Optional[str], data: bytes) -> None:
    if target is None or target == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(target).write_bytes(data)


def _parse_error(exc: DocumentError, name: str) -> str:
    return f"{name}:{exc.line}:{exc.column}: {exc.code} error: {exc.message}\n"


def run_document(doc: ProblemDocument, sections: Sequence[str], oracle: bool) -> Tuple[int, str]:
    sections = tuple(sections) + (("oracle",) if oracle else ())
    report = run_problem(doc, sections, oracle=oracle)
    return report.status, report.render_text()


def _batch_inputs(args) -> List[Tuple[str, object]]:
    """(name, document or DocumentError) pairs in a fixed order."""
    items: List[Tuple[str, object]] = []
    if args.generate:
        for doc in random_documents(args.seed, args.generate):
            items.append((doc.name, doc))
    for source in args.input or []:
        path = Path(source)
        files = sorted(p for p in path.iterdir() if p.is_file()) if path.is_dir() else [path]
        for f in files:
            try:
                items.append((str(f), parse_problem_document(f.read_bytes(), str(f))))
            except DocumentError as exc:
                items.append((str(f), exc))
    return items


def _batch_one(item: Tuple[str, object], oracle: bool) -> Tuple[int, str]:
    name, doc = item
    if isinstance(doc, DocumentError):
        return EXIT_PARSE, f"=== {name} ===\nstatus = {EXIT_PARSE}\nerror = {doc.code}: {doc}\n"
    status, text = run_document(doc, ("proximity", "candidates", "region", "plan", "gradient", "path"), oracle)
    return status, f"=== {name} ===\n{text}"


def batch(args) -> int:
    items = _batch_inputs(args)
    if not items:
        sys.stderr.write("batch: no documents (use --input or --generate)\n")
        return EXIT_PARSE
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda it: _batch_one(it, args.oracle), items))
    _write(args.output, "".join(text for _, text in results).encode("utf-8"))
    return max(status for status, _ in results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcpath", description="Bounded curvature path classification and planning.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in list(VERB_SECTIONS) + ["batch"]:
        p = sub.add_parser(verb)
        p.add_argument("--input", action="append" if verb == "batch" else "store",
                       help="problem document ('-' for stdin)" if verb != "batch" else "document or directory; repeatable")
        p.add_argument("--output", help="report destination (default stdout)")
        p.add_argument("--oracle", action="store_true", help="add sampling cross-checks to the report")
        p.add_argument("--seed", type=int, default=0, help="seed for generated documents")
        if verb == "batch":
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--generate", type=int, default=0, metavar="N", help="add N random documents")
        else:
            p.add_argument("--svg", help="also write the scene as SVG")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "batch":
        return batch(args)
    data, name = _read(args.input)
    try:
        doc = parse_problem_document(data, name)
    except DocumentError as exc:
        sys.stderr.write(_parse_error(exc, name))
        return EXIT_PARSE
    if args.verb == "check-path" and not doc.segments:
        sys.stderr.write(f"{name}:0:0: schema error: check-path needs at least one segment\n")
        return EXIT_PARSE
    sections = VERB_SECTIONS[args.verb]
    if args.oracle:
        sections = sections + ("oracle",)
    report = run_problem(doc, sections, oracle=args.oracle)
    if args.verb == "render":
        _write(args.output or args.svg, render_scene(doc, report))
        return report.status
    _write(args.output, report.render_text().encode("utf-8"))
    if args.svg:
        Path(args.svg).write_bytes(render_scene(doc, report))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
