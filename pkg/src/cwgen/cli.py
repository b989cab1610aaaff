"""Command-line entry point.

Every subcommand is pure with respect to its inputs plus (seed,
transcript): re-running reproduces outputs byte for byte. Module errors
exit nonzero with one machine-parseable line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import dataset, pipeline_keyword, pipeline_text, render
from .errors import CwgenError
from .gateway import Gateway
from .layout import CrosswordLayout, GeneratorConfig, generate_parallel, verify_layout
from .models import pairs_to_jsonl
from .prompts import Lang


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwgen", description="Arabic educational crossword toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="Preprocess a pair file: dedupe and drop reversal-marker clues")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--format", choices=dataset.FORMATS, default=None,
                   help="Input format (default: by file extension)")

    p = sub.add_parser("stats", help="Answer-length statistics for a pair file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=dataset.FORMATS, default=None)

    p = sub.add_parser("from-text", help="Text pipeline: extract, generate, validate")
    p.add_argument("--in", dest="infile", required=True, help="UTF-8 text file")
    p.add_argument("--lang", choices=["en", "ar"], required=True)
    p.add_argument("--transcript", default=None, help="Replay transcript (offline run)")
    p.add_argument("--model", default=pipeline_text.DEFAULT_MODEL)
    p.add_argument("--out", dest="outfile", required=True, help="Passed pairs, JSONL")
    p.add_argument("--report", default=None, help="Full validation report, JSON")

    p = sub.add_parser("from-keywords", help="Keyword pipeline: clue per answer, then filter")
    p.add_argument("--answers", required=True, help="One answer per line")
    p.add_argument("--classifier", choices=["heuristic", "remote"], default="heuristic")
    p.add_argument("--transcript", default=None)
    p.add_argument("--model", default=pipeline_keyword.DEFAULT_CLUE_MODEL)
    p.add_argument("--judge-model", default=pipeline_keyword.DEFAULT_JUDGE_MODEL)
    p.add_argument("--out", dest="outfile", required=True, help="Passed pairs with verdicts, JSONL")
    p.add_argument("--report", default=None)

    p = sub.add_parser("layout", help="Place answers on a grid")
    p.add_argument("--pairs", required=True, help="Pair file, JSONL")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--min-answers", type=int, required=True)
    p.add_argument("--min-fill", type=float, default=1.0)
    p.add_argument("--max-rebuilds", type=int, default=10)
    p.add_argument("--max-seconds", type=float, default=30.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--preferred", default=None, help="File of preferred pair ids, one per line")
    p.add_argument("--jobs", type=int, default=1, help="Parallel restarts with derived seeds")
    p.add_argument("--out", dest="outfile", default=None, help="Layout JSON (default: stdout)")

    p = sub.add_parser("render", help="Render a layout JSON file")
    p.add_argument("--layout", required=True)
    p.add_argument("--format", choices=["text", "svg", "json"], required=True)
    p.add_argument("--reveal", action="store_true")
    p.add_argument("--pairs", default=None, help="Pair JSONL (required for --format json)")
    p.add_argument("--out", dest="outfile", default=None)

    p = sub.add_parser("serve", help="Run the HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--data-dir", required=True)
    p.add_argument("--transcript", default=None)
    p.add_argument("--ui-origin", default="*")
    p.add_argument("--host", default="127.0.0.1")

    return parser


def _infer_format(path: str, explicit: Optional[str]) -> str:
    if explicit:
        return explicit
    return "csv" if path.endswith(".csv") else "jsonl"


def _emit(text: str, outfile: Optional[str]) -> None:
    if outfile is None:
        sys.stdout.write(text)
    else:
        Path(outfile).write_text(text, encoding="utf-8", newline="\n")


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, ensure_ascii=False, indent=2))


def _cmd_normalize(args: argparse.Namespace) -> None:
    pairs, report = dataset.load_pairs(args.infile, _infer_format(args.infile, args.format))
    kept = dataset.preprocess(pairs)
    dataset.save_pairs(args.outfile, kept)
    _print_json(
        {
            "loaded": report.loaded,
            "skipped": report.skipped_count,
            "kept": len(kept),
            "removed": report.loaded - len(kept),
        }
    )


def _cmd_stats(args: argparse.Namespace) -> None:
    pairs, _ = dataset.load_pairs(args.infile, _infer_format(args.infile, args.format))
    _print_json(dataset.compute_stats(pairs).to_json())


def _cmd_from_text(args: argparse.Namespace) -> None:
    gateway = Gateway.from_env(args.transcript)
    text = Path(args.infile).read_text(encoding="utf-8")
    report = pipeline_text.run_path_a(text, Lang(args.lang), gateway, model=args.model)
    _emit(pairs_to_jsonl(report.passed), args.outfile)
    if args.report:
        full = report.summary()
        full["rejected_pairs"] = [r.to_json() for r in report.rejected]
        Path(args.report).write_text(
            json.dumps(full, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    _print_json(report.summary())


def _cmd_from_keywords(args: argparse.Namespace) -> None:
    gateway = Gateway.from_env(args.transcript)
    answers = [
        line.strip()
        for line in Path(args.answers).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    report, verdicts = pipeline_keyword.run_path_b(
        answers, args.model, args.classifier, gateway, judge_model=args.judge_model
    )
    verdict_by_id = {pair.id: v for pair, v in verdicts}
    lines = []
    for pair in report.passed:
        doc = pair.to_json()
        doc["verdict"] = verdict_by_id[pair.id].to_json()
        lines.append(json.dumps(doc, ensure_ascii=False) + "\n")
    _emit("".join(lines), args.outfile)
    if args.report:
        full = report.summary()
        full["rejected_pairs"] = [r.to_json() for r in report.rejected]
        Path(args.report).write_text(
            json.dumps(full, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    _print_json(report.summary())


def _cmd_layout(args: argparse.Namespace) -> None:
    pairs, _ = dataset.load_pairs(args.pairs, "jsonl")
    preferred: frozenset[str] = frozenset()
    if args.preferred:
        preferred = frozenset(
            line.strip()
            for line in Path(args.preferred).read_text(encoding="utf-8").splitlines()
            if line.strip()
        )
    config = GeneratorConfig(
        rows=args.rows,
        cols=args.cols,
        min_answers=args.min_answers,
        min_fill_ratio=args.min_fill,
        max_rebuilds=args.max_rebuilds,
        max_duration=args.max_seconds,
        seed=args.seed,
    )
    layout = generate_parallel(config, pairs, preferred, jobs=args.jobs)
    violations = verify_layout(layout)
    if violations:
        raise CwgenError(f"generated layout failed verification: {violations[0]}")
    _emit(layout.to_json_str(), args.outfile)


def _cmd_render(args: argparse.Namespace) -> None:
    layout = CrosswordLayout.from_json(
        json.loads(Path(args.layout).read_text(encoding="utf-8"))
    )
    if args.format == "text":
        _emit(render.render_text(layout, reveal=args.reveal), args.outfile)
        return
    numbering = render.number_clues(layout)
    if args.format == "svg":
        _emit(render.export_svg(layout, numbering, reveal=args.reveal), args.outfile)
        return
    if not args.pairs:
        raise CwgenError("--pairs is required for --format json")
    pairs, _ = dataset.load_pairs(args.pairs, "jsonl")
    puzzle = render.export_puzzle_json(layout, {p.id: p for p in pairs}, numbering)
    _emit(json.dumps(puzzle, ensure_ascii=False, indent=2) + "\n", args.outfile)


def _cmd_serve(args: argparse.Namespace) -> None:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir, args.transcript, args.ui_origin)
    uvicorn.run(app, host=args.host, port=args.port)


_COMMANDS = {
    "normalize": _cmd_normalize,
    "stats": _cmd_stats,
    "from-text": _cmd_from_text,
    "from-keywords": _cmd_from_keywords,
    "layout": _cmd_layout,
    "render": _cmd_render,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except CwgenError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: FileNotFound: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
