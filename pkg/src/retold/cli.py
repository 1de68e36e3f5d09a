"""Command line entry point.

Subcommands wire the pipeline end to end:

    retold validate <story>
    retold generate <story> [--voice V] [--seed N] [--emit-dsynts] [--output F]
    retold eval --candidate F --reference F [--no-stem] [--json F]
    retold pipeline <story> --reference F [--json F]

Exit codes: 0 success, 1 validation failure, 2 I/O or parse errors.
Output is byte-identical across runs for equal inputs (the seed included).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import dsynt, metrics, realize, story, style, transform
from .diagnostics import ERROR


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc.strerror or exc}", 2) from exc


def _load_story(path: str) -> story.StoryGraph:
    try:
        return story.parse_story(_read_file(path))
    except story.StoryError as exc:
        raise _CliError(f"{path}: {exc}", 2) from exc


def _validated_story(path: str, out) -> story.StoryGraph:
    graph = _load_story(path)
    diagnostics = story.validate_story(graph)
    if any(d.severity == ERROR for d in diagnostics):
        for d in diagnostics:
            print(str(d), file=out)
        raise _CliError(f"{path}: story is not valid", 1)
    return graph


def _generate(graph: story.StoryGraph, voice_name: str, seed: int
              ) -> tuple[dsynt.Document, list[style.StyleDecision]]:
    model = style.load_voice(voice_name)
    doc = transform.transform_story(graph)
    return style.apply_voice(doc, model, seed)


def cmd_validate(args, out, err) -> int:
    graph = _load_story(args.story)
    diagnostics = story.validate_story(graph)
    for d in diagnostics:
        print(str(d), file=out)
    if any(d.severity == ERROR for d in diagnostics):
        return 1
    print(f"{args.story}: ok", file=out)
    return 0


def cmd_generate(args, out, err) -> int:
    graph = _validated_story(args.story, err)
    try:
        styled, _decisions = _generate(graph, args.voice, args.seed)
    except style.VoiceError as exc:
        raise _CliError(str(exc), 2) from exc
    text = realize.realize_document(styled)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text, file=out)
    if args.emit_dsynts:
        if args.output:
            print(dsynt.serialize(styled), end="", file=out)
        else:
            print(file=out)
            print(dsynt.serialize(styled), end="", file=out)
    return 0


def cmd_eval(args, out, err) -> int:
    pair = metrics.EvalPair(_read_file(args.candidate), _read_file(args.reference),
                            label=Path(args.candidate).stem)
    try:
        report = metrics.corpus_report([pair], use_stemming=not args.no_stem)
    except ValueError as exc:
        raise _CliError(str(exc), 2) from exc
    row = report.rows[0]
    print(f"levenshtein: {row.levenshtein}", file=out)
    print(f"bleu: {row.bleu:.4f}", file=out)
    if args.json:
        Path(args.json).write_text(metrics.report_to_json(report) + "\n", encoding="utf-8")
    return 0


def cmd_pipeline(args, out, err) -> int:
    graph = _validated_story(args.story, err)
    styled, _ = _generate(graph, "NEUTRAL", args.seed)
    text = realize.realize_document(styled)
    print(text, file=out)
    pair = metrics.EvalPair(text, _read_file(args.reference), label=graph.id)
    report = metrics.corpus_report([pair], use_stemming=not args.no_stem)
    row = report.rows[0]
    print(file=out)
    print(f"levenshtein: {row.levenshtein}", file=out)
    print(f"bleu: {row.bleu:.4f}", file=out)
    if args.json:
        Path(args.json).write_text(metrics.report_to_json(report) + "\n", encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="retold",
        description="Regenerate and restyle story tellings from timeline encodings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a story file and report diagnostics")
    p.add_argument("story")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="realize a story in a given voice")
    p.add_argument("story")
    p.add_argument("--voice", default="NEUTRAL",
                   help="built-in voice name or a voice file path (default NEUTRAL)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-dsynts", action="store_true",
                   help="also print the serialized dependency trees")
    p.add_argument("--output", help="write the realized text to a file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval", help="score a candidate text against a reference")
    p.add_argument("--candidate", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--no-stem", action="store_true", help="score raw tokens")
    p.add_argument("--json", help="also write a machine-readable report")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("pipeline", help="generate neutrally and score in one step")
    p.add_argument("story")
    p.add_argument("--reference", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-stem", action="store_true")
    p.add_argument("--json", help="also write a machine-readable report")
    p.set_defaults(func=cmd_pipeline)
    return parser


def run(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out, err)
    except _CliError as exc:
        print(f"retold: {exc}", file=err)
        return exc.code
    except OSError as exc:
        print(f"retold: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())
