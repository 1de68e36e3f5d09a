"""Text comparison: stemmed tokens, word-level edit distance, BLEU, reports.

Texts are lowercased, whitespace-split, stripped of edge punctuation and
stemmed before scoring, so inflectional variation does not count as an
edit. The edit-distance inner loop has a compiled backend (built from
``_editdist.pyx``) selected at import time; the pure-Python fallback
computes identical values.
"""

from __future__ import annotations

import array
import json
import math
import string
from collections import Counter
from dataclasses import dataclass
from statistics import mean, pstdev
from typing import Sequence

from .porter import stem

try:
    from ._editdist import levenshtein_ids as _native_levenshtein
except ImportError:  # extension not built; pure Python path
    _native_levenshtein = None

BACKEND = "compiled" if _native_levenshtein is not None else "pure-python"

_STRIP_CHARS = string.punctuation + "‘’“”–—…"


def tokenize(text: str) -> list[str]:
    out = []
    for raw in text.lower().split():
        tok = raw.strip(_STRIP_CHARS)
        if tok:
            out.append(tok)
    return out


def tokenize_and_stem(text: str, use_stemming: bool = True) -> list[str]:
    toks = tokenize(text)
    if not use_stemming:
        return toks
    return [stem(t) for t in toks]


def _levenshtein_py(a: Sequence, b: Sequence) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, y in enumerate(b, start=1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y))
        prev = cur
    return prev[len(b)]


def levenshtein(a: Sequence, b: Sequence) -> int:
    """Minimum insert/delete/substitute edits between two token sequences."""
    if _native_levenshtein is None:
        return _levenshtein_py(a, b)
    ids: dict = {}
    encoded_a = array.array("i", [ids.setdefault(t, len(ids)) for t in a])
    encoded_b = array.array("i", [ids.setdefault(t, len(ids)) for t in b])
    return _native_levenshtein(encoded_a, encoded_b)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: Sequence[str], reference: Sequence[str],
         max_n: int = 4, epsilon: float = 1e-9) -> float:
    """BLEU with a single reference: geometric mean of modified n-gram
    precisions for n=1..max_n (zero counts smoothed to epsilon) times the
    brevity penalty."""
    if not candidate or not reference:
        return 0.0
    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand = _ngrams(candidate, n)
        ref = _ngrams(reference, n)
        total = max(len(candidate) - n + 1, 0)
        if total == 0:
            precision = epsilon
        else:
            overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
            precision = overlap / total if overlap else epsilon
        log_sum += math.log(precision)
    geo = math.exp(log_sum / max_n)
    c, r = len(candidate), len(reference)
    bp = 1.0 if c >= r else math.exp(1.0 - r / c)
    return bp * geo


@dataclass(frozen=True)
class EvalPair:
    candidate_text: str
    reference_text: str
    label: str = ""


@dataclass(frozen=True)
class EvalRow:
    label: str
    levenshtein: int
    bleu: float


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]
    levenshtein_mean: float
    levenshtein_std: float
    bleu_mean: float
    bleu_std: float


def score_pair(pair: EvalPair, use_stemming: bool = True) -> EvalRow:
    if not pair.candidate_text.strip() or not pair.reference_text.strip():
        raise ValueError(f"pair {pair.label!r}: both texts must be non-empty")
    cand = tokenize_and_stem(pair.candidate_text, use_stemming)
    ref = tokenize_and_stem(pair.reference_text, use_stemming)
    return EvalRow(pair.label, levenshtein(cand, ref), bleu(cand, ref))


def corpus_report(pairs: Sequence[EvalPair], use_stemming: bool = True) -> EvalReport:
    """Per-pair scores plus mean and population standard deviation."""
    if not pairs:
        raise ValueError("no pairs to score")
    rows = tuple(score_pair(p, use_stemming) for p in pairs)
    levs = [r.levenshtein for r in rows]
    bleus = [r.bleu for r in rows]
    return EvalReport(rows, mean(levs), pstdev(levs), mean(bleus), pstdev(bleus))


def compare_scores(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Two-tailed Student's t-test (pooled variance) between two score
    columns; returns (statistic, p-value)."""
    from scipy import stats

    t, p = stats.ttest_ind(list(xs), list(ys), equal_var=True)
    return float(t), float(p)


def format_report(report: EvalReport) -> str:
    width = max([len(r.label) for r in report.rows] + [len("label")])
    lines = [f"{'label'.ljust(width)}  {'levenshtein':>11}  {'bleu':>6}"]
    for r in report.rows:
        lines.append(f"{r.label.ljust(width)}  {r.levenshtein:>11d}  {r.bleu:>6.4f}")
    lines.append(f"{'mean'.ljust(width)}  {report.levenshtein_mean:>11.2f}  {report.bleu_mean:>6.4f}")
    lines.append(f"{'std'.ljust(width)}  {report.levenshtein_std:>11.2f}  {report.bleu_std:>6.4f}")
    return "\n".join(lines)


def report_to_json(report: EvalReport) -> str:
    payload = {
        "rows": [{"label": r.label, "levenshtein": r.levenshtein, "bleu": round(r.bleu, 6)}
                 for r in report.rows],
        "aggregate": {
            "levenshtein": {"mean": round(report.levenshtein_mean, 6),
                            "std": round(report.levenshtein_std, 6)},
            "bleu": {"mean": round(report.bleu_mean, 6),
                     "std": round(report.bleu_std, 6)},
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True)
