"""Command-line driver: group facts, cached Kazhdan-Lusztig tables, piece
data, and the worked rank-4 example as a regression gate.

Subcommands
-----------

``group``
    Order, rank and element census of a Coxeter group.
``kl``
    Build (or load from a cache file) the full Kazhdan-Lusztig table and
    print statistics or a single polynomial.
``pieces``
    Piece indices, the twisted normalizer, the index sequences and the
    closure order, as text, JSON, CSV or a DOT digraph.
``example-b4``
    Run every frozen check of the rank-4 example; exit 0 only if all of
    them pass.

Exit codes: 0 success, 1 a check failed, 2 bad arguments or corrupt
input.  All output is deterministic: identical invocations produce
byte-identical bytes.

Cache format
------------

A Kazhdan-Lusztig cache is a UTF-8 text file.  The first line is
``klcache v1 <type_tag>``; every further line is one stored polynomial::

    <y-word> TAB <w-word> TAB <comma-separated q-coefficients>

with coefficients ascending from the constant term and no trailing
zeros.  Records are sorted lexicographically by (w-word, y-word) and
loading validates the header, the sort order, parseability of every
record, and the classical degree bound, refusing the file otherwise.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .coxeter import CoxeterGroup, DiagramAutomorphism, coxeter_group
from .laurent import Laurent, ONE, ZERO
from .hecke import KLTable, kl_table
from .pieces import (
    bedard_sequence,
    closure_hasse,
    piece_dimension,
    piece_indices,
    twisted_normalizer,
)

CACHE_MAGIC = "klcache"
CACHE_VERSION = "v1"


class CliError(Exception):
    """Bad arguments, unreadable files, or corrupt cache content."""


# --------------------------------------------------------------------------
# Kazhdan-Lusztig cache
# --------------------------------------------------------------------------

def _q_coefficients(p: Laurent) -> list[int]:
    """Coefficients of a polynomial in q = v^2, ascending from q^0."""
    if p == ZERO:
        return [0]
    degree = p.max_exp()
    if p.min_exp() < 0 or degree % 2 != 0:
        raise CliError("polynomial is not a polynomial in q = v^2")
    out = []
    for e in range(0, degree + 1, 2):
        c = p.coeff(e)
        out.append(c)
        if p.coeff(e + 1) != 0:
            raise CliError("polynomial has an odd v-exponent")
    return out


def _from_q_coefficients(coeffs: list[int]) -> Laurent:
    return Laurent({2 * i: c for i, c in enumerate(coeffs) if c})


def save_kl_cache(table: KLTable, path: str) -> None:
    group = table.group
    records = []
    for (y, w), p in table.table.items():
        coeffs = ",".join(str(c) for c in _q_coefficients(p))
        records.append((group.word_str(w), group.word_str(y), coeffs))
    records.sort()
    lines = [f"{CACHE_MAGIC} {CACHE_VERSION} {group.type_tag}"]
    lines.extend(f"{y}\t{w}\t{coeffs}" for w, y, coeffs in records)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def load_kl_cache(path: str, group: CoxeterGroup) -> KLTable:
    """Load a cache written by ``save_kl_cache``, failing closed.

    The header must carry the expected magic, version and group tag; the
    records must be sorted, parseable, and satisfy the constant-term and
    degree-bound invariants of the stored polynomials.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.read().split("\n")
    except OSError as exc:
        raise CliError(f"cannot read cache {path}: {exc}") from exc
    if not lines or lines[-1] != "":
        raise CliError("cache is truncated (missing final newline)")
    lines.pop()
    if not lines:
        raise CliError("cache is empty")
    header = lines[0].split(" ")
    if header != [CACHE_MAGIC, CACHE_VERSION, group.type_tag]:
        raise CliError(f"bad cache header {lines[0]!r}")

    parse_cache: dict[str, object] = {}

    def parse(word: str):
        got = parse_cache.get(word)
        if got is None:
            try:
                got = group.parse_word(word)
            except ValueError as exc:
                raise CliError(f"bad word {word!r} in cache") from exc
            if group.word_str(got) != word:
                raise CliError(f"non-canonical word {word!r} in cache")
            parse_cache[word] = got
        return got

    table: dict[tuple, Laurent] = {}
    previous: tuple[str, str] | None = None
    for line in lines[1:]:
        fields = line.split("\t")
        if len(fields) != 3:
            raise CliError(f"malformed record {line!r}")
        y_word, w_word, coeff_text = fields
        key = (w_word, y_word)
        if previous is not None and key <= previous:
            raise CliError("cache records are not sorted")
        previous = key
        try:
            coeffs = [int(c) for c in coeff_text.split(",")]
        except ValueError as exc:
            raise CliError(f"bad coefficients in {line!r}") from exc
        if len(coeffs) > 1 and coeffs[-1] == 0:
            raise CliError(f"trailing zero coefficient in {line!r}")
        y, w = parse(y_word), parse(w_word)
        p = _from_q_coefficients(coeffs)
        gap = group.length(w) - group.length(y)
        if gap < 0:
            raise CliError(f"length-decreasing pair in {line!r}")
        if gap == 0:
            if y != w or p != ONE:
                raise CliError(f"bad diagonal record {line!r}")
        else:
            if p.coeff(0) != 1 or p.max_exp() > gap - 1:
                raise CliError(f"invariant violation in {line!r}")
        if (y, w) in table:
            raise CliError(f"duplicate record {line!r}")
        table[(y, w)] = p
    return KLTable(group=group, table=table)


def _obtain_kl(group: CoxeterGroup, cache: str | None) -> KLTable:
    if cache is not None:
        try:
            with open(cache, "r", encoding="utf-8"):
                exists = True
        except OSError:
            exists = False
        if exists:
            return load_kl_cache(cache, group)
    table = kl_table(group)
    if cache is not None:
        save_kl_cache(table, cache)
    return table


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

def _load_matrix(path: str) -> list[list[int]]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read matrix file {path}: {exc}") from exc
    if (not isinstance(data, list)
            or not all(isinstance(row, list) for row in data)):
        raise CliError("matrix file must hold a JSON array of arrays")
    return data


def _make_group(type_spec: str) -> CoxeterGroup:
    if type_spec.startswith("matrix:"):
        spec = _load_matrix(type_spec[len("matrix:"):])
    else:
        spec = type_spec
    try:
        group = coxeter_group(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if group.rank > 9:
        raise CliError("word serialization supports ranks up to 9")
    return group


def _parse_J(text: str, group: CoxeterGroup) -> frozenset:
    try:
        indices = frozenset(int(part) for part in text.split(","))
    except ValueError as exc:
        raise CliError(f"bad index set {text!r}") from exc
    if not indices or not all(1 <= i <= group.rank for i in indices):
        raise CliError(f"index set {text!r} out of range")
    return indices


def _parse_delta(text: str, group: CoxeterGroup) -> DiagramAutomorphism:
    if text == "id":
        return group.automorphism()
    if not text.startswith("perm:"):
        raise CliError("--delta must be 'id' or 'perm:FILE'")
    path = text[len("perm:"):]
    try:
        with open(path, "r", encoding="utf-8") as handle:
            images = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read permutation file {path}: {exc}") from exc
    if (not isinstance(images, list)
            or not all(isinstance(i, int) for i in images)
            or len(images) != group.rank):
        raise CliError("permutation file must hold a JSON array of "
                       f"{group.rank} generator indices")
    try:
        return group.automorphism(
            {i + 1: image for i, image in enumerate(images)})
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _as_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"


def _as_csv(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _cmd_group(args: argparse.Namespace) -> int:
    group = _make_group(args.type)
    elements = group.elements()
    census: dict[int, int] = {}
    for w in elements:
        length = group.length(w)
        census[length] = census.get(length, 0) + 1
    longest = elements[-1]
    if args.format == "json":
        payload = {
            "type": group.type_tag,
            "rank": group.rank,
            "order": len(elements),
            "longest_word": group.word_str(longest),
            "longest_length": group.length(longest),
            "length_census": [census[k] for k in sorted(census)],
        }
        _emit(_as_json(payload), args.out)
    elif args.format == "csv":
        rows = [["word", "length"]]
        rows.extend([group.word_str(w), group.length(w)] for w in elements)
        _emit(_as_csv(rows), args.out)
    else:
        lines = [
            f"type: {group.type_tag}",
            f"rank: {group.rank}",
            f"order: {len(elements)}",
            f"longest element: {group.word_str(longest)} "
            f"(length {group.length(longest)})",
            "elements by length: "
            + " ".join(str(census[k]) for k in sorted(census)),
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _kl_stats(table: KLTable) -> dict:
    group = table.group
    nontrivial = 0
    max_degree = 0
    for p in table.table.values():
        if p != ONE:
            nontrivial += 1
            max_degree = max(max_degree, p.max_exp() // 2)
    return {
        "type": group.type_tag,
        "order": len(group.elements()),
        "stored_pairs": len(table.table),
        "nontrivial_pairs": nontrivial,
        "max_q_degree": max_degree,
    }


def _cmd_kl(args: argparse.Namespace) -> int:
    group = _make_group(args.type)
    table = _obtain_kl(group, args.cache)
    if args.pair is not None:
        y_word, w_word = args.pair
        try:
            y = group.parse_word(y_word)
            w = group.parse_word(w_word)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        p = table.get(y, w)
        if args.format == "json":
            payload = {
                "y": group.word_str(y),
                "w": group.word_str(w),
                "q_coefficients": _q_coefficients(p),
                "text": p.text(),
            }
            _emit(_as_json(payload), args.out)
        elif args.format == "csv":
            rows = [["y", "w", "q_coefficients"],
                    [group.word_str(y), group.word_str(w),
                     ",".join(str(c) for c in _q_coefficients(p))]]
            _emit(_as_csv(rows), args.out)
        else:
            _emit(p.text() + "\n", args.out)
        return 0
    stats = _kl_stats(table)
    if args.format == "json":
        _emit(_as_json(stats), args.out)
    elif args.format == "csv":
        rows = [["statistic", "value"]]
        rows.extend([k, v] for k, v in stats.items())
        _emit(_as_csv(rows), args.out)
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in stats.items()), args.out)
    return 0


def _piece_payload(group: CoxeterGroup, J: frozenset,
                   delta: DiagramAutomorphism) -> dict:
    indices = piece_indices(group, J, delta)
    normalizer = twisted_normalizer(group, J, delta)
    dims_available = group.type_tag.startswith("B")
    entries = []
    for w in indices:
        data = bedard_sequence(group, J, delta, w)
        entry = {
            "word": group.word_str(w),
            "n0": data.n0,
            "index_sets": [sorted(Jn) for Jn, _ in data.steps],
            "coset_minima": [group.word_str(wn) for _, wn in data.steps],
            "stable_set": sorted(data.J_infinity),
            "stable_minimum": group.word_str(data.w_infinity),
        }
        if dims_available:
            entry["dimension"] = piece_dimension(group, J, w, delta)
        entries.append(entry)
    hasse = [
        [group.word_str(a), group.word_str(b)]
        for a, b in closure_hasse(group, J, delta)
    ]
    return {
        "type": group.type_tag,
        "J": sorted(J),
        "piece_indices": entries,
        "normalizer": [group.word_str(w) for w in normalizer],
        "closure_covers": hasse,
    }


def _cmd_pieces(args: argparse.Namespace) -> int:
    group = _make_group(args.type)
    J = _parse_J(args.J, group)
    delta = _parse_delta(args.delta, group)
    payload = _piece_payload(group, J, delta)
    if args.format == "json":
        _emit(_as_json(payload), args.out)
    elif args.format == "csv":
        rows = [["word", "n0", "stable_set", "stable_minimum", "dimension"]]
        for entry in payload["piece_indices"]:
            rows.append([
                entry["word"], entry["n0"],
                " ".join(str(i) for i in entry["stable_set"]),
                entry["stable_minimum"], entry.get("dimension", ""),
            ])
        _emit(_as_csv(rows), args.out)
    elif args.format == "dot":
        lines = ["digraph closure {"]
        for entry in payload["piece_indices"]:
            lines.append(f'  "{entry["word"]}";')
        for a, b in payload["closure_covers"]:
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"type: {payload['type']}",
                 f"J: {' '.join(str(i) for i in payload['J'])}",
                 f"piece indices ({len(payload['piece_indices'])}):"]
        for entry in payload["piece_indices"]:
            dim = (f"  dim {entry['dimension']}"
                   if "dimension" in entry else "")
            lines.append(
                f"  {entry['word']:<14} n0 {entry['n0']}  stable set "
                f"{{{' '.join(str(i) for i in entry['stable_set'])}}}"
                f"{dim}")
        lines.append(f"normalizer ({len(payload['normalizer'])}): "
                     + " ".join(payload["normalizer"]))
        lines.append(f"closure covers ({len(payload['closure_covers'])}):")
        for a, b in payload["closure_covers"]:
            lines.append(f"  {a} -> {b}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_example_b4(args: argparse.Namespace) -> int:
    from .b4_example import run_example
    from .charsheaf_b4 import report_as_dict, report_text

    kl = None
    if args.cache is not None:
        kl = _obtain_kl(_make_group("B4"), args.cache)
    outcome = run_example(kl=kl)
    ctx = outcome.context
    check_lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.summary}"
        for c in outcome.checks
    ]
    for check in outcome.checks:
        check_lines.extend(f"     {f}" for f in check.failures)
    verdict = "all checks pass" if outcome.all_pass else "CHECKS FAILED"
    if args.format == "json":
        payload = {
            "schema": 1,
            "checks": [
                {"name": c.name, "passed": c.passed, "summary": c.summary,
                 "failures": list(c.failures)}
                for c in outcome.checks
            ],
            "report": report_as_dict(ctx, outcome.report),
            "all_pass": outcome.all_pass,
        }
        _emit(_as_json(payload), args.out)
    else:
        body = (report_text(ctx, outcome.report) + "\n"
                + "\n".join(check_lines) + f"\n{verdict}\n")
        _emit(body, args.out)
    if args.out is not None:
        sys.stdout.write("\n".join(check_lines) + f"\n{verdict}\n")
    return 0 if outcome.all_pass else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckepieces",
        description="Exact Coxeter/Hecke-algebra combinatorics: pieces, "
                    "Kazhdan-Lusztig tables, and the rank-4 example gate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="order and element census")
    p_group.add_argument("--type", required=True,
                         help="B<rank> or matrix:FILE (JSON Coxeter matrix)")
    p_group.add_argument("--format", choices=("text", "json", "csv"),
                         default="text")
    p_group.add_argument("--out", default=None, help="write output here")
    p_group.set_defaults(func=_cmd_group)

    p_kl = sub.add_parser("kl", help="Kazhdan-Lusztig table")
    p_kl.add_argument("--type", required=True)
    p_kl.add_argument("--cache", default=None,
                      help="cache file: loaded if present, created if not")
    p_kl.add_argument("--pair", nargs=2, metavar=("Y", "W"), default=None,
                      help="print the single polynomial for words Y, W")
    p_kl.add_argument("--format", choices=("text", "json", "csv"),
                      default="text")
    p_kl.add_argument("--out", default=None)
    p_kl.set_defaults(func=_cmd_kl)

    p_pieces = sub.add_parser(
        "pieces", help="piece indices, normalizer, closure order")
    p_pieces.add_argument("--type", required=True)
    p_pieces.add_argument("--J", required=True,
                          help="comma-separated generator indices")
    p_pieces.add_argument("--delta", default="id",
                          help="'id' or perm:FILE (JSON list of images)")
    p_pieces.add_argument("--format",
                          choices=("text", "json", "csv", "dot"),
                          default="text")
    p_pieces.add_argument("--out", default=None)
    p_pieces.set_defaults(func=_cmd_pieces)

    p_example = sub.add_parser(
        "example-b4",
        help="run all frozen checks of the rank-4 example")
    p_example.add_argument("--cache", default=None,
                           help="Kazhdan-Lusztig cache file to reuse")
    p_example.add_argument("--format", choices=("text", "json"),
                           default="text")
    p_example.add_argument("--out", default=None)
    p_example.set_defaults(func=_cmd_example_b4)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
