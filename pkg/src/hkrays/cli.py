"""hkrays command line."""

from __future__ import annotations

import argparse
import sys

from . import render
from .errors import ConsistencyError, DomainError
from .fano import admissible_star, admissible_star_prime, analyze_fano
from .hilbert import analyze_hilbert_square

EXIT_OK, EXIT_DOMAIN, EXIT_CONSISTENCY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit 2 is reserved for consistency failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _valid_fano(e: int) -> bool:
    return e > 6 and e % 6 in (0, 2)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise DomainError(f"--range expects A:B, got {text!r}") from None


def _parse_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"--list expects comma-separated integers, got {text!r}") from None


def _select(args, kind: str) -> list[int]:
    if args.list is not None:
        return _parse_list(args.list)
    lo, hi = _parse_range(args.range)
    keep = (lambda e: e > 0 and e % 2 == 0) if kind == "hilbert" else _valid_fano
    return [e for e in range(lo, hi + 1) if keep(e)]


def _emit_hilbert(es: list[int], fmt: str, ascii_only: bool, single: bool = False) -> str:
    rows = [analyze_hilbert_square(e) for e in es]
    if fmt == "json":
        records = [render.hilbert_record(r) for r in rows]
        return render.dump_json(records[0] if single else records)
    if fmt == "csv":
        return render.dump_csv(render.HILBERT_COLUMNS, [x for r in rows for x in render.hilbert_csv_rows(r)])
    return render.hilbert_markdown(rows, ascii_only)


def _emit_fano(es: list[int], fmt: str, ascii_only: bool, single: bool = False) -> str:
    rows = [analyze_fano(e) for e in es]
    if fmt == "json":
        records = [render.fano_record(r) for r in rows]
        return render.dump_json(records[0] if single else records)
    if fmt == "csv":
        return render.dump_csv(render.FANO_COLUMNS, [x for r in rows for x in render.fano_csv_rows(r)])
    return render.fano_markdown(rows, ascii_only)


def admissible_list(limit: int, variant: str = "star", domain_filter: bool = True) -> list[int]:
    if limit < 2:
        raise DomainError(f"--max must be at least 2, got {limit}")
    pred = admissible_star if variant == "star" else admissible_star_prime
    return [e for e in range(2, limit + 1, 2) if pred(e) and (not domain_filter or e > 6)]


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["markdown", "json", "csv"], default="markdown")
    fmt.add_argument("--ascii", action="store_true", help="write tau/gamma and '-' instead of Unicode")

    p = _Parser(prog="hkrays", description="Extremal rays of Picard-rank-two hyper-Kaehler fourfolds of K3^[2]-type.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hilbert", parents=[fmt], help="one row of the Hilbert-square table")
    h.add_argument("--e", type=int, required=True, help="degree of the K3 surface (positive, even)")

    f = sub.add_parser("fano", parents=[fmt], help="one row of the Fano-variety table")
    f.add_argument("--e", type=int, required=True, help="discriminant, e > 6 and e = 0, 2 mod 6")

    t = sub.add_parser("table", parents=[fmt], help="a batch of rows, ordered by e")
    t.add_argument("kind", choices=["hilbert", "fano"])
    sel = t.add_mutually_exclusive_group(required=True)
    sel.add_argument("--range", help="inclusive A:B; keeps only valid e in the range")
    sel.add_argument("--list", help="comma-separated e values; every member must be valid")

    a = sub.add_parser(
        "admissible",
        parents=[fmt],
        help="even e <= max satisfying (**) or (**)'",
        description="List even e <= MAX satisfying (**) or (**)'. By default only e > 6 is listed, "
        "the range where C_e is defined; --no-domain-filter gives the raw predicate.",
    )
    a.add_argument("--max", type=int, required=True)
    a.add_argument("--variant", choices=["star", "starprime"], default="star")
    a.add_argument("--no-domain-filter", action="store_true", help="also list e <= 6")
    return p


def run(argv: list[str] | None = None) -> str:
    args = build_parser().parse_args(argv)
    if args.command == "hilbert":
        return _emit_hilbert([args.e], args.format, args.ascii, single=True)
    if args.command == "fano":
        return _emit_fano([args.e], args.format, args.ascii, single=True)
    if args.command == "table":
        es = sorted(_select(args, args.kind))
        emit = _emit_hilbert if args.kind == "hilbert" else _emit_fano
        return emit(es, args.format, args.ascii)
    es = admissible_list(args.max, args.variant, not args.no_domain_filter)
    if args.format == "json":
        return render.dump_json(es)
    if args.format == "csv":
        return "e\n" + "".join(f"{e}\n" for e in es)
    return ",".join(map(str, es)) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        out = run(argv)
    except SystemExit as exc:
        # argparse exits on --help and on usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_DOMAIN
    except ConsistencyError as exc:
        print(f"hkrays: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except DomainError as exc:
        print(f"hkrays: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
