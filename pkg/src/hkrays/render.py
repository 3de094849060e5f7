"""Markdown, JSON and CSV renderings of Hilbert and Fano rows."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence

from .fano import FanoRow, h_ray_witness
from .hilbert import HilbertRow
from .lattice import Vector

JSON_SAFE = 2**53 - 1

HILBERT_COLUMNS = ["e", "a", "b", "types", "H_prime", "tau_prime", "lagrangian", "flopping_walls", "model_count"]
FANO_COLUMNS = ["e", "adm", "minus2_classes", "a", "b", "pell_square", "ray", "type", "H", "tau", "scroll_degree"]


class Symbols:
    def __init__(self, ascii_only: bool = False):
        self.ascii = ascii_only
        self.minus = "-" if ascii_only else "−"
        self.tau = "tau" if ascii_only else "τ"
        self.gamma = "gamma" if ascii_only else "γ"
        self.box = "box" if ascii_only else "□"


def combo(v: Vector | None, names: Sequence[str], minus: str = "-") -> str:
    """Render r*X + s*Y, dropping unit coefficients and zero terms."""
    if v is None:
        return ""
    out = ""
    for c, name in zip(v, names):
        if c == 0:
            continue
        sign = minus if c < 0 else ("+" if out else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        out += sign + mag + name
    return out or "0"


def _md_table(header: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _pair(p) -> str:
    return f"({p[0]},{p[1]})" if p else ""


def _types(types) -> str:
    return "+".join(str(t) for t in types)


# -- Hilbert squares ---------------------------------------------------------


def hilbert_cells(row: HilbertRow, sym: Symbols) -> list[str]:
    names = ("H", sym.tau)
    return [
        str(row.e),
        _pair(row.pell),
        _types(row.types),
        combo(row.H_prime, names, sym.minus),
        combo(row.tau_prime, names, sym.minus),
    ]


def hilbert_markdown(rows: list[HilbertRow], ascii_only: bool = False) -> str:
    sym = Symbols(ascii_only)
    header = ["e", "(a,b)", "types", "H'", sym.tau + "'"]
    return _md_table(header, [hilbert_cells(r, sym) for r in rows])


def json_int(n):
    if n is None or isinstance(n, bool):
        return n
    return str(n) if abs(n) > JSON_SAFE else n


def _vec(v):
    return None if v is None else [json_int(c) for c in v]


def hilbert_record(row: HilbertRow) -> dict:
    rep = row.report
    return {
        "e": row.e,
        "d": row.d,
        "det_abs": row.det_abs,
        "a": json_int(row.pell[0]) if row.pell else None,
        "b": json_int(row.pell[1]) if row.pell else None,
        "types": [str(t) for t in row.types],
        "H_prime": _vec(row.H_prime),
        "tau_prime": _vec(row.tau_prime),
        "lagrangian": _vec(row.lagrangian),
        "flopping_walls": [_vec(k) for k in row.flopping_walls],
        "model_count": row.model_count,
        "fm_partner_count": rep.fm_partner_count,
    }


def hilbert_csv_rows(row: HilbertRow) -> list[dict]:
    sym = Symbols(ascii_only=True)
    names = ("H", "tau")
    return [
        {
            "e": row.e,
            "a": row.pell[0] if row.pell else "",
            "b": row.pell[1] if row.pell else "",
            "types": _types(row.types),
            "H_prime": combo(row.H_prime, names, sym.minus),
            "tau_prime": combo(row.tau_prime, names, sym.minus),
            "lagrangian": combo(row.lagrangian, names, sym.minus),
            "flopping_walls": ";".join(combo(k, names) for k in row.flopping_walls),
            "model_count": row.model_count,
        }
    ]


# -- Fano varieties ----------------------------------------------------------


def _fano_pell_cell(row: FanoRow, sym: Symbols) -> str:
    if row.square:
        return sym.box
    return _pair(tuple(row.pell))


def fano_markdown(rows: list[FanoRow], ascii_only: bool = False) -> str:
    sym = Symbols(ascii_only)
    names = ("g", sym.gamma)
    header = ["e", "adm", "(" + sym.minus + "2)-classes", "(a,b)", "types", "H", sym.tau, "deg"]
    lines = []
    for row in rows:
        adm = row.admissibility if ascii_only else row.admissibility.replace("'", "′")
        head = [str(row.e), adm, "Yes" if row.has_minus2 else "No", _fano_pell_cell(row, sym)]
        if not row.rays:
            lines.append(head + ["None"] * 4)
        for ray in row.rays:
            lines.append(
                head + [str(ray.type), combo(ray.H, names, sym.minus), combo(ray.tau, names, sym.minus), str(ray.scroll_degree)]
            )
    return _md_table(header, lines)


def fano_record(row: FanoRow) -> dict:
    witness = h_ray_witness(row.e)
    return {
        "e": row.e,
        "d": row.d,
        "admissibility": row.admissibility,
        "has_minus2": row.has_minus2,
        "pell_square": row.square,
        "a": None if row.square else json_int(row.pell.a),
        "b": None if row.square else json_int(row.pell.b),
        "rays": [
            {"type": str(r.type), "H": _vec(r.H), "tau": _vec(r.tau), "scroll_degree": json_int(r.scroll_degree)}
            for r in row.rays
        ],
        "lagrangian": [_vec(v) for v in row.lagrangian],
        "flopping_walls": None if row.flopping_walls is None else [_vec(k) for k in row.flopping_walls],
        "h_ray_witness": None if witness is None else {"a": json_int(witness[0]), "n": json_int(witness[1])},
    }


def fano_csv_rows(row: FanoRow) -> list[dict]:
    names = ("g", "gamma")
    base = {
        "e": row.e,
        "adm": row.admissibility,
        "minus2_classes": "Yes" if row.has_minus2 else "No",
        "a": "" if row.square else row.pell.a,
        "b": "" if row.square else row.pell.b,
        "pell_square": "true" if row.square else "false",
    }
    if not row.rays:
        return [dict(base, ray="", type="None", H="None", tau="None", scroll_degree="None")]
    return [
        dict(base, ray=i + 1, type=str(r.type), H=combo(r.H, names), tau=combo(r.tau, names), scroll_degree=r.scroll_degree)
        for i, r in enumerate(row.rays)
    ]


# -- generic -----------------------------------------------------------------


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, compact separators, newline-terminated."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def dump_csv(columns: list[str], records: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(records)
    return buf.getvalue()
