"""Deterministic report serialization and operator dumps."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import IO

import numpy as np
import scipy.sparse as sp


def format_float(x: float) -> str:
    """Fixed 17-significant-digit text; non-finite values become JSON strings."""
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    text = format(x, ".17g")
    return text if any(ch in text for ch in ".en") else text + ".0"


def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}" for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        if not seq:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in seq]
        return "[" + pad + ("," + pad).join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with sorted keys and 17-significant-digit floats."""
    return _encode(obj, indent, 0) + "\n"


def write_json(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))


def write_csv(rows: list[dict], path: str | Path) -> None:
    if not rows:
        Path(path).write_text("")
        return
    keys = list(rows[0].keys())
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(keys)
        for r in rows:
            w.writerow([format_float(v) if isinstance(v, float) else v for v in (r[k] for k in keys)])


def dump_operator(M, out: IO[str] | str | Path, drop_below: float = 0.0) -> None:
    """Coordinate list ``row col re im``, sorted by ``(row, col)``."""
    C = sp.coo_matrix(M)
    C.sum_duplicates()
    data = C.data.astype(complex)
    keep = np.abs(data) > drop_below
    r, c, d = C.row[keep], C.col[keep], data[keep]
    order = np.lexsort((c, r))
    lines = [f"{int(r[i])} {int(c[i])} {format_float(d[i].real)} {format_float(d[i].imag)}" for i in order]
    text = f"# shape {C.shape[0]} {C.shape[1]}\n" + "".join(line + "\n" for line in lines)
    if isinstance(out, (str, Path)):
        Path(out).write_text(text)
    else:
        out.write(text)


def load_operator(src: str | Path) -> sp.csr_matrix:
    rows, cols, vals, shape = [], [], [], None
    for line in Path(src).read_text().splitlines():
        if line.startswith("# shape"):
            shape = tuple(int(x) for x in line.split()[2:4])
            continue
        if not line.strip():
            continue
        r, c, re_, im = line.split()
        rows.append(int(r))
        cols.append(int(c))
        vals.append(float(re_) + 1j * float(im))
    return sp.csr_matrix((vals, (rows, cols)), shape=shape)


def load_model(ref: str | Path | dict, dim_cap: int | None = None):
    """Build a :class:`HilbertModel` from a model file.

    Schema: ``{"complex": ref, "p": int, "group": "Z2", "p_sites": [...],
    "p1_sites": [...]}`` where the site lists are optional.
    """
    from hfent.complexes import load_complex
    from hfent.groups import FiniteAbelianGroup
    from hfent.hilbert import DEFAULT_DIM_CAP, HilbertModel

    spec = ref if isinstance(ref, dict) else json.loads(Path(ref).read_text())
    X = load_complex(spec["complex"])
    G = FiniteAbelianGroup.parse(str(spec.get("group", "Z2")))
    return HilbertModel(
        X,
        int(spec["p"]),
        G,
        p_sites=spec.get("p_sites"),
        p1_sites=spec.get("p1_sites"),
        dim_cap=DEFAULT_DIM_CAP if dim_cap is None else dim_cap,
    )
