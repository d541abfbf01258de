"""Text formats for channel tensors and factored distributions.

Channel file::

    dmc <|X|> <|X1|> <|Y1|> <|Y2|>           # or: dmc2 <|X|> <|X1|> <|X2|> <|Y1|> <|Y2|>
    x x1 y1 y2 p                             # one line per non-zero cell, 0-based

Distribution file, one block per factor::

    factor pv1v2 2x2
    0 0 0.25
    ...

Blank lines and ``#`` comments are ignored; unlisted cells are 0.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from crbc.dmc import FACTOR_AXES, DmcSpec, FactoredJoint
from crbc.info import NORM_TOL, InvalidDistributionError

PathLike = Union[str, Path]


class FormatError(ValueError):
    """Malformed input file; the message carries the file name and line number."""

    def __init__(self, source: str, lineno: int, msg: str):
        super().__init__(f"{source}:{lineno}: {msg}")
        self.source = source
        self.lineno = lineno


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def _parse_shape(tok: str, src: str, n: int) -> tuple[int, ...]:
    parts = [p for p in re.split(r"[x,×]", tok) if p]
    try:
        shape = tuple(int(p) for p in parts)
    except ValueError:
        raise FormatError(src, n, f"bad shape {tok!r}") from None
    if not shape or any(s < 1 for s in shape):
        raise FormatError(src, n, f"bad shape {tok!r}")
    return shape


def _fill(t: np.ndarray, toks: list[str], src: str, n: int) -> None:
    if len(toks) != t.ndim + 1:
        raise FormatError(src, n, f"expected {t.ndim} indices and a probability, got {len(toks)} fields")
    try:
        idx = tuple(int(v) for v in toks[:-1])
        p = float(toks[-1])
    except ValueError:
        raise FormatError(src, n, f"cannot parse {' '.join(toks)!r}") from None
    if any(not 0 <= i < s for i, s in zip(idx, t.shape)):
        raise FormatError(src, n, f"index {idx} outside shape {t.shape}")
    if not (p >= 0 and np.isfinite(p)):
        raise FormatError(src, n, f"probability must be finite and >= 0, got {toks[-1]}")
    t[idx] = p


def parse_channel(text: str, source: str = "<channel>") -> DmcSpec:
    it = iter(_lines(text))
    try:
        n, head = next(it)
    except StopIteration:
        raise FormatError(source, 1, "empty channel file") from None
    kind = head[0]
    if kind not in ("dmc", "dmc2") or len(head) != (5 if kind == "dmc" else 6):
        raise FormatError(source, n, "header must be 'dmc |X| |X1| |Y1| |Y2|' or 'dmc2 |X| |X1| |X2| |Y1| |Y2|'")
    try:
        shape = tuple(int(v) for v in head[1:])
    except ValueError:
        raise FormatError(source, n, "alphabet sizes must be integers") from None
    if any(s < 1 for s in shape):
        raise FormatError(source, n, "alphabet sizes must be >= 1")
    W = np.zeros(shape)
    first_line: dict[tuple, int] = {}
    n_in = len(shape) - 2
    for n, toks in it:
        _fill(W, toks, source, n)
        first_line.setdefault(tuple(int(v) for v in toks[:n_in]), n)
    sums = W.sum(axis=(-2, -1))
    for idx in np.ndindex(*sums.shape):
        if abs(sums[idx] - 1.0) > NORM_TOL:
            raise FormatError(
                source, first_line.get(idx, n), f"p(y1,y2|{idx}) sums to {sums[idx]:.12g}, not 1"
            )
    return DmcSpec(W)


def parse_factored(text: str, theorem: int, source: str = "<dist>") -> FactoredJoint:
    """Factors for ``theorem``; names and arities come from :data:`crbc.dmc.FACTOR_AXES`."""
    expected = FACTOR_AXES[theorem]
    tables: dict[str, np.ndarray] = {}
    current = None
    for n, toks in _lines(text):
        if toks[0] == "factor":
            if len(toks) != 3:
                raise FormatError(source, n, "factor header is 'factor <name> <shape>'")
            name = toks[1]
            if name not in expected:
                raise FormatError(source, n, f"unknown factor {name!r} for theorem {theorem}; expected {sorted(expected)}")
            if name in tables:
                raise FormatError(source, n, f"factor {name!r} given twice")
            shape = _parse_shape(toks[2], source, n)
            if len(shape) != len(expected[name]):
                raise FormatError(source, n, f"{name} needs {len(expected[name])} axes {expected[name]}")
            current = tables[name] = np.zeros(shape)
        else:
            if current is None:
                raise FormatError(source, n, "values before any 'factor' header")
            _fill(current, toks, source, n)
    missing = sorted(set(expected) - set(tables))
    if missing:
        raise FormatError(source, 0, f"missing factors {missing}")
    try:
        return FactoredJoint(theorem, tables)
    except InvalidDistributionError as e:
        raise FormatError(source, 0, str(e)) from None


def parse_tables(text: str, source: str = "<dist>") -> dict[str, np.ndarray]:
    """Raw ``factor`` blocks without theorem checks (used for ``pxx1``/``paux``)."""
    tables: dict[str, np.ndarray] = {}
    current = None
    for n, toks in _lines(text):
        if toks[0] == "factor":
            if len(toks) != 3:
                raise FormatError(source, n, "factor header is 'factor <name> <shape>'")
            current = tables[toks[1]] = np.zeros(_parse_shape(toks[2], source, n))
        elif current is None:
            raise FormatError(source, n, "values before any 'factor' header")
        else:
            _fill(current, toks, source, n)
    return tables


def read_channel(path: PathLike) -> DmcSpec:
    return parse_channel(Path(path).read_text(), str(path))


def read_factored(path: PathLike, theorem: int) -> FactoredJoint:
    return parse_factored(Path(path).read_text(), theorem, str(path))


def format_channel(dmc: DmcSpec) -> str:
    kind = "dmc2" if dmc.two_sided else "dmc"
    out = [" ".join([kind, *map(str, dmc.W.shape)])]
    for idx in np.ndindex(*dmc.W.shape):
        if dmc.W[idx] > 0:
            out.append(" ".join([*map(str, idx), repr(float(dmc.W[idx]))]))
    return "\n".join(out) + "\n"


def format_tables(tables: dict[str, np.ndarray]) -> str:
    out = []
    for name, t in tables.items():
        t = np.asarray(t, dtype=float)
        out.append(f"factor {name} {'x'.join(map(str, t.shape))}")
        for idx in np.ndindex(*t.shape):
            if t[idx] > 0:
                out.append(" ".join([*map(str, idx), repr(float(t[idx]))]))
    return "\n".join(out) + "\n"
