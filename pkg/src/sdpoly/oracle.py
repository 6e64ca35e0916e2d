"""Exhaustive enumeration of fixed polyominoes with column-by-column classification.

This module is the ground truth for the generating-function engines at small
area.  It deliberately knows nothing about series algebra beyond packaging its
counts: every polyomino of area <= n_max is generated once (Redelmeier's
method), its columns are split into vertical runs, and the class conditions
are tested literally on the cell set.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

from .series import QSeries, QTSeries, SeriesError, SeriesRing

DEFAULT_CEILING = 14
CEILING_ENV = "SDPOLY_ORACLE_CEILING"

Cell = tuple[int, int]

S_CLASSES = (
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta",
    "eta", "theta", "iota", "kappa", "lambda", "mu",
)
BASE_LABELS = ("all", "column-convex", "column-duplex", "simplex-duplex", "S", "ends-duplex")
LABELS = BASE_LABELS + tuple("S-" + c for c in S_CLASSES)


class ResourceRefusal(RuntimeError):
    """Requested enumeration exceeds the configured safety ceiling."""


def safety_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    return int(raw) if raw else DEFAULT_CEILING


@dataclass(frozen=True)
class Polyomino:
    """A translation-normalised set of unit cells (x = column, y = row)."""

    cells: frozenset

    def __post_init__(self):
        if not self.cells:
            raise ValueError("a polyomino needs at least one cell")
        if not _connected(self.cells):
            raise ValueError("cells are not edge-connected")

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> Polyomino:
        cells = list(cells)
        x0 = min(x for x, _ in cells)
        y0 = min(y for _, y in cells)
        return cls(frozenset((x - x0, y - y0) for x, y in cells))

    @property
    def area(self) -> int:
        return len(self.cells)

    def mirror(self) -> Polyomino:
        """Reflection in a horizontal line (rows reversed)."""
        return Polyomino.of((x, -y) for x, y in self.cells)

    def __str__(self) -> str:
        return " ".join(f"{x},{y}" for x, y in sorted(self.cells))


def _connected(cells: frozenset) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


Run = tuple[int, int]  # inclusive (bottom, top) rows of one vertical component


def _runs(ys: list[int]) -> tuple[Run, ...]:
    ys = sorted(ys)
    runs = []
    lo = prev = ys[0]
    for y in ys[1:]:
        if y != prev + 1:
            runs.append((lo, prev))
            lo = y
        prev = y
    runs.append((lo, prev))
    return tuple(runs)


def _touch(a: Run, b: Run) -> bool:
    """True if runs in adjacent columns share an edge."""
    return a[0] <= b[1] and b[0] <= a[1]


def _contains(run: Run, y: int) -> bool:
    return run[0] <= y <= run[1]


@dataclass(frozen=True)
class ColumnDecomposition:
    columns: tuple  # per column (left to right): tuple of runs, bottom first
    simplex_indices: tuple
    duplex_indices: tuple
    lower_pivot: Cell | None
    upper_pivot: Cell | None
    lower_inner_pivot: Cell | None
    upper_inner_pivot: Cell | None

    @property
    def profile(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.columns)

    @property
    def duplex_count(self) -> int:
        return len(self.duplex_indices)

    @property
    def last_height(self) -> int:
        """Number of cells in the last column."""
        return sum(top - bot + 1 for bot, top in self.columns[-1])

    def second_last_column(self) -> int | None:
        return len(self.columns) - 2 if len(self.columns) >= 2 else None

    def second_last_simplex_column(self) -> int | None:
        return self.simplex_indices[-2] if len(self.simplex_indices) >= 2 else None


def decompose_columns(p: Polyomino) -> ColumnDecomposition:
    by_x: dict[int, list[int]] = {}
    for x, y in p.cells:
        by_x.setdefault(x, []).append(y)
    columns = tuple(_runs(by_x[x]) for x in sorted(by_x))
    simplex = tuple(i for i, c in enumerate(columns) if len(c) == 1)
    duplex = tuple(i for i, c in enumerate(columns) if len(c) == 2)

    lower_pivot = upper_pivot = None
    if len(simplex) >= 2:
        j = simplex[-2]
        (bot, top), = columns[j]
        lower_pivot, upper_pivot = (j + 1, bot), (j + 1, top)
    lower_inner = upper_inner = None
    if duplex:
        j = duplex[-1]
        lower, upper = columns[j]
        lower_inner, upper_inner = (j + 1, lower[1]), (j + 1, upper[0])
    return ColumnDecomposition(columns, simplex, duplex, lower_pivot, upper_pivot,
                               lower_inner, upper_inner)


@dataclass(frozen=True)
class Classification:
    decomposition: ColumnDecomposition
    labels: frozenset
    s_matches: tuple  # every S-class condition that held; exactly one for members of S

    @property
    def s_class(self) -> str | None:
        return self.s_matches[0] if len(self.s_matches) == 1 else None


def _cell_in_column(cols: tuple, cell: Cell) -> bool:
    x, y = cell
    return any(_contains(r, y) for r in cols[x])


def _s_conditions(d: ColumnDecomposition) -> list[str]:
    """Test each S-class membership condition on its own; return those that hold."""
    cols = d.columns
    last = len(cols) - 1
    matches = []

    if d.simplex_indices == (last,):
        matches.append("alpha")
        return matches

    def has(cell: Cell | None) -> bool:
        return cell is not None and _cell_in_column(cols, cell)

    c1 = cols[last][0]
    if len(cols[last - 1]) == 1:
        # second-last column simplex: the pivots sit in the last column's x
        if has(d.lower_pivot):
            matches.append("beta")
        else:
            matches.append("gamma")
        return matches

    if len(cols) < 3 or len(cols[last - 2]) != 1:
        return matches
    lower, upper = cols[last - 1]
    c3 = cols[last - 2][0]
    hole = (lower[1] + 1, upper[0] - 1)
    x2 = last - 1
    lp, up = d.lower_pivot, d.upper_pivot

    def in_run(cell: Cell | None, run: Run) -> bool:
        return cell is not None and cell[0] == x2 and _contains(run, cell[1])

    if not _touch(lower, c3):
        if in_run(lp, upper):
            matches.append("delta")
        if in_run(lp, hole):
            matches.append("epsilon")
    if not _touch(upper, c3):
        if in_run(up, lower):
            matches.append("zeta")
        if in_run(up, hole):
            matches.append("eta")
    if _touch(lower, c3) and _touch(upper, c3):
        to_lower, to_upper = _touch(c1, lower), _touch(c1, upper)
        if to_lower and to_upper:
            matches.append("theta")
        if to_lower and not to_upper:
            matches.append("kappa" if has(d.lower_inner_pivot) else "iota")
        if to_upper and not to_lower:
            matches.append("mu" if has(d.upper_inner_pivot) else "lambda")
    return matches


def classify(p: Polyomino) -> Classification:
    d = decompose_columns(p)
    return _classify_decomposition(d)


def _classify_decomposition(d: ColumnDecomposition) -> Classification:
    profile = d.profile
    labels = {"all"}
    if all(c == 1 for c in profile):
        labels.add("column-convex")
    s_matches: tuple = ()
    if all(c <= 2 for c in profile):
        labels.add("column-duplex")
        if not any(a == 2 and b == 2 for a, b in zip(profile, profile[1:])):
            labels.add("simplex-duplex")
            if profile[-1] == 1:
                labels.add("S")
                s_matches = tuple(_s_conditions(d))
                if len(s_matches) == 1:
                    labels.add("S-" + s_matches[0])
            else:
                labels.add("ends-duplex")
    return Classification(d, frozenset(labels), s_matches)


# -- enumeration --------------------------------------------------------------


def _neighbours(c: Cell) -> tuple[Cell, ...]:
    x, y = c
    return ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))


def _admissible(c: Cell) -> bool:
    # canonical anchor: the first cell is the leftmost cell of the bottom row
    return c[1] > 0 or (c[1] == 0 and c[0] >= 0)


def _redelmeier(n_max: int, poly: list, untried: list, seen: set) -> Iterator[list]:
    while untried:
        cell = untried.pop()
        poly.append(cell)
        yield poly
        if len(poly) < n_max:
            new = []
            for nb in _neighbours(cell):
                if nb not in seen and _admissible(nb):
                    # a neighbour of an earlier cell is already in seen
                    new.append(nb)
                    seen.add(nb)
            yield from _redelmeier(n_max, poly, untried + new, seen)
            for nb in new:
                seen.discard(nb)
        poly.pop()


def _branch_states(n_max: int, depth: int) -> list:
    """Split the search tree into independent subtrees rooted at ``depth`` cells.

    Returns (prefix_polyominoes, roots) where prefix_polyominoes are the
    polyominoes with fewer than ``depth`` cells visited on the way down and
    roots are (poly, untried, seen) states to continue from.
    """
    prefix: list = []
    roots: list = []

    def walk(poly, untried, seen):
        untried = list(untried)
        while untried:
            cell = untried.pop()
            poly2 = poly + [cell]
            if len(poly2) == depth or len(poly2) == n_max:
                roots.append((poly2, list(untried), set(seen)))
                continue
            prefix.append(list(poly2))
            new = []
            for nb in _neighbours(cell):
                if nb not in seen and _admissible(nb):
                    new.append(nb)
            walk(poly2, untried + new, seen | set(new))

    walk([], [(0, 0)], {(0, 0)})
    return prefix, roots


def _subtree(n_max: int, root) -> Iterator[list]:
    """All polyominoes in the subtree at ``root`` (including the root itself)."""
    poly, untried, seen = root
    poly = list(poly)
    yield poly
    if len(poly) < n_max:
        cell = poly[-1]
        new = []
        seen = set(seen)
        for nb in _neighbours(cell):
            if nb not in seen and _admissible(nb):
                new.append(nb)
                seen.add(nb)
        yield from _redelmeier(n_max, poly, untried + new, seen)


def enumerate_polyominoes(n_max: int) -> Iterator[Polyomino]:
    """Every fixed polyomino with at most ``n_max`` cells, each exactly once."""
    if n_max < 1:
        return
    for cells in _redelmeier(n_max, [], [(0, 0)], {(0, 0)}):
        yield Polyomino.of(cells)


@dataclass
class CountTable:
    """Exact counts keyed by (area, duplex columns, last-column height, label)."""

    n_max: int
    counts: Counter = field(default_factory=Counter)
    anomalies: list = field(default_factory=list)

    def add(self, area: int, duplex: int, height: int, labels: Iterable[str]) -> None:
        for lab in labels:
            self.counts[area, duplex, height, lab] += 1

    def merge(self, other: CountTable) -> CountTable:
        out = CountTable(max(self.n_max, other.n_max), self.counts + other.counts,
                         self.anomalies + other.anomalies)
        return out

    def total(self, label: str, area: int | None = None, duplex: int | None = None,
              height: int | None = None) -> int:
        return sum(
            v for (n, k, h, lab), v in self.counts.items()
            if lab == label
            and (area is None or n == area)
            and (duplex is None or k == duplex)
            and (height is None or h == height)
        )

    def by_area(self, label: str) -> list[int]:
        out = [0] * (self.n_max + 1)
        for (n, _k, _h, lab), v in self.counts.items():
            if lab == label:
                out[n] += v
        return out


def _count_cells(n_max: int, polys: Iterable[list], table: CountTable) -> None:
    for cells in polys:
        # cells are connected by construction; skip the Polyomino re-check
        d = decompose_columns(_raw_polyomino(cells))
        c = _classify_decomposition(d)
        if "S" in c.labels and len(c.s_matches) != 1:
            table.anomalies.append((Polyomino.of(cells), c.s_matches))
        table.add(len(cells), d.duplex_count, d.last_height, c.labels)


def _raw_polyomino(cells: list) -> Polyomino:
    x0 = min(x for x, _ in cells)
    p = object.__new__(Polyomino)
    object.__setattr__(p, "cells", frozenset((x - x0, y) for x, y in cells))
    return p


def _count_root(args) -> CountTable:
    n_max, root = args
    table = CountTable(n_max)
    _count_cells(n_max, _subtree(n_max, root), table)
    return table


def enumerate_counts(n_max: int, workers: int = 1) -> CountTable:
    """Enumerate and classify all polyominoes up to ``n_max`` cells.

    With ``workers > 1`` the search tree is split into subtrees at a fixed
    depth and counted in a process pool; the merged table does not depend on
    the worker count.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ceiling = safety_ceiling()
    if n_max > ceiling:
        raise ResourceRefusal(
            f"n_max={n_max} exceeds the enumeration ceiling {ceiling} (set {CEILING_ENV})"
        )
    if workers <= 1:
        table = CountTable(n_max)
        _count_cells(n_max, _redelmeier(n_max, [], [(0, 0)], {(0, 0)}), table)
        return table

    from concurrent.futures import ProcessPoolExecutor

    prefix, roots = _branch_states(n_max, min(4, n_max))
    table = CountTable(n_max)
    _count_cells(n_max, prefix, table)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_count_root, [(n_max, r) for r in roots]):
            table = table.merge(part)
    return table


def refined_series(table: CountTable, label: str, ring: SeriesRing | None = None,
                   *, by_height: bool = False) -> QSeries | QTSeries:
    """Package counts for ``label`` as a generating function.

    By default a (q, w) series; with ``by_height`` a (q, t, w) series where
    t marks the height of the last column (meaningful for S and its classes).
    """
    ring = ring or SeriesRing(table.n_max)
    if ring.order > table.n_max:
        raise SeriesError(f"order {ring.order} exceeds enumerated range {table.n_max}")
    flat: dict = {}
    for (n, k, h, lab), v in table.counts.items():
        if lab != label or n > ring.order:
            continue
        if ring.symbolic:
            if k > ring.wcap:
                continue
            key = (n, h, k) if by_height else (n, k)
            flat[key] = flat.get(key, 0) + v
        else:
            key = (n, h) if by_height else n
            flat[key] = flat.get(key, 0) + v * ring.w**k
    if by_height:
        return QTSeries.from_terms(ring.order, flat, ring.wcap)
    return QSeries.from_terms(ring.order, flat, ring.wcap)


def dump_classified(n_max: int, out: TextIO) -> int:
    """Write one line per polyomino: sorted cells, then its labels.  Returns the line count."""
    lines = 0
    for p in enumerate_polyominoes(n_max):
        c = classify(p)
        labels = sorted(c.labels)
        out.write(f"{p}\t{' '.join(labels)}\n")
        lines += 1
    return lines
