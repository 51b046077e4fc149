"""Gluing an absorbing layer onto a uniform grid, and grid files.

Signed indexing follows the single three-point recursion over
``j = -ell, ..., n``: interior steps are ``h`` (dual for ``j < 0``, primal
for ``j <= 0``), layer steps pass through for ``j >= 1``, and the interface
dual step is ``hhat_0 + h/2``.  Arrays are stored zero-based with ``offset =
ell``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridFormatError
from .sfraction import GridSteps

__all__ = [
    "MergedGrid",
    "merge_grid",
    "format_grid",
    "parse_grid",
    "write_grid",
    "read_grid",
    "parse_steps_table",
]

MAGIC = "# zolopml-grid v1"
COLUMNS = ["index", "hhat_re", "hhat_im", "h_re", "h_im"]


@dataclass(frozen=True)
class MergedGrid:
    h: float
    ell: int
    layer: GridSteps
    merged_hhat: tuple
    merged_h: tuple

    @property
    def offset(self) -> int:
        return self.ell

    @property
    def n(self) -> int:
        return self.layer.n

    @property
    def node_count(self) -> int:
        """Size of the index range ``-ell..n``."""
        return self.ell + self.n + 1

    def hhat_at(self, j: int):
        if not -self.ell <= j <= self.n - 1:
            raise IndexError(j)
        return self.merged_hhat[j + self.offset]

    def h_at(self, j: int):
        if not -self.ell <= j <= self.n:
            raise IndexError(j)
        return self.merged_h[j + self.offset]


def merge_grid(h: float, ell: int, layer: GridSteps) -> MergedGrid:
    """Uniform grid of step ``h`` with ``ell`` interior dual points, then ``layer``."""
    if not h > 0:
        raise DomainError(f"interior step must be positive, got {h}")
    if int(ell) != ell or ell < 0:
        raise DomainError(f"ell must be a nonnegative integer, got {ell}")
    ell = int(ell)
    hhat = [h] * ell + [layer.hhat[0] + h / 2] + list(layer.hhat[1:])
    prim = [h] * (ell + 1) + list(layer.h)
    return MergedGrid(h=h, ell=ell, layer=layer, merged_hhat=tuple(hhat), merged_h=tuple(prim))


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def format_grid(steps: GridSteps, meta: dict | None = None) -> str:
    """Grid-file text: magic line, JSON metadata line, CSV step table."""
    buf = io.StringIO()
    buf.write(MAGIC + "\n")
    buf.write("# meta: " + json.dumps(meta or {}, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    hh, hp = steps.as_complex()
    for j in range(steps.n):
        w.writerow([j, _fmt(hh[j].real), _fmt(hh[j].imag), _fmt(hp[j].real), _fmt(hp[j].imag)])
    return buf.getvalue()


def parse_steps_table(text: str, first_line: int = 1) -> GridSteps:
    """Parse the CSV step table (header plus rows)."""
    lines = text.splitlines()
    if not lines or [c.strip() for c in lines[0].split(",")] != COLUMNS:
        raise GridFormatError(f"expected header {','.join(COLUMNS)}", line=first_line)
    hh, hp = [], []
    for k, line in enumerate(lines[1:], start=first_line + 1):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != 5:
            raise GridFormatError(f"expected 5 columns, got {len(cells)}", line=k)
        try:
            idx = int(cells[0])
            vals = [float(c) for c in cells[1:]]
        except ValueError as exc:
            raise GridFormatError(f"bad number: {exc}", line=k) from None
        if idx != len(hh):
            raise GridFormatError(f"expected index {len(hh)}, got {idx}", line=k)
        hh.append(complex(vals[0], vals[1]))
        hp.append(complex(vals[2], vals[3]))
    if not hh:
        raise GridFormatError("grid has no steps", line=first_line + len(lines))
    return GridSteps(tuple(hh), tuple(hp))


def parse_grid(text: str):
    """Inverse of :func:`format_grid`; returns ``(steps, meta)``."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise GridFormatError("missing grid file header", line=1)
    if len(lines) < 2 or not lines[1].startswith("# meta: "):
        raise GridFormatError("missing metadata line", line=2)
    try:
        meta = json.loads(lines[1][len("# meta: "):])
    except json.JSONDecodeError as exc:
        raise GridFormatError(f"bad metadata: {exc.msg}", line=2) from None
    steps = parse_steps_table("\n".join(lines[2:]), first_line=3)
    return steps, meta


def write_grid(path, grid, meta: dict | None = None):
    """Write ``GridSteps`` or ``MergedGrid`` to ``path``.

    A merged grid stores its layer plus ``h`` and ``ell`` in the metadata.
    """
    meta = dict(meta or {})
    steps = grid
    if isinstance(grid, MergedGrid):
        meta.update(h_interior=grid.h, ell=grid.ell)
        steps = grid.layer
    with open(path, "w") as fh:
        fh.write(format_grid(steps, meta))


def read_grid(path):
    """Read a grid file; returns ``(GridSteps | MergedGrid, meta)``."""
    with open(path) as fh:
        steps, meta = parse_grid(fh.read())
    if "h_interior" in meta and "ell" in meta:
        return merge_grid(float(meta["h_interior"]), int(meta["ell"]), steps), meta
    return steps, meta


def cumulative_points(grid: MergedGrid):
    """Primal and dual node positions of a merged grid, starting at ``-ell*h``."""
    x0 = -grid.ell * grid.h
    prim = x0 + np.concatenate([[0], np.cumsum(np.array(grid.merged_h[1:], dtype=complex))])
    dual = x0 - grid.h / 2 + np.concatenate(
        [[0], np.cumsum(np.array(grid.merged_hhat, dtype=complex))])
    return prim, dual
