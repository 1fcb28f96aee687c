"""Discrete grids, rectangles, bases and fast rectangle sums.

Functions are piecewise constant on a uniform n-dimensional grid (n <= 3).
A rectangle is a union of whole cells, given by inclusive per-axis cell
index ranges, so every integral over a rectangle is a finite sum and every
supremum over a basis is a finite maximum.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

MAX_DIMS = 3


class GridError(ValueError):
    """Invalid grid, rectangle or basis parameters."""


def _as_tuple(x, n: int, name: str) -> tuple:
    t = tuple(x) if isinstance(x, (tuple, list, np.ndarray)) else (x,) * n
    if len(t) != n:
        raise GridError(f"{name} must have {n} entries, got {len(t)}")
    return t


@dataclass(frozen=True)
class GridFunction:
    """Nonnegative piecewise-constant function on a uniform grid.

    values is stored with shape ``shape``; cell (i1,..,in) occupies the
    physical box ``origin_k + [i_k*h_k, (i_k+1)*h_k)`` per axis.
    """

    shape: tuple[int, ...]
    cell_size: tuple[float, ...]
    values: np.ndarray
    origin: tuple[float, ...] = ()

    def __post_init__(self):
        n = len(self.shape)
        if not 1 <= n <= MAX_DIMS:
            raise GridError(f"dims must be in 1..{MAX_DIMS}, got {n}")
        if any(int(s) < 1 for s in self.shape):
            raise GridError("shape entries must be >= 1")
        object.__setattr__(self, "shape", tuple(int(s) for s in self.shape))
        h = _as_tuple(self.cell_size, n, "cell_size")
        if any(not (hk > 0) for hk in h):
            raise GridError("cell_size entries must be positive")
        object.__setattr__(self, "cell_size", tuple(float(hk) for hk in h))
        org = self.origin if self.origin else (0.0,) * n
        object.__setattr__(self, "origin", tuple(float(o) for o in _as_tuple(org, n, "origin")))
        vals = np.asarray(self.values, dtype=np.float64).reshape(self.shape)
        if not np.all(np.isfinite(vals)):
            raise GridError("values must be finite")
        if np.any(vals < 0):
            raise GridError("values must be nonnegative")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def dims(self) -> int:
        return len(self.shape)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.cell_size))

    def same_grid(self, other: "GridFunction") -> bool:
        return (
            self.shape == other.shape
            and self.cell_size == other.cell_size
            and self.origin == other.origin
        )

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.shape, self.cell_size, values, self.origin)

    def total_integral(self) -> float:
        # pairwise summation (np.sum) keeps results reproducible
        return float(np.sum(self.values)) * self.cell_volume


@dataclass(frozen=True)
class Rect:
    """Axis-parallel rectangle as inclusive per-axis cell index ranges."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        lo = tuple(int(v) for v in self.lo)
        hi = tuple(int(v) for v in self.hi)
        if len(lo) != len(hi):
            raise GridError("lo/hi length mismatch")
        if any(l > h for l, h in zip(lo, hi)) or any(l < 0 for l in lo):
            raise GridError(f"invalid rect lo={lo} hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dims(self) -> int:
        return len(self.lo)

    def cell_counts(self) -> tuple[int, ...]:
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    def volume(self, cell_size: Sequence[float]) -> float:
        v = 1.0
        for c, h in zip(self.cell_counts(), cell_size):
            v *= c * h
        return v

    def contains_cell(self, idx: Sequence[int]) -> bool:
        return all(l <= i <= h for i, l, h in zip(idx, self.lo, self.hi))

    def slices(self) -> tuple[slice, ...]:
        return tuple(slice(l, h + 1) for l, h in zip(self.lo, self.hi))

    def within(self, shape: Sequence[int]) -> bool:
        return all(h < nk for h, nk in zip(self.hi, shape))


ALL_RECTS = "all"
DYADIC_RECTS = "dyadic"
CUBES = "cubes"
_BASIS_KINDS = (ALL_RECTS, DYADIC_RECTS, CUBES)


@dataclass(frozen=True)
class Basis:
    """Enumerable family of rectangles over a grid shape.

    kind: "all" (every index range), "dyadic" (per-axis dyadic intervals,
    grid sides must be powers of two), or "cubes" (equal physical side
    lengths, within one cell).
    scale_bounds: optional (min_side, max_side) filter on physical side
    lengths.
    """

    kind: str = ALL_RECTS
    scale_bounds: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in _BASIS_KINDS:
            raise GridError(f"unknown basis kind {self.kind!r}")


def _axis_ranges_all(n_cells: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n_cells) for b in range(a, n_cells)]


def _axis_ranges_dyadic(n_cells: int) -> list[tuple[int, int]]:
    if n_cells & (n_cells - 1):
        raise GridError(f"dyadic basis needs power-of-two sides, got {n_cells}")
    out = []
    length = n_cells
    while length >= 1:
        for start in range(0, n_cells, length):
            out.append((start, start + length - 1))
        length //= 2
    return out


def enumerate_basis(basis: Basis, shape: Sequence[int], cell_size: Sequence[float] | None = None) -> Iterator[Rect]:
    """Yield every rectangle of the basis exactly once."""
    shape = tuple(int(s) for s in shape)
    n = len(shape)
    h = tuple(float(x) for x in cell_size) if cell_size is not None else (1.0,) * n

    if basis.kind == ALL_RECTS:
        per_axis = [_axis_ranges_all(nk) for nk in shape]
    elif basis.kind == DYADIC_RECTS:
        per_axis = [_axis_ranges_dyadic(nk) for nk in shape]
    else:  # cubes: equal physical sides within one cell width
        tol = max(h)
        yield from _enumerate_cubes(shape, h, tol, basis.scale_bounds)
        return

    lo_s, hi_s = basis.scale_bounds if basis.scale_bounds else (0.0, np.inf)
    for combo in itertools.product(*per_axis):
        sides = [(b - a + 1) * hk for (a, b), hk in zip(combo, h)]
        if min(sides) < lo_s or max(sides) > hi_s:
            continue
        yield Rect(tuple(a for a, _ in combo), tuple(b for _, b in combo))


def _enumerate_cubes(shape, h, tol, scale_bounds):
    lo_s, hi_s = scale_bounds if scale_bounds else (0.0, np.inf)
    n = len(shape)
    for c0 in range(1, shape[0] + 1):
        side0 = c0 * h[0]
        if not (lo_s <= side0 <= hi_s):
            continue
        counts_per_axis = []
        for k in range(1, n):
            # equal physical sides "within one cell": strictly closer than
            # one cell width, so uniform grids yield exact cubes only
            opts = [c for c in range(1, shape[k] + 1) if abs(c * h[k] - side0) < tol * (1 - 1e-12)]
            counts_per_axis.append(opts)
        for rest in itertools.product(*counts_per_axis):
            counts = (c0,) + rest
            anchors = [range(shape[k] - counts[k] + 1) for k in range(n)]
            for lo in itertools.product(*anchors):
                yield Rect(lo, tuple(l + c - 1 for l, c in zip(lo, counts)))


@dataclass(frozen=True)
class PrefixSum:
    """n-dimensional inclusion-exclusion partial sums of cell values.

    cum has shape (N_1+1, ..., N_n+1); cum[i] = sum of values over the
    index box [0,i). Rectangle integrals follow by inclusion-exclusion and
    carry the physical cell volume.
    """

    shape: tuple[int, ...]
    cell_size: tuple[float, ...]
    cum: np.ndarray = field(repr=False)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.cell_size))


def build_prefix_sum(f: GridFunction) -> PrefixSum:
    cum = f.values.astype(np.float64)
    for ax in range(f.dims):
        cum = np.cumsum(cum, axis=ax)
    cum = np.pad(cum, [(1, 0)] * f.dims)
    cum.setflags(write=False)
    return PrefixSum(f.shape, f.cell_size, cum)


def rect_cell_sum(p: PrefixSum, r: Rect) -> float:
    """Sum of cell values over r via inclusion-exclusion (no cell volume).

    Differences are nested with axis 0 innermost so the result is
    bit-identical to the sweep kernels, which difference axis by axis.
    """
    if not r.within(p.shape) or r.dims != len(p.shape):
        raise GridError(f"rect {r} out of bounds for shape {p.shape}")
    cum = p.cum
    lo, hi = r.lo, r.hi

    def rec(axis: int, tail: tuple) -> float:
        if axis < 0:
            return float(cum[tail])
        return rec(axis - 1, (hi[axis] + 1, *tail)) - rec(axis - 1, (lo[axis], *tail))

    return rec(r.dims - 1, ())


def rect_integral(p: PrefixSum, r: Rect) -> float:
    """Physical integral of the underlying function over r."""
    return rect_cell_sum(p, r) * p.cell_volume


def rect_average(p: PrefixSum, r: Rect) -> float:
    return rect_integral(p, r) / r.volume(p.cell_size)


def rect_integral_direct(f: GridFunction, r: Rect) -> float:
    """Direct per-cell summation; oracle for the prefix-sum path."""
    if not r.within(f.shape):
        raise GridError(f"rect {r} out of bounds for shape {f.shape}")
    return float(np.sum(f.values[r.slices()])) * f.cell_volume


# ---------------------------------------------------------------------------
# Grid file format: text header, then row-major values as CSV (default) or
# IEEE-754 little-endian float64 binary after a "data" line.

_MAGIC = "# strongmax grid v1"


def write_grid(f: GridFunction, path: str, binary: bool = False) -> None:
    header = io.StringIO()
    header.write(_MAGIC + "\n")
    header.write(f"dims {f.dims}\n")
    header.write("shape " + " ".join(map(str, f.shape)) + "\n")
    header.write("cell_size " + " ".join(repr(h) for h in f.cell_size) + "\n")
    header.write("origin " + " ".join(repr(o) for o in f.origin) + "\n")
    header.write(f"format {'bin' if binary else 'csv'}\n")
    header.write("data\n")
    if binary:
        with open(path, "wb") as fh:
            fh.write(header.getvalue().encode("ascii"))
            fh.write(f.values.astype("<f8").tobytes())
    else:
        with open(path, "w") as fh:
            fh.write(header.getvalue())
            flat = f.values.reshape(f.shape[0], -1)
            for row in flat:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_grid(path: str) -> GridFunction:
    with open(path, "rb") as fh:
        raw = fh.read()
    marker = raw.find(b"data\n")
    if marker < 0:
        raise GridError(f"{path}: not a strongmax grid file (no data section)")
    head_end = marker + len(b"data\n")
    lines = raw[:head_end].decode("ascii").splitlines()
    if not lines or lines[0].strip() != _MAGIC:
        raise GridError(f"{path}: not a strongmax grid file")
    fields = {}
    for line in lines[1:]:
        if line.strip() == "data":
            break
        key, _, rest = line.partition(" ")
        fields[key] = rest.split()
    dims = int(fields["dims"][0])
    shape = tuple(int(v) for v in fields["shape"])
    cell_size = tuple(float(v) for v in fields["cell_size"])
    origin = tuple(float(v) for v in fields.get("origin", ["0.0"] * dims))
    fmt = fields.get("format", ["csv"])[0]
    body = raw[head_end:]
    if fmt == "bin":
        values = np.frombuffer(body, dtype="<f8", count=int(np.prod(shape)))
    elif fmt == "csv":
        values = np.loadtxt(io.StringIO(body.decode("ascii")), delimiter=",", ndmin=2)
    else:
        raise GridError(f"{path}: unknown format {fmt!r}")
    return GridFunction(shape, cell_size, np.asarray(values).reshape(shape), origin)
