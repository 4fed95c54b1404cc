"""Piecewise-constant Galerkin assembly of the logarithmic-kernel energy form.

Grids are unions of lattice cells of side ``h`` fully contained in a domain
(inner approximation, so discrete eigenvalues sit above the true ones by
min-max).  The bilinear form splits into a singular near-range part, a
negative far-range tail, and a zero-order shift; for disjoint cells the two
range parts recombine into one full kernel integral, which is what we
assemble:

    off-diagonal:  -c_N * integral over C_i x C_j of |x-y|^(-N)
    diagonal:       c_N * integral over C_i of int_{B_1(x)\\C_i} |x-y|^(-N)
                    + shift * h^N

Requiring h <= 1/2 keeps each cell inside the unit ball around any of its
own points, so the far tail never hits a cell against itself and the split
above is exact.

In 1D everything is closed form.  In 2D, entries depend only on the
integer offset between cells and scale like h^2, so a small offset table is
computed once at unit scale: touching offsets by adaptive pair subdivision
with Richardson extrapolation, separated offsets by a fixed tensor Gauss
rule, and the diagonal by a closed form (the lattice analogue of the 1D
one; its constant term involves Catalan's constant).

Assembly is vectorized row-block by row-block from the shared table; rows
are independent, so the fill is trivially parallel in principle, but a
single process is plenty at the target sizes (dense, <= ~2000 cells for
eigensolves).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DimensionConstants, dimension_constants
from .geometry import Domain
from .specfun import CATALAN, EULER_GAMMA, NumericsError, cosint

__all__ = [
    "Grid",
    "QuadFormMatrix",
    "build_grid",
    "assemble_form",
    "rayleigh_quotient",
    "plane_wave_symbol_1d",
]

MAX_CELL_SIDE = 0.5

# 2D quadrature controls (unit-scale offset table).
_SEPARATED_GAUSS_N = 4  # tensor rule per axis once center distance >= 2h
_LEAF_GAUSS_N = 6  # leaves of the adaptive scheme for touching cells
_RICHARDSON_RTOL = 1e-8
_MAX_SUBDIVISION_DEPTH = 12

# Unit-cell constant of the 2D diagonal inner integral:
# int_C int_{B_1(x)\C} |x-y|^(-2) = h^2 * (2*pi*(1 - ln h) + _DIAG_UNIT_2D).
_DIAG_UNIT_2D = 4.0 * CATALAN - 2.0 * math.pi * math.log(2.0) + 2.0 * math.log(2.0)


@dataclass(frozen=True, eq=False)
class Grid:
    """Lattice cells of side ``h`` fully inside ``domain``, in lexicographic order."""

    domain: Domain
    h: float
    indices: np.ndarray  # (count, dim) integer lattice coordinates
    centers: np.ndarray  # (count, dim) cell centers
    origin: np.ndarray  # lattice anchor (bounding-box corner)

    @property
    def count(self) -> int:
        return self.indices.shape[0]

    @property
    def dim(self) -> int:
        return self.domain.dim


@dataclass(frozen=True, eq=False)
class QuadFormMatrix:
    """Dense symmetric Galerkin matrix of the energy form on a grid.

    The generalized eigenproblem is A v = lambda * mass_scale * v with
    mass_scale = h^N (the indicator basis is orthogonal with that norm).
    """

    grid: Grid
    entries: np.ndarray
    mass_scale: float


def build_grid(domain: Domain, h: float) -> Grid:
    """Enumerate the lattice cells of side ``h`` fully contained in the domain.

    The lattice is anchored at the bounding-box corner; ``h`` is snapped so
    that it tiles the bounding box exactly (and never exceeds 1/2).  Cells
    are ordered lexicographically by lattice index, which makes every
    downstream computation deterministic, and dyadic refinement h -> h/2
    splits each cell into 2^N children of the finer grid (nested subspaces).
    """
    if not (0.0 < h <= MAX_CELL_SIDE) or not math.isfinite(h):
        raise ValueError(f"cell side must lie in (0, {MAX_CELL_SIDE}], got {h!r}")
    lo = np.asarray(domain.lo, dtype=float)
    sides = np.asarray(domain.hi, dtype=float) - lo

    # Snap h to divide the first bounding-box side; the cap keeps the
    # snapped value admissible when h was close to 1/2.
    n0 = max(int(round(sides[0] / h)), int(math.ceil(sides[0] / MAX_CELL_SIDE - 1e-12)))
    h_eff = float(sides[0]) / n0
    counts = []
    for s in sides:
        ni = int(round(s / h_eff))
        if ni < 1 or abs(ni * h_eff - s) > 1e-9 * max(1.0, s):
            raise ValueError(
                f"cell side {h!r} cannot tile the bounding box sides {tuple(sides)!r}"
            )
        counts.append(ni)

    grids = np.meshgrid(*[np.arange(c) for c in counts], indexing="ij")
    idx = np.stack([g.ravel() for g in grids], axis=1)  # lexicographic
    centers = lo + (idx + 0.5) * h_eff

    if domain.kind == "ball":
        far = np.abs(centers - domain.center) + 0.5 * h_eff
        keep = np.linalg.norm(far, axis=1) <= domain.radius + 1e-12
        idx, centers = idx[keep], centers[keep]
    # interval/box cells tile the domain exactly; nothing to discard.

    if idx.shape[0] == 0:
        raise ValueError("no cell of this size fits inside the domain")
    return Grid(domain=domain, h=h_eff, indices=idx, centers=centers, origin=lo)


# ---------------------------------------------------------------------------
# pair integrals of |x - y|^(-N) over cell pairs
# ---------------------------------------------------------------------------


def _phi(t):
    """Double antiderivative of 1/t: t ln t - t, extended by 0 at t = 0."""
    t = np.asarray(t, dtype=float)
    safe = np.where(t > 0.0, t, 1.0)
    return np.where(t > 0.0, safe * np.log(safe) - safe, 0.0)


def _entry_row_1d(m_max: int, h: float, constants: DimensionConstants) -> np.ndarray:
    """Entries by center offset m*h for m = 0..m_max (m = 0 is the diagonal)."""
    m = np.arange(m_max + 1, dtype=float)
    second_diff = _phi((m + 1.0) * h) - 2.0 * _phi(m * h) + _phi((m - 1.0) * h)
    row = -constants.kernel_constant * second_diff
    row[0] = (
        constants.kernel_constant * 2.0 * h * (1.0 - math.log(h))
        + constants.zero_order_shift * h
    )
    return row


def _gauss01(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _pair_batch_gauss(corners_a: np.ndarray, corners_b: np.ndarray, size: float, n: int) -> np.ndarray:
    """Tensor-Gauss integrals of |x-y|^(-2) over batches of square-cell pairs.

    ``corners_a``/``corners_b`` hold the lower corners of the two cells of
    each pair; all cells share the side length ``size``.
    """
    g, w = _gauss01(n)
    d = corners_b - corners_a
    # y - x separations per axis, laid out as (pair, node_y, node_x)
    sep = size * (g[None, :, None] - g[None, None, :])
    du = d[:, 0][:, None, None] + sep
    dv = d[:, 1][:, None, None] + sep
    out = np.empty(len(d))
    chunk = max(1, 4_000_000 // max(n**4, 1))
    for s in range(0, len(d), chunk):
        e = min(s + chunk, len(d))
        k = 1.0 / (
            du[s:e, :, :, None, None] ** 2 + dv[s:e, None, None, :, :] ** 2
        )  # axes (pair, y1, x1, y2, x2)
        out[s:e] = np.einsum("maibj,a,i,b,j->m", k, w, w, w, w)
    return out * size**4


_touching_cache: dict[tuple[int, int], float] = {}


def _touching_unit_integral(da: int, db: int) -> float:
    """Kernel integral over a touching unit-cell pair (offset with max = 1).

    Both cells are recursively quartered; child pairs that come apart are
    integrated with a fixed Gauss rule and accumulated, still-touching
    pairs recurse.  Truncating at depth L and Gauss-integrating the
    touching remainder gives I_L with error ~ 2^-L, so the extrapolation
    2*I_L - I_{L-1} is used, stopping when its increment falls below
    a relative tolerance.
    """
    key = (min(abs(da), abs(db)), max(abs(da), abs(db)))
    if key in _touching_cache:
        return _touching_cache[key]

    size = 1.0
    pairs = np.array([[0.0, 0.0, float(key[0]), float(key[1])]])
    sep_acc = 0.0
    prev_i = prev_rich = None
    for _level in range(_MAX_SUBDIVISION_DEPTH + 1):
        t_val = float(
            np.sum(_pair_batch_gauss(pairs[:, :2], pairs[:, 2:], size, _LEAF_GAUSS_N))
        )
        i_val = sep_acc + t_val
        if prev_i is not None:
            rich = 2.0 * i_val - prev_i
            if prev_rich is not None and abs(rich - prev_rich) <= _RICHARDSON_RTOL * abs(rich):
                _touching_cache[key] = rich
                return rich
            prev_rich = rich
        prev_i = i_val

        half = size / 2.0
        shifts = np.array([[0.0, 0.0], [half, 0.0], [0.0, half], [half, half]])
        ca = (pairs[:, None, :2] + shifts[None, :, :])[:, :, None, :]  # (m,4,1,2)
        cb = (pairs[:, None, 2:] + shifts[None, :, :])[:, None, :, :]  # (m,1,4,2)
        children = np.concatenate(np.broadcast_arrays(ca, cb), axis=-1).reshape(-1, 4)
        gap = np.max(np.abs(children[:, 2:] - children[:, :2]), axis=1)
        # dyadic corners are exact floats, so these comparisons are too
        touch = gap == half
        sep_acc += float(
            np.sum(
                _pair_batch_gauss(
                    children[~touch, :2], children[~touch, 2:], half, _LEAF_GAUSS_N
                )
            )
        )
        pairs, size = children[touch], half

    raise NumericsError(
        f"adaptive cell-pair quadrature for offset {key} did not reach "
        f"relative tolerance {_RICHARDSON_RTOL:g} within depth {_MAX_SUBDIVISION_DEPTH}"
    )


def _offset_table_2d(max_a: int, max_b: int) -> np.ndarray:
    """Unit-scale kernel integrals indexed by absolute lattice offset (a, b).

    Entry (0, 0) is left NaN; the diagonal has its own closed form.
    """
    table = np.full((max_a + 1, max_b + 1), np.nan)
    offsets = [
        (a, b)
        for a in range(max_a + 1)
        for b in range(max_b + 1)
        if max(a, b) >= 2
    ]
    if offsets:
        offs = np.array(offsets, dtype=float)
        vals = _pair_batch_gauss(np.zeros_like(offs), offs, 1.0, _SEPARATED_GAUSS_N)
        table[tuple(np.array(offsets, dtype=int).T)] = vals
    for a, b in ((0, 1), (1, 0), (1, 1)):
        if a <= max_a and b <= max_b:
            table[a, b] = _touching_unit_integral(a, b)
    return table


def _diagonal_entry_2d(h: float, constants: DimensionConstants) -> float:
    inner = h * h * (2.0 * math.pi * (1.0 - math.log(h)) + _DIAG_UNIT_2D)
    return constants.kernel_constant * inner + constants.zero_order_shift * h * h


def assemble_form(grid: Grid, constants: DimensionConstants | None = None) -> QuadFormMatrix:
    """Assemble the dense symmetric energy matrix on a grid.

    Entries depend only on the integer offset between cells, so a shared
    offset table is built once and the matrix is filled from it in row
    blocks; symmetric positions read the same table slot, making the
    matrix equal to its transpose bit for bit.  Off-diagonal entries are
    strictly negative (the kernel is positive).
    """
    if constants is None:
        constants = dimension_constants(grid.dim)
    elif constants.dim != grid.dim:
        raise ValueError(
            f"constants are for dimension {constants.dim}, grid has dimension {grid.dim}"
        )
    n = grid.count
    h = grid.h
    idx = grid.indices
    if grid.dim == 1:
        k = idx[:, 0]
        row = _entry_row_1d(int(k.max() - k.min()), h, constants)
        entries = row[np.abs(k[:, None] - k[None, :])]
    elif grid.dim == 2:
        table = _offset_table_2d(
            int(idx[:, 0].max() - idx[:, 0].min()),
            int(idx[:, 1].max() - idx[:, 1].min()),
        )
        scaled = -constants.kernel_constant * h * h * table
        entries = np.empty((n, n))
        block = max(1, 8_000_000 // max(n, 1))
        for s in range(0, n, block):
            e = min(s + block, n)
            da = np.abs(idx[s:e, 0][:, None] - idx[None, :, 0].reshape(1, -1))
            db = np.abs(idx[s:e, 1][:, None] - idx[None, :, 1].reshape(1, -1))
            entries[s:e] = scaled[da, db]
        np.fill_diagonal(entries, _diagonal_entry_2d(h, constants))
    else:
        raise ValueError(f"assembly supports dimensions 1 and 2, got {grid.dim}")
    return QuadFormMatrix(grid=grid, entries=entries, mass_scale=h**grid.dim)


def rayleigh_quotient(matrix: QuadFormMatrix, coefficients) -> float:
    """Energy quotient (v^T A v) / (h^N v^T v) of a coefficient vector.

    By min-max this is an upper bound for the smallest discrete eigenvalue,
    hence also for the smallest true eigenvalue (inner approximation).
    """
    v = np.asarray(coefficients, dtype=float).ravel()
    if v.shape[0] != matrix.grid.count:
        raise ValueError(
            f"coefficient vector has length {v.shape[0]}, grid has {matrix.grid.count} cells"
        )
    denom = float(v @ v)
    if denom == 0.0:
        raise ValueError("coefficient vector must not be identically zero")
    return float(v @ (matrix.entries @ v)) / (matrix.mass_scale * denom)


def plane_wave_symbol_1d(t: float) -> float:
    """Closed-form energy density of a 1D plane wave with frequency t > 0.

    Splitting at range 1 gives the oscillatory near integral via the
    cosine integral and the far tail exactly; together with the zero-order
    shift the expression collapses to 2 ln t, which is the operator's
    Fourier symbol.  Evaluating it this way (instead of returning 2 ln t)
    is the point: it cross-checks the kernel normalization end to end.
    """
    if not (t > 0.0) or not math.isfinite(t):
        raise ValueError(f"frequency must be positive and finite, got {t!r}")
    c = dimension_constants(1)
    ci = cosint(t)
    return (
        c.kernel_constant * 2.0 * (EULER_GAMMA + math.log(t) - ci)
        + 2.0 * ci
        + c.zero_order_shift
    )
