"""Uniform 2D complex grids and the discrete Fourier analysis pair.

Convention: the analysis transform uses e^{+i p.x},

    psihat(p_x, p_y) = sum_ij psi(x_i, y_j) exp(+i(p_x x_i + p_y y_j)) dx dy,

so that pairing a wavefunction against exp(-ip(x +- y)) literally evaluates
psihat on the light cone.  The inverse carries the 1/(2 pi)^2 measure, and
discrete Parseval reads sum |psi|^2 dx dy = sum |psihat|^2 dp_x dp_y/(2 pi)^2.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

MIN_POINTS = 8


def _validate_axis(n: int, d: float, name: str):
    if n < MIN_POINTS:
        raise ValueError(f"{name}: need at least {MIN_POINTS} points, got {n}")
    if not (d > 0):
        raise ValueError(f"{name}: spacing must be positive, got {d}")


@dataclass(frozen=True)
class ComplexGrid2D:
    """Complex samples psi(x_i, y_j) with x_i = x0 + i dx, y_j = y0 + j dy."""

    values: np.ndarray  # shape (nx, ny)
    origin: tuple[float, float]
    spacing: tuple[float, float]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2:
            raise ValueError("values must be a 2D array")
        _validate_axis(v.shape[0], self.spacing[0], "x axis")
        _validate_axis(v.shape[1], self.spacing[1], "y axis")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid contains non-finite samples")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def extents(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def x(self) -> np.ndarray:
        return self.origin[0] + self.spacing[0] * np.arange(self.values.shape[0])

    @property
    def y(self) -> np.ndarray:
        return self.origin[1] + self.spacing[1] * np.arange(self.values.shape[1])

    def cell_area(self) -> float:
        return self.spacing[0] * self.spacing[1]

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.cell_area())


@dataclass(frozen=True)
class MomentumGrid2D:
    """Samples of psihat on the dual grid; carries the transform convention."""

    values: np.ndarray
    origin: tuple[float, float]
    spacing: tuple[float, float]
    convention: str = "plus"  # e^{+i p.x} analysis

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2:
            raise ValueError("values must be a 2D array")
        _validate_axis(v.shape[0], self.spacing[0], "p_x axis")
        _validate_axis(v.shape[1], self.spacing[1], "p_y axis")
        if not np.all(np.isfinite(v)):
            raise ValueError("momentum grid contains non-finite samples")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def px(self) -> np.ndarray:
        return self.origin[0] + self.spacing[0] * np.arange(self.values.shape[0])

    @property
    def py(self) -> np.ndarray:
        return self.origin[1] + self.spacing[1] * np.arange(self.values.shape[1])


def _axis_frequencies(n: int, d: float) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(n, d=d))


def analysis_transform(grid: ComplexGrid2D) -> MomentumGrid2D:
    """psihat(p) = sum psi(x) e^{+i p.x} dx dy on the fftshifted dual grid."""
    nx, ny = grid.extents
    dx, dy = grid.spacing
    px = _axis_frequencies(nx, dx)
    py = _axis_frequencies(ny, dy)
    # ifft implements (1/N) sum a_i e^{+2 pi i ik/N}; undo the 1/N and attach
    # the phase from the grid origin.
    f = np.fft.ifft2(grid.values) * (nx * ny) * (dx * dy)
    f = np.fft.fftshift(f)
    phase_x = np.exp(1j * px * grid.origin[0])
    phase_y = np.exp(1j * py * grid.origin[1])
    f = phase_x[:, None] * f * phase_y[None, :]
    return MomentumGrid2D(
        values=f,
        origin=(float(px[0]), float(py[0])),
        spacing=(float(px[1] - px[0]), float(py[1] - py[0])),
    )


def synthesis_transform(
    mom: MomentumGrid2D, origin: tuple[float, float], spacing: tuple[float, float]
) -> ComplexGrid2D:
    """Inverse of :func:`analysis_transform` back onto the stated position grid."""
    if mom.convention != "plus":
        raise ValueError(f"unsupported convention {mom.convention!r}")
    nx, ny = mom.values.shape
    dx, dy = spacing
    for n, d, dp in ((nx, dx, mom.spacing[0]), (ny, dy, mom.spacing[1])):
        if abs(n * d * dp - 2.0 * np.pi) > 1e-9:
            raise ValueError("position grid is not dual to the momentum grid")
    px, py = mom.px, mom.py
    phase_x = np.exp(-1j * px * origin[0])
    phase_y = np.exp(-1j * py * origin[1])
    f = phase_x[:, None] * mom.values * phase_y[None, :]
    f = np.fft.ifftshift(f)
    vals = np.fft.fft2(f) / (nx * ny) / (dx * dy)
    return ComplexGrid2D(values=vals, origin=origin, spacing=spacing)


def evaluate_analysis_at(
    grid: ComplexGrid2D, px: np.ndarray, py: np.ndarray
) -> np.ndarray:
    """Evaluate the defining analysis sum at arbitrary momenta (vectorized).

    ``px`` and ``py`` are paired 1D arrays of equal length.  This is the
    exact trigonometric interpolation of the grid content; it agrees with
    :func:`analysis_transform` at the dual-grid nodes.
    """
    px = np.atleast_1d(np.asarray(px, dtype=float))
    py = np.atleast_1d(np.asarray(py, dtype=float))
    if px.shape != py.shape:
        raise ValueError("px and py must have the same shape")
    ex = np.exp(1j * np.outer(px, grid.x))
    ey = np.exp(1j * np.outer(py, grid.y))
    return np.einsum("pi,ij,pj->p", ex, grid.values, ey) * grid.cell_area()


# ---------------------------------------------------------------------------
# CSV interchange: header x,y,re,im; row-major; lossless decimal text


def write_grid_csv(grid: ComplexGrid2D, fh: io.TextIOBase) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["x", "y", "re", "im"])
    xs, ys = grid.x, grid.y
    v = grid.values
    for i in range(v.shape[0]):
        for j in range(v.shape[1]):
            w.writerow([repr(float(xs[i])), repr(float(ys[j])),
                        repr(float(v[i, j].real)), repr(float(v[i, j].imag))])


def read_grid_csv(fh: io.TextIOBase, spacing_tol: float = 1e-12) -> ComplexGrid2D:
    """Load a grid CSV, validating uniform spacing to ``spacing_tol`` relative."""
    r = csv.reader(fh)
    header = next(r)
    if [h.strip() for h in header] != ["x", "y", "re", "im"]:
        raise ValueError(f"unexpected grid CSV header: {header}")
    xs, ys, res, ims = [], [], [], []
    for row in r:
        if not row:
            continue
        xs.append(float(row[0]))
        ys.append(float(row[1]))
        res.append(float(row[2]))
        ims.append(float(row[3]))
    x = np.array(xs)
    y = np.array(ys)
    ux = np.unique(x)
    uy = np.unique(y)
    nx, ny = ux.size, uy.size
    if nx * ny != x.size:
        raise ValueError("grid CSV is not a full row-major lattice")
    for axis, name in ((ux, "x"), (uy, "y")):
        d = np.diff(axis)
        if d.size and np.max(np.abs(d - d[0])) > spacing_tol * max(abs(d[0]), 1e-300):
            raise ValueError(f"non-uniform {name} spacing beyond {spacing_tol} relative")
    vals = (np.array(res) + 1j * np.array(ims)).reshape(nx, ny)
    # row-major check: x must vary slowest
    if not np.allclose(x.reshape(nx, ny), ux[:, None]):
        raise ValueError("grid CSV rows are not in row-major order")
    return ComplexGrid2D(values=vals, origin=(float(ux[0]), float(uy[0])),
                         spacing=(float(ux[1] - ux[0]), float(uy[1] - uy[0])))
