"""Dense linear operators: projections, smoothed concentration, localization, Weyl.

Operators are materialized as n-by-n complex matrices acting on time-domain
sample vectors, g = M f.  With uniform quadrature weights the operator norm
with respect to the weighted L^2 inner product equals the largest Euclidean
singular value of M, so norms can be cross-checked against a full SVD.

The Weyl quantization evaluates the symbol at half-sample midpoints,

    (Op(a) f)(x) = int int exp(2*pi*i*(x - y)*w) a((x + y)/2, w) f(y) dy dw,

with tabulated symbols lifted to the midpoint lattice by trigonometric
interpolation.  Because the frequency quadrature has spacing dw, the lag
kernel is periodic with period n*dx; wrapped lags are therefore evaluated on
the wrapped midpoint branch, which is the periodization of the continuum
kernel.  This keeps purely-time symbols exactly diagonal, purely-frequency
symbols exactly the conjugated multiplier, and matches the localization
operator picture for contained data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .concentration import MaskSet
from .core import FREQUENCY, TIME, Grid, Signal, frozen_array, signal_from_samples
from .transforms import TFMatrix, tfmatrix_from_values, trig_upsample2, wigner


class PowerIterationError(RuntimeError):
    """Raised when the operator-norm iteration fails to converge."""


@dataclass(frozen=True)
class LinearOp:
    """Dense operator on time-domain samples, with a provenance tag."""

    grid: Grid
    matrix: np.ndarray
    provenance: str


def linear_op(grid: Grid, matrix, provenance: str) -> LinearOp:
    arr = frozen_array(matrix)
    if arr.shape != (grid.n, grid.n):
        raise ValueError(f"expected shape {(grid.n, grid.n)}, got {arr.shape}")
    return LinearOp(grid, arr, provenance)


def apply_op(op: LinearOp, f: Signal) -> Signal:
    if f.grid != op.grid:
        raise ValueError("operator and signal grids differ")
    if f.domain != TIME:
        raise ValueError("operators act on time-domain signals")
    return signal_from_samples(op.grid, op.matrix @ f.samples, TIME)


def adjoint_op(op: LinearOp) -> LinearOp:
    return linear_op(op.grid, op.matrix.conj().T, f"adjoint({op.provenance})")


def dft_matrix(grid: Grid) -> np.ndarray:
    """U[k, m] = dx * exp(-2*pi*i*t_m*w_k); U @ f gives the forward transform."""
    phase = np.exp(-2j * np.pi * np.outer(grid.freqs, grid.times))
    return grid.dx * phase


def project_time(mask: MaskSet) -> LinearOp:
    """Multiplication by the indicator of a time mask; an orthogonal projection."""
    if mask.axis != TIME:
        raise ValueError("time projection requires a time-axis mask")
    return linear_op(mask.grid, np.diag(mask.flags.astype(np.complex128)), "time-projection")


def project_freq(mask: MaskSet) -> LinearOp:
    """Conjugated indicator F^-1 chi F for a frequency mask; an orthogonal projection."""
    if mask.axis != FREQUENCY:
        raise ValueError("frequency projection requires a frequency-axis mask")
    grid = mask.grid
    u = dft_matrix(grid)
    q = (grid.dw / grid.dx) * (u.conj().T @ (mask.flags[:, None] * u))
    return linear_op(grid, q, "frequency-projection")


@dataclass(frozen=True)
class SmoothedSymbol:
    """Gaussian-smoothed indicator values on one axis."""

    grid: Grid
    axis: str
    lam: float
    values: np.ndarray
    mask: MaskSet


def gaussian_smoothed_indicator(mask: MaskSet, lam: float) -> SmoothedSymbol:
    """Convolve a mask indicator with the unit-mass Gaussian kernel for lam.

    On the time axis the kernel rate is mu = 2*lam, on the frequency axis
    mu = 2/lam, so the two families sharpen toward the raw indicators as
    lam grows (time) or shrinks (frequency).  The sampled kernel is
    renormalized to unit discrete mass, which keeps the smoothed values in
    [0, 1] exactly and lets arbitrarily narrow kernels degrade gracefully to
    the identity.  A kernel too wide for the grid (more than 1e-6 of its mass
    within three cells of the edge) is rejected.
    """
    lam = float(lam)
    if not (np.isfinite(lam) and lam > 0):
        raise ValueError(f"smoothing parameter must be positive and finite, got {lam!r}")
    grid = mask.grid
    mu = 2.0 * lam if mask.axis == TIME else 2.0 / lam
    h = grid.spacing(mask.axis)
    x = grid.axis(mask.axis)
    kernel = np.sqrt(mu) * np.exp(-np.pi * mu * x * x)
    mass = float(kernel.sum())
    edge = float(kernel[:3].sum() + kernel[-3:].sum()) / mass
    if edge > 1e-6:
        raise ValueError(
            f"smoothing kernel (mu={mu:.4g}) is not contained by the {mask.axis} axis "
            f"(edge mass fraction {edge:.2e})"
        )
    kernel = kernel / (h * mass)
    conv = np.fft.ifft(np.fft.fft(mask.flags.astype(float)) * np.fft.fft(np.fft.ifftshift(kernel)))
    values = np.clip(h * conv.real, 0.0, 1.0)
    return SmoothedSymbol(grid, mask.axis, lam, frozen_array(values, dtype=np.float64), mask)


def apply_time_symbol(sym: SmoothedSymbol, f: Signal) -> Signal:
    if sym.axis != TIME or f.domain != TIME:
        raise ValueError("time symbol application requires time-axis data")
    return signal_from_samples(f.grid, sym.values * f.samples, TIME)


def apply_freq_symbol(sym: SmoothedSymbol, f: Signal) -> Signal:
    """Fourier multiplier: transform, multiply by the smoothed values, invert."""
    if sym.axis != FREQUENCY or f.domain != TIME:
        raise ValueError("frequency symbol application requires a time signal and frequency symbol")
    from .core import fourier

    spec = fourier(f, "forward")
    shaped = signal_from_samples(f.grid, sym.values * spec.samples, FREQUENCY)
    return fourier(shaped, "inverse")


def smoothed_concentration_ops(
    mask_t: MaskSet, mask_w: MaskSet, lam1: float, lam2: float
) -> tuple[LinearOp, LinearOp]:
    """Dense (L1, L2): multiplication by the smoothed time indicator, and the
    conjugated multiplier for the smoothed frequency indicator."""
    if mask_t.axis != TIME or mask_w.axis != FREQUENCY:
        raise ValueError("expected a time mask and a frequency mask")
    if mask_t.grid != mask_w.grid:
        raise ValueError("masks must share a grid")
    grid = mask_t.grid
    sym1 = gaussian_smoothed_indicator(mask_t, lam1)
    sym2 = gaussian_smoothed_indicator(mask_w, lam2)
    l1 = linear_op(grid, np.diag(sym1.values.astype(np.complex128)), f"time-concentration-smoother(lam={lam1})")
    u = dft_matrix(grid)
    m2 = (grid.dw / grid.dx) * (u.conj().T @ (sym2.values[:, None] * u))
    l2 = linear_op(grid, m2, f"frequency-concentration-smoother(lam={lam2})")
    return l1, l2


def localization_operator(symbol: TFMatrix, phi: Signal, psi: Signal) -> LinearOp:
    """Anti-Wick style operator: analyze with phi, weight by the symbol, rebuild with psi.

    Weakly, (L f, g) = sum_cells a * V_phi f * conj(V_psi g) * dx * dw, which
    the tests verify directly.  Assembly walks the time shifts once, using the
    row DFT of the symbol, so the cost is n FFTs plus n rank-one updates.
    """
    if phi.domain != TIME or psi.domain != TIME:
        raise ValueError("windows must be time-domain signals")
    if symbol.grid != phi.grid or phi.grid != psi.grid:
        raise ValueError("symbol and windows must share a grid")
    grid = symbol.grid
    n, n2 = grid.n, grid.n // 2
    lag = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    sign = np.where(lag % 2 == 0, 1.0, -1.0)
    brows = n * np.fft.ifft(symbol.values, axis=1)
    m = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        shifted_psi = np.roll(psi.samples, j - n2)
        shifted_phi = np.conj(np.roll(phi.samples, j - n2))
        m += np.outer(shifted_psi, shifted_phi) * (sign * brows[j][lag])
    m *= grid.dx * grid.dx * grid.dw
    return linear_op(grid, m, "localization")


def _symbol_on_midpoints(symbol, grid: Grid) -> tuple[Grid, np.ndarray]:
    if isinstance(symbol, TFMatrix):
        g = symbol.grid
        spec = np.fft.fft(symbol.values, axis=0)
        total = float(np.sum(np.abs(spec) ** 2))
        nyq = float(np.sum(np.abs(spec[g.n // 2, :]) ** 2))
        if total > 0 and nyq / total > 1e-8:
            raise ValueError(
                "tabulated symbol has energy at the Nyquist row "
                f"(fraction {nyq / total:.2e}); midpoint interpolation is ill-defined"
            )
        a2 = trig_upsample2(symbol.values.T).T  # upsample along the time axis
        return g, a2
    if grid is None:
        raise ValueError("a callable symbol requires an explicit grid")
    p = np.arange(2 * grid.n)
    x_half = (p - grid.n) * grid.dx / 2.0
    a2 = np.asarray(symbol(x_half[:, None], grid.freqs[None, :]), dtype=np.complex128)
    if a2.shape != (2 * grid.n, grid.n):
        raise ValueError("callable symbol must broadcast over (x, w) grids")
    return grid, a2


def weyl_operator(symbol, grid: Grid | None = None) -> LinearOp:
    """Weyl quantization of a tabulated or callable symbol a(x, w).

    Accepts a TFMatrix (values interpolated to midpoints; rejected when the
    symbol has more than 1e-8 of its energy in the Nyquist row) or a callable
    a(x, w) evaluated exactly at the midpoint lattice, with `grid` supplied.
    """
    grid, a2 = _symbol_on_midpoints(symbol, grid)
    n, n2 = grid.n, grid.n // 2
    rows = grid.dw * n * np.fft.ifft(a2, axis=1)  # rows indexed by midpoint p
    k = np.zeros((n, n), dtype=np.complex128)
    m = np.arange(n)
    for q in range(n):
        ell0 = m - q
        wrap = np.where(ell0 > n2, 1, np.where(ell0 < -n2, -1, 0))
        ell = ell0 - wrap * n
        p = (m + q - wrap * n) % (2 * n)
        sign = np.where(ell % 2 == 0, 1.0, -1.0)
        k[:, q] = sign * rows[p, ell % n]
    return linear_op(grid, grid.dx * k, "weyl")


def weyl_from_localization(symbol: TFMatrix, phi: Signal, psi: Signal) -> LinearOp:
    """Weyl form of the localization operator: convolve the symbol with the
    cross-Wigner distribution of the synthesis and analysis windows."""
    if symbol.grid != phi.grid or phi.grid != psi.grid:
        raise ValueError("symbol and windows must share a grid")
    grid = symbol.grid
    smoother = wigner(psi, phi).values
    spread = np.fft.ifft2(
        np.fft.fft2(symbol.values) * np.fft.fft2(np.fft.ifftshift(smoother))
    ) * (grid.dx * grid.dw)
    op = weyl_operator(tfmatrix_from_values(grid, spread))
    return linear_op(grid, op.matrix, "weyl-of-localization")


def operator_norm(op: LinearOp, seed: int = 0, rtol: float = 1e-10, max_iter: int = 10000) -> float:
    """Largest singular value by power iteration on M^H M from a seeded start.

    Converges when the estimate is stable to `rtol` over two consecutive
    iterations; raises PowerIterationError with the iteration count otherwise.
    Dense only: intended for n <= 1024.
    """
    if op.grid.n > 1024:
        raise ValueError(f"dense operator norm limited to n <= 1024, got n={op.grid.n}")
    m = op.matrix
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(op.grid.n) + 1j * rng.standard_normal(op.grid.n)
    v /= np.linalg.norm(v)
    sigma_prev = -1.0
    stable = 0
    for it in range(1, max_iter + 1):
        u = m @ v
        sigma = float(np.linalg.norm(u))
        if sigma == 0.0:
            return 0.0
        v = m.conj().T @ u
        nv = float(np.linalg.norm(v))
        if nv == 0.0:
            return sigma
        v /= nv
        if abs(sigma - sigma_prev) <= rtol * max(sigma, 1e-300):
            stable += 1
            if stable >= 2:
                return sigma
        else:
            stable = 0
        sigma_prev = sigma
    raise PowerIterationError(
        f"operator norm iteration did not converge within {max_iter} iterations "
        f"(last estimate {sigma_prev:.6e})"
    )


def export_operator_csv(op: LinearOp, path) -> None:
    """Write the matrix as CSV with re/im interleaved columns plus JSON metadata."""
    path = Path(path)
    with path.open("w") as fh:
        for row in op.matrix:
            cells = []
            for z in row:
                cells.append(repr(float(z.real)))
                cells.append(repr(float(z.imag)))
            fh.write(",".join(cells) + "\n")
    meta = {"n": op.grid.n, "dx": op.grid.dx, "provenance": op.provenance, "layout": "re,im interleaved"}
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def read_operator_csv(path, grid: Grid) -> LinearOp:
    path = Path(path)
    rows = []
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        vals = [float(v) for v in line.split(",")]
        rows.append([complex(vals[2 * i], vals[2 * i + 1]) for i in range(len(vals) // 2)])
    meta_path = path.with_suffix(path.suffix + ".json")
    provenance = "imported"
    if meta_path.exists():
        provenance = json.loads(meta_path.read_text()).get("provenance", provenance)
    return linear_op(grid, np.array(rows, dtype=np.complex128), provenance)
