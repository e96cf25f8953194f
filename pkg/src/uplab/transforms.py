"""Time-frequency transforms: Gabor, spectrogram, and Wigner distributions.

All transforms share the grid conventions of :mod:`uplab.core` and produce
n-by-n matrices indexed [time, frequency] with cell weight dx * dw.  Window
shifts are cyclic in the sample index, which makes the energy identity

    ||V_w f||_2 = ||f||_2 ||w||_2

exact for every signal, at the cost of wrap-around for signals with mass near
the grid edge (a documented trade the harness flags).

The cross-Wigner distribution is

    Wig(f, g)(x, w) = int exp(-2*pi*i*t*w) f(x + t/2) conj(g(x - t/2)) dt,

evaluated on the half-sample lattice via trigonometric 2x upsampling with the
Nyquist bin split symmetrically (real input stays real).  The unpaired extreme
lag is dropped so that Wig(f, g) = conj(Wig(g, f)) holds exactly; in
particular Wig(f, f) is exactly real and its frequency marginal recovers
|f(t_j)|^2 exactly, which the tests pin.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import json

import numpy as np

from .core import (
    FREQUENCY,
    TIME,
    Grid,
    Signal,
    centered_dft,
    frozen_array,
    signal_from_samples,
)


@dataclass(frozen=True)
class TFMatrix:
    """Complex values on the time-frequency lattice, indexed [time, frequency]."""

    grid: Grid
    values: np.ndarray

    @property
    def cell_weight(self) -> float:
        return self.grid.dx * self.grid.dw


def tfmatrix_from_values(grid: Grid, values) -> TFMatrix:
    arr = frozen_array(values)
    if arr.shape != (grid.n, grid.n):
        raise ValueError(f"expected shape {(grid.n, grid.n)}, got {arr.shape}")
    return TFMatrix(grid, arr)


@dataclass(frozen=True)
class GaussianWindow:
    """Unit-energy Gaussian (2*lam)^(1/4) exp(-pi*lam*t^2) sampled on a grid."""

    lam: float
    signal: Signal


def gaussian_window(lam: float, grid: Grid) -> GaussianWindow:
    """Sample the normalized Gaussian of width parameter lam.

    Rejects windows the grid cannot represent: more than 1e-6 of the sampled
    energy within three cells of the edge (too wide), or fewer than four
    samples above half maximum (too narrow).
    """
    lam = float(lam)
    if not (np.isfinite(lam) and lam > 0):
        raise ValueError(f"window width must be positive and finite, got {lam!r}")
    t = grid.times
    vals = (2.0 * lam) ** 0.25 * np.exp(-np.pi * lam * t * t)
    e = vals * vals
    edge = float(e[:3].sum() + e[-3:].sum()) / float(e.sum())
    if edge > 1e-6:
        raise ValueError(
            f"window lam={lam} is not contained by the grid (edge energy fraction {edge:.2e})"
        )
    above_half = int(np.count_nonzero(vals >= 0.5 * vals.max()))
    if above_half < 4:
        raise ValueError(
            f"window lam={lam} is not resolved by the grid ({above_half} samples above half maximum)"
        )
    return GaussianWindow(lam, signal_from_samples(grid, vals, TIME))


def _cyclic_shift_table(n: int) -> np.ndarray:
    # row j holds indices (m - j + n/2) mod n, so table[j] centers a window at t_j
    m = np.arange(n)
    return (m[None, :] - m[:, None] + n // 2) % n


def gabor_transform(f: Signal, window) -> TFMatrix:
    """V_w f(x_j, w_k) = dx * sum_m exp(-2*pi*i*t_m*w_k) f(t_m) conj(w(t_m - x_j)).

    The window is shifted cyclically, one FFT per time shift.
    """
    win = window.signal if isinstance(window, GaussianWindow) else window
    if f.domain != TIME or win.domain != TIME:
        raise ValueError("Gabor transform expects time-domain signal and window")
    if f.grid != win.grid:
        raise ValueError("signal and window must share a grid")
    if not np.any(win.samples):
        raise ValueError("window must be nonzero")
    n = f.grid.n
    table = _cyclic_shift_table(n)
    integrand = f.samples[None, :] * np.conj(win.samples[table])
    vals = f.grid.dx * centered_dft(integrand, axis=1)
    return tfmatrix_from_values(f.grid, vals)


def tf_norm_lp(m: TFMatrix, p: float) -> float:
    """Quadrature L^p norm on the plane, (dx*dw*sum |m|^p)^(1/p); max at p = inf."""
    p = float(p)
    if not (p >= 1.0):
        raise ValueError(f"norm order must satisfy p >= 1, got {p!r}")
    mags = np.abs(m.values)
    peak = float(mags.max())
    if np.isinf(p) or peak == 0.0:
        return peak
    return peak * float((m.cell_weight * np.sum((mags / peak) ** p)) ** (1.0 / p))


def spectrogram(f: Signal, g: Signal, window) -> TFMatrix:
    """Two-window spectrogram V_w f * conj(V_w g); real and nonnegative for g = f."""
    vf = gabor_transform(f, window)
    vg = gabor_transform(g, window)
    return tfmatrix_from_values(f.grid, vf.values * np.conj(vg.values))


def marginals(m: TFMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Axis sums (time profile, frequency profile) with the dual-cell weights.

    Profiles are returned as complex vectors: for a spectrogram or Wigner
    matrix of a pair (f, g) with g != f the marginals are genuinely complex,
    and callers compare their moduli.  For g = f they are real up to rounding.
    """
    time_profile = m.grid.dw * m.values.sum(axis=1)
    freq_profile = m.grid.dx * m.values.sum(axis=0)
    return time_profile, freq_profile


def trig_upsample2(values: np.ndarray) -> np.ndarray:
    """Evaluate the trigonometric interpolant on the half-sample lattice.

    Output index p corresponds to position (p - n) * dx / 2 when the input
    index m sits at (m - n/2) * dx; even outputs reproduce the inputs exactly.
    The Nyquist bin is split evenly so real input yields real output.
    """
    n = values.shape[-1]
    spec = np.fft.fft(values, axis=-1)
    shape = list(values.shape)
    shape[-1] = 2 * n
    out = np.zeros(shape, dtype=np.complex128)
    half = n // 2
    out[..., :half] = spec[..., :half]
    out[..., half] = 0.5 * spec[..., half]
    out[..., 2 * n - half] = 0.5 * spec[..., half]
    out[..., 2 * n - half + 1 :] = spec[..., half + 1 :]
    return 2.0 * np.fft.ifft(out, axis=-1)


def wigner(f: Signal, g: Signal | None = None) -> TFMatrix:
    """Cross-Wigner distribution of (f, g); auto-Wigner of f when g is omitted."""
    if g is None:
        g = f
    if f.domain != TIME or g.domain != TIME:
        raise ValueError("Wigner distribution expects time-domain signals")
    if f.grid != g.grid:
        raise ValueError("signals must share a grid")
    n = f.grid.n
    f2 = trig_upsample2(f.samples)
    g2 = trig_upsample2(g.samples)
    j = np.arange(n)[:, None]
    m2 = np.arange(2 * n)[None, :]
    ia = 2 * j + m2 - n
    ib = 2 * j - m2 + n
    valid = (ia >= 0) & (ia < 2 * n) & (ib >= 0) & (ib < 2 * n)
    r = np.where(
        valid,
        f2[np.clip(ia, 0, 2 * n - 1)] * np.conj(g2[np.clip(ib, 0, 2 * n - 1)]),
        0.0,
    )
    r[:, 0] = 0.0  # unpaired extreme lag, dropped to keep Hermitian symmetry exact
    folded = r[:, :n] + r[:, n:]
    sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    vals = f.grid.dx * np.fft.fft(folded * sign[None, :], axis=1)
    if g is f or g.samples is f.samples:
        vals = vals.real.astype(np.complex128)
    return tfmatrix_from_values(f.grid, vals)


def export_tfmatrix_csv(m: TFMatrix, path) -> None:
    """Write |values| as CSV rows (one per time index) plus a JSON metadata sidecar."""
    path = Path(path)
    mags = np.abs(m.values)
    with path.open("w") as fh:
        for row in mags:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    meta = {"n": m.grid.n, "dx": m.grid.dx, "dw": m.grid.dw, "layout": "rows=time, cols=frequency"}
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
