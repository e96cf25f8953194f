"""Closed-form constants and lower bounds for concentration inequalities.

Conventions for the exponents:

* conjugate exponents satisfy 1/q + 1/q' = 1 with the pairs (1, inf) and
  (inf, 1) included,
* the transform-size constant is (2/p)^(d/p) for p >= 2, equal to 1 at
  p = 2 and p = inf,
* the operator-norm constant is (1/q')^(d/q') with the value 1 at both
  endpoints q = 1 and q = inf,
* the profile alpha(k) = (1/k)^(1/k) * (1/k')^(1/k') is written as
  x^x (1-x)^(1-x) with x = 1/k and the 0^0 = 1 convention; its minimum over
  k in [1, inf] is 1/2, attained at k = 2.

Product bounds for the measures |T| * |Omega| of a (eps_T, eps_Omega)
concentration pair come in several strengths; each function documents the
hypotheses it needs and validates them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln, gammaln

from .concentration import energy_centroid, support_mask, weighted_moment_norm
from .core import FREQUENCY, TIME, Signal, norm_lq
from .report import Verdict, make_verdict, skipped_verdict

INF = float("inf")


def conjugate_exponent(q: float) -> float:
    q = float(q)
    if q < 1.0:
        raise ValueError(f"exponent must satisfy q >= 1, got {q!r}")
    if q == 1.0:
        return INF
    if math.isinf(q):
        return 1.0
    return q / (q - 1.0)


@dataclass(frozen=True)
class BoundParams:
    """Validated parameter bundle for the concentration bounds."""

    eps_t: float
    eps_omega: float
    d: int = 1
    alpha: float = 1.0
    q: float = 2.0

    def __post_init__(self):
        if not (0.0 <= self.eps_t <= 1.0 and 0.0 <= self.eps_omega <= 1.0):
            raise ValueError("concentration defects must lie in [0, 1]")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d!r}")
        if not self.alpha > 0:
            raise ValueError(f"moment exponent must be positive, got {self.alpha!r}")
        conjugate_exponent(self.q)  # validates the range

    @property
    def q_conj(self) -> float:
        return conjugate_exponent(self.q)

    @property
    def eps_sum(self) -> float:
        return self.eps_t + self.eps_omega


def lieb_constant(p: float, d: int = 1) -> float:
    """(2/p)^(d/p): transform-size constant for the mixed norm, p >= 2."""
    p = float(p)
    if math.isinf(p):
        return 1.0
    if p < 2.0:
        raise ValueError(f"constant defined for p >= 2, got {p!r}")
    return float((2.0 / p) ** (d / p))


def locop_constant(q: float, d: int = 1) -> float:
    """(1/q')^(d/q'): operator-norm constant, equal to 1 at q = 1 and q = inf."""
    qp = conjugate_exponent(q)
    if math.isinf(qp):
        return 1.0
    return float((1.0 / qp) ** (d / qp))


def alpha_k_profile(k: float) -> float:
    """x^x (1-x)^(1-x) with x = 1/k; endpoints use the 0^0 = 1 convention."""
    k = float(k)
    if k < 1.0:
        raise ValueError(f"profile defined for k >= 1, got {k!r}")
    x = 0.0 if math.isinf(k) else 1.0 / k
    def plogp(y):
        return 0.0 if y == 0.0 else y * math.log(y)
    return math.exp(plogp(x) + plogp(1.0 - x))


def ds_bound(eps_t: float, eps_omega: float) -> float:
    """Classical product floor (1 - eps_T - eps_Omega)^2; needs eps_T + eps_Omega < 1."""
    _check_eps(eps_t, eps_omega)
    s = eps_t + eps_omega
    if s >= 1.0:
        raise ValueError(f"bound requires eps_t + eps_omega < 1, got {s}")
    return (1.0 - s) ** 2


def _check_eps(eps_t: float, eps_omega: float) -> None:
    for name, e in (("eps_t", eps_t), ("eps_omega", eps_omega)):
        if not (0.0 <= e <= 1.0):
            raise ValueError(f"{name} must lie in [0, 1], got {e!r}")


@dataclass(frozen=True)
class BoundValue:
    """A bound together with the argument that attains it (when one exists)."""

    value: float
    witness: dict | None = None
    attained: bool = True


def improved_bound(eps_t: float, eps_omega: float, d: int = 1) -> BoundValue:
    """sup over r in [1, inf) of (1 - eps)^r * (r/(r-1))^(2d(r-1)), eps = eps_T + eps_Omega.

    The log of the objective is strictly concave in r, so a golden-section
    search after bracket doubling locates the maximizer to 1e-10.  At eps = 0
    the supremum is exp(2d), approached as r -> inf but attained by no finite
    r, which the returned record marks with attained=False.
    """
    _check_eps(eps_t, eps_omega)
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    eps = eps_t + eps_omega
    if eps > 1.0:
        raise ValueError(f"bound requires eps_t + eps_omega <= 1, got {eps}")
    if eps == 0.0:
        return BoundValue(math.exp(2.0 * d), {"r": INF}, attained=False)
    if eps == 1.0:
        return BoundValue(0.0, {"r": 1.0}, attained=True)

    log1me = math.log1p(-eps)

    def h(r: float) -> float:
        return r * log1me + 2.0 * d * (r - 1.0) * (math.log(r) - math.log(r - 1.0))

    def hprime(r: float) -> float:
        return log1me + 2.0 * d * (math.log(r) - math.log(r - 1.0) - 1.0 / r)

    lo = 1.0 + 1e-9
    hi = 2.0
    while hprime(hi) > 0.0 and hi < 2.0**60:
        hi *= 2.0
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    e = a + invphi * (b - a)
    hc, he = h(c), h(e)
    while b - a > 1e-10:
        if hc >= he:
            b, e, he = e, c, hc
            c = b - invphi * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, e, he
            e = a + invphi * (b - a)
            he = h(e)
    r_star = 0.5 * (a + b)
    return BoundValue(math.exp(h(r_star)), {"r": r_star}, attained=True)


def price_k1(d: int, alpha: float) -> float:
    """Sharp local constant for the q = 2 moment family; requires alpha > d/2."""
    d, alpha = _check_d_alpha(d, alpha)
    x = d / (2.0 * alpha)
    if not x < 1.0 - 1e-12:
        raise ValueError(f"constant requires alpha > d/2, got alpha={alpha}, d={d}")
    log_val = (
        (d / 2.0) * math.log(math.pi)
        - math.log(alpha)
        - gammaln(d / 2.0)
        + gammaln(x)
        + gammaln(1.0 - x)
        + x * math.log(2.0 * alpha / d - 1.0)
        - math.log(1.0 - x)
    )
    return float(math.exp(log_val))


def _check_d_alpha(d: int, alpha: float):
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    alpha = float(alpha)
    if not (np.isfinite(alpha) and alpha > 0):
        raise ValueError(f"moment exponent must be positive and finite, got {alpha!r}")
    return int(d), alpha


def price_ktilde(d: int, alpha: float, q: float) -> float:
    """Unsquared local constant for general q in (1, inf]; requires alpha > d/q'."""
    d, alpha = _check_d_alpha(d, alpha)
    q = float(q)
    if q <= 1.0:
        raise ValueError(f"constant defined for q > 1, got {q!r}")
    if math.isinf(q):
        # limit of the finite-q expression as q -> inf (conjugate exponent 1)
        if not alpha > d + 1e-12:
            raise ValueError(f"q = inf requires alpha > d, got alpha={alpha}, d={d}")
        log_val = (
            math.log(2.0)
            + (d / 2.0) * math.log(math.pi)
            - gammaln(d / 2.0)
            + math.log(alpha)
            - math.log(d)
            - math.log(alpha - d)
        )
        return float(math.exp(log_val))
    qp = conjugate_exponent(q)
    x = d / (alpha * q)
    y = 1.0 / (q - 1.0) - x
    if not y > 1e-12 / max(alpha, 1.0):
        raise ValueError(f"constant requires alpha > d/q', got alpha={alpha}, q'={qp}, d={d}")
    bracket = (
        math.log(2.0)
        + (d / 2.0) * math.log(math.pi)
        - gammaln(d / 2.0)
        - math.log(alpha * q)
        + betaln(x, y)
    )
    log_val = (
        ((q - 1.0) / q) * bracket
        + (d / (q * qp * alpha)) * math.log(alpha * qp / d - 1.0)
        - (1.0 / q) * math.log(1.0 - d / (alpha * qp))
    )
    return float(math.exp(log_val))


def price_k(d: int, alpha: float, q: float) -> float:
    """Squared local constant K = Ktilde^2; coincides with price_k1 at q = 2."""
    return price_ktilde(d, alpha, q) ** 2


def price_rhs(norm_q: float, moment_q: float, omega_measure: float, d: int, alpha: float, q: float) -> float:
    """Right side of the local energy bound:

        K(d, alpha, q) * |Omega| * ||f||_q^(2 - 2d/(alpha q')) * |||t - c|^alpha f||_q^(2d/(alpha q'))
    """
    if omega_measure < 0:
        raise ValueError(f"measure must be nonnegative, got {omega_measure!r}")
    if norm_q < 0 or moment_q < 0:
        raise ValueError("norms must be nonnegative")
    k = price_k(d, alpha, q)
    e = 2.0 * d / (alpha * conjugate_exponent(q))
    if e > 2.0:
        raise ValueError("exponent 2d/(alpha q') exceeds 2; hypotheses violated")
    return float(k * omega_measure * norm_q ** (2.0 - e) * moment_q ** e)


@dataclass(frozen=True)
class CfSearch:
    """Finite search grids for the signal-adapted constant."""

    qs: tuple = (1.5, 2.0, 3.0, 4.0, INF)
    alpha_count: int = 6
    alpha_max: float = 8.0
    center_count: int = 5

    def alphas(self, q: float, d: int = 1) -> tuple:
        lo = d / conjugate_exponent(q)
        vals = set(np.geomspace(max(lo * 1.25, 1e-3), self.alpha_max, self.alpha_count).tolist())
        for extra in (1.0, 2.0):
            if extra > lo * (1.0 + 1e-9) and extra <= self.alpha_max:
                vals.add(extra)
        return tuple(sorted(vals))


def cf_quotient(f: Signal, fhat: Signal, witness: dict, d: int = 1) -> float:
    """Evaluate the signal-adapted quotient at one witness parameter choice.

        ||f||_2^4 * ||fhat||_q1^e1 * ||f||_q2^e2
        -----------------------------------------------------------------
        K(d,a1,q1) K(d,a2,q2) ||f||_q2^2 ||fhat||_q1^2 * Mt^e2 * Mw^e1

    with e_j = 2d/(alpha_j q_j'), Mt the time moment of f about t_bar at
    (alpha2, q2), and Mw the frequency moment of fhat about w_bar at
    (alpha1, q1).
    """
    q1, q2 = float(witness["q1"]), float(witness["q2"])
    a1, a2 = float(witness["alpha1"]), float(witness["alpha2"])
    tb, wb = float(witness["t_bar"]), float(witness["w_bar"])
    e1 = 2.0 * d / (a1 * conjugate_exponent(q1))
    e2 = 2.0 * d / (a2 * conjugate_exponent(q2))
    n2 = norm_lq(f, 2.0)
    nf = norm_lq(f, q2)
    nfh = norm_lq(fhat, q1)
    mt = weighted_moment_norm(f, tb, a2, q2)
    mw = weighted_moment_norm(fhat, wb, a1, q1)
    den = (
        price_k(d, a1, q1)
        * price_k(d, a2, q2)
        * nf**2
        * nfh**2
        * mt**e2
        * mw**e1
    )
    if den == 0.0:
        raise ValueError("degenerate witness: a moment norm vanished")
    return float(n2**4 * nfh**e1 * nf**e2 / den)


def cf_bound(f: Signal, fhat: Signal, search: CfSearch | None = None) -> BoundValue:
    """Best lower bound for the signal-adapted constant over the finite search grids.

    Any witness gives a valid lower bound for the true constant, so enlarging
    the grids can only increase the result.  Ties keep the first witness in
    the deterministic lexicographic scan order.
    """
    if f.domain != TIME or fhat.domain != FREQUENCY:
        raise ValueError("expected a time signal and its frequency transform")
    search = search or CfSearch()
    d = 1
    tc = energy_centroid(f)
    wc = energy_centroid(fhat)
    t_axis, w_axis = f.grid.times, f.grid.freqs
    t_centers = [tc] + np.linspace(t_axis[0] / 2.0, t_axis[-1] / 2.0, search.center_count).tolist()
    w_centers = [wc] + np.linspace(w_axis[0] / 2.0, w_axis[-1] / 2.0, search.center_count).tolist()

    norm2 = norm_lq(f, 2.0)
    nf = {q: norm_lq(f, q) for q in search.qs}
    nfh = {q: norm_lq(fhat, q) for q in search.qs}
    kconst = {}
    mt = {}
    mw = {}
    for q in search.qs:
        for a in search.alphas(q, d):
            kconst[(q, a)] = price_k(d, a, q)
            for c in t_centers:
                mt[(c, q, a)] = weighted_moment_norm(f, c, a, q)
            for c in w_centers:
                mw[(c, q, a)] = weighted_moment_norm(fhat, c, a, q)

    best = None
    best_witness = None
    for tb in t_centers:
        for wb in w_centers:
            for q1 in search.qs:
                e1_base = conjugate_exponent(q1)
                for a1 in search.alphas(q1, d):
                    e1 = 2.0 * d / (a1 * e1_base)
                    m1 = mw[(wb, q1, a1)]
                    if m1 == 0.0:
                        continue
                    part1 = nfh[q1] ** e1 / (kconst[(q1, a1)] * nfh[q1] ** 2 * m1**e1)
                    for q2 in search.qs:
                        e2_base = conjugate_exponent(q2)
                        for a2 in search.alphas(q2, d):
                            e2 = 2.0 * d / (a2 * e2_base)
                            m2 = mt[(tb, q2, a2)]
                            if m2 == 0.0:
                                continue
                            val = (
                                norm2**4
                                * part1
                                * nf[q2] ** e2
                                / (kconst[(q2, a2)] * nf[q2] ** 2 * m2**e2)
                            )
                            if best is None or val > best:
                                best = val
                                best_witness = {
                                    "t_bar": tb,
                                    "w_bar": wb,
                                    "q1": q1,
                                    "alpha1": a1,
                                    "q2": q2,
                                    "alpha2": a2,
                                }
    if best is None:
        raise ValueError("search grids admitted no feasible witness")
    return BoundValue(float(best), best_witness, attained=True)


def separate_measure_bounds(
    f: Signal, fhat: Signal, eps_t: float, eps_omega: float, witness: dict, d: int = 1
) -> tuple[float, float]:
    """Individual lower bounds for |T| and |Omega| at a given witness.

    The product of the two bounds equals (1 - eps_T^2)(1 - eps_Omega^2) times
    the witness quotient, an algebraic identity the tests assert.
    """
    _check_eps(eps_t, eps_omega)
    q1, q2 = float(witness["q1"]), float(witness["q2"])
    a1, a2 = float(witness["alpha1"]), float(witness["alpha2"])
    tb, wb = float(witness["t_bar"]), float(witness["w_bar"])
    e1 = 2.0 * d / (a1 * conjugate_exponent(q1))
    e2 = 2.0 * d / (a2 * conjugate_exponent(q2))
    norm2 = norm_lq(f, 2.0)
    nfh = norm_lq(fhat, q1)
    nf = norm_lq(f, q2)
    mw = weighted_moment_norm(fhat, wb, a1, q1)
    mt = weighted_moment_norm(f, tb, a2, q2)
    if mw == 0.0 or mt == 0.0:
        raise ValueError("degenerate witness: a moment norm vanished")
    lb_t = (1.0 - eps_t**2) * norm2**2 * nfh**e1 / (price_k(d, a1, q1) * nfh**2 * mw**e1)
    lb_w = (1.0 - eps_omega**2) * norm2**2 * nf**e2 / (price_k(d, a2, q2) * nf**2 * mt**e2)
    return float(lb_t), float(lb_w)


def delta_bound(
    f: Signal, fhat: Signal, meas_t: float, meas_omega: float, eps_t: float, eps_omega: float
) -> float:
    """Spread-product floor: (1-eps_T^2)(1-eps_Omega^2) ||f||_2^2 / (4 pi^2 |T||Omega|)."""
    _check_eps(eps_t, eps_omega)
    if not (meas_t > 0 and meas_omega > 0):
        raise ValueError("measures must be positive")
    n2 = norm_lq(f, 2.0)
    return float((1.0 - eps_t**2) * (1.0 - eps_omega**2) * n2**2 / (4.0 * math.pi**2 * meas_t * meas_omega))


def heisenberg_floor(f: Signal) -> float:
    """Dimensional floor ||f||_2^2 / (4 pi) for the spread product about zero centers."""
    return float(norm_lq(f, 2.0) ** 2 / (4.0 * math.pi))


def mixed_bound_check(
    f: Signal,
    fhat: Signal,
    alpha: float,
    center: float | None = None,
    axis: str = TIME,
    support_threshold: float = 1e-12,
    rel_tol: float = 1e-6,
) -> Verdict:
    """Support-moment inequality in one of its two mirror forms.

    axis = "time":       |supp f| * Mw^(1/alpha) >= ||f||_2^(1/alpha) / K
    axis = "frequency":  |supp fhat| * Mt^(1/alpha) >= ||f||_2^(1/alpha) / K

    where Mw / Mt is the L^2 moment of order alpha of the other-domain signal
    about `center` (default: its energy centroid) and K = K(1, alpha, 2).
    Support is measured at the relative magnitude threshold
    `support_threshold`.
    """
    alpha = float(alpha)
    if not alpha > 0.5:
        raise ValueError(f"support bound requires alpha > 1/2, got {alpha!r}")
    if axis not in (TIME, FREQUENCY):
        raise ValueError(f"axis must be 'time' or 'frequency', got {axis!r}")
    check_id = "support-time" if axis == TIME else "support-freq"
    n2 = norm_lq(f, 2.0)
    if n2 == 0.0:
        return skipped_verdict(check_id, "zero signal")
    k = price_k(1, alpha, 2.0)
    if axis == TIME:
        supp = support_mask(f, support_threshold).measure
        moment = weighted_moment_norm(fhat, center if center is not None else energy_centroid(fhat), alpha, 2.0)
    else:
        supp = support_mask(fhat, support_threshold).measure
        moment = weighted_moment_norm(f, center if center is not None else energy_centroid(f), alpha, 2.0)
    lhs = supp * moment ** (1.0 / alpha)
    rhs = n2 ** (1.0 / alpha) / k
    return make_verdict(check_id, lhs, rhs, rel_tol)
