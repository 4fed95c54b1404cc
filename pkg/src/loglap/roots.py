"""Scalar root solvers for the two increasing maps behind the closed-form
eigenvalue bounds, together with their proven envelopes.

The two maps are

    g(r)  = r ln r                   on [1/e, oo),  target c >= -1/e
    gt(r) = r / (ln r - ln ln r)     on (e, oo),    target t > e^e/(e-1)

Both are solved by bisection seeded with the envelope bracket and polished
by safeguarded Newton steps.  The envelopes stored on the result are the
tightest combination that is actually valid for the given target:

* r <= 1 + c for every c >= -1/e (tangent at c = 0);
* r >= 1 + (e-1) c on [-1/e, 0] and r >= 1 + ((e-1)/e) c on [0, e]
  (chords of the concave inverse);
* for c >= e the chord switches sides, 1 + ((e-1)/e) c becomes an upper
  bound, and additionally c/ln c <= r <= c/(ln c - ln ln c);
* for the second map, t (ln t - ln ln t) <= r < t ln t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .specfun import NumericsError

__all__ = [
    "RootResult",
    "LOG_RATIO_THRESHOLD",
    "solve_r_ln_r",
    "solve_log_ratio",
]

_E = math.e
_MAX_ITER = 200

# Least admissible target of the log-ratio solver: e^e / (e - 1).
LOG_RATIO_THRESHOLD = math.exp(_E) / (_E - 1.0)


@dataclass(frozen=True)
class RootResult:
    """Root of one of the two scalar maps, with residual and envelopes.

    ``residual`` is map(root) - target.  ``envelope_low``/``envelope_high``
    bracket the root by the closed-form bounds valid at this target.
    """

    target: float
    root: float
    residual: float
    envelope_low: float
    envelope_high: float
    iterations: int


def _solve_bracketed(f, df, lo: float, hi: float) -> tuple[float, int]:
    """Safeguarded Newton within a guaranteed bracket [lo, hi], f(lo) <= 0 <= f(hi).

    The bracket is shrunk on every iteration (bisection fallback), so the
    loop terminates once [lo, hi] is a couple of ulps wide; Newton steps
    merely accelerate the shrinking.  Returns the endpoint with the smaller
    |f| so the reported residual is as close to the float64 floor as the
    map allows.
    """
    flo = f(lo)
    if flo == 0.0:
        return lo, 0
    fhi = f(hi)
    if fhi == 0.0:
        return hi, 0
    if flo > 0.0 or fhi < 0.0:
        raise NumericsError(f"root bracket [{lo}, {hi}] does not enclose a sign change")
    r = 0.5 * (lo + hi)
    for it in range(1, _MAX_ITER + 1):
        fr = f(r)
        if fr == 0.0:
            return r, it
        if fr < 0.0:
            lo, flo = r, fr
        else:
            hi, fhi = r, fr
        if hi - lo <= 2.0 * math.ulp(hi):
            break
        d = df(r)
        r_new = 0.0
        if d > 0.0:
            cand = r - fr / d
            if lo < cand < hi:
                r_new = cand
        if not (lo < r_new < hi):
            r_new = 0.5 * (lo + hi)
        r = r_new
    else:
        raise NumericsError(f"root solve did not converge within {_MAX_ITER} iterations")
    return (lo, it) if abs(flo) <= abs(fhi) else (hi, it)


def solve_r_ln_r(c: float) -> RootResult:
    """Solve r ln r = c on [1/e, oo); requires c >= -1/e."""
    if not math.isfinite(c):
        raise ValueError(f"target must be finite, got {c!r}")
    c_min = -1.0 / _E
    if c < c_min - 1e-15:
        raise ValueError(f"target must be >= -1/e = {c_min:.17g}, got {c!r}")
    if c <= c_min:
        # Boundary of the admissible range: the root is exactly 1/e.
        return RootResult(
            target=c,
            root=1.0 / _E,
            residual=(1.0 / _E) * math.log(1.0 / _E) - c,
            envelope_low=1.0 / _E,
            envelope_high=1.0 + c,
            iterations=0,
        )

    env_low, env_high = _r_ln_r_envelopes(c)
    lo = max(1.0 / _E, math.nextafter(env_low, 0.0))
    hi = math.nextafter(env_high, math.inf)

    def f(r: float) -> float:
        return r * math.log(r) - c

    def df(r: float) -> float:
        return math.log(r) + 1.0

    root, its = _solve_bracketed(f, df, lo, hi)
    return RootResult(
        target=c,
        root=root,
        residual=f(root),
        envelope_low=env_low,
        envelope_high=env_high,
        iterations=its,
    )


def _r_ln_r_envelopes(c: float) -> tuple[float, float]:
    if c <= 0.0:
        low = 1.0 + (_E - 1.0) * c
        high = 1.0 + c
    elif c <= _E:
        low = 1.0 + (_E - 1.0) / _E * c
        high = 1.0 + c
    else:
        lc = math.log(c)
        low = c / lc
        high = min(1.0 + c, 1.0 + (_E - 1.0) / _E * c, c / (lc - math.log(lc)))
    return low, high


def solve_log_ratio(t: float) -> RootResult:
    """Solve r / (ln r - ln ln r) = t on (e, oo); requires t > e^e/(e-1)."""
    if not math.isfinite(t):
        raise ValueError(f"target must be finite, got {t!r}")
    if t <= LOG_RATIO_THRESHOLD:
        raise ValueError(
            f"target must exceed e^e/(e-1) = {LOG_RATIO_THRESHOLD:.17g}, got {t!r}"
        )
    lt = math.log(t)
    env_low = t * (lt - math.log(lt))
    env_high = t * lt

    # Solve F(r) = r - t (ln r - ln ln r) = 0; better conditioned than the
    # ratio itself and has the same root.
    def f(r: float) -> float:
        lr = math.log(r)
        return r - t * (lr - math.log(lr))

    def df(r: float) -> float:
        lr = math.log(r)
        return 1.0 - t / r * (1.0 - 1.0 / lr)

    lo = math.nextafter(env_low, 0.0)
    hi = math.nextafter(env_high, math.inf)
    root, its = _solve_bracketed(f, df, lo, hi)
    lr = math.log(root)
    residual = root / (lr - math.log(lr)) - t
    return RootResult(
        target=t,
        root=root,
        residual=residual,
        envelope_low=env_low,
        envelope_high=env_high,
        iterations=its,
    )
