"""Independent reference computations for the test suite.

Everything here deliberately takes a different route than the package:
digamma comes from the recurrence + Bernoulli tail, lgamma from libm,
the cosine integral from panel quadrature / its large-argument series,
eigenvalues from a characteristic-polynomial solve, and the kernel pair
integrals from 1D quadrature of reduced (correlation) forms.  Slower and
cruder than the production code, but fair as cross-checks.
"""

import math

import numpy as np
from scipy.integrate import quad

EULER_GAMMA = 0.57721566490153286061

# B_2 .. B_14, used by the digamma tail below.
_BERNOULLI = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
]


def digamma_ref(x):
    """psi(x) for x > 0 via upward recurrence and the asymptotic tail."""
    if x <= 0.0:
        raise ValueError("reference digamma wants x > 0")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    # psi(x) ~ ln x - 1/(2x) - sum B_{2k} / (2k x^{2k});  x >= 10 puts the
    # first dropped term (B_16 term) below 1e-16.
    inv2 = 1.0 / (x * x)
    tail = 0.0
    power = inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        tail += b / (2.0 * k) * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - tail


def ln_gamma_ref(x):
    # libm, not scipy -- a genuinely separate implementation.
    return math.lgamma(x)


def cosint_ref(t):
    """Ci(t) for t > 0: panel Gauss below 30, asymptotic sin/cos series above."""
    if t <= 0.0:
        raise ValueError("reference cosine integral wants t > 0")
    if t <= 30.0:
        # Ci(t) = gamma + ln t + int_0^t (cos u - 1)/u du, entire integrand.
        nodes, weights = np.polynomial.legendre.leggauss(16)
        panels = max(1, int(math.ceil(t)))
        edges = np.linspace(0.0, t, panels + 1)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            u = 0.5 * (b - a) * nodes + 0.5 * (a + b)
            g = np.where(u == 0.0, 0.0, (np.cos(u) - 1.0) / np.where(u == 0.0, 1.0, u))
            total += 0.5 * (b - a) * float(weights @ g)
        return EULER_GAMMA + math.log(t) + total
    # Ci(t) = f(t) sin t - g(t) cos t with the divergent-series f, g summed
    # to their smallest term (plenty below 1e-13 once t > 30).
    f = g = 0.0
    term_f = 1.0 / t
    term_g = 1.0 / (t * t)
    k = 0
    while True:
        f += term_f if k % 2 == 0 else -term_f
        g += term_g if k % 2 == 0 else -term_g
        next_f = term_f * (2 * k + 1) * (2 * k + 2) / (t * t)
        if next_f >= term_f or next_f < 1e-18:
            break
        term_f = next_f
        term_g = term_g * (2 * k + 2) * (2 * k + 3) / (t * t)
        k += 1
    return f * math.sin(t) - g * math.cos(t)


def eigvals_charpoly(matrix):
    """All eigenvalues of a small symmetric matrix via its characteristic polynomial.

    Faddeev-LeVerrier for the coefficients, then a companion-matrix root
    solve.  Only sane for tiny well-conditioned matrices, which is exactly
    what the tests feed it.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    work = np.eye(n)
    for k in range(1, n + 1):
        work = a @ work
        c = -np.trace(work) / k
        coeffs[k] = c
        work = work + c * np.eye(n)
    roots = np.roots(coeffs)
    return np.sort(roots.real)


# ---------------------------------------------------------------------------
# kernel pair integrals, reduced to 1D correlation form
# ---------------------------------------------------------------------------
#
# For two cells of side h the kernel integral becomes an integral of the
# indicator correlation (a tent per axis) against the kernel.  The 1D case
# is a single tent; in 2D one axis is integrated in closed form and the
# other handed to adaptive quadrature.


def pair_integral_1d(m, h):
    """Integral of 1/|x-y| over two cells of length h, centers m*h apart (m >= 1)."""
    d = m * h

    def f(s):
        return (h - abs(s - d)) / s if s > 0.0 else 1.0

    left = quad(f, d - h, d, epsabs=1e-14, epsrel=1e-13, limit=200)
    right = quad(f, d, d + h, epsabs=1e-14, epsrel=1e-13, limit=200)
    return left[0] + right[0]


def diagonal_inner_1d(h):
    """Integral over a length-h cell of int over B_1(x) minus the cell of 1/|x-y|."""
    value, _ = quad(
        lambda x: -math.log(x) - math.log(h - x),
        0.0,
        h,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )
    return value


def edge_pair_2d(h):
    """Integral of |x-y|^(-2) over two side-h squares sharing an edge."""

    def f(s):
        if s == 0.0:
            return h * math.pi / 2.0
        return min(s, 2.0 * h - s) * (
            (h / s) * math.atan(h / s) - 0.5 * math.log1p((h / s) ** 2)
        )

    v1 = quad(f, 0.0, h, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    v2 = quad(f, h, 2.0 * h, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    return 2.0 * (v1 + v2)


def corner_pair_2d(h):
    """Integral of |x-y|^(-2) over two side-h squares sharing a corner."""

    def g(s):
        a = 0.5 * math.log((s * s + h * h) / (s * s))
        b = (2.0 * h / s) * (math.atan(2.0 * h / s) - math.atan(h / s)) - 0.5 * math.log(
            (s * s + 4.0 * h * h) / (s * s + h * h)
        )
        return a + b

    def f(s):
        return min(s, 2.0 * h - s) * g(s) if s > 0.0 else 0.0

    v1 = quad(f, 0.0, h, epsabs=1e-14, epsrel=1e-13, limit=400)[0]
    v2 = quad(f, h, 2.0 * h, epsabs=1e-14, epsrel=1e-13, limit=400)[0]
    return v1 + v2


def separated_pair_2d(h, a, b):
    """Integral of |x-y|^(-2) over side-h squares with center offset (a*h, b*h)."""
    c1, c2 = a * h, b * h

    def inner(u):
        # the v-axis tent against 1/(u^2+v^2), antidifferentiated exactly
        def anti(lin_a, lin_b, lo, hi):
            return (lin_a / u) * (math.atan(hi / u) - math.atan(lo / u)) + 0.5 * lin_b * math.log(
                (u * u + hi * hi) / (u * u + lo * lo)
            )

        return anti(h - c2, 1.0, c2 - h, c2) + anti(h + c2, -1.0, c2, c2 + h)

    def f(u):
        return (h - abs(u - c1)) * inner(u)

    v1 = quad(f, c1 - h, c1, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    v2 = quad(f, c1, c1 + h, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    return v1 + v2


def diagonal_inner_2d(h, angular=2048, levels=16, gauss_n=8):
    """Integral over a side-h square of int over B_1(x) minus the cell of |x-y|^(-2).

    Polar form: for each x in the cell the inner integral is
    -int over angles of ln(distance from x to the cell wall), done with a
    midpoint angular rule; the outer integral over the cell is a tensor
    Gauss rule on panels graded dyadically into the walls, where the
    integrand has its log singularity.  Converges to ~1e-8 relative at the
    defaults, which is plenty for the comparisons made with it.
    """
    theta = (np.arange(angular) + 0.5) * 2.0 * math.pi / angular
    ct, st = np.cos(theta), np.sin(theta)
    cuts = np.unique(
        np.concatenate(
            [
                [0.0],
                h * 2.0 ** -np.arange(levels, 0, -1),
                h - h * 2.0 ** -np.arange(levels, 0, -1),
                [h],
            ]
        )
    )
    gx, gw = np.polynomial.legendre.leggauss(gauss_n)
    xs, ws = [], []
    for a, b in zip(cuts[:-1], cuts[1:]):
        xs.append(0.5 * (b - a) * gx + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * gw)
    xs = np.concatenate(xs)
    ws = np.concatenate(ws)
    total = 0.0
    for xi, wi in zip(xs, ws):
        with np.errstate(divide="ignore"):
            tx = np.where(ct > 0, (h - xi) / ct, np.where(ct < 0, -xi / ct, np.inf))
            ty = np.where(
                st[None, :] > 0,
                (h - xs[:, None]) / st[None, :],
                np.where(st[None, :] < 0, -xs[:, None] / st[None, :], np.inf),
            )
        wall = np.minimum(tx[None, :], ty)
        inner = -np.log(wall).mean(axis=1) * 2.0 * math.pi
        total += wi * float(np.dot(ws, inner))
    return total


# Frozen values of the 2D pair integrals at h = 0.25, produced by the
# functions above (quadrature error estimates were all below 1e-15).
# Keeping literals guards the oracles themselves against regressions.
FROZEN_PAIR_2D = {
    (0, 1): 0.115641327862826,
    (1, 1): 0.0409156055622993,
    (0, 2): 0.0170658710850977,
    (1, 2): 0.0134557421343435,
    (2, 2): 0.00817311181270788,
    (0, 3): 0.00721276306879608,
}
FROZEN_PAIR_2D_H = 0.25
