"""Analytic layer: the even log-sinhc kernel and its derivatives, scaled
cumulant integrals over a Thoma measure, Legendre-Fenchel conjugation, strong
large-deviation estimates, Berry-Esseen bounds and Edgeworth corrections.

Domain convention: the kernel is analytic on the doubly cut plane
C minus (i[2*pi, inf) union i(-inf, -2*pi]).  Scaling the argument by t*x with
t in [0, 1] and x in [-1, 1] never leaves that domain, which is what keeps all
the integrals below well defined; integrands over pairs of atoms additionally
need the halved domain (|Im z| < pi on the imaginary axis).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DegenerateParameter,
    DomainError,
    EmptyPartition,
    OutOfRange,
    QuadratureError,
    ZeroAtomUnsupported,
)
from .partitions import DiscreteMeasure, Partition

TWO_PI = 2.0 * math.pi

# Taylor coefficients of the kernel at 0: pairs (r, B_r / (r * r!)) for even r.
_KERNEL_COEFFS = (
    (2, 1.0 / 24),
    (4, -1.0 / 2880),
    (6, 1.0 / 181440),
    (8, -1.0 / 9676800),
    (10, 1.0 / 479001600),
    (12, -691.0 / 15692092416000),
)


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre settings for the t-integrals on [0, 1]."""

    nodes: int = 64
    max_doublings: int = 4
    rel_tol: float = 1e-12

    def __post_init__(self):
        if self.nodes < 8:
            raise ValueError("need at least 8 quadrature nodes")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")


DEFAULT_QUAD = QuadratureConfig()


@lru_cache(maxsize=64)
def _gauss_nodes(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return tuple(((x + 1.0) / 2.0).tolist()), tuple((w / 2.0).tolist())


def _integrate_unit(f, quad: QuadratureConfig):
    """Integrate f over [0, 1], doubling the node count until two successive
    values agree to rel_tol (relative to max(1, |value|))."""
    n = quad.nodes
    prev = None
    for _ in range(quad.max_doublings + 1):
        ts, ws = _gauss_nodes(n)
        total = sum(w * f(t) for t, w in zip(ts, ws))
        if prev is not None and abs(total - prev) <= quad.rel_tol * max(1.0, abs(total)):
            return total
        prev = total
        n *= 2
    raise QuadratureError(f"integral did not stabilise with {n // 2} nodes")


def _check_domain(z: complex):
    if z.real == 0.0 and abs(z.imag) >= TWO_PI:
        raise DomainError(f"{z} lies on the imaginary-axis cut |Im z| >= 2*pi")


def _check_half_domain(z: complex):
    if z.real == 0.0 and abs(z.imag) >= math.pi:
        raise DomainError(f"2*{z} lies on the imaginary-axis cut |Im z| >= 2*pi")


def phi(z: complex) -> complex:
    """Even kernel log(sinh(z/2) / (z/2)) on the doubly cut plane.

    For Re z > 0 this is evaluated as z/2 + Log(1 - e^-z) - Log z, which keeps
    the principal branches continuous because |e^-z| < 1; evenness extends the
    formula to Re z < 0, and a Taylor series covers |z| < 1e-3.
    """
    z = complex(z)
    _check_domain(z)
    if abs(z) < 1e-3:
        w = z * z
        return w * (1.0 / 24 + w * (-1.0 / 2880 + w * (1.0 / 181440)))
    if z.real < 0:
        z = -z
    if z.real == 0.0:
        xi = abs(z.imag)  # 0 < xi < 2*pi, so the sine is positive
        return complex(math.log(math.sin(0.5 * xi) / (0.5 * xi)))
    return 0.5 * z + cmath.log(1.0 - cmath.exp(-z)) - cmath.log(z)


def varphi(z: complex) -> complex:
    """Odd-shifted kernel log((e^z - 1) / z) = phi(z) + z/2."""
    z = complex(z)
    return phi(z) + 0.5 * z


def phi_derivs(z: complex) -> tuple[complex, complex, complex]:
    """First three derivatives of the kernel.

    phi'(z) = coth(z/2)/2 - 1/z, phi''(z) = 1/z^2 - 1/(4 sinh^2(z/2)),
    phi'''(z) = -2/z^3 + cosh(z/2) / (4 sinh^3(z/2)); a series handles
    |z| < 1/4 where the closed forms cancel catastrophically.
    """
    z = complex(z)
    _check_domain(z)
    if abs(z) < 0.25:
        d1 = 0j
        d2 = 0j
        d3 = 0j
        for r, c in _KERNEL_COEFFS:
            d1 += r * c * z ** (r - 1)
            d2 += r * (r - 1) * c * z ** (r - 2)
            if r >= 3:
                d3 += r * (r - 1) * (r - 2) * c * z ** (r - 3)
        return d1, d2, d3
    sign = 1.0
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        z = -z
        sign = -1.0  # odd derivatives flip, the even one does not
    w = 0.5 * z
    if w.real > 350.0:
        d1 = 0.5 - 1.0 / z
        d2 = 1.0 / (z * z)
        d3 = -2.0 / (z * z * z)
    else:
        s = cmath.sinh(w)
        c = cmath.cosh(w)
        d1 = 0.5 * c / s - 1.0 / z
        d2 = 1.0 / (z * z) - 0.25 / (s * s)
        d3 = -2.0 / (z * z * z) + 0.25 * c / (s * s * s)
    return sign * d1, d2, sign * d3


def lambda_omega(mu: DiscreteMeasure, z: complex, quad: QuadratureConfig | None = None) -> complex:
    """Leading-order integral: int_0^1 sum_atoms w (phi(tz) - phi(t x z)) dt.

    Even in z; identically zero when the measure sits entirely at |x| = 1.
    """
    z = complex(z)
    _check_domain(z)
    if z == 0:
        return 0j
    atoms = [(x, w) for x, w in mu.float_atoms() if w > 0]

    def integrand(t: float) -> complex:
        tz = t * z
        base = phi(tz)
        total = base  # weights sum to 1
        for x, w in atoms:
            if x != 0:
                total -= w * phi(x * tz)
        return total

    return _integrate_unit(integrand, quad or DEFAULT_QUAD)


def _require_nondegenerate(mu: DiscreteMeasure):
    if mu.concentrated_on_pm1():
        raise DegenerateParameter("measure concentrated on {-1, 1}")


def lambda_derivs(
    mu: DiscreteMeasure, h: float, quad: QuadratureConfig | None = None
) -> tuple[float, float, float]:
    """First three h-derivatives of lambda_omega along the real line.

    The k-th integrand is t^k phi^(k)(th) - (tx)^k phi^(k)(txh); the first
    derivative is strictly increasing in h (strict convexity away from the
    degenerate corners of the simplex).
    """
    _require_nondegenerate(mu)
    h = float(h)
    quad = quad or DEFAULT_QUAD
    atoms = [(x, w) for x, w in mu.float_atoms() if w > 0]

    def make(order: int):
        def integrand(t: float) -> complex:
            tk = t ** order
            total = tk * phi_derivs(t * h)[order - 1]
            for x, w in atoms:
                if x != 0:
                    total -= w * (tk * x ** order) * phi_derivs(t * x * h)[order - 1]
            return total

        return integrand

    return tuple(_integrate_unit(make(k), quad).real for k in (1, 2, 3))


def lambda_prime_limit(mu: DiscreteMeasure) -> float:
    """Slope of lambda_omega at infinity: (1 - int x mu(dx)) / 4."""
    return 0.25 * (1.0 - float(mu.moment(1)))


def _one_minus_ucoth(u: complex) -> complex:
    """1 - u*coth(u), series for small |u| to avoid cancellation."""
    if abs(u) < 1e-2:
        w = u * u
        return w * (-1.0 / 3 + w * (1.0 / 45 - w * (2.0 / 945)))
    return 1.0 - u * cmath.cosh(u) / cmath.sinh(u)


def psi_integrand(x: float, y: float, z: complex) -> complex:
    """Continuous two-atom integrand with its limits across x = 0 and y = 0.

    Away from the axes this is (phi((y-x)z) - phi(yz) - phi(-xz)) / (xy); the
    limit branches fire when |xy| < 1e-6 and give (1 - (zy/2) coth(zy/2))/y^2,
    its mirror image, or -z^2/12 at the origin.
    """
    z = complex(z)
    _check_half_domain(z)
    if abs(x) > 1 or abs(y) > 1:
        raise ValueError("atom coordinates must lie in [-1, 1]")
    ax, ay = abs(x), abs(y)
    if ax * ay < 1e-6:
        if max(ax, ay) < 1e-3:
            return -z * z / 12.0
        if ax <= ay:
            u = 0.5 * z * y
            return _one_minus_ucoth(u) / (y * y)
        u = 0.5 * z * x
        return _one_minus_ucoth(u) / (x * x)
    return (phi((y - x) * z) - phi(y * z) - phi(-x * z)) / (x * y)


def psi_omega(mu: DiscreteMeasure, z: complex) -> complex:
    """Constant-order term: phi(z)/2 plus half the double atom sum of the
    two-atom integrand."""
    z = complex(z)
    _check_half_domain(z)
    if z == 0:
        return 0j
    atoms = mu.float_atoms()
    total = 0j
    for x, wx in atoms:
        if wx == 0:
            continue
        for y, wy in atoms:
            if wy == 0:
                continue
            total += wx * wy * psi_integrand(x, y, z)
    return 0.5 * (phi(z) + total)


def legendre_star(
    mu: DiscreteMeasure, y: float, quad: QuadratureConfig | None = None
) -> tuple[float, float]:
    """Solve lambda'(h) = y and return (h, h*y - lambda(h)).

    The derivative is strictly increasing with range (-limit, limit), so the
    root is bracketed by doubling and then bisected until the residual
    |lambda'(h) - y| drops below 1e-12.
    """
    _require_nondegenerate(mu)
    y = float(y)
    limit = lambda_prime_limit(mu)
    if not 0.0 < abs(y) < limit:
        raise OutOfRange(f"need 0 < |y| < {limit}, got {y}")
    quad = quad or DEFAULT_QUAD
    target = abs(y)

    def slope(h: float) -> float:
        return lambda_derivs(mu, h, quad)[0]

    lo, hi = 0.0, 1.0
    while True:
        try:
            high_enough = slope(hi) >= target
        except QuadratureError:
            # the integrand develops a 1/h boundary layer; by then y is
            # within O(1/h) of the open upper limit anyway
            raise OutOfRange(
                f"deviation {y} is too close to the slope limit {limit} "
                "for the configured quadrature"
            ) from None
        if high_enough:
            break
        hi *= 2.0
        if hi > 700.0:
            raise OutOfRange(f"deviation {y} is too close to the slope limit {limit}")
    h = hi
    for _ in range(200):
        h = 0.5 * (lo + hi)
        v = slope(h)
        if abs(v - target) <= 1e-12:
            break
        if v < target:
            lo = h
        else:
            hi = h
    if y < 0:
        h = -h
    rate = h * y - lambda_omega(mu, h, quad).real
    return h, rate


@dataclass(frozen=True)
class LDReport:
    """Assembled strong large-deviation estimate for one (y, n) pair."""

    y: float
    side: str
    h: float
    rate: float
    psi_at_h: float
    lambda2_at_h: float
    estimate: float

    def to_dict(self) -> dict:
        return {
            "y": self.y,
            "side": self.side,
            "h": self.h,
            "rate": self.rate,
            "psi_at_h": self.psi_at_h,
            "lambda2_at_h": self.lambda2_at_h,
            "estimate": self.estimate,
        }


def ld_estimate(
    mu_n: DiscreteMeasure,
    mu_limit: DiscreteMeasure,
    y: float,
    n: int,
    side: str = "upper",
    use_limit_prefactor: bool = True,
    quad: QuadratureConfig | None = None,
) -> LDReport:
    """Tail estimate exp(-n*rate + psi(h)) / (|h| sqrt(2 pi n lambda''(h))).

    The decay rate is conjugated at the finite-n parameter while the tilt h
    and the prefactor come from the limit parameter; `use_limit_prefactor`
    switches everything to the finite-n measure instead.
    """
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    if y <= 0:
        raise OutOfRange("the deviation y must be positive")
    signed_y = y if side == "upper" else -y
    _, rate = legendre_star(mu_n, signed_y, quad)
    prefactor_mu = mu_limit if use_limit_prefactor else mu_n
    h, _ = legendre_star(prefactor_mu, signed_y, quad)
    psi_h = psi_omega(prefactor_mu, h).real
    lam2 = lambda_derivs(prefactor_mu, h, quad)[1]
    estimate = math.exp(-n * rate + psi_h) / (abs(h) * math.sqrt(2.0 * math.pi * n * lam2))
    return LDReport(
        y=y, side=side, h=h, rate=rate, psi_at_h=psi_h, lambda2_at_h=lam2,
        estimate=estimate,
    )


def berry_esseen_bound(lam: Partition) -> tuple[float, bool]:
    """Kolmogorov-distance bound 30/sqrt(n) and whether it applies.

    The bound needs n >= 4 and neither the first row nor the first column to
    hold more than half of the cells.
    """
    n = lam.n
    if n == 0:
        raise EmptyPartition("bound needs a nonempty partition")
    widest = max(lam.rows[0], len(lam.rows))  # first row vs first column
    return 30.0 / math.sqrt(n), n >= 4 and 2 * widest <= n


def _oscillatory_log_integral(
    scale: float, h: float, xi: float, nodes: int = 16, max_panels: int = 200000
) -> float:
    """int_0^1 log(1 + sin^2(t s xi / 2) / sinh^2(t s h / 2)) dt.

    The integrand oscillates with t-period 2*pi/(s*xi), so one Gauss panel is
    used per period; sinh arguments are clipped at 350 to avoid overflow (the
    ratio is already below 1e-300 there).
    """
    periods = abs(scale * xi) / TWO_PI
    panels = min(max_panels, max(1, math.ceil(periods)))
    ts, ws = _gauss_nodes(nodes)
    offsets = np.arange(panels, dtype=float)[:, None] / panels
    t = (offsets + np.asarray(ts)[None, :] / panels).ravel()
    w = np.tile(np.asarray(ws) / panels, panels)
    u = np.minimum(t * (scale * h / 2.0), 350.0)
    ratio = np.sin(t * (scale * xi / 2.0)) ** 2 / np.sinh(u) ** 2
    return float(w @ np.log1p(ratio))


def mock_fourier(mu: DiscreteMeasure, h: float, xi: float) -> float:
    """Re(lambda(h + i*xi) - lambda(h)), negative for xi != 0.

    Evaluated through the real-part identity
    Re phi(a + ib) - phi(a) = log(1 + sin^2(b/2)/sinh^2(a/2)) / 2, with
    oscillation-resolving panels so that xi up to ~1e6 stays accurate.
    """
    if h == 0:
        raise DegenerateParameter("tilt h must be nonzero")
    _require_nondegenerate(mu)
    if xi == 0:
        return 0.0
    h = abs(float(h))
    xi = abs(float(xi))
    base = _oscillatory_log_integral(1.0, h, xi)
    total = 0.0
    for x, w in mu.float_atoms():
        if w == 0:
            continue
        if x == 0:
            # the x -> 0 kernel difference degenerates to a t-free constant
            total += w * 0.5 * (base - math.log1p((xi * xi) / (h * h)))
        else:
            total += w * 0.5 * (base - _oscillatory_log_integral(abs(x), h, xi))
    return total


def mock_fourier_limit(
    mu: DiscreteMeasure, h: float, quad: QuadratureConfig | None = None
) -> float:
    """Limit of the previous quantity as xi -> infinity:
    int_0^1 int log((1 - e^{-t|x|h}) / (1 - e^{-th})) mu(dx) dt.

    Diverges to -infinity when the measure charges {0}; such measures are
    rejected rather than regularised.
    """
    if h == 0:
        raise DegenerateParameter("tilt h must be nonzero")
    if mu.mass_at_zero() > 0:
        raise ZeroAtomUnsupported("the limit integrand is -inf on an atom at 0")
    h = abs(float(h))
    atoms = [(abs(x), w) for x, w in mu.float_atoms() if w > 0]

    def integrand(t: float) -> float:
        base = math.log(-math.expm1(-t * h))
        return sum(w * (math.log(-math.expm1(-t * ax * h)) - base) for ax, w in atoms)

    return float(_integrate_unit(integrand, quad or DEFAULT_QUAD))


def _jacobi_min_eigenvalue(mat: list[list[float]], tol: float = 1e-12) -> float:
    """Smallest eigenvalue of a small real symmetric matrix by cyclic Jacobi."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 1:
        return a[0][0]
    for _ in range(100):
        off = max(abs(a[p][q]) for p in range(n) for q in range(p + 1, n))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if abs(apq) <= tol / 10:
                    continue
                tau = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    return min(a[i][i] for i in range(n))


def bochner_check(
    mu: DiscreteMeasure, xis, quad: QuadratureConfig | None = None
) -> tuple[list[list[float]], float]:
    """Matrix exp(lambda(i(xi_i - xi_j))) and its smallest eigenvalue.

    For a log-Laplace transform of an actual probability law this matrix
    would be nonnegative definite; a negative eigenvalue certifies that the
    leading-order integral transform is not one.
    """
    xis = [float(v) for v in xis]
    if not xis:
        raise ValueError("xis must be nonempty")
    cache: dict[float, float] = {0.0: 0.0}

    def lam_imag(delta: float) -> float:
        key = abs(delta)  # evenness
        if key not in cache:
            cache[key] = lambda_omega(mu, 1j * key, quad).real
        return cache[key]

    matrix = [
        [math.exp(lam_imag(xi - xj)) for xj in xis]
        for xi in xis
    ]
    return matrix, _jacobi_min_eigenvalue(matrix)


def standard_normal_cdf(s: float) -> float:
    """Phi(s) through erfc; absolute error well below 1e-15."""
    return 0.5 * math.erfc(-s / math.sqrt(2.0))


def edgeworth_cdf(
    mu: DiscreteMeasure, h: float, n: int, t: float,
    quad: QuadratureConfig | None = None,
) -> float:
    """Third-order corrected normal CDF for the tilted, rescaled statistic.

    G(t) = Phi(t) - lambda'''(h) (t^2 - 1) e^{-t^2/2} / (6 sqrt(2 pi n lambda''(h)^3));
    the correction integrates to zero, so G(-inf) = 0 and G(+inf) = 1.
    """
    _, lam2, lam3 = lambda_derivs(mu, h, quad)
    if lam2 <= 0:
        raise DegenerateParameter("second derivative must be positive")
    coef = lam3 / (6.0 * math.sqrt(float(n) * lam2 ** 3))
    density = math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)
    return standard_normal_cdf(t) - coef * (t * t - 1.0) * density


def sn_log_laplace(n: int, z: complex) -> complex:
    """Centred log-Laplace transform of maj/n for a uniform permutation:
    sum_{k=1..n} varphi(kz/n) - n varphi(z/n) - (n-1) z / 4."""
    if n < 1:
        raise ValueError("n must be >= 1")
    z = complex(z)
    _check_domain(z)
    total = -n * varphi(z / n) - (n - 1) * z / 4.0
    for k in range(1, n + 1):
        total += varphi(k * z / n)
    return total
