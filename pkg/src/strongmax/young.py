"""Young-function calculus.

Canonical families (powers, t[1+(log+ t)^(n-1)] and its iterates, the
exponential-class dual), numeric convex conjugates, inverses, the O'Neil
triple inequality check, and a tail-exponent classifier for the B*_p
integrability condition.

Evaluation maps are vectorized over numpy arrays and may return +inf
(extended values are legal for conjugates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

T_LARGE = 1e9  # cap used to detect unbounded conjugates / brackets


class YoungFunctionError(ValueError):
    pass


@dataclass(frozen=True)
class YoungFunction:
    """Evaluable convex increasing function with Phi(0) = 0.

    is_submultiplicative is a tri-state flag: True / False / None (unknown).
    closed_inverse, when present, is used instead of bisection.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    label: str
    is_submultiplicative: bool | None = None
    closed_inverse: Callable[[np.ndarray], np.ndarray] | None = None
    closed_complementary: Callable[[float], float] | None = None

    def __call__(self, t):
        return self.eval(np.asarray(t, dtype=np.float64))

    def __repr__(self):
        return f"YoungFunction({self.label})"


def _logp(t: np.ndarray) -> np.ndarray:
    """log+ t = max(log t, 0), safe at t = 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(t > 1.0, np.log(np.maximum(t, 1e-300)), 0.0)


# --- canonical families -----------------------------------------------------


def power(s: float) -> YoungFunction:
    """Phi(t) = t^s, s >= 1."""
    if s < 1:
        raise YoungFunctionError("power exponent must be >= 1 for convexity")

    def conj(y: float) -> float:
        # sup_t {yt - t^s}
        if s == 1.0:
            return 0.0 if y <= 1.0 else math.inf
        tstar = (y / s) ** (1.0 / (s - 1.0))
        return y * tstar - tstar**s

    return YoungFunction(
        eval=lambda t: np.asarray(t, dtype=np.float64) ** s,
        label=f"t^{s:g}",
        is_submultiplicative=True,
        closed_inverse=lambda y: np.asarray(y, dtype=np.float64) ** (1.0 / s),
        closed_complementary=conj,
    )


def l_log_l(k: int, outer: float = 1.0) -> YoungFunction:
    """[t(1+log+ t)^k]^outer."""
    if k < 0 or outer < 1:
        raise YoungFunctionError("need k >= 0 and outer >= 1")

    def ev(t):
        t = np.asarray(t, dtype=np.float64)
        base = t * (1.0 + _logp(t)) ** k
        return base if outer == 1.0 else base**outer

    return YoungFunction(ev, label=f"[t(1+log+t)^{k}]^{outer:g}",
                         is_submultiplicative=True if outer == 1.0 else None)


def phi_n(n: int) -> YoungFunction:
    """Phi_n(t) = t[1 + (log+ t)^(n-1)]; Phi_1(t) = t by convention.

    For n = 1 the log-power term is void (the endpoint bound in dimension
    one is the plain weak (1,1) estimate), so Phi_1 is the identity.
    """
    if n < 1:
        raise YoungFunctionError("n must be >= 1")
    if n == 1:
        f = power(1.0)
        return YoungFunction(f.eval, label="Phi_1", is_submultiplicative=True,
                             closed_inverse=f.closed_inverse,
                             closed_complementary=f.closed_complementary)

    def ev(t):
        t = np.asarray(t, dtype=np.float64)
        return t * (1.0 + _logp(t) ** (n - 1))

    return YoungFunction(ev, label=f"Phi_{n}", is_submultiplicative=True)


def phi_n_iter(n: int, m: int) -> YoungFunction:
    """m-fold composition of Phi_n with itself."""
    if m < 1:
        raise YoungFunctionError("m must be >= 1")
    base = phi_n(n)
    if m == 1:
        return base

    def ev(t):
        out = np.asarray(t, dtype=np.float64)
        for _ in range(m):
            out = base.eval(out)
        return out

    return YoungFunction(ev, label=f"Phi_{n}^({m})", is_submultiplicative=True)


def psi_n(n: int) -> YoungFunction:
    """Psi_n(t) = exp(t^(1/(n-1))) - 1 for n >= 2.

    Psi_1 is taken as the limit convention exp-growth indicator; it is only
    exercised for n >= 2.
    """
    if n < 2:
        def ev1(t):
            t = np.asarray(t, dtype=np.float64)
            return np.where(t > 0, np.expm1(np.minimum(t, 700.0) * np.inf), 0.0)

        return YoungFunction(ev1, label="Psi_1 (limit convention)")

    e = 1.0 / (n - 1)

    def ev(t):
        t = np.asarray(t, dtype=np.float64)
        x = t**e
        return np.where(x > 700.0, np.inf, np.expm1(np.minimum(x, 700.0)))

    return YoungFunction(
        ev, label=f"Psi_{n}",
        closed_inverse=lambda y: np.log1p(np.asarray(y, dtype=np.float64)) ** (n - 1),
    )


def identity() -> YoungFunction:
    return power(1.0)


_FAMILIES = {
    "power": lambda **kw: power(float(kw["s"])),
    "phi_n": lambda **kw: phi_n(int(kw["n"])),
    "phi_n_iter": lambda **kw: phi_n_iter(int(kw["n"]), int(kw["m"])),
    "llogl": lambda **kw: l_log_l(int(kw["k"]), float(kw.get("outer", 1.0))),
    "psi_n": lambda **kw: psi_n(int(kw["n"])),
    "identity": lambda **kw: identity(),
}


def from_config(name: str, **params) -> YoungFunction:
    """Build a canonical Young function from a family name + parameters."""
    try:
        return _FAMILIES[name](**params)
    except KeyError:
        raise YoungFunctionError(f"unknown Young family {name!r}") from None


# --- conjugate, inverse -----------------------------------------------------


def complementary_value(phi: YoungFunction, s: float, samples: int = 400) -> float:
    """Numeric convex conjugate: sup_t { s*t - phi(t) }.

    Coarse sup over a log-spaced grid on [1e-12, T_LARGE], refined by
    golden-section ascent around the grid maximizer. Returns +inf when the
    objective is still increasing at the largest sample.
    """
    if s < 0:
        raise YoungFunctionError("conjugate argument must be >= 0")
    if s == 0.0:
        return 0.0
    if phi.closed_complementary is not None:
        return phi.closed_complementary(s)
    ts = np.concatenate([[0.0], np.logspace(-12, math.log10(T_LARGE), samples)])
    with np.errstate(over="ignore", invalid="ignore"):
        obj = s * ts - phi.eval(ts)
    obj = np.where(np.isnan(obj), -np.inf, obj)
    k = int(np.argmax(obj))
    if k >= len(ts) - 1 and obj[-1] >= obj[-2]:
        return math.inf
    lo = ts[max(k - 1, 0)]
    hi = ts[min(k + 1, len(ts) - 1)]
    return _golden_max(lambda t: s * t - float(phi.eval(np.float64(t))), lo, hi)


def _golden_max(f, lo, hi, iters: int = 200):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a <= 1e-14 * max(1.0, abs(a)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return max(fc, fd, f(lo), f(hi))


def _conjugate_vectorized(phi: YoungFunction, sv: np.ndarray, samples: int) -> np.ndarray:
    """Conjugate at an array of points: grid argmax + vectorized golden ascent."""
    sv = np.atleast_1d(np.asarray(sv, dtype=np.float64))
    ts = np.concatenate([[0.0], np.logspace(-12, math.log10(T_LARGE), samples)])
    with np.errstate(over="ignore", invalid="ignore"):
        phits = phi.eval(ts)
        obj = sv[:, None] * ts[None, :] - phits[None, :]
    obj = np.where(np.isnan(obj), -np.inf, obj)
    k = np.argmax(obj, axis=1)
    out = np.zeros_like(sv)
    unbounded = (k >= len(ts) - 1) & (obj[:, -1] >= obj[:, -2])
    out[unbounded] = np.inf
    zero = sv == 0.0
    out[zero] = 0.0
    rest = ~(unbounded | zero)
    if np.any(rest):
        kr = k[rest]
        a = ts[np.maximum(kr - 1, 0)]
        b = ts[np.minimum(kr + 1, len(ts) - 1)]
        s = sv[rest]

        def f(t):
            with np.errstate(over="ignore", invalid="ignore"):
                v = s * t - phi.eval(t)
            return np.where(np.isnan(v), -np.inf, v)

        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        for _ in range(90):
            c = b - invphi * (b - a)
            d = a + invphi * (b - a)
            left = f(c) >= f(d)
            b = np.where(left, d, b)
            a = np.where(left, a, c)
        best = np.maximum(f(a), np.maximum(f(b), f(0.5 * (a + b))))
        out[rest] = np.maximum(best, 0.0)
    return out


def complementary(phi: YoungFunction, samples: int = 400) -> YoungFunction:
    """The complementary Young function as an evaluable object."""
    if phi.closed_complementary is not None:
        scalar = phi.closed_complementary

        def ev(sv):
            arr = np.atleast_1d(np.asarray(sv, dtype=np.float64))
            flat = np.array([scalar(float(x)) for x in arr.ravel()])
            res = flat.reshape(arr.shape)
            return res if np.ndim(sv) else np.float64(res.ravel()[0])

    else:

        def ev(sv):
            res = _conjugate_vectorized(phi, sv, samples)
            return res if np.ndim(sv) else np.float64(res.ravel()[0])

    return YoungFunction(ev, label=f"conj[{phi.label}]")


def inverse(phi: YoungFunction, y: float, rel_tol: float = 1e-12) -> float:
    """Smallest t with phi(t) >= y, by bracketing bisection."""
    if y < 0:
        raise YoungFunctionError("inverse argument must be >= 0")
    if y == 0.0:
        return 0.0
    if phi.closed_inverse is not None:
        return float(phi.closed_inverse(np.float64(y)))
    hi = 1.0
    while float(phi.eval(np.float64(hi))) < y:
        hi *= 2.0
        if hi > 1e300:
            raise YoungFunctionError(f"{phi.label}: inverse bracket unbounded at y={y}")
    lo = 0.0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if float(phi.eval(np.float64(mid))) >= y:
            hi = mid
        else:
            lo = mid
    return hi


def oneil_triple_check(
    a: YoungFunction, b: YoungFunction, c: YoungFunction,
    t_samples: np.ndarray | None = None,
) -> tuple[bool, float]:
    """Check A^{-1}(t) C^{-1}(t) <= B^{-1}(t) on log-spaced samples.

    Returns (holds, worst margin) with margin = min_t B^{-1}/(A^{-1} C^{-1}).
    """
    if t_samples is None:
        t_samples = np.logspace(-6, 9, 61)
    worst = math.inf
    for t in t_samples:
        ia, ic, ib = inverse(a, float(t)), inverse(c, float(t)), inverse(b, float(t))
        prod = ia * ic
        if prod == 0.0:
            continue
        worst = min(worst, ib / prod)
    return worst >= 1.0 - 1e-12, worst


# --- B*_p classification ----------------------------------------------------

CONVERGENT = "convergent"
DIVERGENT = "divergent"
BORDERLINE = "borderline"


def bp_star_classify(
    phi: YoungFunction, p: float, n: int, eps: float = 0.05
) -> tuple[str, float]:
    """Classify the tail of the B*_p integrand Phi_n(phi(t)) / t^(p+1).

    Fits the log-log slope over t in [1e2, 1e8]; convergent when the tail
    exponent is <= -1 - eps, divergent when >= -1 + eps, otherwise
    borderline (which gates as divergent). Returns (class, fitted exponent).
    """
    if p <= 1:
        raise YoungFunctionError("B*_p needs p > 1")
    pn = phi_n(n)
    ts = np.logspace(2, 8, 49)
    with np.errstate(over="ignore"):
        integrand = pn.eval(phi.eval(ts)) / ts ** (p + 1.0)
    if not np.all(np.isfinite(integrand)) or np.any(integrand <= 0):
        return DIVERGENT, math.inf
    slope = np.polyfit(np.log(ts), np.log(integrand), 1)[0]
    if slope <= -1.0 - eps:
        return CONVERGENT, float(slope)
    if slope >= -1.0 + eps:
        return DIVERGENT, float(slope)
    return BORDERLINE, float(slope)


def in_bp_star(phi: YoungFunction, p: float, n: int) -> bool:
    return bp_star_classify(phi, p, n)[0] == CONVERGENT
