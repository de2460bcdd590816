"""Truncated Laurent series in tau with coefficients in Q[t]/(t^(N+1)).

A :class:`BiSeries` stands for the restriction of a meromorphic function of
``xi`` to the line ``xi = tau*lam + t*ell``.  Coefficients are known exactly
for tau-degrees up to ``tau_max``; everything below ``tau_min`` is zero.
``tau_max=None`` marks an exact (Laurent polynomial) value.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable

from .exceptions import WindowMismatch, ZeroTauCoefficient
from .serialization import format_rational


def _min_max(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _plus(a, b):
    return None if a is None else a + b


class BiSeries:
    __slots__ = ("tau_min", "tau_max", "t_max", "coeffs")

    def __init__(self, coeffs=None, *, tau_min: int = 0, tau_max: int | None = None,
                 t_max: int = 0):
        self.t_max = t_max
        self.tau_max = tau_max
        cleaned = {}
        for (j, k), c in (coeffs or {}).items():
            if k > t_max or (tau_max is not None and j > tau_max):
                continue
            c = Fraction(c)
            if c:
                cleaned[(j, k)] = c
        # every tracked coefficient is known, so the true lowest degree is
        # the lowest stored one, or lies beyond the window
        lowest = min((j for j, _ in cleaned), default=None)
        if lowest is not None:
            tau_min = lowest
        elif tau_max is not None:
            tau_min = max(tau_min, tau_max + 1)
        self.tau_min = tau_min
        self.coeffs = cleaned

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c, t_max: int = 0) -> "BiSeries":
        return cls({(0, 0): c}, tau_min=0, tau_max=None, t_max=t_max)

    @classmethod
    def monomial(cls, c, tau_degree: int, t_degree: int = 0, t_max: int = 0) -> "BiSeries":
        return cls({(tau_degree, t_degree): c}, tau_min=tau_degree, tau_max=None, t_max=t_max)

    # -- access ---------------------------------------------------------------
    def coeff(self, j: int, k: int = 0) -> Fraction:
        if k > self.t_max:
            raise WindowMismatch(f"t-degree {k} exceeds t_max={self.t_max}")
        if self.tau_max is not None and j > self.tau_max:
            raise WindowMismatch(f"tau-degree {j} exceeds tracked tau_max={self.tau_max}")
        return self.coeffs.get((j, k), Fraction(0))

    def t_slice(self, k: int) -> dict[int, Fraction]:
        """Tau-coefficients of t^k, as a sparse map."""
        if k > self.t_max:
            raise WindowMismatch(f"t-degree {k} exceeds t_max={self.t_max}")
        return {j: c for (j, kk), c in self.coeffs.items() if kk == k}

    def is_zero(self) -> bool:
        return not self.coeffs

    def lowest_nonzero_degree(self) -> int | None:
        return min((j for j, _ in self.coeffs), default=None)

    # -- arithmetic -----------------------------------------------------------
    def _check_t(self, other: "BiSeries") -> None:
        if self.t_max != other.t_max:
            raise WindowMismatch(f"t_max mismatch: {self.t_max} vs {other.t_max}")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check_t(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return BiSeries(out, tau_min=min(self.tau_min, other.tau_min),
                        tau_max=_min_max(self.tau_max, other.tau_max), t_max=self.t_max)

    def __neg__(self) -> "BiSeries":
        return self.scale(-1)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def scale(self, c) -> "BiSeries":
        c = Fraction(c)
        return BiSeries({key: c * v for key, v in self.coeffs.items()}, tau_min=self.tau_min,
                        tau_max=self.tau_max, t_max=self.t_max)

    def shift_tau(self, m: int) -> "BiSeries":
        """Multiply by tau^m."""
        return BiSeries({(j + m, k): v for (j, k), v in self.coeffs.items()},
                        tau_min=self.tau_min + m, tau_max=_plus(self.tau_max, m),
                        t_max=self.t_max)

    def truncate(self, tau_max: int | None) -> "BiSeries":
        if tau_max is not None and self.tau_max is not None and tau_max > self.tau_max:
            raise WindowMismatch(f"cannot extend window from {self.tau_max} to {tau_max}")
        return BiSeries(self.coeffs, tau_min=self.tau_min,
                        tau_max=_min_max(tau_max, self.tau_max), t_max=self.t_max)

    def mul(self, other: "BiSeries", tau_max: int | None = None) -> "BiSeries":
        """Product; ``tau_max`` requests a window and must be attainable."""
        self._check_t(other)
        attainable = _min_max(_plus(self.tau_max, other.tau_min),
                              _plus(other.tau_max, self.tau_min))
        if tau_max is not None and attainable is not None and tau_max > attainable:
            raise WindowMismatch(f"requested tau_max={tau_max} but inputs determine only "
                                 f"up to {attainable}")
        window = _min_max(tau_max, attainable)
        t_max = self.t_max
        out: dict = {}
        for (j1, k1), c1 in self.coeffs.items():
            for (j2, k2), c2 in other.coeffs.items():
                k = k1 + k2
                j = j1 + j2
                if k > t_max or (window is not None and j > window):
                    continue
                key = (j, k)
                out[key] = out.get(key, 0) + c1 * c2
        return BiSeries(out, tau_min=self.tau_min + other.tau_min, tau_max=window, t_max=t_max)

    __mul__ = mul

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.t_max == other.t_max and self.tau_max == other.tau_max
                and self.coeffs == other.coeffs)

    def agrees_with(self, other: "BiSeries", tau_max: int | None = None) -> bool:
        """Coefficientwise equality on the common known window."""
        window = _min_max(_min_max(self.tau_max, other.tau_max), tau_max)
        keys = set(self.coeffs) | set(other.coeffs)
        for j, k in keys:
            if k > min(self.t_max, other.t_max) or (window is not None and j > window):
                continue
            if self.coeffs.get((j, k), 0) != other.coeffs.get((j, k), 0):
                return False
        return True

    def dump(self) -> str:
        """Debug dump: one ``tau^j t^k: a/b`` line per nonzero coefficient."""
        return "\n".join(f"tau^{j} t^{k}: {format_rational(c)}"
                         for (j, k), c in sorted(self.coeffs.items()))

    def __repr__(self) -> str:
        return (f"BiSeries(tau_min={self.tau_min}, tau_max={self.tau_max}, "
                f"t_max={self.t_max}, coeffs={dict(sorted(self.coeffs.items()))})")


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, n + 1):
        table.append(-sum((comb(m + 1, k) * table[k] for k in range(m)), Fraction(0)) / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be non-negative")
    # grow in blocks so the cache holds few tables
    size = max(16, 1 << (n.bit_length()))
    return _bernoulli_table(size)[n]


def _power_series_along_line(coef: Callable[[int], Fraction], c_tau, c_t, tau_max: int,
                             t_max: int) -> BiSeries:
    """sum_m coef(m) * (c_tau*tau + c_t*t)^m, known up to tau^tau_max."""
    c_tau = Fraction(c_tau)
    c_t = Fraction(c_t)
    out: dict = {}
    if tau_max >= 0:
        for m in range(tau_max + t_max + 1):
            a = coef(m)
            if not a:
                continue
            for k in range(min(m, t_max) + 1):
                j = m - k
                if j > tau_max:
                    continue
                term = a * comb(m, k) * c_tau ** j * c_t ** k
                if term:
                    out[(j, k)] = out.get((j, k), 0) + term
    return BiSeries(out, tau_min=0, tau_max=tau_max, t_max=t_max)


def _exp_coef(m: int) -> Fraction:
    return Fraction(1, factorial(m))


def _b_coef(m: int) -> Fraction:
    if m == 0:
        return Fraction(1, 2)
    return -bernoulli(m + 1) / factorial(m + 1)


def exp_factor(c_tau, c_t, tau_max: int, t_max: int) -> BiSeries:
    """Expansion of exp(c_tau*tau + c_t*t)."""
    return _power_series_along_line(_exp_coef, c_tau, c_t, tau_max, t_max)


def b_function_factor(c_tau, c_t, tau_max: int, t_max: int) -> BiSeries:
    """Expansion of B(x) = 1/(1-e^x) + 1/x, holomorphic at 0, at x = c_tau*tau + c_t*t."""
    return _power_series_along_line(_b_coef, c_tau, c_t, tau_max, t_max)


def inv_linear_low_degree(c_t, t_max: int) -> int:
    return -1 - (t_max if c_t else 0)


def inv_linear_factor(c_tau, c_t, tau_max: int, t_max: int) -> BiSeries:
    """Expansion of 1/(c_tau*tau + c_t*t) = sum_j (-c_t)^j t^j / (c_tau tau)^(j+1)."""
    c_tau = Fraction(c_tau)
    c_t = Fraction(c_t)
    if c_tau == 0:
        raise ZeroTauCoefficient("inverse linear factor needs a nonzero tau coefficient")
    out = {}
    for j in range(t_max + 1):
        deg = -(j + 1)
        if deg > tau_max:
            continue
        c = (-c_t) ** j / c_tau ** (j + 1)
        if c:
            out[(deg, j)] = c
    return BiSeries(out, tau_min=inv_linear_low_degree(c_t, t_max), tau_max=tau_max, t_max=t_max)


def geometric_exp_factor(c_tau, c_t, tau_max: int, t_max: int) -> BiSeries:
    """Expansion of 1/(1 - e^x) = -1/x + B(x) at x = c_tau*tau + c_t*t."""
    if Fraction(c_tau) == 0:
        raise ZeroTauCoefficient("geometric factor needs a nonzero tau coefficient")
    return (b_function_factor(c_tau, c_t, tau_max, t_max)
            - inv_linear_factor(c_tau, c_t, tau_max, t_max))


def linear_power(c_tau, c_t, m: int, t_max: int) -> BiSeries:
    """The polynomial (c_tau*tau + c_t*t)^m, exact."""
    c_tau = Fraction(c_tau)
    c_t = Fraction(c_t)
    out = {}
    for k in range(min(m, t_max) + 1):
        c = comb(m, k) * c_tau ** (m - k) * c_t ** k
        if c:
            out[(m - k, k)] = c
    return BiSeries(out, tau_min=max(0, m - t_max), tau_max=None, t_max=t_max)


def product(factors: Iterable[tuple[int, Callable[[int], BiSeries]]], tau_max: int,
            t_max: int) -> BiSeries:
    """Product of lazily built factors, each given as ``(low_degree, build)``.

    ``build(window)`` must return the factor known up to tau^window; the
    window handed to each factor is just large enough for the product to be
    known up to ``tau_max``.
    """
    factors = list(factors)
    total_low = sum(low for low, _ in factors)
    out = BiSeries.constant(1, t_max=t_max)
    for low, build in factors:
        out = out.mul(build(tau_max - (total_low - low)), tau_max=None)
    return out.truncate(tau_max)


# -- products of one-variable factors ------------------------------------------
#
# Every factor used for cone series is a function of a single linear form
# x = c_tau*tau + c_t*t, so its expansion is graded by total degree in
# (tau, t).  Truncating by total degree is exact and far tighter than
# budgeting tau-windows factor by factor.

_LINE_LOW = {"exp": 0, "b": 0, "inverse": -1, "geometric": -1}


def _line_terms(kind: str, c_tau: Fraction, c_t: Fraction, max_total: int, t_max: int) -> dict:
    out: dict = {}
    if kind in ("inverse", "geometric"):
        if c_tau == 0:
            raise ZeroTauCoefficient(f"{kind} factor needs a nonzero tau coefficient")
        sign = -1 if kind == "geometric" else 1
        if max_total >= -1:
            for k in range(t_max + 1):
                c = sign * (-c_t) ** k / c_tau ** (k + 1)
                if c:
                    out[(-(k + 1), k)] = c
        if kind == "inverse":
            return out
    coef = _exp_coef if kind == "exp" else _b_coef
    for m in range(max_total + 1):
        a = coef(m)
        if not a:
            continue
        for k in range(min(m, t_max) + 1):
            c = a * comb(m, k) * c_tau ** (m - k) * c_t ** k
            if c:
                out[(m - k, k)] = out.get((m - k, k), 0) + c
    return out


def line_product(factors: Iterable[tuple[str, object, object]], tau_max: int, t_max: int,
                 scale=1) -> BiSeries:
    """``scale * prod f_i(c_tau*tau + c_t*t)`` known through tau^tau_max.

    Each factor is ``(kind, c_tau, c_t)`` with kind one of ``"exp"`` (e^x),
    ``"b"`` (B(x)), ``"inverse"`` (1/x) or ``"geometric"`` (1/(1-e^x)).
    """
    factors = [(kind, Fraction(a), Fraction(b)) for kind, a, b in factors]
    lows = [_LINE_LOW[kind] for kind, _, _ in factors]
    top = tau_max + t_max
    remaining_low = sum(lows)
    acc = {(0, 0): Fraction(scale)}
    for (kind, c_tau, c_t), low in zip(factors, lows):
        remaining_low -= low
        bound = top - remaining_low
        terms = _line_terms(kind, c_tau, c_t, bound - min(j + k for j, k in acc) if acc else 0, t_max)
        new: dict = {}
        for (j1, k1), a in acc.items():
            for (j2, k2), b in terms.items():
                k = k1 + k2
                j = j1 + j2
                if k > t_max or j + k > bound:
                    continue
                new[(j, k)] = new.get((j, k), 0) + a * b
        acc = new
    return BiSeries(acc, tau_min=sum(lows) - t_max, tau_max=tau_max, t_max=t_max)
