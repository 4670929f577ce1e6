"""Weight functions, their admissibility conditions, and the derived
Young-function machinery.

A weight ``phi`` is a positive C^1 function on (0, inf) with s*phi(s)
strictly increasing and onto (0, inf), power-like growth s^r near 0
(r > -1), and a single sign of phi' beyond some threshold s1.  From it we
derive

* ``Phi(s)   = integral_0^s t phi(t) dt``  (a Young function),
* ``psi``    with t*psi(t) the inverse of s*phi(s) (conjugate companion),
* ``zeta``   the inverse of s*sqrt(phi(s)),
* ``theta(t) = zeta(t)/t`` and ``lam(t) = t theta'(t)/theta(t)``,

where ``lam`` is evaluated through its closed form
``-s phi'(s) / (s phi'(s) + 2 phi(s))`` at ``s = zeta(t)`` and always lies
in (-1, 1).  All objects are immutable after construction and every
operation is a pure function, safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from . import expr as dsl
from .errors import (BracketFailure, ExponentMismatch, NonMonotone,
                     NonPositivePhi, QuadratureFailure)
from .grids import GridField

__all__ = [
    "PhiSpec", "AuxBundle", "ValidationReport", "BUILTIN_NAMES",
    "validate_phi", "young_Phi", "conjugate_psi", "lambda_fn",
    "duality_check", "orlicz_integral", "luxemburg_norm",
]

_E = math.e


# ---------------------------------------------------------------------------
# builtin weight catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Funcs:
    """Closed-form evaluators: phi, phi', and the ratio s*phi'/phi.

    The ratio has its own evaluator because phi itself may overflow where
    the ratio is still perfectly representable (exp-type weights).
    """

    phi: Callable
    dphi: Callable
    slog: Callable


def _power_funcs(p):
    return _Funcs(
        phi=lambda s: s ** (p - 2.0),
        dphi=lambda s: (p - 2.0) * s ** (p - 3.0),
        slog=lambda s: np.full_like(np.asarray(s, dtype=float), p - 2.0),
    )


def _zygmund_funcs(p):
    def phi(s):
        return p * s ** (p - 2.0) * np.log(s + _E) + s ** (p - 1.0) / (s + _E)

    def dphi(s):
        return (p * (p - 2.0) * s ** (p - 3.0) * np.log(s + _E)
                + p * s ** (p - 2.0) / (s + _E)
                + (p - 1.0) * s ** (p - 2.0) / (s + _E)
                - s ** (p - 1.0) / (s + _E) ** 2)

    def slog(s):
        w = np.log(s + _E)
        sig = s / (s + _E)
        return (p * (p - 2.0) * w + (2.0 * p - 1.0) * sig - sig ** 2) / (p * w + sig)

    return _Funcs(phi, dphi, slog)


def _exp_power_funcs(p):
    def phi(s):
        return p * s ** (p - 2.0) * np.exp(s ** p)

    def dphi(s):
        return p * s ** (p - 3.0) * np.exp(s ** p) * ((p - 2.0) + p * s ** p)

    def slog(s):
        return (p - 2.0) + p * np.asarray(s, dtype=float) ** p

    return _Funcs(phi, dphi, slog)


def _arctan_funcs():
    return _Funcs(
        phi=lambda s: s / (s ** 2 + 1.0),
        dphi=lambda s: (1.0 - s ** 2) / (s ** 2 + 1.0) ** 2,
        slog=lambda s: (1.0 - s ** 2) / (1.0 + s ** 2),
    )


def _ratio4_funcs():
    return _Funcs(
        phi=lambda s: 2.0 * s ** 2 * (2.0 + s ** 2) / (s ** 2 + 1.0) ** 2,
        dphi=lambda s: 8.0 * s / (s ** 2 + 1.0) ** 3,
        slog=lambda s: 4.0 / ((1.0 + s ** 2) * (2.0 + s ** 2)),
    )


def _ratio_log_funcs():
    return _Funcs(
        phi=lambda s: 2.0 * s ** 4 / (s ** 2 + 1.0) ** 2,
        dphi=lambda s: 8.0 * s ** 3 / (s ** 2 + 1.0) ** 3,
        slog=lambda s: 4.0 / (1.0 + s ** 2),
    )


def _builtin(name: str, params: dict):
    """Return (_Funcs, r, s0, s1, tail_sign) for a builtin weight."""
    if name == "power":
        p = float(params["p"])
        if p <= 1.0:
            raise ValueError("power weight needs p > 1")
        return _power_funcs(p), p - 2.0, 1.0, 2.0, ("nonneg" if p >= 2 else "nonpos")
    if name == "zygmund":
        p = float(params["p"])
        if p <= 1.0:
            raise ValueError("zygmund weight needs p > 1")
        return _zygmund_funcs(p), p - 2.0, 0.5, 2.0, ("nonneg" if p >= 2 else "nonpos")
    if name == "exp_power":
        p = float(params["p"])
        if p <= 0.0:
            raise ValueError("exp_power weight needs p > 0")
        # phi' >= 0 once p*s^p >= 2-p
        s1 = 1.0 if p >= 2 else ((2.0 - p) / p) ** (1.0 / p) + 1.0
        return _exp_power_funcs(p), p - 2.0 if p != 1.0 else 0.0, 1.0, max(2.0, s1), "nonneg"
    if name == "arctan_def":
        if params:
            raise ValueError("arctan_def takes no parameters")
        return _arctan_funcs(), 1.0, 0.5, 1.0, "nonpos"
    if name == "ratio4":
        if params:
            raise ValueError("ratio4 takes no parameters")
        return _ratio4_funcs(), 2.0, 0.5, 1.0, "nonneg"
    if name == "ratio_log":
        if params:
            raise ValueError("ratio_log takes no parameters")
        return _ratio_log_funcs(), 4.0, 0.5, 1.0, "nonneg"
    raise ValueError(f"unknown builtin weight '{name}'")


BUILTIN_NAMES = ("power", "zygmund", "exp_power", "arctan_def", "ratio4", "ratio_log")


# ---------------------------------------------------------------------------
# weight specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiSpec:
    """A weight function with derivative and admissibility metadata.

    ``kind`` is a builtin name or ``"custom"``; custom weights carry
    ``phi_expr``/``dphi_expr`` strings (variable ``s``) in the coefficient
    expression language.  ``r`` is the growth exponent of (s phi)' near 0,
    ``s0``/``s1`` the near-zero and tail thresholds, ``tail_sign`` the
    declared sign of phi' on [s1, inf).
    """

    kind: str
    params: dict = field(default_factory=dict)
    r: float = 0.0
    s0: float = 1.0
    s1: float = 2.0
    tail_sign: str = "nonneg"
    phi_expr: Optional[str] = None
    dphi_expr: Optional[str] = None

    def __post_init__(self):
        if self.tail_sign not in ("nonneg", "nonpos"):
            raise ValueError("tail_sign must be 'nonneg' or 'nonpos'")
        if self.r <= -1.0:
            raise ValueError("growth exponent must satisfy r > -1")
        if self.s0 <= 0 or self.s1 < self.s0:
            raise ValueError("need 0 < s0 <= s1")
        if self.kind == "custom":
            if not self.phi_expr or not self.dphi_expr:
                raise ValueError("custom weights need phi_expr and dphi_expr")
            # parse eagerly so bad text fails at construction time
            for text in (self.phi_expr, self.dphi_expr):
                stray = dsl.free_variables(dsl.parse(text)) - {"s"}
                if stray:
                    raise ValueError(f"weight expression uses {sorted(stray)}; "
                                     "only 's' is available")
        else:
            _builtin(self.kind, self.params)

    @classmethod
    def builtin(cls, name: str, **params) -> "PhiSpec":
        funcs, r, s0, s1, tail = _builtin(name, params)
        return cls(kind=name, params=dict(params), r=r, s0=s0, s1=s1, tail_sign=tail)

    @classmethod
    def custom(cls, phi_expr: str, dphi_expr: str, *, r: float, s0: float = 1.0,
               s1: float = 2.0, tail_sign: str = "nonneg") -> "PhiSpec":
        return cls(kind="custom", r=r, s0=s0, s1=s1, tail_sign=tail_sign,
                   phi_expr=phi_expr, dphi_expr=dphi_expr)

    def functions(self) -> _Funcs:
        if self.kind != "custom":
            return _builtin(self.kind, self.params)[0]
        phi_tree = dsl.parse(self.phi_expr)
        dphi_tree = dsl.parse(self.dphi_expr)

        def phi(s):
            return np.asarray(dsl.evaluate(phi_tree, {"s": np.asarray(s, dtype=float)}))

        def dphi(s):
            return np.asarray(dsl.evaluate(dphi_tree, {"s": np.asarray(s, dtype=float)}))

        def slog(s):
            s = np.asarray(s, dtype=float)
            with np.errstate(all="ignore"):
                out = s * dphi(s) / phi(s)
            return out

        return _Funcs(phi, dphi, slog)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "params": dict(self.params), "r": self.r,
               "s0": self.s0, "s1": self.s1, "tail_sign": self.tail_sign}
        if self.kind == "custom":
            out["phi_expr"] = self.phi_expr
            out["dphi_expr"] = self.dphi_expr
        return out

    @classmethod
    def from_dict(cls, table: dict) -> "PhiSpec":
        kind = table["kind"]
        if kind == "custom":
            return cls(kind="custom",
                       r=float(table["r"]),
                       s0=float(table.get("s0", 1.0)),
                       s1=float(table.get("s1", 2.0)),
                       tail_sign=table.get("tail_sign", "nonneg"),
                       phi_expr=table["phi_expr"], dphi_expr=table["dphi_expr"])
        spec = cls.builtin(kind, **table.get("params", {}))
        overrides = {k: float(table[k]) for k in ("r", "s0", "s1") if k in table}
        if "tail_sign" in table:
            overrides["tail_sign"] = table["tail_sign"]
        if overrides:
            spec = PhiSpec(kind=spec.kind, params=spec.params,
                           **{**{"r": spec.r, "s0": spec.s0, "s1": spec.s1,
                                 "tail_sign": spec.tail_sign}, **overrides})
        return spec


# ---------------------------------------------------------------------------
# monotone inversion
# ---------------------------------------------------------------------------

def invert_monotone(f: Callable, targets, *, factor: float = 4.0,
                    max_expand: int = 1000, rel_tol: float = 1e-12,
                    lenient: bool = False) -> np.ndarray:
    """Solve f(x) = t for each target t, f strictly increasing on (0, inf).

    Brackets by geometric expansion (default factor 4) starting from the
    target value itself, then bisects in log space, which is unconditionally
    convergent for monotone f.  With ``lenient=True`` targets outside the
    (sampled) range of f map to 0 or +inf instead of raising; this is what
    nested inversions use when the outer bracketing probes beyond the range.
    """
    t = np.asarray(targets, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t).astype(float)
    out = np.empty_like(t)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise BracketFailure("targets must be finite and non-negative")
    zero = t == 0.0
    out[zero] = 0.0
    live = ~zero
    if not live.any():
        return float(out[0]) if scalar else out.reshape(np.shape(targets))

    tv = t[live]
    lo = np.clip(tv.copy(), 1e-300, 1e300)
    hi = lo.copy()

    def fval(x):
        with np.errstate(all="ignore"):
            y = np.asarray(f(x), dtype=float)
        # monotone increasing: overflow far right is +inf, far left is 0
        y = np.where(np.isnan(y), np.where(x >= tv, np.inf, 0.0), y)
        return y

    flo, fhi = fval(lo), fval(hi)
    for _ in range(max_expand):
        need_lo = flo > tv
        need_hi = fhi < tv
        if not (need_lo.any() or need_hi.any()):
            break
        lo = np.where(need_lo, np.maximum(lo / factor, 1e-300), lo)
        hi = np.where(need_hi, np.minimum(hi * factor, 1e300), hi)
        flo = np.where(need_lo, fval(lo), flo)
        fhi = np.where(need_hi, fval(hi), fhi)
        at_floor = (flo > tv) & (lo <= 1e-300)
        at_ceil = (fhi < tv) & (hi >= 1e300)
        if at_floor.any() or at_ceil.any():
            if not lenient:
                raise BracketFailure("no sign change within the expansion budget")
            # below range -> 0, above range -> +inf
            tv = np.where(at_floor, 0.0, tv)
            flo = np.where(at_floor, -np.inf, flo)
            tv = np.where(at_ceil, np.inf, tv)
            fhi = np.where(at_ceil, np.inf, fhi)
    else:
        if not lenient:
            raise BracketFailure("no sign change within the expansion budget")

    res = np.empty_like(tv)
    solvable = np.isfinite(tv) & (tv > 0)
    res[tv == 0.0] = 0.0
    res[np.isinf(tv)] = np.inf
    llo, lhi = np.log(lo[solvable]), np.log(hi[solvable])
    ts = tv[solvable]
    for _ in range(200):
        if np.all(lhi - llo <= np.log1p(rel_tol)):
            break
        mid = 0.5 * (llo + lhi)
        with np.errstate(all="ignore"):
            y = np.asarray(f(np.exp(mid)), dtype=float)
        y = np.where(np.isnan(y), np.inf, y)
        below = y < ts
        llo = np.where(below, mid, llo)
        lhi = np.where(below, lhi, mid)
    res[solvable] = np.exp(0.5 * (llo + lhi))
    out[live] = res
    return float(out[0]) if scalar else out.reshape(np.shape(targets))


# ---------------------------------------------------------------------------
# derived evaluators
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = leggauss(8)
_GL6_NODES, _GL6_WEIGHTS = leggauss(6)


class AuxBundle:
    """Derived evaluators attached to a weight function.

    Exposes ``Phi`` (adaptive quadrature of t*phi(t)), ``psi`` (conjugate
    companion via monotone inversion), ``zeta``/``theta``/``lambda_fn``,
    the divergence-ratio ``g``, and the conjugate bundle.  Instances hold
    no mutable state.
    """

    def __init__(self, spec_or_funcs, *, r: float = 0.0, s0: float = 1.0,
                 label: str = "custom-callables"):
        if isinstance(spec_or_funcs, PhiSpec):
            self.spec: Optional[PhiSpec] = spec_or_funcs
            self._funcs = spec_or_funcs.functions()
            self.r = spec_or_funcs.r
            self.s0 = spec_or_funcs.s0
            self.label = spec_or_funcs.kind
        else:
            self.spec = None
            self._funcs = spec_or_funcs
            self.r = r
            self.s0 = s0
            self.label = label

    # -- pointwise weight evaluators ------------------------------------

    def phi(self, s):
        return self._funcs.phi(np.asarray(s, dtype=float))

    def dphi(self, s):
        return self._funcs.dphi(np.asarray(s, dtype=float))

    def slog(self, s):
        """The ratio s*phi'(s)/phi(s), overflow-safe for builtins."""
        return self._funcs.slog(np.asarray(s, dtype=float))

    def sphi(self, s):
        s = np.asarray(s, dtype=float)
        return s * self._funcs.phi(s)

    def dsphi(self, s):
        s = np.asarray(s, dtype=float)
        return self._funcs.phi(s) + s * self._funcs.dphi(s)

    def ssqrtphi(self, s):
        s = np.asarray(s, dtype=float)
        return s * np.sqrt(self._funcs.phi(s))

    # -- Young function --------------------------------------------------

    def Phi(self, s: float) -> float:
        """integral_0^s t phi(t) dt by adaptive quadrature.

        The integrand behaves like t^(1+r) near 0 (integrable for r > -1);
        the interval is split at s0 so the endpoint behaviour stays inside
        one panel.
        """
        s = float(s)
        if not math.isfinite(s) or s < 0:
            raise ValueError("Phi needs a finite s >= 0")
        if s == 0.0:
            return 0.0

        def integrand(t):
            return float(t * self._funcs.phi(np.asarray(t, dtype=float)))

        points = [self.s0] if s > self.s0 else None
        val, err = quad(integrand, 0.0, s, points=points,
                        epsabs=1e-12, epsrel=1e-10, limit=200)
        if not math.isfinite(val) or err > 100.0 * max(1e-12, 1e-10 * abs(val)):
            raise QuadratureFailure(
                f"Phi({s}) quadrature error estimate {err:.2e} above tolerance")
        return val

    def _gl_panels(self, a: np.ndarray, b: np.ndarray, nodes: np.ndarray,
                   weights: np.ndarray) -> np.ndarray:
        """integral of t*phi(t) over each [a_i, b_i] by fixed Gauss-Legendre."""
        midp = 0.5 * (a + b)[:, None]
        half = 0.5 * (b - a)[:, None]
        pts = midp + half * nodes[None, :]
        return np.sum(half * weights[None, :] * pts * self._funcs.phi(pts), axis=1)

    def Phi_many(self, values) -> np.ndarray:
        """Vectorized Phi on a batch of non-negative values.

        Cumulative Gauss-Legendre backbone on a geometric mesh (16 panels
        per decade, extended 18 decades below the smallest value, where the
        truncated head is at most (1e-18)^(2+r) of Phi(min)), plus one
        short correction panel from the nearest backbone node to each
        value.  Matches the adaptive ``Phi`` to ~1e-12 relative.
        """
        v = np.asarray(values, dtype=float)
        shape = v.shape
        v = v.ravel()
        out = np.zeros_like(v)
        pos = v > 0.0
        if not pos.any():
            return out.reshape(shape)
        vs = np.unique(v[pos])
        lo, hi = vs[0], vs[-1]
        floor = max(lo * 1e-18, 1e-300)
        ndec = max(1, int(np.ceil(16.0 * np.log10(hi / floor))))
        backbone = np.geomspace(floor, hi, ndec + 1)
        seg = self._gl_panels(backbone[:-1], backbone[1:], _GL_NODES, _GL_WEIGHTS)
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        idx = np.searchsorted(backbone, vs, side="right") - 1
        idx = np.clip(idx, 0, backbone.size - 1)
        phi_at = cum[idx] + self._gl_panels(backbone[idx], vs,
                                            _GL6_NODES, _GL6_WEIGHTS)
        out[pos] = phi_at[np.searchsorted(vs, v[pos])]
        return out.reshape(shape)

    # -- inversions -------------------------------------------------------

    def inv_sphi(self, t, *, lenient: bool = False):
        return invert_monotone(self.sphi, t, lenient=lenient)

    def psi(self, t, *, lenient: bool = False):
        """psi(t) with t*psi(t) the inverse function of s*phi(s)."""
        t = np.asarray(t, dtype=float)
        s = invert_monotone(self.sphi, t, lenient=lenient)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(np.asarray(t) > 0, s / np.where(t > 0, t, 1.0), 0.0)
        return float(out) if out.ndim == 0 else out

    def dpsi(self, t, *, lenient: bool = False):
        """psi'(t) from the closed form at the preimage of t under s*phi."""
        s = invert_monotone(self.sphi, np.asarray(t, dtype=float), lenient=lenient)
        s = np.asarray(s, dtype=float)
        with np.errstate(all="ignore"):
            out = -self._funcs.dphi(s) / (self._funcs.phi(s) ** 2 * self.dsphi(s))
        return float(out) if np.ndim(out) == 0 else out

    def zeta(self, t, *, lenient: bool = False):
        """Inverse of s*sqrt(phi(s))."""
        return invert_monotone(self.ssqrtphi, t, lenient=lenient)

    def theta(self, t):
        t = np.asarray(t, dtype=float)
        z = self.zeta(t)
        out = z / t
        return float(out) if np.ndim(out) == 0 else out

    def lambda_fn(self, t):
        """lam(t) = t theta'(t)/theta(t) via the closed form at s = zeta(t).

        With x = s phi'(s)/phi(s) the value is -x/(x + 2), strictly inside
        (-1, 1) whenever (s phi)' > 0.
        """
        z = np.asarray(self.zeta(t), dtype=float)
        x = np.asarray(self._funcs.slog(z), dtype=float)
        out = -x / (x + 2.0)
        return float(out) if np.ndim(out) == 0 else out

    def g(self, s):
        """|s phi'| / (2 sqrt(phi (s phi)')), the ratio whose sup is lambda0.

        Evaluated as |x| / (2 sqrt(1 + x)) with x = s phi'/phi, which stays
        representable where phi itself overflows.  Samples whose evaluation
        is invalid come back as +inf (conservative toward divergence).
        """
        x = np.asarray(self._funcs.slog(np.asarray(s, dtype=float)), dtype=float)
        with np.errstate(all="ignore"):
            out = np.abs(x) / (2.0 * np.sqrt(1.0 + x))
        out = np.where(np.isnan(out), np.inf, out)
        return float(out) if np.ndim(out) == 0 else out

    # -- conjugate bundle --------------------------------------------------

    def conjugate(self) -> "AuxBundle":
        """Bundle built on psi, so its theta/lambda invert t*sqrt(psi(t)).

        psi is evaluated by actual inversion of s*phi (not through any
        duality identity), which keeps duality_check a genuine two-route
        test.  Out-of-range probes during nested bracketing saturate to the
        monotone sentinels instead of raising.
        """
        outer = self

        def psi_fn(t):
            return outer.psi(t, lenient=True)

        def dpsi_fn(t):
            return outer.dpsi(t, lenient=True)

        def slog_fn(t):
            s = invert_monotone(outer.sphi, np.asarray(t, dtype=float), lenient=True)
            x = np.asarray(outer._funcs.slog(np.asarray(s, dtype=float)), dtype=float)
            return -x / (1.0 + x)

        r = self.r
        funcs = _Funcs(phi=psi_fn, dphi=dpsi_fn, slog=slog_fn)
        s0_conj = float(self.sphi(self.s0))
        return AuxBundle(funcs, r=-r / (1.0 + r), s0=s0_conj,
                         label=f"conjugate({self.label})")


# ---------------------------------------------------------------------------
# validation of conditions 1-5
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    conditions: dict
    r: float
    c1: Optional[float]
    c2: Optional[float]
    sampled_range: tuple
    grid: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def to_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "r": self.r, "c1": self.c1, "c2": self.c2,
            "sampled_range": list(self.sampled_range),
            "grid": {"lo": self.grid[0], "hi": self.grid[1], "num": self.grid[2]},
            "conditions": {k: {"passed": v.passed, "detail": v.detail}
                           for k, v in self.conditions.items()},
        }


def validate_phi(spec: PhiSpec, *, s_lo: float = 1e-8, s_hi: float = 1e8,
                 num: int = 2000, strict: bool = False) -> ValidationReport:
    """Sampled check of the five admissibility conditions.

    This certifies nothing beyond the sample grid: condition 3 in
    particular is only falsifiable on a finite grid, so the report states
    the sampled range of s*phi(s).  Condition 4 fits C1, C2 as the extreme
    ratios (s phi)'/s^r on (0, s0) and fails once they differ by more than
    a factor of 10.  With ``strict=True`` failures of conditions 2 and 4
    raise NonMonotone / ExponentMismatch instead of only being recorded.
    """
    if not (s_lo <= 1e-8 and s_hi >= 1e8 and num >= 1000):
        raise ValueError("validation grid must span [1e-8, 1e8] with >= 1e3 points")
    funcs = spec.functions()
    s = np.geomspace(s_lo, s_hi, num)
    with np.errstate(all="ignore"):
        phi_v = np.asarray(funcs.phi(s), dtype=float)
        dphi_v = np.asarray(funcs.dphi(s), dtype=float)
    finite = np.isfinite(phi_v)
    if np.any(phi_v[finite] <= 0.0) or not finite.any():
        bad = s[finite][phi_v[finite] <= 0.0]
        at = bad[0] if bad.size else s[0]
        raise NonPositivePhi(f"phi(s) <= 0 at s = {at:.6g}")
    conditions = {}

    both = finite & np.isfinite(dphi_v)
    # overflow to inf far out is an IEEE artifact, not a smoothness defect;
    # NaN anywhere, or non-finite values in the near-zero half, do fail
    no_nan = not (np.any(np.isnan(phi_v)) or np.any(np.isnan(dphi_v)))
    low_half_ok = bool(np.all(both[: num // 2]))
    conditions["c1_smooth"] = ConditionResult(
        no_nan and low_half_ok,
        f"phi, phi' evaluate cleanly at {int(both.sum())}/{num} samples "
        "(C^1 continuity itself is not machine-checkable)")

    dsphi_v = phi_v + s * dphi_v
    mono_ok = ~(both & (dsphi_v <= 0.0))
    cond2 = bool(np.all(mono_ok))
    if not cond2 and strict:
        raise NonMonotone(f"(s phi)' <= 0 at s = {s[~mono_ok][0]:.6g}")
    conditions["c2_increasing"] = ConditionResult(
        cond2, "(s phi(s))' > 0 at all samples" if cond2 else
        f"(s phi(s))' <= 0 at s = {s[~mono_ok][0]:.6g}")

    sphi_v = np.where(finite, s * phi_v, np.nan)
    lo_attained = float(np.nanmin(sphi_v))
    hi_attained = float(np.nanmax(sphi_v))
    # the full range (0, inf) is unfalsifiable on a grid; check instead that
    # s*phi(s) keeps growing through both grid ends (log-log slope >= 0.01)
    cond3 = True
    detail3 = []
    for end in ("left", "right"):
        window = (s <= s_lo * 100.0) if end == "left" else (s >= s_hi / 100.0)
        sw, fw = s[window], sphi_v[window]
        ok = np.isfinite(fw) & (fw > 0)
        if ok.sum() >= 2:
            slope = np.polyfit(np.log(sw[ok]), np.log(fw[ok]), 1)[0]
            if slope < 0.01:
                cond3 = False
            detail3.append(f"{end} slope {slope:.3g}")
        else:
            # overflow inside the window is itself evidence of growth
            detail3.append(f"{end} slope beyond float range")
    conditions["c3_range"] = ConditionResult(
        cond3, f"sampled range of s*phi(s) is [{lo_attained:.3g}, {hi_attained:.3g}]; "
        + ", ".join(detail3))

    near = s < spec.s0
    c1_fit = c2_fit = None
    if near.any():
        ratio = dsphi_v[near] / s[near] ** spec.r
        ratio = ratio[np.isfinite(ratio) & (ratio > 0)]
        if ratio.size:
            c1_fit, c2_fit = float(ratio.min()), float(ratio.max())
    if c1_fit is None:
        cond4 = False
        detail4 = "no usable samples in (0, s0)"
    elif c2_fit > 10.0 * c1_fit:
        cond4 = False
        detail4 = (f"(s phi)'/s^r varies by {c2_fit / c1_fit:.2f}x "
                   f"(C1 = {c1_fit:.4g}, C2 = {c2_fit:.4g})")
    else:
        cond4 = True
        detail4 = f"C1 = {c1_fit:.6g}, C2 = {c2_fit:.6g}"
    if cond4 and spec.r == 0.0:
        head = phi_v[: max(8, num // 100)]
        limit_ok = bool(np.all(np.isfinite(head))
                        and head.max() - head.min() <= 1e-2 * abs(head[0])
                        and head[0] > 0)
        sdphi0 = abs(s[0] * dphi_v[0]) if np.isfinite(dphi_v[0]) else np.inf
        slope_ok = sdphi0 <= 1e-2 * max(head[0], 1e-300)
        cond4 = limit_ok and slope_ok
        detail4 += (f"; r = 0 extras: phi(0+) ~ {head[0]:.6g} "
                    f"({'stable' if limit_ok else 'not stable'}), "
                    f"s*phi'(s) at {s[0]:.1e} is {sdphi0:.3g}")
    if not cond4 and strict:
        raise ExponentMismatch(detail4)
    conditions["c4_growth"] = ConditionResult(cond4, detail4)

    tail = s >= spec.s1
    tail_d = dphi_v[tail & both]
    scale = np.nanmax(np.abs(dphi_v[both])) if both.any() else 1.0
    tol = 1e-12 * max(scale, 1.0)
    if spec.tail_sign == "nonneg":
        cond5 = bool(np.all(tail_d >= -tol))
    else:
        cond5 = bool(np.all(tail_d <= tol))
    conditions["c5_tail_sign"] = ConditionResult(
        cond5, f"phi' is {spec.tail_sign} on [{spec.s1:.3g}, {s_hi:.3g}]" if cond5
        else f"phi' changes against declared '{spec.tail_sign}' sign past s1")

    return ValidationReport(conditions=conditions, r=spec.r, c1=c1_fit, c2=c2_fit,
                            sampled_range=(lo_attained, hi_attained),
                            grid=(s_lo, s_hi, num))


# ---------------------------------------------------------------------------
# duality and grid functionals
# ---------------------------------------------------------------------------

def young_Phi(aux: AuxBundle, s: float) -> float:
    """Operation alias: the Young function at s (see AuxBundle.Phi)."""
    return aux.Phi(s)


def conjugate_psi(aux: AuxBundle, t):
    """Operation alias: psi(t) with t*psi(t) inverting s*phi(s)."""
    return aux.psi(t)


def lambda_fn(aux: AuxBundle, t):
    """Operation alias: the coupling value lam(t) (see AuxBundle.lambda_fn)."""
    return aux.lambda_fn(t)


def duality_check(aux: AuxBundle, t) -> tuple:
    """Return (theta~(t) * theta(t), lam~(t) + lam(t)) for the conjugate pair.

    Both components must be (1, 0) up to inversion tolerance; the tilde
    quantities are computed from psi by genuine double inversion.
    """
    conj = aux.conjugate()
    prod = np.asarray(conj.theta(t)) * np.asarray(aux.theta(t))
    sums = np.asarray(conj.lambda_fn(t)) + np.asarray(aux.lambda_fn(t))
    if np.ndim(prod) == 0:
        return float(prod), float(sums)
    return prod, sums


def orlicz_integral(aux: AuxBundle, u: GridField) -> float:
    """Sum of Phi(|u_i|) times the nodal share of the domain measure."""
    vals = np.abs(u.values).ravel()
    return float(u.domain.node_weight * np.sum(aux.Phi_many(vals)))


def luxemburg_norm(aux: AuxBundle, u: GridField, *, initial: float = None) -> float:
    """inf{lam > 0 : sum Phi(|u_i|/lam) w_i <= 1} by bracketed bisection.

    Returns 0 for the zero field.  The bracket starts from ``initial`` (or
    max|u|), grows/shrinks geometrically until it straddles the root of
    F(lam) = sum w Phi(|u|/lam) - 1, and bisects until the bracket width
    falls below 1e-10 times its upper end.
    """
    vals = np.abs(u.values).ravel()
    vmax = float(vals.max()) if vals.size else 0.0
    if vmax == 0.0:
        return 0.0
    w = u.domain.node_weight

    def excess(lam: float) -> float:
        return w * float(np.sum(aux.Phi_many(vals / lam))) - 1.0

    hi = float(initial) if initial else vmax
    lo = hi
    for _ in range(600):
        if excess(hi) <= 0.0:
            break
        hi *= 2.0
    else:
        raise BracketFailure("no upper Luxemburg bracket within 600 doublings")
    for _ in range(600):
        if excess(lo) > 0.0:
            break
        lo /= 2.0
    else:
        raise BracketFailure("no lower Luxemburg bracket within 600 halvings")
    while hi - lo > 1e-10 * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
