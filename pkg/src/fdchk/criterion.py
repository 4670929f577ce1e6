"""Algebraic dissipativity criteria for complex-coefficient operators.

For a weight phi and the operator u -> div(A grad u), the pointwise test
with symmetric Im A reads

    |s phi'(s)| |<Im A(x) xi, xi>| <= 2 sqrt(phi (s phi)') <Re A(x) xi, xi>

for all s > 0 and unit xi.  When

    lambda0 = sup_s |s phi'(s)| / (2 sqrt(phi(s) (s phi(s))'))

is finite the test collapses to the s-free form
``lambda0 |<Im A xi, xi>| <= <Re A xi, xi>``; lambda0 = +inf forces Im A = 0
together with Re A positive semidefinite.  The block quadratic form

    [1 - lam^2] <Re_s A xi, xi> + <Re_s A eta, eta>
      + [1 + lam] <Im A xi, eta> + [1 - lam] <Im A* xi, eta>   >= 0

is sufficient without any symmetry assumption; with symmetric Im A its
positivity over all lam in the range of the weight's lam(t) is equivalent
to the pointwise test.  Everything here is pure and immutable and may be
called from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import expr as dsl
from .errors import ConvergenceFailure, EvalError
from .orlicz import AuxBundle

__all__ = [
    "MatrixField", "SamplingConfig", "CriterionReport", "Lambda0Result",
    "Witness", "lambda0", "form_min_eig", "check_pointwise",
    "sufficient_condition", "necessary_real_part",
    "strong_ellipticity_margin", "check_operator", "unit_directions",
]


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

def _as_entry(value):
    """Normalize a matrix entry to (re_tree, im_tree) or a complex constant."""
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        re_t, im_t = value
        re_tree = dsl.parse(re_t) if isinstance(re_t, str) else dsl.parse(repr(float(re_t)))
        im_tree = dsl.parse(im_t) if isinstance(im_t, str) else dsl.parse(repr(float(im_t)))
        return (re_tree, im_tree)
    raise ValueError(f"matrix entry must be a number or a (re, im) pair, got {value!r}")


@dataclass(frozen=True)
class MatrixField:
    """Map x -> A(x), a complex N x N coefficient matrix.

    Entries are complex constants or pairs of expression strings in the
    variables x1..xN.  Evaluation is vectorized over sample points.
    """

    n: int
    entries: tuple

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError("spatial dimension must be 1, 2 or 3")
        rows = tuple(tuple(_as_entry(v) for v in row) for row in self.entries)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"entries must form an {self.n}x{self.n} matrix")
        allowed = {f"x{k + 1}" for k in range(self.n)}
        for row in rows:
            for entry in row:
                if isinstance(entry, complex):
                    continue
                for tree in entry:
                    stray = dsl.free_variables(tree) - allowed
                    if stray:
                        raise ValueError(
                            f"entry uses {sorted(stray)} outside x1..x{self.n}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def constant(cls, matrix) -> "MatrixField":
        m = np.asarray(matrix, dtype=complex)
        return cls(n=m.shape[0], entries=tuple(tuple(row) for row in m))

    @classmethod
    def from_strings(cls, entries) -> "MatrixField":
        return cls(n=len(entries), entries=tuple(tuple(tuple(e) for e in row)
                                                 for row in entries))

    @property
    def is_constant(self) -> bool:
        return all(isinstance(v, complex) for row in self.entries for v in row)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """A at each point; ``points`` is (m, n), the result (m, n, n)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.n:
            raise ValueError(f"points must have {self.n} coordinates")
        m = pts.shape[0]
        out = np.empty((m, self.n, self.n), dtype=complex)
        bindings = {f"x{k + 1}": pts[:, k] for k in range(self.n)}
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if isinstance(entry, complex):
                    out[:, i, j] = entry
                else:
                    re_tree, im_tree = entry
                    try:
                        re_v = dsl.evaluate(re_tree, bindings)
                        im_v = dsl.evaluate(im_tree, bindings)
                    except dsl.UnboundVariable as exc:  # pragma: no cover
                        raise EvalError(str(exc)) from exc
                    out[:, i, j] = np.broadcast_to(re_v, (m,)) \
                        + 1j * np.asarray(np.broadcast_to(im_v, (m,)))
        return out

    def im_symmetric(self, points: np.ndarray, tol: float = 1e-12) -> bool:
        a = self.evaluate(points)
        imag = a.imag
        return bool(np.max(np.abs(imag - np.transpose(imag, (0, 2, 1)))) <= tol)

    def max_entry(self, points: np.ndarray) -> float:
        return float(np.max(np.abs(self.evaluate(points))))


@dataclass(frozen=True)
class SamplingConfig:
    """Where and how densely the criteria sample x, directions, s and t."""

    box: Optional[tuple] = None           # ((lo, hi), ...) per axis; unit box default
    nx: int = 9                           # sample points per axis
    n_directions: int = 0                 # 0 -> dimension default (720 / 2000)
    t_lo: float = 1e-6
    t_hi: float = 1e6
    t_num: int = 200
    s_lo: float = 1e-8
    s_hi: float = 1e8
    s_num: int = 10000
    seed: int = 0

    def points(self, n: int) -> np.ndarray:
        box = self.box if self.box is not None else tuple((0.0, 1.0) for _ in range(n))
        if len(box) != n:
            raise ValueError("sampling box dimension mismatch")
        axes = [np.linspace(lo, hi, self.nx) for lo, hi in box]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def points_for(self, a_field: "MatrixField") -> np.ndarray:
        """Sample points; a constant field needs only the box center."""
        if a_field.is_constant:
            box = self.box if self.box is not None \
                else tuple((0.0, 1.0) for _ in range(a_field.n))
            return np.array([[0.5 * (lo + hi) for lo, hi in box]])
        return self.points(a_field.n)

    def t_grid(self) -> np.ndarray:
        return np.geomspace(self.t_lo, self.t_hi, self.t_num)


def unit_directions(n: int, count: int = 0) -> np.ndarray:
    """Deterministic unit directions: uniform angles (N=2), Fibonacci
    sphere (N=3); antipodes are redundant for quadratic forms."""
    if n == 1:
        return np.array([[1.0]])
    if n == 2:
        m = count or 720
        ang = np.linspace(0.0, np.pi, m, endpoint=False)
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    m = count or 2000
    k = np.arange(m)
    golden = (1.0 + 5.0 ** 0.5) / 2.0
    z = 1.0 - (2.0 * k + 1.0) / m
    theta = 2.0 * np.pi * k / golden
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack([rho * np.cos(theta), rho * np.sin(theta), z], axis=1)


# ---------------------------------------------------------------------------
# lambda0
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lambda0Result:
    value: float                 # may be inf
    attained_s: Optional[float]
    reason: str
    tail_limits: tuple = (None, None)
    search_window: tuple = (1e-8, 1e8)

    @property
    def is_finite(self) -> bool:
        return np.isfinite(self.value)

    def __float__(self):
        return float(self.value)


_GOLDEN = (5.0 ** 0.5 - 1.0) / 2.0


def _golden_max(fn, a: float, b: float, iters: int = 80) -> tuple:
    """Golden-section maximum of fn on log-bracket [a, b]."""
    la, lb = np.log(a), np.log(b)
    c = lb - _GOLDEN * (lb - la)
    d = la + _GOLDEN * (lb - la)
    fc, fd = fn(np.exp(c)), fn(np.exp(d))
    for _ in range(iters):
        if fc >= fd:
            lb, d, fd = d, c, fc
            c = lb - _GOLDEN * (lb - la)
            fc = fn(np.exp(c))
        else:
            la, c, fc = c, d, fd
            d = la + _GOLDEN * (lb - la)
            fd = fn(np.exp(d))
    x = np.exp(0.5 * (la + lb))
    return x, fn(x)


def _tail_limit(aux: AuxBundle, side: str) -> Optional[float]:
    """Extrapolated limit of g at s -> 0+ or s -> inf.

    Quadratic least squares in 1/ln(s) over far-out decades; overflow-free
    because g is evaluated through the s*phi'/phi ratio.  Returns None when
    the tail diverges or evaluation fails.
    """
    decades = np.linspace(50.0, 300.0, 60)
    s = 10.0 ** (decades if side == "right" else -decades)
    with np.errstate(all="ignore"):
        gv = np.asarray(aux.g(s), dtype=float)
    ok = np.isfinite(gv)
    if ok.sum() < 10:
        return None
    x = 1.0 / np.log(s[ok]) if side == "right" else 1.0 / np.log(1.0 / s[ok])
    gv = gv[ok]
    if gv.max() - gv.min() > 1.0:  # visibly divergent tail
        return None
    coeffs = np.polyfit(x, gv, 2)
    return float(np.polyval(coeffs, 0.0))


def lambda0(aux: AuxBundle, *, s_lo: float = 1e-8, s_hi: float = 1e8,
            num: int = 10000, cap: float = 1e6,
            slope_tol: float = 0.01) -> Lambda0Result:
    """sup over s > 0 of g(s) = |s phi'| / (2 sqrt(phi (s phi)')).

    Scans a log grid, declares +inf when the cap is exceeded or the
    log-log slope of g keeps growing through either end of the window
    (>= ``slope_tol`` per decade over the outer two decades), otherwise
    refines the best bracket by golden section.  Divergence is a value,
    not an error.
    """
    s = np.geomspace(s_lo, s_hi, num)
    with np.errstate(all="ignore"):
        gv = np.asarray(aux.g(s), dtype=float)
    gv = np.where(np.isnan(gv), np.inf, gv)
    gmax = float(np.max(gv))
    if gmax == 0.0:
        return Lambda0Result(0.0, None, "g vanishes identically on the grid",
                             tail_limits=(0.0, 0.0), search_window=(s_lo, s_hi))
    if not np.isfinite(gmax) or gmax > cap:
        at = float(s[int(np.argmax(gv))]) if np.isfinite(gmax) else None
        return Lambda0Result(np.inf, at, f"g exceeds the cap {cap:g}",
                             search_window=(s_lo, s_hi))

    def window_slope(side: str) -> float:
        mask = (s <= s_lo * 100.0) if side == "left" else (s >= s_hi / 100.0)
        sw, gw = s[mask], gv[mask]
        ok = np.isfinite(gw) & (gw > 0)
        if ok.sum() < 2:
            return np.inf
        return float(np.polyfit(np.log(sw[ok]), np.log(gw[ok]), 1)[0])

    left, right = window_slope("left"), window_slope("right")
    if right >= slope_tol:
        return Lambda0Result(np.inf, None,
                             f"g grows through the right end (slope {right:.3g})",
                             search_window=(s_lo, s_hi))
    if left <= -slope_tol:
        return Lambda0Result(np.inf, None,
                             f"g grows through the left end (slope {left:.3g})",
                             search_window=(s_lo, s_hi))

    i = int(np.argmax(gv))
    a = s[max(i - 1, 0)]
    b = s[min(i + 1, num - 1)]
    s_star, g_star = _golden_max(lambda x: float(aux.g(x)), a, b)
    value = max(gmax, g_star)
    attained = s_star if g_star >= gmax else float(s[i])
    tails = (_tail_limit(aux, "left"), _tail_limit(aux, "right"))
    return Lambda0Result(value, attained, "finite supremum on the search window",
                         tail_limits=tails, search_window=(s_lo, s_hi))


# ---------------------------------------------------------------------------
# block quadratic form
# ---------------------------------------------------------------------------

def form_min_eig(a: np.ndarray, lam: float) -> float:
    """Smallest eigenvalue of the 2N x 2N block form at weight value lam.

    The form in (xi, eta) is
    ``(1 - lam^2) <Re_s A xi, xi> + <Re_s A eta, eta> + <C xi, eta>`` with
    ``C = (1 + lam) Im A - (1 - lam) (Im A)^T`` (Im A* = -(Im A)^T).
    """
    if not -1.0 < lam < 1.0:
        raise ValueError("lam must lie strictly inside (-1, 1)")
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    re_s = 0.5 * (a.real + a.real.T)
    im = a.imag
    c = (1.0 + lam) * im - (1.0 - lam) * im.T
    q = np.zeros((2 * n, 2 * n))
    q[:n, :n] = (1.0 - lam * lam) * re_s
    q[n:, n:] = re_s
    q[:n, n:] = 0.5 * c.T
    q[n:, :n] = 0.5 * c
    try:
        return float(np.linalg.eigvalsh(q)[0])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"symmetric eigensolve failed: {exc}") from exc


def _batched_form_min_eig(a_batch: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """form_min_eig over all (matrix, lam) pairs; shape (m, k)."""
    m = a_batch.shape[0]
    n = a_batch.shape[1]
    k = lams.size
    re_s = 0.5 * (a_batch.real + np.transpose(a_batch.real, (0, 2, 1)))
    im = a_batch.imag
    imt = np.transpose(im, (0, 2, 1))
    lam = lams[None, :, None, None]
    c = (1.0 + lam) * im[:, None] - (1.0 - lam) * imt[:, None]
    q = np.zeros((m, k, 2 * n, 2 * n))
    q[..., :n, :n] = (1.0 - lam * lam) * re_s[:, None]
    q[..., n:, n:] = re_s[:, None]
    q[..., :n, n:] = 0.5 * np.transpose(c, (0, 1, 3, 2))
    q[..., n:, :n] = 0.5 * c
    return np.linalg.eigvalsh(q)[..., 0]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    x: Optional[tuple] = None
    s: Optional[float] = None
    t: Optional[float] = None
    xi: Optional[tuple] = None
    eta: Optional[tuple] = None

    def to_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v)
                for k, v in self.__dict__.items() if v is not None}


VERDICTS = ("dissipative", "not_dissipative", "necessary_only_pass",
            "sufficient_only_pass", "inconclusive")


@dataclass(frozen=True)
class CriterionReport:
    verdict: str
    lambda0: float
    worst_margin: float
    witness: Optional[Witness] = None
    kappa: Optional[float] = None
    im_symmetric: Optional[bool] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "not_dissipative" and self.witness is None:
            raise ValueError("a not_dissipative verdict requires a witness")

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "lambda0": (self.lambda0 if np.isfinite(self.lambda0) else "inf"),
            "worst_margin": self.worst_margin,
            "witness": self.witness.to_dict() if self.witness else None,
            "kappa": self.kappa,
            "im_symmetric": self.im_symmetric,
            "details": self.details,
        }


# ---------------------------------------------------------------------------
# pointwise criterion
# ---------------------------------------------------------------------------

def _guided_directions(r_s: np.ndarray, i_s: np.ndarray, lam0: float) -> np.ndarray:
    """Eigenvector directions of the pencils whose minima are the margins."""
    mats = [r_s, i_s]
    if np.isfinite(lam0):
        mats += [r_s - lam0 * i_s, r_s + lam0 * i_s]
    vecs = []
    for m in mats:
        try:
            _, v = np.linalg.eigh(m)
        except np.linalg.LinAlgError:
            continue
        vecs.append(v.T)
    return np.concatenate(vecs, axis=0) if vecs else np.zeros((0, r_s.shape[0]))


def _margin_scan(a_batch: np.ndarray, lam0: float, base_dirs: np.ndarray):
    """min over x and unit xi of <Re_s A xi, xi> - lam0 |<Im_s A xi, xi>|."""
    best = np.inf
    arg = (0, None)
    for idx in range(a_batch.shape[0]):
        a = a_batch[idx]
        r_s = 0.5 * (a.real + a.real.T)
        i_s = 0.5 * (a.imag + a.imag.T)
        dirs = np.concatenate([base_dirs, _guided_directions(r_s, i_s, lam0)], axis=0)
        quad_r = np.einsum("dj,jk,dk->d", dirs, r_s, dirs)
        quad_i = np.einsum("dj,jk,dk->d", dirs, i_s, dirs)
        margins = quad_r - (lam0 * np.abs(quad_i) if np.isfinite(lam0) else 0.0)
        j = int(np.argmin(margins))
        if margins[j] < best:
            best = float(margins[j])
            arg = (idx, dirs[j] / np.linalg.norm(dirs[j]))
    return best, arg


def check_pointwise(a_field: MatrixField, aux: AuxBundle,
                    sampling: SamplingConfig = SamplingConfig(),
                    lam0_result: Optional[Lambda0Result] = None) -> CriterionReport:
    """Pointwise algebraic test over sampled x, directions and s.

    With symmetric Im A the verdict decides dissipativity; otherwise a pass
    only certifies the necessary condition (``necessary_only_pass``) and a
    failure is reported as inconclusive, with refutation left to the PDE
    probes.  Margins are reported raw (linear in A); the verdict threshold
    -1e-9 applies to margins normalized by the largest sampled entry.
    """
    pts = sampling.points_for(a_field)
    a_batch = a_field.evaluate(pts)
    scale = max(float(np.max(np.abs(a_batch))), 1e-300)
    im_sym = a_field.im_symmetric(pts)
    lam0_result = lam0_result or lambda0(aux, s_lo=sampling.s_lo,
                                         s_hi=sampling.s_hi, num=sampling.s_num)
    lam0 = lam0_result.value
    base_dirs = unit_directions(a_field.n, sampling.n_directions)

    details = {"lambda0_reason": lam0_result.reason,
               "normalization_scale": scale,
               "s_window": list(lam0_result.search_window)}

    if np.isfinite(lam0):
        worst, (ix, xi) = _margin_scan(a_batch, lam0, base_dirs)
        passed = worst / scale >= -1e-9
        witness = Witness(x=tuple(pts[ix]), s=lam0_result.attained_s,
                          xi=tuple(np.round(xi, 12)) if xi is not None else None)
        details["margin_form"] = "s_free"
    else:
        # lambda0 = +inf: need Im A == 0 and Re A positive semidefinite
        im_s = 0.5 * (a_batch.imag + np.transpose(a_batch.imag, (0, 2, 1)))
        im_mag = float(np.max(np.abs(im_s)))
        re_worst, (ix, xi) = _margin_scan(a_batch, 0.0, base_dirs)
        passed = im_mag <= 1e-12 * scale and re_worst / scale >= -1e-9
        worst = min(re_worst, -im_mag) if im_mag > 1e-12 * scale else re_worst
        jx = int(np.argmax(np.max(np.abs(im_s), axis=(1, 2))))
        bad_dir = None
        if im_mag > 1e-12 * scale:
            _, v = np.linalg.eigh(im_s[jx])
            bad_dir = tuple(np.round(v[:, -1], 12))
            ix = jx
        witness = Witness(x=tuple(pts[ix]), xi=bad_dir or tuple(np.round(xi, 12)))
        details["margin_form"] = "im_zero_plus_re_psd"
        details["max_im_entry"] = im_mag

    if passed:
        verdict = "dissipative" if im_sym else "necessary_only_pass"
        witness_out = None if im_sym else witness
    else:
        verdict = "not_dissipative" if im_sym else "inconclusive"
        witness_out = witness
        if not im_sym:
            details["note"] = ("pointwise condition failed but Im A is not "
                               "symmetric; refutation delegated to pde probes")

    return CriterionReport(verdict=verdict, lambda0=lam0, worst_margin=worst,
                           witness=witness_out, im_symmetric=im_sym,
                           details=details)


# ---------------------------------------------------------------------------
# block-form conditions
# ---------------------------------------------------------------------------

def _lam_values(aux: AuxBundle, sampling: SamplingConfig) -> np.ndarray:
    t = sampling.t_grid()
    lam = np.asarray(aux.lambda_fn(t), dtype=float)
    diffs = np.diff(lam)
    if np.all(diffs >= -1e-14) or np.all(diffs <= 1e-14):
        # monotone on the grid: probe further out toward the range endpoints
        extra = np.asarray(aux.lambda_fn(np.array([1e-12, 1e-9, 1e9, 1e12])))
        lam = np.concatenate([lam, extra])
    return np.clip(lam, -1.0 + 1e-15, 1.0 - 1e-15)


def _form_scan(a_field: MatrixField, aux: AuxBundle, sampling: SamplingConfig):
    pts = sampling.points_for(a_field)
    a_batch = a_field.evaluate(pts)
    lams = _lam_values(aux, sampling)
    eigs = _batched_form_min_eig(a_batch, lams)
    ix, it = np.unravel_index(int(np.argmin(eigs)), eigs.shape)
    return float(eigs[ix, it]), pts[ix], float(lams[it]), \
        max(float(np.max(np.abs(a_batch))), 1e-300)


def sufficient_condition(a_field: MatrixField, aux: AuxBundle,
                         sampling: SamplingConfig = SamplingConfig()):
    """Block-form sufficiency: True when the 2N x 2N form stays PSD over
    all sampled (x, t).  Returns (passed, min_eig, witness)."""
    min_eig, x, lam, scale = _form_scan(a_field, aux, sampling)
    passed = min_eig / scale >= -1e-9
    return passed, min_eig, Witness(x=tuple(x), t=lam)


def necessary_real_part(a_field: MatrixField,
                        sampling: SamplingConfig = SamplingConfig()):
    """Necessary condition: Re A(x) PSD on samples (smallest eigenvalue of
    the symmetrized real part).  Returns (passed, margin, witness)."""
    pts = sampling.points_for(a_field)
    a_batch = a_field.evaluate(pts)
    re_s = 0.5 * (a_batch.real + np.transpose(a_batch.real, (0, 2, 1)))
    vals, vecs = np.linalg.eigh(re_s)
    ix = int(np.argmin(vals[:, 0]))
    margin = float(vals[ix, 0])
    scale = max(float(np.max(np.abs(a_batch))), 1e-300)
    return margin / scale >= -1e-9, margin, \
        Witness(x=tuple(pts[ix]), xi=tuple(np.round(vecs[ix][:, 0], 12)))


def strong_ellipticity_margin(a_field: MatrixField, aux: AuxBundle,
                              sampling: SamplingConfig = SamplingConfig()) -> float:
    """kappa-hat: the minimum block-form eigenvalue over sampled (x, t);
    positive values certify sampled strong ellipticity with that constant."""
    min_eig, _, _, _ = _form_scan(a_field, aux, sampling)
    return min_eig


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def check_operator(a_field: MatrixField, aux: AuxBundle,
                   sampling: SamplingConfig = SamplingConfig()) -> CriterionReport:
    """Full verdict: Im-symmetry detection, pointwise test, block form.

    Symmetric Im A: the pointwise test decides (dissipative /
    not_dissipative).  Non-symmetric: a block-form pass certifies
    dissipativity through the sufficient route (``sufficient_only_pass``);
    necessary-pass with sufficient-fail, or necessary-fail, stay
    ``inconclusive`` (refutation is the PDE harness's job).
    """
    lam0_result = lambda0(aux, s_lo=sampling.s_lo, s_hi=sampling.s_hi,
                          num=sampling.s_num)
    pw = check_pointwise(a_field, aux, sampling, lam0_result=lam0_result)
    kappa = strong_ellipticity_margin(a_field, aux, sampling)
    details = dict(pw.details)
    details["kappa"] = kappa

    if pw.im_symmetric:
        return CriterionReport(verdict=pw.verdict, lambda0=pw.lambda0,
                               worst_margin=pw.worst_margin, witness=pw.witness,
                               kappa=kappa, im_symmetric=True, details=details)

    suff_ok, suff_eig, suff_wit = sufficient_condition(a_field, aux, sampling)
    nec_ok = pw.verdict == "necessary_only_pass"
    details["necessary_passed"] = nec_ok
    details["sufficient_passed"] = suff_ok
    details["sufficient_min_eig"] = suff_eig
    if suff_ok:
        verdict = "sufficient_only_pass"
        witness = None
    else:
        verdict = "inconclusive"
        witness = suff_wit if nec_ok else pw.witness
        details["note"] = ("block sufficient form fails at the witness while "
                           "Im A is not symmetric; run pde probes to refute")
    return CriterionReport(verdict=verdict, lambda0=pw.lambda0,
                           worst_margin=min(pw.worst_margin, suff_eig),
                           witness=witness, kappa=kappa, im_symmetric=False,
                           details=details)
