"""Preset bound families for four concrete operator classes.

Each preset turns physical input data into the abstract constants the
core enclosures consume:

* planar massless relativistic Hamiltonian with an L^p matrix potential:
  one-parameter family (a_p(t), b_p(t)), its reparametrization by the
  relative bound b, and the envelope curve of the resulting hyperbola
  intersection together with its power-law asymptote;
* three-dimensional massive case with a Coulomb-like potential bound
  ||V(x)||^2 <= C1^2 + C2^2 |x|^-2: two-sided spectrum separation;
* necklaces of spheres with point couplings: per-band relative bounds
  from the sphere interpolation inequality, packaged as growth models
  ready for the power-law gap pipeline;
* a confined/free two-channel Hamiltonian with dissipative coupling:
  m-accretivity via the even-structure lower bound.

Everything is a closed-form evaluation; no operators are discretized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .enclosures import QuadBound, SymmetricGapResult, hyperbola_excluded, symmetric_gap_strip
from .errors import ConditionNotApplicable
from .gap_sequences import GrowthTerm, TailModel

__all__ = [
    "DiracSpec",
    "CoulombSpec",
    "ManifoldSpec",
    "TwoChannelSpec",
    "EnvelopeCurve",
    "CoulombRegion",
    "ManifoldBounds",
    "TwoChannelResult",
    "dirac2d_cp",
    "dirac2d_constants",
    "dirac2d_envelope",
    "envelope_im_at_re",
    "dirac3d_coulomb",
    "manifold_relbounds",
    "two_channel_bound",
]


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be finite and positive")
    return value


def _nonneg(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be finite and nonnegative")
    return value


@dataclass(frozen=True)
class DiracSpec:
    """Potential data for the planar massless case: L^p norm and exponent p > 2."""

    v_norm: float
    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "v_norm", _positive("v_norm", self.v_norm))
        p = float(self.p)
        if not math.isfinite(p) or p <= 2:
            raise ValueError("requires p > 2")
        object.__setattr__(self, "p", p)


def dirac2d_cp(spec: DiracSpec) -> float:
    """Constant C_p = v_norm (2 pi)^(-2/p) (2 pi / (p-2))^(1/p)."""
    p = spec.p
    return spec.v_norm * (2.0 * math.pi) ** (-2.0 / p) * (2.0 * math.pi / (p - 2.0)) ** (1.0 / p)


def dirac2d_constants(
    spec: DiracSpec, t: float | None = None, b: float | None = None
) -> QuadBound:
    """Relative bound pair for the planar massless operator.

    Exactly one of the two parameters selects the family member:
    t > 0 gives (C_p t^(-2/p), C_p t^((p-2)/p)); b > 0 gives the
    reparametrized (C_p^(p/(p-2)) b^(-2/(p-2)), b).
    """
    if (t is None) == (b is None):
        raise ValueError("provide exactly one of t and b")
    cp = dirac2d_cp(spec)
    p = spec.p
    if t is not None:
        t = _positive("t", t)
        return QuadBound(cp * t ** (-2.0 / p), cp * t ** ((p - 2.0) / p))
    b = _positive("b", b)
    return QuadBound(cp ** (p / (p - 2.0)) * b ** (-2.0 / (p - 2.0)), b)


def _envelope_xy(spec: DiracSpec, b):
    # x = |Re z|^2, y = |Im z|^2 along the envelope of the hyperbola family;
    # works elementwise on arrays and on plain floats
    p = spec.p
    cp = dirac2d_cp(spec)
    x = (cp / b) ** (2.0 * p / (p - 2.0)) * (2.0 - p * b * b) / (p - 2.0)
    y = (p * cp * cp / (p - 2.0)) * (cp / b) ** (4.0 / (p - 2.0))
    return x, y


@dataclass(frozen=True)
class EnvelopeCurve:
    """Sampled envelope polyline with its large-|Re z| asymptote.

    Rows are (re, im) = (sqrt(x), sqrt(y)); im ~ asymptote_coeff *
    re**asymptote_exponent as re grows.
    """

    b: tuple[float, ...]
    re: tuple[float, ...]
    im: tuple[float, ...]
    asymptote_coeff: float
    asymptote_exponent: float
    clipped: bool


def _envelope_b_max(p: float) -> float:
    return math.sqrt(2.0 / p)


def dirac2d_envelope(
    spec: DiracSpec,
    samples: int,
    b_min: float | None = None,
    b_max: float | None = None,
) -> EnvelopeCurve:
    """Envelope of the intersection of all certified hyperbola regions.

    Samples a log grid of the relative bound b in (0, sqrt(2/p)]; beyond
    sqrt(2/p) the squared abscissa turns negative and the curve is
    clipped to x >= 0 (reported via the clipped flag).
    """
    if samples < 2:
        raise ValueError("requires samples >= 2")
    p = spec.p
    cap = _envelope_b_max(p)
    if b_max is None:
        b_max = cap
    b_max = _positive("b_max", b_max)
    if b_min is None:
        b_min = 1e-3 * min(b_max, cap)
    b_min = _positive("b_min", b_min)
    if not b_min < b_max:
        raise ValueError("requires b_min < b_max")
    grid = np.geomspace(b_min, b_max, samples)
    x, y = _envelope_xy(spec, grid)
    clipped = bool(np.any(x < 0.0))
    x = np.maximum(x, 0.0)
    coeff = math.sqrt(p / (p - 2.0)) * (4.0 * math.pi) ** (-1.0 / p) * spec.v_norm
    return EnvelopeCurve(
        b=tuple(float(v) for v in grid),
        re=tuple(float(v) for v in np.sqrt(x)),
        im=tuple(float(v) for v in np.sqrt(y)),
        asymptote_coeff=coeff,
        asymptote_exponent=2.0 / p,
        clipped=clipped,
    )


def envelope_im_at_re(spec: DiracSpec, re: float) -> float:
    """Envelope height |Im z| above a given |Re z|.

    Inverts the strictly decreasing map b -> x(b) by bisection and
    evaluates the ordinate there.  re = 0 sits at b = sqrt(2/p).
    """
    re = _nonneg("re", re)
    target = re * re
    p = spec.p
    hi = _envelope_b_max(p)
    if target == 0.0:
        b = hi
    else:
        lo = hi
        for _ in range(2000):
            lo *= 0.5
            if _envelope_xy(spec, lo)[0] >= target:
                break
        else:
            raise ConditionNotApplicable(f"re={re!r} beyond the representable envelope range")
        for _ in range(200):
            mid = math.sqrt(lo * hi)
            if _envelope_xy(spec, mid)[0] >= target:
                lo = mid
            else:
                hi = mid
        b = math.sqrt(lo * hi)
    return math.sqrt(_envelope_xy(spec, b)[1])


@dataclass(frozen=True)
class CoulombSpec:
    """Coulomb-like potential envelope ||V(x)||^2 <= C1^2 + C2^2 |x|^-2, mass m."""

    c1: float
    c2: float
    m: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", _nonneg("c1", self.c1))
        object.__setattr__(self, "c2", _nonneg("c2", self.c2))
        object.__setattr__(self, "m", _positive("m", self.m))


@dataclass(frozen=True)
class CoulombRegion:
    """Two-component enclosure: |Re z| >= halfwidth, |Im z| below a hyperbola."""

    halfwidth: float
    quad: QuadBound
    mass: float
    gap: SymmetricGapResult
    bisectorial: bool

    def certified_free(self, z: complex) -> bool:
        """True when z provably avoids the spectrum."""
        z = complex(z)
        if abs(z.real) < self.halfwidth:
            return True
        return hyperbola_excluded(self.quad, z)


def dirac3d_coulomb(spec: CoulombSpec) -> CoulombRegion:
    """Spectrum separation for the massive operator with Coulomb-like potential.

    Requires sqrt(C1^2 + 4 C2^2 m^2) < m.  The spectrum stays inside
    {|Re z| >= m - sqrt(C1^2 + 4 C2^2 m^2)} intersected with
    {|Im z|^2 <= (C1^2 + 4 C2^2 |Re z|^2) / (1 - 4 C2^2)}, and the
    operator is bisectorial.
    """
    q = QuadBound(spec.c1, 2.0 * spec.c2)
    if not q.shift(spec.m) < spec.m:
        raise ConditionNotApplicable(
            "spectrum separation not certified: sqrt(C1^2 + 4 C2^2 m^2) >= m"
        )
    gap = symmetric_gap_strip(q, spec.m)
    return CoulombRegion(
        halfwidth=gap.beta_pert,
        quad=q,
        mass=spec.m,
        gap=gap,
        bisectorial=True,
    )


@dataclass(frozen=True)
class ManifoldSpec:
    """Necklace-of-spheres data: potential L^p budget and geometry case.

    c bounds the per-sphere L^p norms, p in (2, inf); case 1 couples the
    spheres through touching points, case 2 through line segments, and
    eps_geom is the exponent defect in the band-width law.
    """

    c: float
    p: float
    case: int
    eps_geom: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", _positive("c", self.c))
        p = float(self.p)
        if not math.isfinite(p) or p <= 2:
            raise ValueError("requires p > 2")
        object.__setattr__(self, "p", p)
        if self.case not in (1, 2):
            raise ValueError("case must be 1 or 2")
        eps = float(self.eps_geom)
        if not 0.0 < eps < 1.0:
            raise ValueError("requires eps_geom in (0, 1)")
        object.__setattr__(self, "eps_geom", eps)


@dataclass(frozen=True)
class ManifoldBounds:
    """Per-band constants at one band index plus their asymptotic models."""

    pointwise: QuadBound
    a_model: GrowthTerm
    b_model: GrowthTerm
    band_model: TailModel


def manifold_relbounds(
    spec: ManifoldSpec,
    n: int,
    length_prefactor: float = 1.0,
    width_prefactor: float = 1.0,
) -> ManifoldBounds:
    """Relative bounds of the potential against the n-th spectral band.

    With kappa = c (4 pi)^(-1/p): a_n = kappa sqrt(1 + n^2/(p-2)) and
    b_n = kappa / (n sqrt(p-2)); asymptotically both behave like
    kappa/sqrt(p-2) times n and 1/n.  The band model carries
    l_n ~ n^2 and w_n ~ n^2 (log n)^(-eps) (case 1) or n^(2-eps)
    (case 2), with configurable prefactors standing in for the
    unspecified geometry constants.
    """
    if int(n) != n or n < 2:
        raise ValueError("requires integer n >= 2")
    n = int(n)
    p = spec.p
    kappa = spec.c * (4.0 * math.pi) ** (-1.0 / p)
    a_n = kappa * math.sqrt(1.0 + n * n / (p - 2.0))
    b_n = kappa / (n * math.sqrt(p - 2.0))
    slope = kappa / math.sqrt(p - 2.0)
    if spec.case == 1:
        band = TailModel(
            kind="power-log",
            p1=2.0,
            p2=0.0,
            q1=2.0,
            q2=-spec.eps_geom,
            length_prefactor=length_prefactor,
            width_prefactor=width_prefactor,
        )
    else:
        band = TailModel(
            kind="power-log",
            p1=2.0,
            p2=0.0,
            q1=2.0 - spec.eps_geom,
            q2=0.0,
            length_prefactor=length_prefactor,
            width_prefactor=width_prefactor,
        )
    return ManifoldBounds(
        pointwise=QuadBound(a_n, b_n),
        a_model=GrowthTerm(slope, power=1.0),
        b_model=GrowthTerm(slope, power=-1.0),
        band_model=band,
    )


@dataclass(frozen=True)
class TwoChannelSpec:
    """Confined/free two-channel model with dissipative coupling.

    The confined channel is a d-dimensional oscillator, the free channel
    a Laplacian.  v12_norm is the L^p norm of the confined-to-free
    coupling (p > d/2, p >= 2); the reverse coupling is dominated by a
    quadratic polynomial with coefficients p0, p1 (the d linear ones)
    and p2 (the d(d+1)/2 quadratic ones).
    """

    d: int
    p: float
    v12_norm: float
    p0: float
    p1: tuple[float, ...]
    p2: tuple[float, ...]

    def __post_init__(self) -> None:
        if int(self.d) != self.d or self.d < 1:
            raise ValueError("d must be a positive integer")
        object.__setattr__(self, "d", int(self.d))
        p = float(self.p)
        if not math.isfinite(p) or not (p > self.d / 2.0 and p >= 2.0):
            raise ValueError("requires p > d/2 and p >= 2")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "v12_norm", _nonneg("v12_norm", self.v12_norm))
        object.__setattr__(self, "p0", _nonneg("p0", self.p0))
        p1 = tuple(_nonneg("p1 entry", v) for v in self.p1)
        p2 = tuple(_nonneg("p2 entry", v) for v in self.p2)
        if len(p1) != self.d:
            raise ValueError(f"p1 needs {self.d} entries, got {len(p1)}")
        want = self.d * (self.d + 1) // 2
        if len(p2) != want:
            raise ValueError(f"p2 needs {want} entries, got {len(p2)}")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)


@dataclass(frozen=True)
class TwoChannelResult:
    """Coupling constants and the certified real-part lower bound."""

    b21: float
    c_p: float
    coupling: float
    lower_bound: float


def _beta_fn(x: float, y: float) -> float:
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def two_channel_bound(spec: TwoChannelSpec) -> TwoChannelResult:
    """m-accretivity bound Re sigma(H) >= lower_bound for the two-channel model.

    b21^2 = 2 p0^2/d^2 + (1/d) sum p1^2 + 2 sum p2^2 bounds the reverse
    coupling relative to the oscillator; C_p collects the Hausdorff-Young
    constant of the forward coupling.  The even-structure bound at block
    minima (d, 0), optimized over the forward family a(b) =
    C_p^(2p/(2p-d)) b^(-d/(2p-d)) as b -> 1/b21, gives

        lower_bound = d/2 - sqrt(d^2/4 + h),
        h = d (C_p b21)^(2p/(2p-d)).
    """
    d = float(spec.d)
    b21 = math.sqrt(
        2.0 * spec.p0**2 / (d * d)
        + math.fsum(v * v for v in spec.p1) / d
        + 2.0 * math.fsum(v * v for v in spec.p2)
    )
    c_p = (
        spec.v12_norm
        * (2.0 * math.pi) ** (-d / spec.p)
        * (2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0))
        * _beta_fn(d / 2.0, spec.p - d / 2.0)
    )
    h = d * (c_p * b21) ** (2.0 * spec.p / (2.0 * spec.p - d))
    lower = d / 2.0 - math.sqrt(d * d / 4.0 + h)
    return TwoChannelResult(b21=b21, c_p=c_p, coupling=h, lower_bound=lower)
