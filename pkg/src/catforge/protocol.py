"""Conditional cat-state preparation by interference and homodyne selection.

Two identical sources each emit a symmetric superposition of two coherent
states of magnitude alpha0 whose phases differ by phi, centred on the
imaginary axis.  The copies interfere on a balanced beam splitter; measuring
the X quadrature of one output near x = 0 leaves the other output in

    c1 |0> + c2 (|s> + |-s>),        s = sqrt(2) alpha0 sin(phi/2),

so the separation of the surviving superposition grows by sqrt(2) while the
vacuum branch can be switched off entirely: |c1|/|c2| has zeros on
alpha0^2 sin(phi) = pi/2 + k pi.  Everything here is closed-form; the
fock_oracle route is used only where a finite acceptance window makes the
output genuinely mixed.
"""

import cmath
import math
from dataclasses import dataclass

from . import fock_oracle
from .config import ZERO_DENSITY
from .cv_core import (SQRT2, CoherentSuperposition, HomodyneWindow,
                      TwoModeSuperposition, beam_splitter_50_50,
                      coherent_overlap, quadrature_overlap,
                      superposition_inner)
from .errors import DegenerateState, DomainError, ZeroProbability

__all__ = [
    "ProtocolParams", "Separations", "PreparedStateReport", "HomodyneWindow",
    "source_state", "separations", "interfere", "ideal_cat",
    "vacuum_coefficient", "cat_coefficient", "coefficient_ratio",
    "coefficient_ratio_small_angle", "coefficient_ratio_second_order",
    "vacuum_null_alpha", "vacuum_null_alpha_approx",
    "conditional_state", "homodyne_density", "report", "window_metrics",
]


@dataclass(frozen=True)
class ProtocolParams:
    """Source magnitude alpha0 >= 0 and phase separation phi.

    phi is canonicalized into [0, pi]: every derived quantity is even and
    2 pi periodic in phi, so the sign and winding carry no information.
    """

    alpha0: float
    phi: float

    def __post_init__(self):
        a = float(self.alpha0)
        p = float(self.phi)
        if not (math.isfinite(a) and math.isfinite(p)):
            raise ValueError("parameters must be finite")
        if a < 0:
            raise ValueError(f"alpha0 must be >= 0, got {a}")
        p = math.fmod(abs(p), 2.0 * math.pi)
        if p > math.pi:
            p = 2.0 * math.pi - p
        object.__setattr__(self, "alpha0", a)
        object.__setattr__(self, "phi", p)


@dataclass(frozen=True)
class Separations:
    """Input separation d0 of each source and output separation d of the cat."""

    d0: float
    d: float

    @classmethod
    def from_params(cls, p):
        d0 = 2.0 * p.alpha0 * math.sin(0.5 * p.phi)
        return cls(d0, SQRT2 * d0)


@dataclass(frozen=True)
class PreparedStateReport:
    """Everything the conditioning at one quadrature value produces."""

    alpha0: float
    phi: float
    x: float
    vacuum_coeff: complex
    cat_coeff: complex
    ratio: float
    fidelity: float
    density_at_x: float
    separations: Separations


def _source_amplitudes(p):
    # magnitude alpha0, phases pi/2 +- phi/2: both components sit on the
    # imaginary axis for phi -> 0
    return (1j * p.alpha0 * cmath.exp(0.5j * p.phi),
            1j * p.alpha0 * cmath.exp(-0.5j * p.phi))


def source_state(p):
    """Normalized symmetric superposition emitted by each source."""
    a_plus, a_minus = _source_amplitudes(p)
    return CoherentSuperposition.from_terms(
        [(1.0, a_plus), (1.0, a_minus)]).normalize()


def separations(p):
    return Separations.from_params(p)


def interfere(p):
    """Normalized two-mode state after the balanced beam splitter.

    Built from the raw four-term product expansion; no closed-form prefactors
    are assumed anywhere, the Gram norm does the bookkeeping.
    """
    src = source_state(p)
    product = TwoModeSuperposition.from_terms(
        [(wi * wj, ai, aj) for wi, ai in src.terms for wj, aj in src.terms])
    return beam_splitter_50_50(product).normalize()


def _half_separation(p):
    return SQRT2 * p.alpha0 * math.sin(0.5 * p.phi)


def ideal_cat(p, require_cat=False):
    """Normalized target superposition of |s> and |-s>, s = sqrt2 alpha0 sin(phi/2).

    Degenerate parameters (s coalescing with 0) give the vacuum; with
    require_cat=True that case raises DegenerateState instead.
    """
    s = _half_separation(p)
    cat = CoherentSuperposition.from_terms([(1.0, s), (1.0, -s)]).normalize()
    if require_cat and len(cat.terms) < 2:
        raise DegenerateState(
            f"separation {2 * s:.3e} too small to form a cat")
    return cat


def vacuum_coefficient(p, x=0.0):
    """Projection coefficient of the vacuum branch, <x|a+> + <x|a->.

    The branch amplitudes sqrt2 i alpha0 e^{+-i phi/2} are the beam-splitter
    images of the aligned source pairs.
    """
    a_plus, a_minus = _source_amplitudes(p)
    return (quadrature_overlap(x, SQRT2 * a_plus)
            + quadrature_overlap(x, SQRT2 * a_minus))


def cat_coefficient(p, x=0.0):
    """Projection coefficient shared by both cat branches.

    The measured-mode amplitude sqrt2 i alpha0 cos(phi/2) is purely imaginary,
    so at x = 0 this is pi^(-1/4) for every (alpha0, phi).
    """
    c = SQRT2 * 1j * p.alpha0 * math.cos(0.5 * p.phi)
    return quadrature_overlap(x, c)


def coefficient_ratio(p):
    """|vacuum_coefficient| / |cat_coefficient| at x = 0, in closed form:

        2 exp(-alpha0^2 (1 - cos phi)) |cos(alpha0^2 sin phi)|.
    """
    a2 = p.alpha0 * p.alpha0
    return (2.0 * math.exp(-a2 * (1.0 - math.cos(p.phi)))
            * abs(math.cos(a2 * math.sin(p.phi))))


def coefficient_ratio_small_angle(p):
    """First order in phi: 2 |cos(alpha0^2 phi)|."""
    return 2.0 * abs(math.cos(p.alpha0 * p.alpha0 * p.phi))


def coefficient_ratio_second_order(p):
    """Second order in phi: exp(-alpha0^2 phi^2 / 2) * 2 |cos(alpha0^2 phi)|.

    In terms of the output separation d = sqrt2 alpha0 phi the damping factor
    is exp(-d^2/4) and the oscillation argument is alpha0 d / sqrt2, so for
    d >= 4 the ratio is bounded by 2 e^-4 regardless of phase.
    """
    a2 = p.alpha0 * p.alpha0
    return (math.exp(-0.5 * a2 * p.phi * p.phi)
            * 2.0 * abs(math.cos(a2 * p.phi)))


def vacuum_null_alpha_approx(phi):
    """Small-angle location of the first vacuum null: sqrt(pi / (2 phi))."""
    if not 0.0 < phi < math.pi:
        raise DomainError(f"phi must lie in (0, pi), got {phi}")
    return math.sqrt(math.pi / (2.0 * phi))


def vacuum_null_alpha(phi, k=0):
    """Exact k-th vacuum null: alpha0 = sqrt((pi/2 + k pi) / sin phi)."""
    if not 0.0 < phi < math.pi:
        raise DomainError(f"phi must lie in (0, pi), got {phi}")
    if k < 0 or k != int(k):
        raise DomainError(f"k must be a non-negative integer, got {k}")
    return math.sqrt((0.5 * math.pi + k * math.pi) / math.sin(phi))


def _conditioned_terms(p, x):
    two = interfere(p)
    terms = [(w * quadrature_overlap(x, a), b) for w, a, b in two.terms]
    dens = 0.0
    for wi, bi in terms:
        for wj, bj in terms:
            dens += (wi.conjugate() * wj * coherent_overlap(bi, bj)).real
    return terms, dens


def homodyne_density(p, x):
    """Probability density of measuring X = x on the monitored output.

    Closed form through the Gram matrix of quadrature overlaps; symmetric in x
    (every measured-mode amplitude is purely imaginary, so the marginal is a
    modulated Gaussian centred on the origin) and of unit total mass.
    """
    _, dens = _conditioned_terms(p, x)
    return max(dens, 0.0)


def conditional_state(p, x=0.0):
    """Normalized state of the kept mode after conditioning on X = x."""
    terms, dens = _conditioned_terms(p, x)
    if dens < ZERO_DENSITY:
        raise ZeroProbability(
            f"conditioning density {dens:.3e} at x={x} below floor")
    return CoherentSuperposition.from_terms(terms).normalize()


def report(p, x=0.0):
    """Bundle of coefficients, fidelity to the ideal cat, and separations."""
    c_vac = vacuum_coefficient(p, x)
    c_cat = cat_coefficient(p, x)
    cond = conditional_state(p, x)
    cat = ideal_cat(p)
    fid = abs(superposition_inner(cat, cond)) ** 2
    return PreparedStateReport(
        alpha0=p.alpha0, phi=p.phi, x=x,
        vacuum_coeff=c_vac, cat_coeff=c_cat,
        ratio=abs(c_vac) / abs(c_cat),
        fidelity=fid,
        density_at_x=homodyne_density(p, x),
        separations=separations(p))


def _pipeline_fock(p, cap=None):
    """Fock carrier of the post-beam-splitter state (oracle route)."""
    dim = fock_oracle.choose_truncation(SQRT2 * p.alpha0, cap)
    src = fock_oracle.superposition_fock(source_state(p), dim)
    src = src / math.sqrt(float((src.conjugate() * src).sum().real))
    return fock_oracle.apply_beam_splitter(
        fock_oracle.product_state(src, src)), dim


def window_metrics(p, window, panels=None, cap=None):
    """Acceptance probability and cat fidelity for a finite homodyne window.

    A finite window makes the kept mode genuinely mixed, so this is the one
    protocol quantity that runs on the fock_oracle route: the windowed density
    matrix is integrated numerically and compared against the ideal cat.
    Returns (probability, fidelity).
    """
    if panels is None:
        panels = fock_oracle.default_panels(window)
    out, dim = _pipeline_fock(p, cap)
    rho, prob = fock_oracle.window_state(out, window, panels)
    cat = fock_oracle.superposition_fock(ideal_cat(p), dim)
    cat = cat / math.sqrt(float((cat.conjugate() * cat).sum().real))
    return prob, fock_oracle.fidelity(rho, cat)
