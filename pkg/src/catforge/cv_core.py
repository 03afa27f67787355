"""Exact algebra of finite weighted superpositions of coherent states.

Every state handled here is a finite list of (weight, amplitude) pairs over
coherent states |alpha>.  Overlaps, norms, quadrature projections and Wigner
values then reduce to small Gram-matrix sums, so all protocol quantities stay
in closed form with no truncation.

Conventions
-----------
Quadrature operator X = (a + a^dag)/sqrt(2).  The coherent-state position
amplitude in this convention is

    <x|alpha> = pi^(-1/4) exp(-x^2/2 + sqrt(2) x alpha - alpha^2/2 - |alpha|^2/2)

(note alpha^2, not |alpha|^2, in the third term: the phase of alpha matters).
The Wigner function carries unit mass, integral W d^2 gamma = 1, so the vacuum
peaks at W(0) = 2/pi.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import COALESCE_TOL, DEGENERATE_NORM, NORMALIZED_TOL
from .errors import DegenerateState

SQRT2 = math.sqrt(2.0)
PI_QUARTER_INV = math.pi ** -0.25


def _finite(z, what):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


def coherent_overlap(alpha, beta):
    """Overlap <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha)*beta)."""
    alpha = complex(alpha)
    beta = complex(beta)
    mag = (alpha.real ** 2 + alpha.imag ** 2 + beta.real ** 2 + beta.imag ** 2)
    return cmath.exp(-0.5 * mag + alpha.conjugate() * beta)


def quadrature_overlap(x, alpha):
    """Position amplitude <x|alpha> for X = (a + a^dag)/sqrt(2).

    Purely imaginary alpha gives pi^(-1/4) at x = 0 exactly: the alpha^2/2 and
    |alpha|^2/2 terms cancel, which is what makes the cat branch coefficient of
    the conditioning protocol parameter-independent.
    """
    alpha = complex(alpha)
    mag2 = alpha.real ** 2 + alpha.imag ** 2
    arg = -0.5 * x * x + SQRT2 * x * alpha - 0.5 * alpha * alpha - 0.5 * mag2
    return PI_QUARTER_INV * cmath.exp(arg)


def _coalesce(pairs, what, tol):
    """Merge terms whose amplitude tuples agree within tol; drop cancelled ones."""
    reps = []
    for w, key in pairs:
        w = _finite(w, f"{what} weight")
        key = tuple(_finite(a, f"{what} amplitude") for a in key)
        for entry in reps:
            if all(abs(a - b) <= tol for a, b in zip(entry[1], key)):
                entry[0] += w
                break
        else:
            reps.append([w, key])
    kept = [(w, key) for w, key in reps if w != 0]
    if not kept:
        raise DegenerateState(f"{what}: every term cancelled under coalescing")
    return kept


@dataclass(frozen=True)
class CoherentSuperposition:
    """Finite superposition sum_i w_i |alpha_i> of one mode.

    terms holds (weight, amplitude) pairs; construction through from_terms
    coalesces amplitudes that agree within the coalescing tolerance.  The
    normalized flag asserts unit Gram norm.
    """

    terms: tuple
    normalized: bool = False

    @classmethod
    def from_terms(cls, terms, normalized=False, tol=COALESCE_TOL):
        merged = _coalesce([(w, (a,)) for w, a in terms], "CoherentSuperposition", tol)
        out = cls(tuple((w, key[0]) for w, key in merged), normalized)
        if normalized and abs(superposition_norm(out) - 1.0) > NORMALIZED_TOL:
            raise ValueError("state claimed normalized but Gram norm differs from 1")
        return out

    def normalize(self):
        n = superposition_norm(self)
        return CoherentSuperposition(tuple((w / n, a) for w, a in self.terms), True)

    def amplitudes(self):
        return tuple(a for _, a in self.terms)


@dataclass(frozen=True)
class TwoModeSuperposition:
    """Finite superposition sum_i w_i |a_i>|b_i> of two modes."""

    terms: tuple
    normalized: bool = False

    @classmethod
    def from_terms(cls, terms, normalized=False, tol=COALESCE_TOL):
        merged = _coalesce([(w, (a, b)) for w, a, b in terms], "TwoModeSuperposition", tol)
        out = cls(tuple((w, key[0], key[1]) for w, key in merged), normalized)
        if normalized and abs(two_mode_norm(out) - 1.0) > NORMALIZED_TOL:
            raise ValueError("state claimed normalized but Gram norm differs from 1")
        return out

    def normalize(self):
        n = two_mode_norm(self)
        return TwoModeSuperposition(
            tuple((w / n, a, b) for w, a, b in self.terms), True)


@dataclass(frozen=True)
class HomodyneWindow:
    """Acceptance window [center - half_width, center + half_width] on X."""

    center: float
    half_width: float

    def __post_init__(self):
        if not (math.isfinite(self.center) and math.isfinite(self.half_width)):
            raise ValueError("window parameters must be finite")
        if self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")

    @property
    def lo(self):
        return self.center - self.half_width

    @property
    def hi(self):
        return self.center + self.half_width


def superposition_inner(a, b):
    """Hermitian inner product <a|b> of two superpositions."""
    acc = 0j
    for wi, ai in a.terms:
        for wj, aj in b.terms:
            acc += wi.conjugate() * wj * coherent_overlap(ai, aj)
    return acc


def superposition_norm(s):
    """Gram norm sqrt(<s|s>); raises DegenerateState when fully cancelled."""
    n2 = superposition_inner(s, s).real
    if n2 < DEGENERATE_NORM ** 2:
        raise DegenerateState(f"superposition norm^2 = {n2:.3e} below floor")
    return math.sqrt(n2)


def two_mode_inner(a, b):
    """<a|b> with Gram entries given by products of per-mode overlaps."""
    acc = 0j
    for wi, ai, bi in a.terms:
        for wj, aj, bj in b.terms:
            acc += (wi.conjugate() * wj
                    * coherent_overlap(ai, aj) * coherent_overlap(bi, bj))
    return acc


def two_mode_norm(t):
    n2 = two_mode_inner(t, t).real
    if n2 < DEGENERATE_NORM ** 2:
        raise DegenerateState(f"two-mode norm^2 = {n2:.3e} below floor")
    return math.sqrt(n2)


def beam_splitter_50_50(t):
    """Balanced beam splitter |a>|b> -> |(a+b)/sqrt2>|(a-b)/sqrt2> per term.

    The map is its own inverse (applying it twice returns the input pair), and
    it preserves the Gram norm term by term, so the normalized flag carries over.
    """
    return TwoModeSuperposition(
        tuple((w, (a + b) / SQRT2, (a - b) / SQRT2) for w, a, b in t.terms),
        t.normalized)


def vacuum():
    return CoherentSuperposition.from_terms([(1.0, 0.0)], normalized=True)


def coherent(alpha):
    return CoherentSuperposition.from_terms([(1.0, alpha)], normalized=True)


def even_cat(beta):
    """Normalized symmetric superposition of |beta> and |-beta>."""
    return CoherentSuperposition.from_terms([(1.0, beta), (1.0, -beta)]).normalize()


def wigner_point(s, gamma):
    """Wigner function of a normalized superposition at phase-space point gamma.

    Uses the cross-term kernel of |alpha><beta| projectors,

        W(gamma) = (2/pi) sum_ij conj(w_i) w_j <a_i|a_j>
                   exp(-2 (conj(gamma) - conj(a_i)) (gamma - a_j)),

    whose imaginary parts cancel pairwise; the real part is returned.
    """
    if not s.normalized:
        raise ValueError("wigner_point requires a normalized superposition")
    g = complex(gamma)
    acc = 0j
    for wi, ai in s.terms:
        for wj, aj in s.terms:
            acc += (wi.conjugate() * wj * coherent_overlap(ai, aj)
                    * cmath.exp(-2.0 * (g.conjugate() - ai.conjugate()) * (g - aj)))
    return (2.0 / math.pi) * acc.real


def wigner_grid(s, re_vals, im_vals):
    """Vectorized wigner_point over a rectangular grid.

    Returns W with shape (len(re_vals), len(im_vals)), W[i, j] evaluated at
    gamma = re_vals[i] + 1j * im_vals[j].
    """
    if not s.normalized:
        raise ValueError("wigner_grid requires a normalized superposition")
    re = np.asarray(re_vals, dtype=float)
    im = np.asarray(im_vals, dtype=float)
    g = re[:, None] + 1j * im[None, :]
    gc = np.conjugate(g)
    acc = np.zeros(g.shape, dtype=complex)
    for wi, ai in s.terms:
        for wj, aj in s.terms:
            c = complex(wi).conjugate() * wj * coherent_overlap(ai, aj)
            acc += c * np.exp(-2.0 * (gc - complex(ai).conjugate()) * (g - aj))
    return (2.0 / math.pi) * acc.real
