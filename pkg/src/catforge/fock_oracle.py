"""Truncated photon-number-basis oracle for the coherent-superposition algebra.

This module deliberately shares no formulas with cv_core beyond the state
definitions: coherent states are expanded into Fock amplitudes, the balanced
beam splitter is built block-exactly from the binomial expansion of the mapped
creation operators, and quadrature projections use the normalized Hermite
function recurrence.  Agreement between the two routes is what validates the
closed forms.

A single-mode pure state is a 1D complex ndarray of Fock amplitudes; a
two-mode pure state is a 2D array amps[n, m] with n indexing the measured
mode and m the output mode; a mixed state is a square density matrix.
"""

import math

import numpy as np

from .config import (EIG_FLOOR, GL_ORDER, MAX_PANEL_WIDTH, ZERO_DENSITY,
                     fock_cap)
from .errors import (DensityValidationError, DimensionMismatch,
                     TruncationTooLarge, ZeroProbability)

_SQRT2 = math.sqrt(2.0)
_PI_QUARTER_INV = math.pi ** -0.25


def choose_truncation(max_amp, cap=None):
    """Fock dimension guaranteeing coherent tails <= 1e-12 up to |alpha| = max_amp.

    The margin ceil(max_amp^2 + 10*max_amp + 20) is far past the Poisson bulk
    at every scale of interest; dimensions above the cap (default 4096, or the
    CATFORGE_MAX_FOCK environment variable) raise TruncationTooLarge.
    """
    if max_amp < 0 or not math.isfinite(max_amp):
        raise ValueError(f"max_amp must be finite and >= 0, got {max_amp}")
    n = math.ceil(max_amp * max_amp + 10.0 * max_amp + 20.0)
    limit = fock_cap(cap)
    if n > limit:
        raise TruncationTooLarge(
            f"requested Fock dimension {n} exceeds cap {limit}")
    return n


def coherent_fock(alpha, dim):
    """Fock amplitudes c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)."""
    alpha = complex(alpha)
    out = np.empty(dim, dtype=complex)
    out[0] = math.exp(-0.5 * (alpha.real ** 2 + alpha.imag ** 2))
    for n in range(1, dim):
        out[n] = out[n - 1] * alpha / math.sqrt(n)
    return out


def superposition_fock(s, dim):
    """Fock carrier of a cv_core superposition: sum of weighted coherent vectors."""
    out = np.zeros(dim, dtype=complex)
    for w, a in s.terms:
        out += complex(w) * coherent_fock(a, dim)
    return out


def quadrature_eigvec(x, dim):
    """Values h_n(x) of the normalized Hermite functions, n = 0 .. dim-1.

    Stable three-term recurrence
        h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1},
    seeded by h_0 = pi^(-1/4) exp(-x^2/2).  Dotting with coherent_fock
    reproduces the closed-form <x|alpha> of cv_core.
    """
    out = np.empty(dim, dtype=float)
    out[0] = _PI_QUARTER_INV * math.exp(-0.5 * x * x)
    if dim > 1:
        out[1] = _SQRT2 * x * out[0]
    for n in range(1, dim - 1):
        out[n + 1] = (x * math.sqrt(2.0 / (n + 1)) * out[n]
                      - math.sqrt(n / (n + 1)) * out[n - 1])
    return out


def product_state(va, vb):
    """Two-mode product state amps[n, m] = va[n] * vb[m]."""
    return np.outer(np.asarray(va, dtype=complex), np.asarray(vb, dtype=complex))


# ---------------------------------------------------------------------------
# balanced beam splitter
# ---------------------------------------------------------------------------

_BS_CACHE = {}


def _bs_blocks(dim):
    """Photon-number blocks of the balanced beam splitter, exact per block.

    The creation operators map a^dag -> (c^dag + d^dag)/sqrt2 and
    b^dag -> (c^dag - d^dag)/sqrt2, so within the total-photon-S block

        <p, S-p| U |m, S-m> = 2^(-S/2) K sqrt(p!(S-p)!/(m!(S-m)!)),
        K = sum_j C(m, j) C(S-m, p-j) (-1)^((S-m)-(p-j)),

    with K accumulated in exact integer arithmetic (the alternating binomial
    sum cancels catastrophically in floats).  Blocks with S >= dim are the
    truncated square submatrix with both occupations below dim.
    """
    cached = _BS_CACHE.get(dim)
    if cached is not None:
        return cached
    smax = 2 * dim - 2
    rows = [[1]]
    for n in range(1, smax + 1):
        r = rows[-1]
        rows.append([1] + [r[j - 1] + r[j] for j in range(1, n)] + [1])
    fact = [1] * (smax + 1)
    for n in range(1, smax + 1):
        fact[n] = fact[n - 1] * n
    blocks = []
    for s in range(smax + 1):
        lo = max(0, s - dim + 1)
        hi = min(s, dim - 1)
        size = hi - lo + 1
        half = 0.5 ** (0.5 * s)
        mat = np.empty((size, size), dtype=float)
        occ = range(lo, hi + 1)
        for a, m in enumerate(occ):
            rm = rows[m]
            n2 = s - m
            rn = rows[n2]
            den = fact[m] * fact[n2]
            # the block is symmetric (the one-photon matrix is), fill p >= m
            for b, p in enumerate(occ):
                if p < m:
                    continue
                jmin = p - n2 if p > n2 else 0
                jmax = m if m < p else p
                acc = 0
                for j in range(jmin, jmax + 1):
                    t = rm[j] * rn[p - j]
                    if (n2 - p + j) & 1:
                        acc -= t
                    else:
                        acc += t
                if acc:
                    val = acc * math.sqrt((fact[p] * fact[s - p]) / den) * half
                else:
                    val = 0.0
                mat[b, a] = val
                mat[a, b] = val
        blocks.append((lo, mat))
    _BS_CACHE[dim] = blocks
    return blocks


def apply_beam_splitter(amps):
    """Apply the balanced beam splitter to a two-mode Fock state.

    Exactly unitary on every total-photon block below the truncation; blocks
    reaching the truncation edge are projected, which is the usual (and here
    negligible, by choose_truncation) source of norm loss.
    """
    amps = np.asarray(amps, dtype=complex)
    if amps.ndim != 2 or amps.shape[0] != amps.shape[1]:
        raise DimensionMismatch(
            f"two-mode state must be square, got shape {amps.shape}")
    dim = amps.shape[0]
    out = np.zeros_like(amps)
    blocks = _bs_blocks(dim)
    for s, (lo, mat) in enumerate(blocks):
        occ = np.arange(lo, lo + mat.shape[0])
        out[occ, s - occ] = mat @ amps[occ, s - occ]
    return out


# ---------------------------------------------------------------------------
# homodyne projection
# ---------------------------------------------------------------------------

def _project(amps, x):
    v = quadrature_eigvec(x, amps.shape[0]) @ amps
    return v, float(np.vdot(v, v).real)


def project_quadrature(amps, x):
    """Project the measured mode on <x|; returns (mode-4 vector, density).

    The vector v[m] = sum_n h_n(x) amps[n, m] is left unnormalized; density
    is |v|^2, the quadrature marginal when amps is normalized.
    """
    amps = np.asarray(amps, dtype=complex)
    if amps.ndim != 2:
        raise DimensionMismatch(f"expected a two-mode state, got ndim={amps.ndim}")
    v, dens = _project(amps, x)
    if dens < ZERO_DENSITY:
        raise ZeroProbability(f"quadrature density {dens:.3e} at x={x} below floor")
    return v, dens


def gauss_legendre(a, b, panels, order=GL_ORDER):
    """Composite Gauss-Legendre nodes/weights on [a, b] with equal panels."""
    if panels < 1:
        raise ValueError(f"panels must be >= 1, got {panels}")
    if not b > a:
        raise ValueError(f"empty integration range [{a}, {b}]")
    base_x, base_w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    halves = 0.5 * (edges[1:] - edges[:-1])
    xs = (mids[:, None] + halves[:, None] * base_x[None, :]).ravel()
    ws = (halves[:, None] * base_w[None, :]).ravel()
    return xs, ws


def default_panels(window):
    """Panel count keeping the composite-rule panel width at or below 0.1."""
    return max(1, math.ceil(2.0 * window.half_width / MAX_PANEL_WIDTH))


def window_state(amps, window, panels):
    """Conditional output density for acceptance of X in a finite window.

    Integrates |v(x)><v(x)| over the window with the composite Gauss-Legendre
    rule.  Returns (density matrix normalized to unit trace, probability),
    where probability is the trace before normalization, i.e. the acceptance
    probability of the window.  Eigenvalues above the roundoff floor are
    clipped to zero; anything below it is treated as a genuine failure.
    """
    amps = np.asarray(amps, dtype=complex)
    if amps.ndim != 2:
        raise DimensionMismatch(f"expected a two-mode state, got ndim={amps.ndim}")
    xs, ws = gauss_legendre(window.lo, window.hi, panels)
    dim_out = amps.shape[1]
    rho = np.zeros((dim_out, dim_out), dtype=complex)
    prob = 0.0
    for x, w in zip(xs, ws):
        v, dens = _project(amps, x)
        rho += w * np.outer(v, v.conjugate())
        prob += w * dens
    if prob < ZERO_DENSITY:
        raise ZeroProbability(f"window probability {prob:.3e} below floor")
    rho = (rho + rho.conjugate().T) / (2.0 * prob)
    evals, evecs = np.linalg.eigh(rho)
    if evals.min() < EIG_FLOOR:
        raise DensityValidationError(
            f"density eigenvalue {evals.min():.3e} below roundoff floor")
    evals = np.clip(evals, 0.0, None)
    evals /= evals.sum()
    rho = (evecs * evals) @ evecs.conjugate().T
    return rho, float(prob)


def fidelity(state, target):
    """Fidelity of a pure or mixed state against a normalized pure target.

    |<target|state>|^2 for vectors, <target|rho|target> for densities.
    """
    state = np.asarray(state, dtype=complex)
    target = np.asarray(target, dtype=complex)
    if target.ndim != 1:
        raise DimensionMismatch("target must be a pure-state vector")
    if state.ndim == 1:
        if state.shape != target.shape:
            raise DimensionMismatch(
                f"dimension mismatch: {state.shape} vs {target.shape}")
        val = abs(np.vdot(target, state)) ** 2
    elif state.ndim == 2:
        if state.shape != (target.size, target.size):
            raise DimensionMismatch(
                f"dimension mismatch: {state.shape} vs {target.shape}")
        val = np.vdot(target, state @ target).real
    else:
        raise DimensionMismatch(f"unsupported state ndim={state.ndim}")
    return float(min(max(val, 0.0), 1.0))
