"""Band structure of V(x) = s E_re sin^2(kx), Wannier orbitals, and (J, U).

Everything here is dimensionless: energies in recoil units E_re, positions as
v = k x, depths as s = |V_osc|/E_re.  A Bloch state at quasimomentum q is
expanded in plane waves exp(i(q/k + 2m)v), |m| <= M, which turns the
Schrödinger equation into a real symmetric tridiagonal eigenproblem

    H_mm = (q/k + 2m)^2 + s/2,    H_{m,m+1} = -s/4.

The lowest-band Wannier orbital is the quasimomentum average of the Bloch
states with each global phase fixed real-positive at the well center; with
that gauge it is real, symmetric and maximally localized.  J comes from the
nearest-neighbor Fourier coefficient of the lowest band; U from g * the
quartic integral of the orbital.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import EigensolverError, GaugeError

DEFAULT_QUASIMOMENTA = 64
DEFAULT_BANDS = 3
DEFAULT_PLANE_WAVES = 16
DEFAULT_WANNIER_SITES = 14
DEFAULT_POINTS_PER_SITE = 128

#: below this depth the single-band tight-binding reduction is dubious
TIGHT_BINDING_FLOOR = 3.0

_RESIDUAL_TOL = 1e-8


class ShallowLatticeWarning(UserWarning):
    """Depth below the tight-binding floor; J and U lose their Hubbard meaning."""


@dataclass(frozen=True)
class BandData:
    """Lowest bands of the sin^2 lattice on a uniform quasimomentum grid."""

    depth: float  # s
    q_over_k: np.ndarray  # (N_q,), in (-1, 1]
    energies: np.ndarray  # (N_q, N_b), units of E_re
    coefficients: np.ndarray  # (N_q, N_b, 2M+1) plane-wave amplitudes
    m_pw: int

    @property
    def n_q(self) -> int:
        return self.q_over_k.size

    @property
    def n_bands(self) -> int:
        return self.energies.shape[1]


@dataclass(frozen=True)
class WannierData:
    """Lowest-band Wannier orbital sampled on a uniform grid.

    ``grid`` holds v = k x over [-n_sites*pi/2, n_sites*pi/2]; ``samples`` is
    real and normalized so that trapezoid(samples^2, grid) = 1.
    """

    depth: float
    grid: np.ndarray
    samples: np.ndarray
    points_per_site: int

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])


@dataclass(frozen=True)
class HubbardParams:
    """Single-band Hubbard couplings for one depth, in recoil units."""

    tunneling: float  # J / E_re
    interaction: float  # U / E_re
    ratio: float  # 2 J / U
    depth: float  # s


def bloch_bands(
    depth: float,
    n_q: int = DEFAULT_QUASIMOMENTA,
    n_bands: int = DEFAULT_BANDS,
    m_pw: int = DEFAULT_PLANE_WAVES,
) -> BandData:
    """Diagonalize the plane-wave Hamiltonian on the quasimomentum grid."""
    if depth < 0.0:
        raise ValueError("depth must be non-negative (use |V_osc|/E_re)")
    if n_q < 2:
        raise ValueError("need at least two quasimomentum points")
    if not 1 <= n_bands <= 2 * m_pw + 1:
        raise ValueError("n_bands must lie in [1, 2*m_pw + 1]")

    qk = np.arange(1, n_q + 1) * (2.0 / n_q) - 1.0  # (-1, 1]
    m = np.arange(-m_pw, m_pw + 1)
    diag = (qk[:, None] + 2.0 * m[None, :]) ** 2 + depth / 2.0
    off = np.full((n_q, 2 * m_pw), -depth / 4.0)

    vals, vecs = _kernels.tridiag_lowest(diag, off, n_bands)

    # residual audit; bisection+inverse iteration normally sits near 1e-14
    hv = diag[:, :, None] * vecs
    hv[:, 1:, :] += off[:, :, None] * vecs[:, :-1, :]
    hv[:, :-1, :] += off[:, :, None] * vecs[:, 1:, :]
    resid = np.abs(hv - vals[:, None, :] * vecs).max(axis=1)
    if resid.max() > _RESIDUAL_TOL:
        b, j = np.unravel_index(int(np.argmax(resid)), resid.shape)
        raise EigensolverError(
            f"eigenpair residual {resid[b, j]:.3e} at depth {depth!r}, q/k = {qk[b]!r}, band {j}"
        )

    coeffs = np.ascontiguousarray(vecs.transpose(0, 2, 1))
    energies = vals.copy()
    for arr in (qk, energies, coeffs):
        arr.flags.writeable = False
    return BandData(depth=float(depth), q_over_k=qk, energies=energies, coefficients=coeffs, m_pw=m_pw)


def _gauged_lowest_coefficients(bands: BandData) -> np.ndarray:
    """Lowest-band plane-wave amplitudes, sign-fixed so psi_q(0) > 0."""
    c = bands.coefficients[:, 0, :].copy()
    at_center = c.sum(axis=1)
    if np.abs(at_center).min() < 1e-8:
        raise GaugeError("a lowest-band Bloch state vanishes at the well center")
    c[at_center < 0.0] *= -1.0
    return c


def _synthesize(bands: BandData, c0: np.ndarray, v: np.ndarray, derivative: bool = False) -> np.ndarray:
    """Evaluate the un-normalized Wannier sum (or its derivative) on grid v."""
    qk = bands.q_over_k
    m = np.arange(-bands.m_pw, bands.m_pw + 1)
    em = np.exp(2j * np.outer(m, v))  # (2M+1, n_v)
    eq = np.exp(1j * np.outer(qk, v))  # (N_q, n_v)
    if derivative:
        base = c0 @ em
        slope = (c0 * (2.0 * m)[None, :]) @ em
        w = (eq * (1j * qk[:, None] * base + 1j * slope)).sum(axis=0)
    else:
        w = (eq * (c0 @ em)).sum(axis=0)
    w /= math.sqrt(bands.n_q)
    scale = np.abs(w.real).max()
    if scale > 0.0 and np.abs(w.imag).max() > 1e-8 * scale:
        raise GaugeError("Wannier synthesis produced a non-real orbital")
    return w.real


def wannier(
    bands: BandData,
    n_sites: int = DEFAULT_WANNIER_SITES,
    points_per_site: int = DEFAULT_POINTS_PER_SITE,
) -> WannierData:
    """Real, symmetric, grid-normalized Wannier orbital of the lowest band."""
    if n_sites < 2 or n_sites > bands.n_q:
        raise ValueError("n_sites must lie in [2, n_q]")
    if points_per_site < 8:
        raise ValueError("points_per_site must be at least 8")
    half = n_sites * math.pi / 2.0
    v = np.linspace(-half, half, n_sites * points_per_site + 1)
    c0 = _gauged_lowest_coefficients(bands)
    w = _synthesize(bands, c0, v)
    norm = np.trapezoid(w * w, v)
    w = w / math.sqrt(norm)
    v.flags.writeable = False
    w.flags.writeable = False
    return WannierData(depth=bands.depth, grid=v, samples=w, points_per_site=points_per_site)


def tunneling_j(bands: BandData) -> float:
    """Nearest-neighbor hopping J/E_re from the lowest-band dispersion.

    J = -(1/N_q) sum_q E_0(q) cos(q a); evaluates for any depth, but only
    carries tight-binding meaning above the shallow-lattice floor.
    """
    return float(-np.mean(bands.energies[:, 0] * np.cos(math.pi * bands.q_over_k)))


def tunneling_j2(bands: BandData) -> float:
    """Next-nearest-neighbor hopping (second Fourier coefficient); diagnostic."""
    return float(-np.mean(bands.energies[:, 0] * np.cos(2.0 * math.pi * bands.q_over_k)))


def tunneling_j_wannier(
    bands: BandData,
    n_sites: int = DEFAULT_WANNIER_SITES,
    points_per_site: int = DEFAULT_POINTS_PER_SITE,
) -> float:
    """J/E_re from the real-space matrix element -<w_0| H |w_1>.

    Independent route: uses the synthesized orbital and its analytic
    derivative under quadrature, never the dispersion.  Cross-checks
    ``tunneling_j`` to better than a percent in the tight-binding range.
    """
    half = n_sites * math.pi / 2.0
    v = np.linspace(-half, half, n_sites * points_per_site + 1)
    c0 = _gauged_lowest_coefficients(bands)
    w0 = _synthesize(bands, c0, v)
    norm = np.trapezoid(w0 * w0, v)
    w0 = w0 / math.sqrt(norm)
    w1 = _synthesize(bands, c0, v - math.pi) / math.sqrt(norm)
    d0 = _synthesize(bands, c0, v, derivative=True) / math.sqrt(norm)
    d1 = _synthesize(bands, c0, v - math.pi, derivative=True) / math.sqrt(norm)
    kinetic = np.trapezoid(d0 * d1, v)
    potential = np.trapezoid(bands.depth * np.sin(v) ** 2 * w0 * w1, v)
    return float(-(kinetic + potential))


def site_overlap(w: WannierData, separation: int = 1) -> float:
    """Overlap integral of the orbital with itself shifted by whole sites."""
    if separation < 1:
        raise ValueError("separation must be a positive site count")
    shift = separation * w.points_per_site
    if shift >= w.samples.size:
        raise ValueError("separation exceeds the sampled window")
    return float(np.trapezoid(w.samples[shift:] * w.samples[:-shift], dx=w.step))


def interaction_u(w: WannierData, g: float) -> float:
    """On-site pair energy U/E_re = g * integral of w^4, with g in E_re/k units."""
    if g < 0.0:
        raise ValueError("the contact coupling g must be non-negative")
    return float(g * np.trapezoid(w.samples**4, w.grid))


def quartic_integral(w: WannierData) -> float:
    """integral of w^4 dv; U/E_re per unit of g."""
    return float(np.trapezoid(w.samples**4, w.grid))


def hubbard_from_depth(
    depth: float,
    g: float,
    n_q: int = DEFAULT_QUASIMOMENTA,
    n_bands: int = DEFAULT_BANDS,
    m_pw: int = DEFAULT_PLANE_WAVES,
    n_sites: int = DEFAULT_WANNIER_SITES,
    points_per_site: int = DEFAULT_POINTS_PER_SITE,
) -> HubbardParams:
    """Compose bands -> Wannier -> (J, U) for one lattice depth."""
    if depth < TIGHT_BINDING_FLOOR:
        warnings.warn(
            f"depth s = {depth:.3g} is below the tight-binding floor {TIGHT_BINDING_FLOOR}",
            ShallowLatticeWarning,
            stacklevel=2,
        )
    bands = bloch_bands(depth, n_q=n_q, n_bands=n_bands, m_pw=m_pw)
    w = wannier(bands, n_sites=n_sites, points_per_site=points_per_site)
    j = tunneling_j(bands)
    u = interaction_u(w, g)
    ratio = 2.0 * j / u if u != 0.0 else math.inf
    return HubbardParams(tunneling=j, interaction=u, ratio=ratio, depth=float(depth))
