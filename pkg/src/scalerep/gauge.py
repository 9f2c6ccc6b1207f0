"""Per-site scaled complex structures on a periodic lattice.

Neighbouring sites relate their number structures by a positive link
factor ``r = exp(A*dx)``.  The covariant derivative transports the
neighbour value into the local structure before differencing::

    (d f)(x) = (f(x+dx) - f(x)) / dx
    (D f)(x) = (r(x) * f(x+dx) - f(x)) / dx

Arrays are float64/complex128; the potential has shape ``(dims, *shape)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidScale


@dataclass(frozen=True)
class Lattice:
    dims: int
    sites: int
    dx: float

    def __post_init__(self) -> None:
        if self.dims not in (1, 2):
            raise DomainError(f"lattice dims must be 1 or 2, got {self.dims}")
        if self.sites < 2:
            raise DomainError(f"lattice needs at least 2 sites per dimension, got {self.sites}")
        if not (self.dx > 0 and math.isfinite(self.dx)):
            raise DomainError(f"lattice spacing must be positive, got {self.dx}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.sites,) * self.dims

    def coordinates(self, mu: int = 0) -> np.ndarray:
        """Position ``x_mu`` of every site."""
        axes = np.meshgrid(*[np.arange(self.sites) * self.dx] * self.dims, indexing="ij")
        return axes[mu]


def _check_direction(lattice: Lattice, mu: int) -> None:
    if not 0 <= mu < lattice.dims:
        raise DomainError(f"direction {mu} out of range for a {lattice.dims}-d lattice")


def _check_potential(A: np.ndarray, lattice: Lattice) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.shape != (lattice.dims, *lattice.shape):
        raise DimensionMismatch(f"potential shape {A.shape} != {(lattice.dims, *lattice.shape)}")
    if not np.all(np.isfinite(A)):
        raise DomainError("potential must be finite at every site")
    return A


def _neighbour(f: np.ndarray, mu: int) -> np.ndarray:
    # f(x + dx e_mu) with periodic wrap
    return np.roll(f, -1, axis=mu)


def link_factor(A: np.ndarray, lattice: Lattice) -> np.ndarray:
    """``r[mu, x] = exp(A[mu, x] * dx)``."""
    return np.exp(_check_potential(A, lattice) * lattice.dx)


def ordinary_derivative(f: np.ndarray, mu: int, lattice: Lattice) -> np.ndarray:
    _check_direction(lattice, mu)
    f = np.asarray(f, dtype=complex)
    return (_neighbour(f, mu) - f) / lattice.dx


def covariant_derivative(f: np.ndarray, r: np.ndarray, mu: int, lattice: Lattice) -> np.ndarray:
    _check_direction(lattice, mu)
    f = np.asarray(f, dtype=complex)
    r = np.asarray(r, dtype=float)
    return (r[mu] * _neighbour(f, mu) - f) / lattice.dx


def local_representation(a_y: complex, r_link: float) -> complex:
    """Value that site ``x`` assigns, in its own structure, to ``a_y`` from
    the neighbouring site ``y``."""
    if not r_link > 0:
        raise InvalidScale(f"link factors are positive reals, got {r_link}")
    return r_link * a_y


def transport_field(r: np.ndarray, lattice: Lattice, f0: complex = 1.0, mu: int = 0) -> np.ndarray:
    """Field built by ``f(x + dx) = f(x) / r(x)`` along direction ``mu``.

    On a 2-d lattice each line along ``mu`` starts from ``f0``.  The wrap
    link closing each line is not constrained; its mismatch is the holonomy
    ``prod r``, which is 1 only for zero net flux.
    """
    _check_direction(lattice, mu)
    r = np.asarray(r, dtype=float)[mu]
    rm = np.moveaxis(r, mu, 0)
    f = np.empty(rm.shape, dtype=complex)
    f[0] = f0
    for k in range(1, lattice.sites):
        f[k] = f[k - 1] / rm[k - 1]
    return np.moveaxis(f, 0, mu)


def open_path_mask(lattice: Lattice, mu: int = 0) -> np.ndarray:
    """True at sites whose forward link along ``mu`` does not wrap around."""
    mask = np.ones(lattice.shape, dtype=bool)
    index = [slice(None)] * lattice.dims
    index[mu] = lattice.sites - 1
    mask[tuple(index)] = False
    return mask


def gauge_transform(
    f: np.ndarray, A: np.ndarray, lam: np.ndarray, lattice: Lattice
) -> tuple[np.ndarray, np.ndarray]:
    """``f -> lam*f`` and ``A_mu -> A_mu - (ln lam(x+dx) - ln lam(x))/dx``.

    Not a law of the number-structure picture itself; an auxiliary check
    under which ``D'f' = lam * D f`` holds exactly for positive ``lam``.
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam <= 0):
        raise DomainError("gauge factors must be positive")
    A = _check_potential(A, lattice)
    log_lam = np.log(lam)
    shifted = np.stack([
        A[mu] - (_neighbour(log_lam, mu) - log_lam) / lattice.dx for mu in range(lattice.dims)
    ])
    return lam * np.asarray(f, dtype=complex), shifted


class ScaledHilbert:
    """Coordinate Hilbert space with scalars read in ``C_c``, ``c > 0``.

    Vector addition is unchanged; ``s .c v = s*v/c`` and
    ``<u, v>_c = <u, v>/c``, the inner product conjugate-linear in ``u``.
    """

    def __init__(self, dim: int, c: float) -> None:
        if dim < 1:
            raise DomainError("Hilbert space dimension must be >= 1")
        if not (c > 0 and math.isfinite(c)):
            raise InvalidScale(f"Hilbert scaling needs a positive real c, got {c}")
        self.dim = dim
        self.c = float(c)

    def _vec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"expected a vector of length {self.dim}, got shape {v.shape}")
        return v

    def add(self, u, v) -> np.ndarray:
        return self._vec(u) + self._vec(v)

    def sub(self, u, v) -> np.ndarray:
        return self._vec(u) - self._vec(v)

    def smul(self, s: complex, v) -> np.ndarray:
        return s * self._vec(v) / self.c

    def inner(self, u, v) -> complex:
        return complex(np.vdot(self._vec(u), self._vec(v))) / self.c

    def embed(self, s: complex) -> complex:
        """External value ``c*s`` of the scalar ``s``."""
        return self.c * s

    @property
    def one(self) -> float:
        return self.c


# --------------------------------------------------------------------------
# demo configuration
# --------------------------------------------------------------------------

_NUM = r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?"


def parse_potential(spec: str, lattice: Lattice) -> np.ndarray:
    """``const:<a>`` or ``sine:amp=<a>,period=<sites>`` (along each axis)."""
    m = re.fullmatch(rf"const:({_NUM})", spec.strip())
    if m:
        return np.full((lattice.dims, *lattice.shape), float(m.group(1)))
    m = re.fullmatch(rf"sine:amp=({_NUM}),period=({_NUM})", spec.strip())
    if m:
        amp, period = float(m.group(1)), float(m.group(2))
        if period <= 0:
            raise DomainError("sine period must be positive")
        A = np.empty((lattice.dims, *lattice.shape))
        for mu in range(lattice.dims):
            k = np.indices(lattice.shape)[mu]
            A[mu] = amp * np.sin(2 * np.pi * k / period)
        return A
    raise DomainError(f"bad potential spec {spec!r}; use const:<a> or sine:amp=<a>,period=<n>")


FIELDS = ("const", "linear", "exp", "transport")


def make_field(spec: str, lattice: Lattice, r: np.ndarray) -> np.ndarray:
    x = lattice.coordinates(0)
    if spec == "const":
        return np.ones(lattice.shape, dtype=complex)
    if spec == "linear":
        return x.astype(complex)
    if spec == "exp":
        # one period across the lattice
        k = 2 * np.pi / (lattice.sites * lattice.dx)
        return np.exp(1j * k * x)
    if spec == "transport":
        return transport_field(r, lattice)
    raise DomainError(f"bad field spec {spec!r}; use one of {', '.join(FIELDS)}")


def run_demo(
    dims: int = 1,
    sites: int = 64,
    dx: float = 0.1,
    potential: str = "sine:amp=0.2,period=16",
    field: str = "transport",
) -> dict:
    """Derivatives of one field along direction 0, plus summary norms.

    ``max_abs_Df_open`` leaves out the wrap link, where a transported field
    picks up the holonomy.
    """
    lattice = Lattice(dims, sites, dx)
    A = parse_potential(potential, lattice)
    r = link_factor(A, lattice)
    f = make_field(field, lattice, r)
    d = ordinary_derivative(f, 0, lattice)
    D = covariant_derivative(f, r, 0, lattice)
    mask = open_path_mask(lattice)
    max_f = float(np.max(np.abs(f)))
    return {
        "lattice": {"dims": dims, "sites": sites, "dx": dx},
        "potential": potential,
        "field": field,
        "link_factor": _tolist(r[0]),
        "f": _complex_list(f),
        "df": _complex_list(d),
        "Df": _complex_list(D),
        "summary": {
            "max_abs_f": max_f,
            "max_abs_df": float(np.max(np.abs(d))),
            "max_abs_Df": float(np.max(np.abs(D))),
            "max_abs_Df_open": float(np.max(np.abs(D[mask]))),
            "max_abs_Df_minus_df": float(np.max(np.abs(D - d))),
            "holonomy": float(np.prod(np.moveaxis(r[0], 0, -1), axis=-1).max()),
        },
    }


def _tolist(a: np.ndarray) -> list:
    return a.tolist()


def _complex_list(a: np.ndarray):
    return np.stack([a.real, a.imag], axis=-1).tolist()
