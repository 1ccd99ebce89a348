"""Matrix representations of n-complex numbers.

A polar number is represented by the circulant matrix with first row
``x_0 .. x_{n-1}``; a planar number by the same matrix with the entries below
the diagonal negated.  Multiplication of numbers becomes matrix
multiplication, which makes this module an oracle independent of the
convolution formula in :mod:`ncomplex.core`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NComplex, Variant
from .errors import Overflow
from .spectral import to_spectrum


def represent(u: NComplex) -> np.ndarray:
    n = u.n
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    m = u.x[(j - i) % n]
    if u.variant is Variant.PLANAR:
        m = np.where(j < i, -m, m)
    return m


def from_matrix(m: np.ndarray, variant=Variant.POLAR) -> NComplex:
    """Read a number back from the first row of its representation."""
    return NComplex(np.asarray(m)[0], variant)


@dataclass(frozen=True)
class BlockForm:
    """Irreducible real block-diagonal form: scalars then 2x2 blocks."""

    diag_scalars: tuple[float, ...]
    blocks: tuple[np.ndarray, ...]

    def determinant(self) -> float:
        det = math.prod(self.diag_scalars)
        for b in self.blocks:
            det *= b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
        return float(det)

    def to_matrix(self) -> np.ndarray:
        size = len(self.diag_scalars) + 2 * len(self.blocks)
        out = np.zeros((size, size))
        for i, s in enumerate(self.diag_scalars):
            out[i, i] = s
        offset = len(self.diag_scalars)
        for b in self.blocks:
            out[offset:offset + 2, offset:offset + 2] = b
            offset += 2
        return out


def block_form(u: NComplex) -> BlockForm:
    s = to_spectrum(u)
    scalars = tuple(v for v in (s.v_plus, s.v_minus) if v is not None)
    blocks = tuple(np.array([[v, w], [-w, v]]) for v, w in s.pairs)
    return BlockForm(scalars, blocks)


def lu_determinant(m: np.ndarray) -> float:
    """Determinant by partial-pivot LU factorization."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    det = 1.0
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if a[pivot, col] == 0.0:
            return 0.0
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det *= a[col, col]
        below = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= np.outer(below, a[col, col:])
    return float(det)


def matrix_exp(m: np.ndarray, tol: float = 1e-16) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor kernel.

    The matrix is scaled by ``2**-s`` until its 1-norm is at most 1/2, the
    Taylor series is summed until terms drop below ``tol`` relative to the
    partial sum, and the result is squared ``s`` times.
    """
    a = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(a)):
        raise Overflow("matrix has non-finite entries")
    norm = float(np.max(np.sum(np.abs(a), axis=0))) if a.size else 0.0
    s = max(0, int(math.ceil(math.log2(norm / 0.5)))) if norm > 0.5 else 0
    a = a / 2.0**s
    result = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, 60):
        term = term @ a / k
        result = result + term
        if np.max(np.abs(term)) <= tol * np.max(np.abs(result)):
            break
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            result = result @ result
    if not np.all(np.isfinite(result)):
        raise Overflow("matrix exponential overflowed")
    return result


def eigen_residual(m: np.ndarray, eigenvalue: complex) -> float:
    """Scale-free test that ``eigenvalue`` is an eigenvalue of ``m``.

    Returns ``|det(m - lambda I)|`` divided by the product of the column norms
    of ``m - lambda I`` (Hadamard's bound), so the value lies in ``[0, 1]``
    and vanishes exactly at eigenvalues.
    """
    a = np.asarray(m, dtype=complex) - eigenvalue * np.eye(m.shape[0])
    norms = np.linalg.norm(a, axis=0)
    if np.any(norms == 0):
        return 0.0
    # log-domain keeps large n from under/overflowing
    sign, logdet = np.linalg.slogdet(a)
    if sign == 0:
        return 0.0
    return float(np.exp(logdet - np.sum(np.log(norms))))


def predicted_eigenvalues(u: NComplex) -> list[complex]:
    """Eigenvalues implied by the spectral coordinates, with multiplicity."""
    s = to_spectrum(u)
    values = [complex(v) for v in (s.v_plus, s.v_minus) if v is not None]
    for v, w in s.pairs:
        values += [complex(v, w), complex(v, -w)]
    return values
