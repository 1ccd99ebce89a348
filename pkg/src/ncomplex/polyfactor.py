"""Factorization of monic n-complex polynomials.

In spectral coordinates ``P(u) = u^m + a_1 u^{m-1} + ... + a_m`` becomes one
scalar polynomial per slot: real for ``v_+``/``v_-``, complex for each pair.
Each slot polynomial factors uniquely, but the slot roots may be matched up
across slots in any order, so ``P`` has many factorizations into linear
factors ``u - u_p``.  A real slot whose roots include a complex-conjugate
pair cannot host a linear factor with real components; those two factor
positions are fused into one quadratic factor ``u^2 + B u + C``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .core import DEFAULT_TOLERANCES, NComplex, Tolerances, Variant, check_dimension
from .errors import DimensionMismatch, DomainError, NotConverged
from .spectral import components_to_slots, from_slots, slot_layout

CLUSTER_RTOL = 1e-6
DEFAULT_LIMIT = 10_000


@dataclass(frozen=True)
class NPolynomial:
    """Monic polynomial ``u^m + a_1 u^{m-1} + ... + a_m``."""

    variant: Variant
    n: int
    coefficients: tuple[NComplex, ...]  # a_1 .. a_m

    def __post_init__(self):
        variant = Variant.coerce(self.variant)
        object.__setattr__(self, "variant", variant)
        check_dimension(self.n, variant)
        coeffs = tuple(
            c if isinstance(c, NComplex) else NComplex(c, variant) for c in self.coefficients
        )
        if not coeffs:
            raise DomainError("a polynomial needs degree >= 1")
        for c in coeffs:
            if c.n != self.n or c.variant is not variant:
                raise DimensionMismatch("all coefficients must share n and variant")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients)

    @classmethod
    def from_json(cls, data) -> "NPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["variant"], int(data["n"]), tuple(data["coefficients"]))

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "n": self.n,
            "coefficients": [[float(v) for v in c.x] for c in self.coefficients],
        }

    def __call__(self, u: NComplex) -> NComplex:
        acc = NComplex.identity(self.n, self.variant)
        for c in self.coefficients:
            acc = acc * u + c
        return acc

    def scale(self) -> float:
        return max(1.0, max(float(np.linalg.norm(c.x)) for c in self.coefficients))


@dataclass(frozen=True)
class SlotPolynomial:
    """Monic scalar polynomial of one spectral slot, highest power first."""

    name: str
    real: bool
    coefficients: np.ndarray


def component_polynomials(P: NPolynomial) -> list[SlotPolynomial]:
    layout = slot_layout(P.n, P.variant)
    spectra = components_to_slots(np.array([c.x for c in P.coefficients]), P.variant)
    out = []
    for s, name in enumerate(layout.names()):
        coeffs = np.concatenate([[1.0 + 0j], spectra[:, s]])
        is_real = s < len(layout.real)
        if is_real:
            coeffs = coeffs.real.astype(complex)
        name = name if is_real else f"pair_{name.split('_')[1]}"
        out.append(SlotPolynomial(name, is_real, coeffs))
    return out


def durand_kerner(
    coeffs: np.ndarray,
    tol: float = 1e-14,
    max_iter: int = 500,
    restarts: int = 3,
    seed: int = 0,
) -> np.ndarray:
    """All roots of a monic complex polynomial by simultaneous iteration.

    Starts from points on a circle of the Cauchy root bound, rotated off the
    real axis; on failure restarts from random points.  Roots are then
    polished with a few Newton steps.
    """
    c = np.asarray(coeffs, dtype=complex)
    c = c / c[0]
    m = c.size - 1
    if m == 0:
        return np.zeros(0, dtype=complex)
    if m == 1:
        return np.array([-c[1]])
    bound = 1.0 + float(np.max(np.abs(c[1:])))
    rng = np.random.default_rng(seed)
    start = 0.4 * bound * np.exp(1j * (2 * np.pi * np.arange(m) / m + 0.4))
    best, best_residual = None, np.inf
    for _attempt in range(restarts + 1):
        z = start.copy()
        converged = False
        with np.errstate(all="ignore"):
            for _ in range(max_iter):
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, 1.0)
                step = np.polyval(c, z) / np.prod(diff, axis=1)
                z = z - step
                if not np.all(np.isfinite(z)):
                    break
                if np.max(np.abs(step)) <= tol * max(1.0, float(np.max(np.abs(z)))):
                    converged = True
                    break
        if np.all(np.isfinite(z)):
            residual = float(np.max(np.abs(np.polyval(c, z))))
            if residual < best_residual:
                best, best_residual = z, residual
        if converged:
            break
        start = bound * (rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m))
    if best is None:
        raise NotConverged(f"Durand-Kerner diverged on all {restarts + 1} starts")
    # multiple roots converge only linearly; the caller judges the residual
    z = best
    deriv = np.polyder(c)
    for _ in range(3):
        d = np.polyval(deriv, z)
        ok = np.abs(d) > 0
        z[ok] = z[ok] - np.polyval(c, z[ok]) / d[ok]
    return z


def _cluster(roots: np.ndarray, scale: float) -> np.ndarray:
    """Replace roots closer than ``CLUSTER_RTOL * scale`` by their mean."""
    roots = roots.copy()
    used = np.zeros(roots.size, dtype=bool)
    for i in range(roots.size):
        if used[i]:
            continue
        close = (~used) & (np.abs(roots - roots[i]) <= CLUSTER_RTOL * scale)
        roots[close] = np.mean(roots[close])
        used |= close
    return roots


def _sort_key(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


@dataclass(frozen=True)
class SlotRoots:
    name: str
    real: bool
    roots: tuple[complex, ...]  # canonical order

    @property
    def conjugate_pairs(self) -> int:
        return sum(1 for z in self.roots if z.imag > 0) if self.real else 0


@dataclass(frozen=True)
class ComponentRoots:
    n: int
    variant: Variant
    slots: tuple[SlotRoots, ...]

    @property
    def degree(self) -> int:
        return len(self.slots[0].roots)


def roots(P: NPolynomial, tol: Tolerances = DEFAULT_TOLERANCES) -> ComponentRoots:
    """Roots of every slot polynomial.

    Real-slot roots with ``|Im| <= factor_tol * scale`` are snapped to the
    real axis and the rest are made exactly conjugate.
    """
    out = []
    for slot in component_polynomials(P):
        c = slot.coefficients
        scale = 1.0 + float(np.max(np.abs(c[1:])))
        z = durand_kerner(c)
        residual = np.abs(np.polyval(c, z)) / scale ** P.degree
        if np.any(residual > tol.factor_tol * 10):
            raise NotConverged(f"slot {slot.name}: root residual {residual.max():.3g}")
        z = _cluster(z, scale)
        if slot.real:
            snap = np.abs(z.imag) <= tol.factor_tol * scale
            z = np.where(snap, z.real + 0j, z)
            upper = sorted((w for w in z if w.imag > 0), key=_sort_key)
            lower = [w for w in z if w.imag < 0]
            if len(upper) != len(lower):
                raise NotConverged(f"slot {slot.name}: unpaired complex roots")
            z = [w for w in z if w.imag == 0] + [w for u in upper for w in (u, u.conjugate())]
        out.append(SlotRoots(slot.name, slot.real, tuple(sorted((complex(w) for w in z), key=_sort_key))))
    return ComponentRoots(P.n, P.variant, tuple(out))


@dataclass(frozen=True)
class Factorization:
    """``P(u) = prod (u - u_p) * prod (u^2 + B_q u + C_q)``."""

    linear_roots: tuple[NComplex, ...]
    quadratic_factors: tuple[tuple[NComplex, NComplex], ...] = ()
    ordering_id: int = 0

    @property
    def mixed(self) -> bool:
        return bool(self.quadratic_factors)


def _arrangements(slot: SlotRoots, blocks: int, m: int) -> list[tuple]:
    """Distinct ways of handing this slot's roots to the factor positions.

    Positions ``0 .. blocks-1`` are quadratic blocks and receive an unordered
    pair of roots; the remaining ``m - 2 blocks`` positions are linear and
    receive one root each.  Real slots must put conjugate pairs in blocks.
    """
    pool = Counter(slot.roots)
    result = []

    def fill_blocks(i, remaining, acc):
        if i == blocks:
            fill_linear(remaining, acc)
            return
        items = sorted(remaining.elements(), key=_sort_key)
        seen = set()
        for a_idx, a in enumerate(items):
            for b in items[a_idx + 1:]:
                pair = (a, b)
                if pair in seen:
                    continue
                if slot.real and (a.imag != 0 or b.imag != 0) and a != b.conjugate():
                    continue
                seen.add(pair)
                rest = remaining.copy()
                rest[a] -= 1
                rest[b] -= 1
                fill_blocks(i + 1, +rest, acc + (pair,))

    def fill_linear(remaining, acc):
        items = list(remaining.elements())
        if slot.real and any(z.imag != 0 for z in items):
            return
        for perm in _multiset_permutations(sorted(items, key=_sort_key)):
            result.append(acc + tuple(perm))

    fill_blocks(0, pool, ())
    return result


def _multiset_permutations(items: list) -> Iterator[tuple]:
    counts = Counter(items)
    keys = list(counts)
    n = len(items)

    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                yield from rec(prefix)
                prefix.pop()
                counts[k] += 1

    yield from rec([])


def _block_count(component_roots: ComponentRoots) -> int:
    return max(s.conjugate_pairs for s in component_roots.slots)


def _canonical_key(assignment: tuple[tuple, ...], blocks: int) -> tuple:
    # assignment[s][position]; positions < blocks hold pairs
    m_pos = len(assignment[0])
    linear = sorted(tuple(_sort_key(a[p]) for a in assignment) for p in range(blocks, m_pos))
    quad = sorted(
        tuple(tuple(sorted((_sort_key(x) for x in a[q]))) for a in assignment) for q in range(blocks)
    )
    return (tuple(quad), tuple(linear))


def _build(component_roots: ComponentRoots, assignment, blocks: int, ordering_id: int) -> Factorization:
    n, variant = component_roots.n, component_roots.variant
    positions = len(assignment[0])
    linear = []
    for p in range(blocks, positions):
        slots = np.array([a[p] for a in assignment], dtype=complex)
        linear.append(from_slots(slots, n, variant))
    quadratic = []
    for q in range(blocks):
        b = np.array([-(a[q][0] + a[q][1]) for a in assignment], dtype=complex)
        c = np.array([a[q][0] * a[q][1] for a in assignment], dtype=complex)
        quadratic.append((from_slots(b, n, variant), from_slots(c, n, variant)))
    return Factorization(tuple(linear), tuple(quadratic), ordering_id)


def factorizations(
    P: NPolynomial,
    limit: int = DEFAULT_LIMIT,
    tol: Tolerances = DEFAULT_TOLERANCES,
    component_roots: ComponentRoots | None = None,
) -> Iterator[Factorization]:
    """Lazily enumerate distinct factorizations, canonical one first.

    Two factorizations are the same when they have the same multiset of
    factors, so relabelling the factor index ``p`` does not count.
    """
    cr = component_roots or roots(P, tol)
    m = cr.degree
    blocks = _block_count(cr)
    per_slot = [_arrangements(s, blocks, m - 2 * blocks) for s in cr.slots]
    anchor = _anchor(cr) if blocks == 0 else None
    if anchor is not None:
        # fixing one slot of distinct roots removes the relabelling symmetry
        per_slot[anchor] = per_slot[anchor][:1]
    seen = set()
    count = 0
    for combo in itertools.product(*per_slot):
        if count >= limit:
            return
        key = _canonical_key(combo, blocks)
        if key in seen:
            continue
        seen.add(key)
        yield _build(cr, combo, blocks, count)
        count += 1


def count_factorizations(
    P: NPolynomial,
    limit: int = DEFAULT_LIMIT,
    tol: Tolerances = DEFAULT_TOLERANCES,
    component_roots: ComponentRoots | None = None,
) -> int:
    """Number of distinct factorizations, capped at ``limit``.

    Without quadratic blocks and with one slot of distinct roots, fixing that
    slot's order leaves ``prod`` of the other slots' multiset permutation
    counts; otherwise the enumeration is counted.
    """
    cr = component_roots or roots(P, tol)
    if _block_count(cr) == 0:
        anchor = _anchor(cr)
        if anchor is not None:
            total = 1
            for i, s in enumerate(cr.slots):
                if i != anchor:
                    total *= _multiset_count(s.roots)
            return min(total, limit)
    return sum(1 for _ in factorizations(P, limit, tol, cr))


def _anchor(cr: ComponentRoots) -> int | None:
    return next((i for i, s in enumerate(cr.slots) if len(set(s.roots)) == len(s.roots)), None)


def _multiset_count(items) -> int:
    counts = Counter(items)
    total = math.factorial(sum(counts.values()))
    for c in counts.values():
        total //= math.factorial(c)
    return total


def expand(f: Factorization, variant, n: int) -> NPolynomial:
    """Multiply the factors back out into monic coefficients."""
    variant = Variant.coerce(variant)
    one = NComplex.identity(n, variant)
    # coefficient lists, highest power first
    poly = [one]
    factors = [[one, -r] for r in f.linear_roots] + [[one, b, c] for b, c in f.quadratic_factors]
    for factor in factors:
        out = [NComplex.zero(n, variant) for _ in range(len(poly) + len(factor) - 1)]
        for i, a in enumerate(poly):
            for j, b in enumerate(factor):
                out[i + j] = out[i + j] + a * b
        poly = out
    return NPolynomial(variant, n, tuple(poly[1:]))


def polynomial_from_roots(roots_: list[NComplex]) -> NPolynomial:
    """Monic polynomial with the given linear roots."""
    first = roots_[0]
    return expand(Factorization(tuple(roots_)), first.variant, first.n)
