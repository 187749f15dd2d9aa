"""Executable preserver properties: spectrum, shrinking, commutativity, multiplicity.

Checkers accept either an AlgebraMap or a black-box evaluator (the gallery
maps are nonlinear), sample deterministically from a seed, and report a
verdict with the worst violation and offending witnesses. Spectrum equality
is tested through characteristic-polynomial coefficients, which sidesteps
matching noisy eigenvalue lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .algebra import (
    BlockAlgebra,
    block_algebra,
    matrix_units,
    random_commuting_pair,
    random_element,
)
from .linalg import char_poly, eigenvalues, frobenius, identity, inverse, spectral_norm
from .maps import AlgebraMap, apply

MULTIPLICITY_CLUSTER_TOL = 1e-6


class CheckResult(NamedTuple):
    ok: bool
    worst: float
    witnesses: list


@dataclass
class PreserverReport:
    """Aggregate verdicts for the hypothesis suite of a single map."""

    spectrum_preserving: bool
    spectrum_shrinking: bool
    commutativity_preserving: bool
    samples_used: int
    worst_violation: float
    witnesses: dict = field(default_factory=dict)


def _as_evaluator(m, algebra) -> tuple[BlockAlgebra, Callable[[np.ndarray], np.ndarray]]:
    if isinstance(m, AlgebraMap):
        return m.domain, lambda x: apply(m, x)
    if algebra is None:
        raise ValueError("a black-box map needs an explicit algebra")
    return block_algebra(algebra), m


def _probe_elements(algebra: BlockAlgebra, samples: int, rng) -> list[np.ndarray]:
    probes = [np.zeros((algebra.n, algebra.n), dtype=np.complex128), identity(algebra.n)]
    probes.extend(matrix_units(algebra))
    probes.extend(random_element(algebra, rng) for _ in range(samples))
    return probes


def check_char_poly_preserving(
    m, algebra=None, *, samples: int = 100, seed=0, tol: float = 1e-8
) -> CheckResult:
    """Compare char polys of A and of its image, coefficientwise."""
    alg, fn = _as_evaluator(m, algebra)
    rng = np.random.default_rng(seed)
    worst = 0.0
    witnesses = []
    for a in _probe_elements(alg, samples, rng):
        scale = max(1.0, frobenius(a) ** alg.n)
        diff = char_poly(fn(a)) - char_poly(a)
        res = float(np.max(np.abs(diff))) / scale
        worst = max(worst, res)
        if res > tol and len(witnesses) < 4:
            witnesses.append(a)
    return CheckResult(ok=not witnesses, worst=worst, witnesses=witnesses)


def check_spectrum_shrinking(
    m, algebra=None, *, samples: int = 100, seed=0, tol: float = 1e-8
) -> CheckResult:
    """Every eigenvalue of the image must be near some eigenvalue of the input."""
    alg, fn = _as_evaluator(m, algebra)
    rng = np.random.default_rng(seed)
    worst = 0.0
    witnesses = []
    for a in _probe_elements(alg, samples, rng):
        lam_in = eigenvalues(a)
        lam_out = eigenvalues(fn(a))
        gap = float(
            np.max(np.min(np.abs(lam_out[:, None] - lam_in[None, :]), axis=1))
        )
        rel = gap / max(1.0, frobenius(a))
        worst = max(worst, rel)
        if rel > tol and len(witnesses) < 4:
            witnesses.append(a)
    return CheckResult(ok=not witnesses, worst=worst, witnesses=witnesses)


def _commuting_unit_pairs(algebra: BlockAlgebra) -> list[tuple[np.ndarray, np.ndarray]]:
    units = matrix_units(algebra)
    pairs = []
    for p, (i, j) in enumerate(algebra.cells):
        for q in range(p, algebra.dim):
            k, l = algebra.cells[q]
            left = (i, l) if j == k else None
            right = (k, j) if l == i else None
            if left == right:  # both vanish or coincide: the units commute
                pairs.append((units[p], units[q]))
    return pairs


def check_commutativity_preserving(
    m, algebra=None, *, pairs: int = 100, seed=0, tol: float = 1e-8
) -> CheckResult:
    """Images of commuting pairs must commute, relative to their norms."""
    alg, fn = _as_evaluator(m, algebra)
    rng = np.random.default_rng(seed)
    candidates = _commuting_unit_pairs(alg)
    candidates.extend(random_commuting_pair(alg, rng) for _ in range(pairs))
    worst = 0.0
    witnesses = []
    for a, b in candidates:
        fa, fb = fn(a), fn(b)
        res = frobenius(fa @ fb - fb @ fa) / max(1.0, frobenius(fa) * frobenius(fb))
        worst = max(worst, res)
        if res > tol and len(witnesses) < 4:
            witnesses.append((a, b))
    return CheckResult(ok=not witnesses, worst=worst, witnesses=witnesses)


def _multiset_match(lam_a: np.ndarray, lam_b: np.ndarray, tol: float) -> float:
    """Greedy nearest matching; returns the worst matched distance."""
    remaining = list(lam_a)
    worst = 0.0
    for z in sorted(lam_b, key=lambda w: (w.real, w.imag)):
        dists = [abs(z - w) for w in remaining]
        k = int(np.argmin(dists))
        worst = max(worst, dists[k])
        remaining.pop(k)
    return worst


def check_multiplicity_preserving(
    m, algebra=None, *, samples: int = 50, seed=0
) -> CheckResult:
    """Eigenvalue multisets must match on deliberately degenerate inputs.

    Samples are conjugated diagonals with collisions, normalized to unit
    spectral norm; multisets are compared with an absolute clustering
    tolerance of 1e-6.
    """
    alg, fn = _as_evaluator(m, algebra)
    rng = np.random.default_rng(seed)
    n = alg.n
    worst = 0.0
    witnesses = []
    for _ in range(samples):
        base = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if n >= 2:  # force at least one collision
            i, j = rng.choice(n, size=2, replace=False)
            base[j] = base[i]
        g = random_element(alg, rng)
        t = identity(n) + g / (2.0 * max(spectral_norm(g), 1e-12))
        a = t @ np.diag(base) @ inverse(t)
        a = a / max(spectral_norm(a), 1e-12)
        res = _multiset_match(eigenvalues(a), eigenvalues(fn(a)), MULTIPLICITY_CLUSTER_TOL)
        worst = max(worst, res)
        if res > MULTIPLICITY_CLUSTER_TOL and len(witnesses) < 4:
            witnesses.append(a)
    return CheckResult(ok=not witnesses, worst=worst, witnesses=witnesses)


def full_report(m, algebra=None, *, budget: int = 100, seed=0, tol: float = 1e-8) -> PreserverReport:
    """Run every checker against the same budget with derived sub-seeds."""
    alg, _ = _as_evaluator(m, algebra)
    seeds = np.random.SeedSequence(seed).spawn(4)
    cp = check_char_poly_preserving(m, alg, samples=budget, seed=seeds[0], tol=tol)
    sh = check_spectrum_shrinking(m, alg, samples=budget, seed=seeds[1], tol=tol)
    cm = check_commutativity_preserving(m, alg, pairs=budget, seed=seeds[2], tol=tol)
    witnesses = {}
    if not cp.ok:
        witnesses["spectrum"] = cp.witnesses
    if not sh.ok:
        witnesses["shrinking"] = sh.witnesses
    if not cm.ok:
        witnesses["commutativity"] = cm.witnesses
    return PreserverReport(
        spectrum_preserving=cp.ok,
        spectrum_shrinking=sh.ok,
        commutativity_preserving=cm.ok,
        samples_used=budget,
        worst_violation=max(cp.worst, cm.worst),
        witnesses=witnesses,
    )
