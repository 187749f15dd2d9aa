"""Linear maps on a block algebra and the two standard Jordan forms.

An AlgebraMap stores a linear map as an (n^2, d) coefficient matrix over the
domain's support-cell basis; images are full n x n matrices read off by a
row-major embedding, so the codomain is all of M_n. The two model maps are
X -> T X T^{-1} and X -> T X^t T^{-1}; ``recover_form`` reconstructs the
orientation and a canonical T from any map that actually is of one of these
forms, and rejects everything else.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .algebra import (
    BlockAlgebra,
    block_algebra,
    flip_algebra,
    membership,
    random_element,
)
from .errors import (
    Degenerate,
    IllConditioned,
    MismatchedDimension,
    NotJordanEmbedding,
    Singular,
    WrongAlgebra,
)
from .linalg import as_matrix, frobenius, identity, inverse, spectral_norm

RECOVERY_SEED = 0x1D4A
VERIFY_SAMPLES = 50
VERIFY_REL = 1e-7
OFF_CELL_REL = 1e-8


class Orientation(enum.Enum):
    INNER = "inner"
    ANTI_TRANSPOSE = "anti-transpose"


@dataclass(frozen=True)
class JordanForm:
    """Orientation tag plus the invertible similarity matrix T.

    T is canonically scaled: its largest-modulus entry equals 1 (ties broken
    by row-major order), fixing the scalar freedom of the form.
    """

    orientation: Orientation
    t: np.ndarray


@dataclass(frozen=True)
class AlgebraMap:
    """A linear map from a block algebra into M_n, in cell-basis coordinates."""

    domain: BlockAlgebra
    coefficients: np.ndarray

    @property
    def codomain_dim(self) -> int:
        return self.domain.n

    def unit_image(self, cell_index: int) -> np.ndarray:
        n = self.domain.n
        return self.coefficients[:, cell_index].reshape(n, n)


def algebra_map_from_function(algebra, fn: Callable[[np.ndarray], np.ndarray]) -> AlgebraMap:
    """Materialize a linear map by evaluating it on every matrix unit."""
    algebra = block_algebra(algebra)
    n = algebra.n
    coeffs = np.zeros((n * n, algebra.dim), dtype=np.complex128)
    for idx, (i, j) in enumerate(algebra.cells):
        e = np.zeros((n, n), dtype=np.complex128)
        e[i, j] = 1.0
        coeffs[:, idx] = as_matrix(fn(e)).reshape(-1)
    return AlgebraMap(domain=algebra, coefficients=coeffs)


def build_form_map(algebra, form: JordanForm) -> AlgebraMap:
    """The linear map X -> T X T^{-1} (or T X^t T^{-1}) restricted to the algebra."""
    algebra = block_algebra(algebra)
    t = as_matrix(form.t, square=True)
    if t.shape != (algebra.n, algebra.n):
        raise MismatchedDimension("similarity size does not match the algebra")
    tinv = inverse(t)
    coeffs = np.zeros((algebra.n**2, algebra.dim), dtype=np.complex128)
    for idx, (i, j) in enumerate(algebra.cells):
        if form.orientation is Orientation.INNER:
            img = np.outer(t[:, i], tinv[j, :])
        else:
            img = np.outer(t[:, j], tinv[i, :])
        coeffs[:, idx] = img.reshape(-1)
    return AlgebraMap(domain=algebra, coefficients=coeffs)


def apply(m: AlgebraMap, x: np.ndarray) -> np.ndarray:
    """Evaluate the map on a member of its domain."""
    x = as_matrix(x)
    n = m.domain.n
    if x.shape != (n, n):
        raise WrongAlgebra(f"expected {n} x {n}, got {x.shape}")
    if not membership(m.domain, x, tol=1e-8 * max(1.0, frobenius(x))):
        raise WrongAlgebra("matrix is not supported in the map's domain")
    return (m.coefficients @ m.domain.coords(x)).reshape(n, n)


def evaluate_form(form: JordanForm, x: np.ndarray) -> np.ndarray:
    """Evaluate the form directly by conjugation (independent of AlgebraMap)."""
    t = form.t
    tinv = inverse(t)
    if form.orientation is Orientation.INNER:
        return t @ x @ tinv
    return t @ x.T @ tinv


class JordanCheck(NamedTuple):
    ok: bool
    worst_residual: float


def _sym(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def is_jordan(m: AlgebraMap, samples: int = 40, seed=0, tol: float = 1e-8) -> JordanCheck:
    """Check the square identity on random elements and the symmetric-product
    identity exhaustively on matrix-unit pairs."""
    alg = m.domain
    n = alg.n
    images = [m.unit_image(k) for k in range(alg.dim)]
    cell_index = {cell: k for k, cell in enumerate(alg.cells)}
    worst = 0.0
    ok = True
    for p, (i, j) in enumerate(alg.cells):
        for q in range(p, alg.dim):
            k, l = alg.cells[q]
            expected = np.zeros((n * n,), dtype=np.complex128)
            if j == k:
                expected = expected + m.coefficients[:, cell_index[(i, l)]]
            if l == i:
                expected = expected + m.coefficients[:, cell_index[(k, j)]]
            got = _sym(images[p], images[q]).reshape(-1)
            scale = max(1.0, frobenius(images[p]) * frobenius(images[q]))
            res = float(np.max(np.abs(got - expected))) / scale
            worst = max(worst, res)
            if res > tol:
                ok = False
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = random_element(alg, rng)
        fx = apply(m, x)
        fx2 = apply(m, x @ x)
        res = frobenius(fx2 - fx @ fx) / max(1.0, frobenius(x) ** 2)
        worst = max(worst, res)
        if res > tol:
            ok = False
    return JordanCheck(ok=ok, worst_residual=worst)


def orientation_feasible(algebra, orientation: Orientation, codomain=None) -> bool:
    """Whether maps of the given orientation can land inside ``codomain``.

    With codomain None the target is all of M_n and everything is feasible;
    for an endomap (codomain equal to the algebra itself) the transposed
    orientation needs the flipped algebra to fit inside the codomain.
    """
    if codomain is None:
        return True
    algebra = block_algebra(algebra)
    codomain = block_algebra(codomain)
    if algebra.n != codomain.n:
        raise MismatchedDimension("algebra and codomain sizes differ")
    source = algebra if orientation is Orientation.INNER else flip_algebra(algebra)
    return not np.any(source.support & ~codomain.support)


def _structural_fail(reason: str) -> NotJordanEmbedding:
    return NotJordanEmbedding(reason)


def recover_form(m: AlgebraMap, seed=RECOVERY_SEED) -> JordanForm:
    """Recover (orientation, T) from a map of the form X -> T X T^{-1} or
    X -> T X^t T^{-1}.

    The diagonal-unit images must form a family of rank-one idempotents that
    are pairwise orthogonal and sum to the identity; their ranges assemble a
    similarity S, after which every unit image must concentrate on a single
    cell with consistent orientation. A diagonal rescaling anchored at the
    first row fixes T, which is then certified against the map on random
    samples. Any failure raises NotJordanEmbedding.
    """
    alg = m.domain
    n = alg.n
    cell_index = {cell: k for k, cell in enumerate(alg.cells)}
    images = [m.unit_image(k) for k in range(alg.dim)]
    overall = max(max(frobenius(img) for img in images), 1e-300)

    # (1) diagonal-unit images: orthogonal rank-one idempotents summing to I
    proj = [images[cell_index[(i, i)]] for i in range(n)]
    tol_struct = 1e-6
    total = np.zeros((n, n), dtype=np.complex128)
    for i, p in enumerate(proj):
        if frobenius(p @ p - p) > tol_struct * max(1.0, frobenius(p) ** 2):
            raise _structural_fail(f"image of diagonal unit {i} is not idempotent")
        if abs(np.trace(p) - 1.0) > tol_struct:
            raise _structural_fail(f"image of diagonal unit {i} is not rank one")
        total += p
    if frobenius(total - identity(n)) > tol_struct * n:
        raise _structural_fail("diagonal-unit images do not sum to the identity")
    for i in range(n):
        for j in range(i + 1, n):
            if (
                frobenius(proj[i] @ proj[j]) > tol_struct
                or frobenius(proj[j] @ proj[i]) > tol_struct
            ):
                raise _structural_fail(f"images of units {i} and {j} are not orthogonal")

    # (2) assemble S from the ranges of the idempotents via a random probe
    rng = np.random.default_rng(seed)
    s = None
    for _ in range(32):
        w = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
        cand = np.stack([p @ w for p in proj], axis=1)
        norms = np.sqrt(np.sum(np.abs(cand) ** 2, axis=0))
        if float(np.min(norms)) >= 1e-8:
            s = cand / norms
            break
    if s is None:
        raise Degenerate("probe retries exhausted while assembling the similarity")
    try:
        sinv = inverse(s)
    except (Singular, IllConditioned) as exc:
        raise _structural_fail(f"assembled similarity is not invertible: {exc}") from exc

    # (3) classify: every conjugated unit image must sit on one cell
    votes_inner = 0
    votes_anti = 0
    conjugated: dict[tuple[int, int], np.ndarray] = {}
    for idx, (i, j) in enumerate(alg.cells):
        md = sinv @ images[idx] @ s
        conjugated[(i, j)] = md
        total_mass = frobenius(md)
        if total_mass <= 1e-10 * overall:
            raise _structural_fail(f"image of unit {(i, j)} vanishes")
        if i == j:
            continue
        rest = md.copy()
        rest[i, j] = 0.0
        inner_off = frobenius(rest)
        rest[i, j] = md[i, j]
        rest[j, i] = 0.0
        anti_off = frobenius(rest)
        if inner_off <= OFF_CELL_REL * total_mass:
            votes_inner += 1
        elif anti_off <= OFF_CELL_REL * total_mass:
            votes_anti += 1
        else:
            raise _structural_fail(f"image of unit {(i, j)} is not cell-concentrated")
    if votes_inner and votes_anti:
        raise _structural_fail("mixed orientations across matrix units")
    orientation = Orientation.ANTI_TRANSPOSE if votes_anti else Orientation.INNER

    # (4) diagonal rescaling anchored at the first row (E_0j always exists)
    d = np.ones(n, dtype=np.complex128)
    for j in range(1, n):
        md = conjugated[(0, j)]
        if orientation is Orientation.INNER:
            c = md[0, j]
            d[j] = 1.0 / c
        else:
            d[j] = md[j, 0]
    t = s * d[None, :]

    # (5) canonical scaling: largest-modulus entry becomes exactly 1
    flat_idx = int(np.argmax(np.abs(t)))
    t = t / t.reshape(-1)[flat_idx]

    # (6) certify against the map itself on seeded random samples
    try:
        tinv = inverse(t)
    except (Singular, IllConditioned) as exc:
        raise _structural_fail(f"recovered similarity is not invertible: {exc}") from exc
    cond = spectral_norm(t) * spectral_norm(tinv)
    for _ in range(VERIFY_SAMPLES):
        x = random_element(alg, rng)
        direct = t @ x @ tinv if orientation is Orientation.INNER else t @ x.T @ tinv
        res = frobenius(apply(m, x) - direct)
        if res > VERIFY_REL * max(frobenius(x), 1e-300) * cond**2:
            raise _structural_fail("verification residual exceeds tolerance")
    return JordanForm(orientation=orientation, t=t)
