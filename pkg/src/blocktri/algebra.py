"""Block upper-triangular subalgebras of M_n and their combinatorics.

A composition (k_1, ..., k_r) of n names the subalgebra of n x n complex
matrices vanishing below the block diagonal cut at k_1, k_1+k_2, ....
These are exactly the subalgebras containing all upper-triangular matrices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import MismatchedDimension
from .linalg import as_matrix

Composition = tuple[int, ...]


def parse_composition(text: str) -> Composition:
    """Parse the CLI text form "k1,k2,...,kr" into a composition tuple."""
    try:
        parts = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed composition {text!r}") from exc
    if not parts or any(k < 1 for k in parts):
        raise ValueError(f"composition parts must be positive: {text!r}")
    return parts


@dataclass(frozen=True, eq=False)
class BlockAlgebra:
    """A composition together with its derived support mask and cell basis."""

    parts: Composition
    n: int
    support: np.ndarray
    cells: tuple[tuple[int, int], ...]
    dim: int
    cell_rows: np.ndarray = field(repr=False)
    cell_cols: np.ndarray = field(repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockAlgebra) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def coords(self, x: np.ndarray) -> np.ndarray:
        """Read the support-cell coordinates of an n x n matrix, row-major."""
        return x[self.cell_rows, self.cell_cols]

    def scatter(self, values: np.ndarray) -> np.ndarray:
        """Rebuild the n x n matrix whose support cells carry ``values``."""
        out = np.zeros((self.n, self.n), dtype=np.complex128)
        out[self.cell_rows, self.cell_cols] = values
        return out


def block_algebra(spec) -> BlockAlgebra:
    """Build a BlockAlgebra from a composition tuple, string, or instance."""
    if isinstance(spec, BlockAlgebra):
        return spec
    if isinstance(spec, str):
        parts = parse_composition(spec)
    else:
        parts = tuple(int(k) for k in spec)
        if not parts or any(k < 1 for k in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
    n = sum(parts)
    cuts = np.cumsum((0,) + parts)
    block_of = np.empty(n, dtype=np.intp)
    for b in range(len(parts)):
        block_of[cuts[b] : cuts[b + 1]] = b
    support = block_of[:, None] <= block_of[None, :]
    support.flags.writeable = False
    rows, cols = np.nonzero(support)
    cells = tuple((int(i), int(j)) for i, j in zip(rows, cols))
    return BlockAlgebra(
        parts=parts,
        n=n,
        support=support,
        cells=cells,
        dim=len(cells),
        cell_rows=rows,
        cell_cols=cols,
    )


def membership(algebra: BlockAlgebra, a: np.ndarray, tol: float = 0.0) -> bool:
    """True iff every off-support entry of ``a`` has magnitude <= tol."""
    a = as_matrix(a)
    if a.shape != (algebra.n, algebra.n):
        raise MismatchedDimension(f"expected {algebra.n} x {algebra.n}, got {a.shape}")
    off = a[~algebra.support]
    if off.size == 0:
        return True
    return float(np.max(np.abs(off))) <= tol


def project(algebra: BlockAlgebra, a: np.ndarray) -> np.ndarray:
    """Zero all off-support entries of ``a`` exactly."""
    a = as_matrix(a)
    if a.shape != (algebra.n, algebra.n):
        raise MismatchedDimension(f"expected {algebra.n} x {algebra.n}, got {a.shape}")
    out = a.copy()
    out[~algebra.support] = 0.0
    return out


def flip(x: np.ndarray) -> np.ndarray:
    """Mirror a square matrix along its secondary diagonal.

    A pure index permutation, out[i, j] = x[n-1-j, n-1-i]; it is an exact
    involution and reverses products.
    """
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise MismatchedDimension(f"expected a square matrix, got {x.shape}")
    return x[::-1, ::-1].T.copy()


def flip_algebra(algebra: BlockAlgebra) -> BlockAlgebra:
    """The algebra with reversed block sizes, the image of ``algebra`` under flip."""
    return block_algebra(algebra.parts[::-1])


def matrix_units(algebra: BlockAlgebra) -> list[np.ndarray]:
    """One standard matrix unit per support cell, in row-major cell order."""
    units = []
    for i, j in algebra.cells:
        e = np.zeros((algebra.n, algebra.n), dtype=np.complex128)
        e[i, j] = 1.0
        units.append(e)
    return units


class Embedding(enum.Enum):
    INNER_ONLY = "inner-only"
    ANTI_ONLY = "anti-only"
    BOTH = "both"
    NONE = "none"


class JordanIsoClass(enum.Enum):
    ISOMORPHIC = "isomorphic"
    ANTI_ISOMORPHIC = "anti-isomorphic"
    BOTH_WAYS = "both-ways"
    NOT_JORDAN_ISOMORPHIC = "not-jordan-isomorphic"


def _coerce(spec) -> BlockAlgebra:
    return spec if isinstance(spec, BlockAlgebra) else block_algebra(spec)


def embeds(a, b) -> Embedding:
    """How the first algebra Jordan-embeds into the second.

    Inner embeddings exist iff support(a) is contained in support(b); flipped
    (anti) embeddings iff support of the reversed composition is.
    """
    a = _coerce(a)
    b = _coerce(b)
    if a.n != b.n:
        raise MismatchedDimension(f"compositions of different sizes: {a.n} vs {b.n}")
    inner_ok = not np.any(a.support & ~b.support)
    anti_ok = not np.any(flip_algebra(a).support & ~b.support)
    if inner_ok and anti_ok:
        return Embedding.BOTH
    if inner_ok:
        return Embedding.INNER_ONLY
    if anti_ok:
        return Embedding.ANTI_ONLY
    return Embedding.NONE


def jordan_iso_class(a, b) -> JordanIsoClass:
    """Classify two compositions up to Jordan isomorphism.

    Equal tuples are isomorphic, reversed tuples anti-isomorphic, palindromic
    equal tuples both, anything else neither.
    """
    a = _coerce(a)
    b = _coerce(b)
    if a.n != b.n:
        raise MismatchedDimension(f"compositions of different sizes: {a.n} vs {b.n}")
    equal = a.parts == b.parts
    reversed_equal = a.parts == b.parts[::-1]
    if equal and reversed_equal:
        return JordanIsoClass.BOTH_WAYS
    if equal:
        return JordanIsoClass.ISOMORPHIC
    if reversed_equal:
        return JordanIsoClass.ANTI_ISOMORPHIC
    return JordanIsoClass.NOT_JORDAN_ISOMORPHIC


def random_element(algebra: BlockAlgebra, seed) -> np.ndarray:
    """Standard complex Gaussian entries on the support cells, zeros elsewhere.

    Entries are CN(0, 1): real and imaginary parts independent N(0, 1/2).
    Deterministic for a given seed.
    """
    rng = np.random.default_rng(seed)
    values = (
        rng.standard_normal(algebra.dim) + 1j * rng.standard_normal(algebra.dim)
    ) / np.sqrt(2.0)
    return algebra.scatter(values)


def matrix_poly(x: np.ndarray, coeffs) -> np.ndarray:
    """Evaluate sum coeffs[k] x^k by Horner's rule (coeffs ascending)."""
    x = as_matrix(x, square=True)
    coeffs = np.asarray(coeffs, dtype=np.complex128).ravel()
    n = x.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    if coeffs.size == 0:
        return np.zeros_like(x)
    acc = coeffs[-1] * eye
    for c in coeffs[-2::-1]:
        acc = acc @ x + c * eye
    return acc


def random_commuting_pair(algebra: BlockAlgebra, seed) -> tuple[np.ndarray, np.ndarray]:
    """A pair (p(X), q(X)) for random X in the algebra and random polynomials.

    Polynomials of one matrix commute exactly, and the algebra is closed under
    products, so both outputs are supported members with an exactly commuting
    product in exact arithmetic.
    """
    rng = np.random.default_rng(seed)
    x = random_element(algebra, rng)
    deg = algebra.n  # degree <= n - 1, so n coefficients
    pc = (rng.standard_normal(deg) + 1j * rng.standard_normal(deg)) / np.sqrt(2.0)
    qc = (rng.standard_normal(deg) + 1j * rng.standard_normal(deg)) / np.sqrt(2.0)
    return matrix_poly(x, pc), matrix_poly(x, qc)
