"""Joins of circulant matrices: condensed matrix, spectrum, eigenbasis.

A join places circulant blocks C_1, ..., C_d on the diagonal and fills
off-diagonal block (i, j) with the constant a_ij.  Its spectrum splits
into two analytic parts:

* each block contributes its Fourier eigenvalues for indices
  j = 1..k_i-1 (the row-sum mode j = 0 is excluded), with eigenvectors
  supported on that block only;
* the d remaining eigenvalues are those of the d x d condensed matrix,
  whose diagonal holds the block row sums and whose (i, j) entry is
  a_ij * k_j.  Its generalized eigenvectors lift to the join by
  repeating coordinate i k_i times (tensor expansion), preserving
  Jordan chain structure, so the join is diagonalizable exactly when
  the condensed matrix is.
"""

from dataclasses import dataclass, field

import numpy as np

from .circulant import CirculantMatrix, fourier_vector
from .errors import PreconditionError, SizeCapError
from . import smalleig

DENSE_CAP = 4096


class JoinSpec:
    """d circulant blocks plus the d x d table of coupling constants.

    Coupling diagonal entries are unused and stored as zero.  Blocks may
    be given as CirculantMatrix instances or raw defining vectors.
    """

    __slots__ = ("blocks", "couplings")

    def __init__(self, blocks, couplings=None):
        blocks = tuple(
            b if isinstance(b, CirculantMatrix) else CirculantMatrix(b) for b in blocks
        )
        if not blocks:
            raise PreconditionError("a join needs at least one block")
        d = len(blocks)
        if couplings is None:
            couplings = np.zeros((d, d))
        a = np.asarray(couplings, dtype=np.complex128)
        if a.shape != (d, d):
            raise PreconditionError(
                f"coupling table must be {d}x{d}, got shape {a.shape}"
            )
        if not np.all(np.isfinite(a)):
            raise PreconditionError("coupling entries must be finite")
        a = a.copy()
        np.fill_diagonal(a, 0.0)
        a.setflags(write=False)
        self.blocks = blocks
        self.couplings = a

    @property
    def d(self):
        return len(self.blocks)

    @property
    def block_sizes(self):
        return tuple(b.k for b in self.blocks)

    @property
    def n(self):
        return sum(self.block_sizes)

    def offsets(self):
        """Start index of each block in the joined matrix."""
        out = [0]
        for b in self.blocks[:-1]:
            out.append(out[-1] + b.k)
        return tuple(out)

    def dense(self, cap=DENSE_CAP):
        """Dense n x n expansion; guarded by a size cap (default 4096)."""
        n = self.n
        if n > cap:
            raise SizeCapError(f"dense expansion of size {n} exceeds cap {cap}")
        a = np.empty((n, n), dtype=np.complex128)
        offs = self.offsets()
        for i, bi in enumerate(self.blocks):
            ri = slice(offs[i], offs[i] + bi.k)
            for j, bj in enumerate(self.blocks):
                cj = slice(offs[j], offs[j] + bj.k)
                if i == j:
                    a[ri, cj] = bi.dense()
                else:
                    a[ri, cj] = self.couplings[i, j]
        return a

    def condensed(self):
        """The d x d matrix of block row sums and scaled couplings."""
        d = self.d
        a = np.empty((d, d), dtype=np.complex128)
        for i in range(d):
            for j in range(d):
                a[i, j] = self.blocks[i].row_sum() if i == j else self.couplings[
                    i, j
                ] * self.blocks[j].k
        return a

    def is_real(self):
        return bool(
            all(np.all(b.vector.imag == 0.0) for b in self.blocks)
            and np.all(self.couplings.imag == 0.0)
        )

    def __eq__(self, other):
        if not isinstance(other, JoinSpec):
            return NotImplemented
        return self.blocks == other.blocks and bool(
            np.array_equal(self.couplings, other.couplings)
        )

    def __repr__(self):
        return f"JoinSpec(d={self.d}, sizes={self.block_sizes})"


@dataclass(frozen=True)
class CirculantEigenpair:
    """Eigenpair of the join inherited from one circulant block.

    `block` is 1-based; `fourier_index` j runs over 1..k_i-1.  The
    eigenvector has the Fourier mode v_{k_i, j} in block i's coordinate
    range and zeros elsewhere.
    """

    block: int
    fourier_index: int
    eigenvalue: complex
    vector: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class JordanChain:
    """Rows of `vectors` are u_1, ..., u_m with (M - lambda*I) u_1 ~ 0
    and (M - lambda*I) u_r = u_{r-1}."""

    eigenvalue: complex
    vectors: np.ndarray = field(repr=False)

    def __len__(self):
        return self.vectors.shape[0]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Complete generalized eigendecomposition of a join.

    `circulant_pairs` hold the per-block eigenpairs; `condensed_chains`
    the Jordan chains of the condensed matrix (vectors in C^d) and
    `expanded_chains` their tensor expansions to C^n, in matching order.
    """

    block_sizes: tuple
    circulant_pairs: tuple
    condensed_chains: tuple
    expanded_chains: tuple
    diagonalizable: bool

    @property
    def n(self):
        return sum(self.block_sizes)

    @property
    def d(self):
        return len(self.block_sizes)

    def eigenvalues(self):
        """All n eigenvalues as (value, provenance) pairs sorted by
        (Re, Im); provenance is a 1-based block index or 'condensed'."""
        out = [(p.eigenvalue, p.block) for p in self.circulant_pairs]
        for chain in self.condensed_chains:
            out.extend([(chain.eigenvalue, "condensed")] * len(chain))
        out.sort(key=lambda t: (t[0].real, t[0].imag))
        return out

    def eigenvalue_multiset(self):
        return [v for v, _ in self.eigenvalues()]

    def condensed_vector_matrix(self):
        """The d x d matrix X of condensed chain vectors as columns,
        chains concatenated in order, each from u_1 up."""
        cols = [vec for chain in self.condensed_chains for vec in chain.vectors]
        return np.array(cols).T


def block_eigenpairs(join):
    """The sum(k_i) - d eigenpairs of the join inherited from its blocks.

    For block i and 1 <= j <= k_i - 1 the zero-padded Fourier mode is an
    eigenvector of the whole join because its entries sum to zero, so
    the constant off-diagonal blocks annihilate it.
    """
    n = join.n
    offs = join.offsets()
    pairs = []
    for i, block in enumerate(join.blocks):
        lam = block.eigenvalues()
        for j in range(1, block.k):
            w = np.zeros(n, dtype=np.complex128)
            w[offs[i] : offs[i] + block.k] = fourier_vector(block.k, j)
            pairs.append(
                CirculantEigenpair(
                    block=i + 1,
                    fourier_index=j,
                    eigenvalue=complex(lam[j]),
                    vector=w,
                )
            )
    return tuple(pairs)


def tensor_expand(v, sizes):
    """Repeat coordinate i of v sizes[i] times, in block order."""
    v = np.asarray(v)
    sizes = tuple(int(s) for s in sizes)
    if v.ndim != 1 or v.shape[0] != len(sizes):
        raise PreconditionError("vector length must match the number of blocks")
    return np.repeat(v, sizes)


def full_spectrum(join, *, cluster_delta=None, sigma_tol=None, sweep_budget=None):
    """Eigenvalues and a generalized eigenbasis of the join.

    The eigenvalue multiset is the union (multiplicities adding, no
    merging across origins) of the block eigenvalues for j >= 1 and the
    condensed spectrum; condensed Jordan chains are lifted by tensor
    expansion.  The diagonalizable flag mirrors the condensed matrix.
    Tolerance keywords are forwarded to the condensed eigensolver.
    """
    pairs = block_eigenpairs(join)
    abar = join.condensed()
    spec = smalleig.eigenvalues(
        abar, cluster_delta=cluster_delta, sweep_budget=sweep_budget
    )
    sizes = join.block_sizes
    condensed_chains = []
    expanded_chains = []
    for lam, mult in spec:
        for vecs in smalleig.jordan_chains(abar, lam, mult, sigma_tol=sigma_tol):
            condensed_chains.append(JordanChain(eigenvalue=lam, vectors=vecs))
            lifted = np.array([tensor_expand(u, sizes) for u in vecs])
            expanded_chains.append(JordanChain(eigenvalue=lam, vectors=lifted))
    diagonalizable = all(len(ch) == 1 for ch in condensed_chains)
    return SpectralDecomposition(
        block_sizes=sizes,
        circulant_pairs=pairs,
        condensed_chains=tuple(condensed_chains),
        expanded_chains=tuple(expanded_chains),
        diagonalizable=diagonalizable,
    )


def _charpoly_direct(a):
    """det(X*I - A) by minor expansion with polynomial entries.

    Exponential in d; used only for d <= 4.  Polynomials are coefficient
    arrays, lowest degree first.
    """
    d = a.shape[0]

    def det(rows, cols):
        if len(rows) == 1:
            r, c = rows[0], cols[0]
            base = np.array([-a[r, c]], dtype=np.complex128)
            if r == c:
                return np.concatenate([base, [1.0]])
            return base
        total = np.zeros(1, dtype=np.complex128)
        r = rows[0]
        sign = 1.0
        for pick, c in enumerate(cols):
            entry = det([r], [c])
            minor = det(rows[1:], cols[:pick] + cols[pick + 1 :])
            term = sign * np.convolve(entry, minor)
            width = max(len(total), len(term))
            total = np.pad(total, (0, width - len(total)))
            total += np.pad(term, (0, width - len(term)))
            sign = -sign
        return total

    coeffs = det(list(range(d)), list(range(d)))
    return coeffs[::-1]


def _charpoly_leverrier(a):
    """Characteristic polynomial by the trace recursion
    c_k = -tr(A B_k) / k, B_{k+1} = A B_k + c_k I."""
    d = a.shape[0]
    coeffs = np.empty(d + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    b = np.eye(d, dtype=np.complex128)
    for k in range(1, d + 1):
        ab = a @ b
        c = -np.trace(ab) / k
        coeffs[k] = c
        b = ab + c * np.eye(d, dtype=np.complex128)
    return coeffs


def reduced_char_poly(join):
    """Monic degree-d polynomial whose roots are the non-block
    eigenvalues of the join; equals the characteristic polynomial of the
    condensed matrix.  Coefficients are returned highest degree first.
    """
    abar = join.condensed()
    if join.d <= 4:
        return _charpoly_direct(abar)
    return _charpoly_leverrier(abar)


def eigenbasis_matrix(decomposition):
    """Assemble the generalized eigenvectors as matrix columns.

    Column group i is the tensor expansion of the i-th condensed chain
    vector followed by block i's Fourier eigenvectors; with this
    arrangement |det| factors as prod_i |det E_{k_i}| * |det X| where X
    collects the condensed chain vectors.
    """
    sizes = decomposition.block_sizes
    d = decomposition.d
    n = decomposition.n
    x = decomposition.condensed_vector_matrix()
    if x.shape != (d, d):
        raise PreconditionError(
            "decomposition is incomplete: expected d condensed vectors"
        )
    by_block = {}
    for p in decomposition.circulant_pairs:
        by_block.setdefault(p.block, []).append(p.vector)
    cols = []
    for i in range(d):
        cols.append(tensor_expand(x[:, i], sizes))
        cols.extend(by_block.get(i + 1, []))
    m = np.array(cols).T
    if m.shape != (n, n):
        raise PreconditionError("decomposition is incomplete: expected n vectors")
    return m
