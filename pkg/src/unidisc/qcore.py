"""Dense complex linear algebra primitives for unitary discrimination.

Everything downstream works with small dense operators (local dimensions 2
and 3, composites up to 9 or 16), so all routines here are plain numpy on
``complex128`` arrays.  The module provides

* validated wrapper types (:class:`UnitaryOperator`, :class:`DensityOperator`,
  :class:`StateVector`) whose invariants are checked at construction,
* elementary operations (adjoint, matmul, kron, apply, overlap, partial
  trace),
* eigendecomposition of a unitary through its commuting Hermitian parts,
  degeneracy-safe via blockwise refinement.

Matrices are ordinary 2-D ``numpy`` arrays in row-major layout; state
vectors are 1-D arrays.  Tensor factors are ordered left to right, i.e.
``kron(a, b)`` acts on the composite with ``a`` on the first factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "UnitaryOperator",
    "DensityOperator",
    "StateVector",
    "as_matrix",
    "adjoint",
    "matmul",
    "kron",
    "apply",
    "overlap",
    "partial_trace",
    "eig_unitary",
    "simultaneous_eigenbasis",
    "projector",
    "haar_unitary",
]


# -----------------------------------------------------------------------------
# Tolerance record
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the package.

    validation : bound on constructor invariants (unitarity, hermiticity, ...)
    comparison : bound when comparing computed against expected quantities
    orthogonality : bound on inner products that must vanish
    """

    validation: float = 1e-10
    comparison: float = 1e-9
    orthogonality: float = 1e-10


DEFAULT_TOL = Tolerances()


# -----------------------------------------------------------------------------
# Array plumbing
# -----------------------------------------------------------------------------

def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array (no copy when already fine)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("matrix contains non-finite entries")
    return a


def _as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=complex)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {a.shape}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("vector contains non-finite entries")
    return a


# -----------------------------------------------------------------------------
# Validated types
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitaryOperator:
    """A square matrix U with U{dag}U = 1 within the validation tolerance."""

    matrix: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        n, k = m.shape
        if n != k:
            raise ValueError(f"unitary must be square, got {m.shape}")
        err = np.max(np.abs(m.conj().T @ m - np.eye(n)))
        if err > self.tol.validation:
            raise ValueError(f"not unitary: max |U+U - 1| = {err:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "UnitaryOperator":
        return UnitaryOperator(self.matrix.conj().T, self.tol)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        n, k = m.shape
        if n != k:
            raise ValueError(f"density operator must be square, got {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > self.tol.validation:
            raise ValueError(f"not Hermitian: max |rho - rho+| = {herm:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > self.tol.validation:
            raise ValueError(f"trace is {tr:.12g}, expected 1")
        lo = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if lo < -self.tol.validation:
            raise ValueError(f"negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class StateVector:
    """A pure state; the constructor normalizes, so norm is exactly 1."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = _as_vector(self.amplitudes)
        n = np.linalg.norm(v)
        if n < 1e-12:
            raise ValueError("cannot normalize a (near-)zero vector")
        object.__setattr__(self, "amplitudes", v / n)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> DensityOperator:
        v = self.amplitudes
        return DensityOperator(np.outer(v, v.conj()))


# -----------------------------------------------------------------------------
# Elementary operations
# -----------------------------------------------------------------------------

def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(m).conj().T


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Tensor product, first argument on the first factor."""
    return np.kron(as_matrix(a), as_matrix(b))


def apply(u, psi) -> StateVector:
    """Evolve a state by a unitary (norm is preserved by construction)."""
    mat = u.matrix if isinstance(u, UnitaryOperator) else as_matrix(u)
    vec = psi.amplitudes if isinstance(psi, StateVector) else _as_vector(psi)
    if mat.shape[1] != vec.shape[0]:
        raise ValueError(f"dimension mismatch {mat.shape} on {vec.shape}")
    return StateVector(mat @ vec)


def overlap(phi, psi) -> complex:
    """Inner product <phi|psi>."""
    a = phi.amplitudes if isinstance(phi, StateVector) else _as_vector(phi)
    b = psi.amplitudes if isinstance(psi, StateVector) else _as_vector(psi)
    if a.shape != b.shape:
        raise ValueError("overlap of vectors with different dimensions")
    return complex(np.vdot(a, b))


def projector(psi) -> np.ndarray:
    """|psi><psi| as a plain array."""
    v = psi.amplitudes if isinstance(psi, StateVector) else _as_vector(psi)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    ``dims`` lists the subsystem dimensions in tensor order; ``keep`` is an
    iterable of subsystem indices to retain (order preserved as given).
    """
    m = rho.matrix if isinstance(rho, DensityOperator) else as_matrix(rho)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
    keep = [int(k) for k in keep]
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    if len(set(keep)) != len(keep):
        raise ValueError("duplicate keep indices")

    n = len(dims)
    t = m.reshape(dims + dims)
    # contract the traced subsystems pairwise
    for sub in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=sub, axis2=sub + t.ndim // 2)
    kept = [d for i, d in enumerate(dims) if i in keep]
    # axes of kept subsystems are already in increasing original order; reorder
    # to match the order the caller asked for
    order = np.argsort([sorted(keep).index(k) for k in keep])
    if list(order) != list(range(len(keep))):
        half = len(kept)
        perm = [sorted(keep).index(k) for k in keep]
        t = t.transpose(perm + [half + p for p in perm])
        kept = [dims[k] for k in keep]
    d = int(np.prod(kept)) if kept else 1
    return t.reshape(d, d)


# -----------------------------------------------------------------------------
# Eigendecomposition of unitaries
# -----------------------------------------------------------------------------

# gap below which two eigenvalues of a Hermitian part are treated as one
# cluster during blockwise refinement
_CLUSTER_GAP = 1e-8


def simultaneous_eigenbasis(ops, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Common eigenbasis of a family of commuting Hermitian operators.

    Blockwise refinement: diagonalize the first operator, then within each
    degenerate eigenspace diagonalize the compression of the next, and so on.
    Exact for genuinely commuting families; raises if some operator refuses
    to diagonalize in the final basis.
    """
    ops = [as_matrix(h) for h in ops]
    if not ops:
        raise ValueError("need at least one operator")
    d = ops[0].shape[0]
    for h in ops:
        if h.shape != (d, d):
            raise ValueError("operators must share one dimension")

    basis = np.eye(d, dtype=complex)
    blocks = [list(range(d))]
    for h in ops:
        new_blocks = []
        for blk in blocks:
            if len(blk) == 1:
                new_blocks.append(blk)
                continue
            cols = basis[:, blk]
            comp = cols.conj().T @ h @ cols
            comp = (comp + comp.conj().T) / 2
            w, q = np.linalg.eigh(comp)
            basis[:, blk] = cols @ q
            # split the block wherever the spectrum jumps
            start = 0
            for i in range(1, len(blk)):
                if w[i] - w[i - 1] > _CLUSTER_GAP:
                    new_blocks.append(blk[start:i])
                    start = i
            new_blocks.append(blk[start:])
        blocks = new_blocks

    for h in ops:
        off = basis.conj().T @ h @ basis
        off = off - np.diag(np.diag(off))
        if np.max(np.abs(off)) > 1e-7:
            raise ValueError("operators do not commute: no common eigenbasis")
    return basis


def eig_unitary(u, tol: Tolerances = DEFAULT_TOL):
    """Eigenphases and eigenvectors of a unitary.

    Returns ``(phases, vectors)`` with phases in ``[0, 2*pi)`` sorted
    ascending and ``vectors[:, j]`` the eigenvector for ``phases[j]``.

    A unitary is normal, so its Hermitian part (U+U+)/2 and anti-Hermitian
    part (U-U+)/2i commute; a generic real combination of the two usually
    separates all eigenvectors in one shot.  Degenerate combinations are
    rescued by refining with both parts blockwise.
    """
    mat = u.matrix if isinstance(u, UnitaryOperator) else as_matrix(u)
    d = mat.shape[0]
    if mat.shape[0] != mat.shape[1]:
        raise ValueError("unitary must be square")
    if not isinstance(u, UnitaryOperator):
        err = float(np.max(np.abs(mat.conj().T @ mat - np.eye(d))))
        if err > tol.validation * d:
            raise ValueError(f"matrix is not unitary: deviation {err:.3e}")
    c = (mat + mat.conj().T) / 2
    s = (mat - mat.conj().T) / 2j

    # fixed pseudo-random mixing angle; irrational multiples of pi rarely
    # collide with spectral symmetries
    t = 0.7390851332151607
    basis = None
    w, q = np.linalg.eigh(np.cos(t) * c + np.sin(t) * s)
    diag = q.conj().T @ mat @ q
    if np.max(np.abs(diag - np.diag(np.diag(diag)))) <= 1e-10:
        basis = q
    if basis is None:
        basis = simultaneous_eigenbasis([c, s], tol)

    lam = np.diag(basis.conj().T @ mat @ basis)
    resid = np.max(np.abs(mat @ basis - basis * lam[None, :]))
    if resid > tol.comparison:
        raise ValueError(f"eigendecomposition residual {resid:.3e}")

    phases = np.mod(np.angle(lam), 2 * np.pi)
    phases[phases > 2 * np.pi - 1e-12] = 0.0
    order = np.argsort(phases, kind="stable")
    return phases[order], basis[:, order]


# -----------------------------------------------------------------------------
# Random sampling
# -----------------------------------------------------------------------------

def haar_unitary(dim: int, rng: np.random.Generator) -> UnitaryOperator:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    # fix the phase ambiguity of QR so the distribution is Haar
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return UnitaryOperator(q * ph[None, :])
