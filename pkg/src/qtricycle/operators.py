"""Operator algebra and steady states for Markovian open quantum systems.

This module provides the generic layer the physics modules build on: labeled
tensor-product Hilbert spaces, operators with optional hermiticity guarantees,
Lindblad terms (both rate-diagonal jumps and full coefficient blocks),
vectorized generator construction with per-bath tagging, and a null-space
steady-state solver with iterative refinement and a propagation fallback for
degenerate generators.

Conventions
-----------
* hbar = k_B = 1 throughout; energies, rates, and temperatures share units.
* Vectorization is column-stacking: ``vec(A @ X @ B) == kron(B.T, A) @ vec(X)``.
* Tensor factors are ordered so factor 0 varies slowest in the composite index.
"""

from __future__ import annotations

import numbers
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    DegenerateSteadyStateWarning,
    HermiticityError,
    SpaceMismatchError,
    StateValidationError,
    SteadyStateError,
)

__all__ = [
    "HilbertSpace",
    "Operator",
    "LindbladTerm",
    "GKSSector",
    "Superoperator",
    "DensityOperator",
    "vec",
    "unvec",
    "tensor_embed",
    "ladder_pair",
    "build_liouvillian",
    "steady_state",
    "channel_current",
]

#: hermiticity tolerance for operators declared hermitian
HERMITICITY_TOL = 1e-12
#: tolerance on the adjoint generator annihilating the identity
TRACE_PRESERVATION_TOL = 1e-10
#: hermiticity tolerance for density operators
STATE_HERMITICITY_TOL = 1e-10
#: unit-trace tolerance for density operators
STATE_TRACE_TOL = 1e-10
#: smallest admissible eigenvalue of a density operator
STATE_EIGENVALUE_FLOOR = -1e-9
#: relative tolerance for accepting a null vector of a generator
NULL_SPACE_TOL = 1e-10
#: Hilbert-space dimension up to which generators are stored dense
DENSE_DIM_LIMIT = 36


@dataclass(frozen=True)
class HilbertSpace:
    """An ordered tensor product of labeled finite-dimensional factors.

    Parameters
    ----------
    factors:
        Tuple of ``(label, dimension)`` pairs.  Factor 0 is the slowest
        index of the composite basis, so ``|i0, i1, ...>`` maps to the flat
        index ``i0 * d1 * d2 * ... + i1 * d2 * ... + ...``.
    """

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        factors = tuple((str(lbl), int(dim)) for lbl, dim in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ValueError("a HilbertSpace needs at least one factor")
        labels = [lbl for lbl, _ in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"factor labels must be unique, got {labels}")
        for lbl, dim in factors:
            if dim < 2:
                raise ValueError(f"factor {lbl!r} has dimension {dim}; need >= 2")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for _, dim in self.factors)

    @property
    def total_dim(self) -> int:
        out = 1
        for _, dim in self.factors:
            out *= dim
        return out

    def factor_index(self, label: str) -> int:
        for k, (lbl, _) in enumerate(self.factors):
            if lbl == label:
                return k
        raise KeyError(f"no factor labeled {label!r} in {self.labels}")

    def dim_of(self, label: str) -> int:
        return self.factors[self.factor_index(label)][1]


def _as_square_complex(matrix: np.ndarray, dim: int, what: str) -> np.ndarray:
    mat = np.asarray(matrix, dtype=complex)
    if mat.shape != (dim, dim):
        raise ValueError(f"{what} must have shape ({dim}, {dim}), got {mat.shape}")
    return mat


@dataclass(frozen=True)
class Operator:
    """A linear operator on a :class:`HilbertSpace`.

    The ``hermitian`` flag is a checked promise: passing ``hermitian=True``
    validates ``max|A - A^dag|`` against :data:`HERMITICITY_TOL` and raises
    :class:`HermiticityError` on failure.
    """

    space: HilbertSpace
    matrix: np.ndarray
    hermitian: bool = False

    def __post_init__(self) -> None:
        mat = _as_square_complex(self.matrix, self.space.total_dim, "Operator.matrix")
        if self.hermitian:
            dev = np.max(np.abs(mat - mat.conj().T))
            if dev > HERMITICITY_TOL:
                raise HermiticityError(
                    f"operator declared hermitian deviates by {dev:.3e} "
                    f"(tolerance {HERMITICITY_TOL:.1e})"
                )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def dagger(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T, hermitian=self.hermitian)

    def _require_same_space(self, other: "Operator") -> None:
        if self.space != other.space:
            raise SpaceMismatchError(
                f"operators live on different spaces: {self.space.labels} "
                f"vs {other.space.labels}"
            )

    def __add__(self, other: "Operator") -> "Operator":
        self._require_same_space(other)
        return Operator(
            self.space,
            self.matrix + other.matrix,
            hermitian=self.hermitian and other.hermitian,
        )

    def __sub__(self, other: "Operator") -> "Operator":
        self._require_same_space(other)
        return Operator(
            self.space,
            self.matrix - other.matrix,
            hermitian=self.hermitian and other.hermitian,
        )

    def __neg__(self) -> "Operator":
        return Operator(self.space, -self.matrix, hermitian=self.hermitian)

    def __mul__(self, scalar: complex) -> "Operator":
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        keep = self.hermitian and isinstance(scalar, numbers.Real)
        return Operator(self.space, scalar * self.matrix, hermitian=keep)

    __rmul__ = __mul__

    def __matmul__(self, other: "Operator") -> "Operator":
        self._require_same_space(other)
        return Operator(self.space, self.matrix @ other.matrix)


@dataclass(frozen=True)
class LindbladTerm:
    """A single dissipative channel ``rate * D[jump]`` with a nonnegative rate.

    ``D[V] rho = V rho V^dag - (V^dag V rho + rho V^dag V) / 2``.
    """

    jump: Operator
    rate: float
    channel: str | None = None

    def __post_init__(self) -> None:
        rate = float(self.rate)
        if not np.isfinite(rate) or rate < 0.0:
            raise ValueError(f"Lindblad rate must be finite and >= 0, got {rate}")
        object.__setattr__(self, "rate", rate)


@dataclass(frozen=True)
class GKSSector:
    """A dissipative block ``sum_ij C_ij (A_i rho A_j^dag - {A_j^dag A_i, rho}/2)``.

    The coefficient matrix must be hermitian but may be indefinite; trace
    preservation holds regardless, while complete positivity does not.  Blocks
    of this kind arise when a generator derived in one mode basis is expressed
    through another basis without re-diagonalizing the coefficients.
    """

    jumps: tuple[Operator, ...]
    coefficients: np.ndarray
    channel: str | None = None

    def __post_init__(self) -> None:
        if not self.jumps:
            raise ValueError("a GKSSector needs at least one jump operator")
        space = self.jumps[0].space
        for op in self.jumps[1:]:
            if op.space != space:
                raise SpaceMismatchError("all jumps in a sector must share a space")
        coeff = np.asarray(self.coefficients, dtype=complex)
        k = len(self.jumps)
        if coeff.shape != (k, k):
            raise ValueError(
                f"coefficient matrix shape {coeff.shape} does not match {k} jumps"
            )
        dev = np.max(np.abs(coeff - coeff.conj().T))
        if dev > HERMITICITY_TOL:
            raise HermiticityError(
                f"GKS coefficient matrix deviates from hermiticity by {dev:.3e}"
            )
        coeff.setflags(write=False)
        object.__setattr__(self, "coefficients", coeff)

    @property
    def space(self) -> HilbertSpace:
        return self.jumps[0].space


def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(matrix).reshape(-1, order="F")


def unvec(vector: np.ndarray, dim: int) -> np.ndarray:
    """Invert :func:`vec` for a ``dim x dim`` matrix."""
    return np.asarray(vector).reshape((dim, dim), order="F")


def _spre(mat: sp.spmatrix, dim: int) -> sp.spmatrix:
    return sp.kron(sp.identity(dim, format="csr"), mat, format="csr")


def _spost(mat: sp.spmatrix, dim: int) -> sp.spmatrix:
    return sp.kron(mat.T, sp.identity(dim, format="csr"), format="csr")


def _cross_dissipator(a_i: sp.spmatrix, a_j: sp.spmatrix, dim: int) -> sp.spmatrix:
    """Vectorize ``rho -> A_i rho A_j^dag - {A_j^dag A_i, rho} / 2``."""
    sandwich = sp.kron(a_j.conj(), a_i, format="csr")
    ajd_ai = (a_j.conj().T @ a_i).tocsr()
    return sandwich - 0.5 * _spre(ajd_ai, dim) - 0.5 * _spost(ajd_ai, dim)


class Superoperator:
    """A vectorized generator on ``L(H)``, optionally split into named channels.

    Construction validates trace preservation: the adjoint generator applied
    to the identity must vanish within :data:`TRACE_PRESERVATION_TOL` relative
    to the largest matrix entry.  Generators on spaces above
    :data:`DENSE_DIM_LIMIT` are stored sparse; ``matrix`` densifies on demand.
    """

    def __init__(
        self,
        space: HilbertSpace,
        matrix,
        channels: dict[str, "Superoperator"] | None = None,
        *,
        _validated: bool = False,
    ) -> None:
        dim = space.total_dim
        if sp.issparse(matrix):
            mat = matrix.tocsr()
        else:
            mat = np.asarray(matrix, dtype=complex)
        if mat.shape != (dim * dim, dim * dim):
            raise ValueError(
                f"superoperator shape {mat.shape} does not match dim {dim}^2"
            )
        self.space = space
        self._mat = mat
        self._channels = dict(channels) if channels else {}
        if not _validated:
            self._check_trace_preservation()

    def _check_trace_preservation(self) -> None:
        dim = self.space.total_dim
        ident = vec(np.eye(dim))
        if sp.issparse(self._mat):
            residual = self._mat.conj().T @ ident
            scale = np.abs(self._mat.data).max() if self._mat.nnz else 0.0
        else:
            residual = self._mat.conj().T @ ident
            scale = np.abs(self._mat).max() if self._mat.size else 0.0
        worst = float(np.max(np.abs(residual)))
        if worst > TRACE_PRESERVATION_TOL * max(1.0, scale):
            raise ValueError(
                f"generator is not trace preserving: adjoint action on the "
                f"identity has max entry {worst:.3e} (scale {scale:.3e})"
            )

    @property
    def matrix(self) -> np.ndarray:
        """Dense matrix of the generator (materialized on demand)."""
        if sp.issparse(self._mat):
            return self._mat.toarray()
        return self._mat

    @property
    def sparse(self) -> sp.csr_matrix:
        if sp.issparse(self._mat):
            return self._mat
        return sp.csr_matrix(self._mat)

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self._mat)

    @property
    def channel_names(self) -> tuple[str, ...]:
        return tuple(self._channels)

    def channel(self, name: str) -> "Superoperator":
        try:
            return self._channels[name]
        except KeyError:
            raise KeyError(
                f"no channel {name!r}; available: {sorted(self._channels)}"
            ) from None

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Apply the generator to a density matrix, returning a matrix."""
        dim = self.space.total_dim
        return unvec(self._mat @ vec(np.asarray(rho, dtype=complex)), dim)

    def __add__(self, other: "Superoperator") -> "Superoperator":
        if self.space != other.space:
            raise SpaceMismatchError("cannot add generators on different spaces")
        merged = dict(self._channels)
        for name, part in other._channels.items():
            merged[name] = merged[name] + part if name in merged else part
        return Superoperator(
            self.space, self._mat + other._mat, merged, _validated=True
        )

    def __mul__(self, scalar: float) -> "Superoperator":
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        scaled = {n: c * scalar for n, c in self._channels.items()}
        return Superoperator(self.space, self._mat * scalar, scaled, _validated=True)

    __rmul__ = __mul__


@dataclass(frozen=True)
class DensityOperator:
    """A validated quantum state: hermitian, unit trace, positive.

    Validation tolerances are :data:`STATE_HERMITICITY_TOL` on hermiticity,
    :data:`STATE_TRACE_TOL` on the trace, and :data:`STATE_EIGENVALUE_FLOOR`
    on the smallest eigenvalue.
    """

    space: HilbertSpace
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _as_square_complex(self.matrix, self.space.total_dim, "state matrix")
        herm_dev = np.max(np.abs(mat - mat.conj().T))
        if herm_dev > STATE_HERMITICITY_TOL:
            raise StateValidationError(
                f"state deviates from hermiticity by {herm_dev:.3e}"
            )
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > STATE_TRACE_TOL:
            raise StateValidationError(f"state trace is {tr}, not 1")
        lo = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2.0).min())
        if lo < STATE_EIGENVALUE_FLOOR:
            raise StateValidationError(
                f"state has eigenvalue {lo:.3e} below {STATE_EIGENVALUE_FLOOR:.1e}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def expectation(self, op: Operator) -> complex:
        if op.space != self.space:
            raise SpaceMismatchError("operator and state live on different spaces")
        return complex(np.trace(op.matrix @ self.matrix))

    def real_expectation(self, op: Operator) -> float:
        """Expectation of an operator known to be hermitian, as a float."""
        val = self.expectation(op)
        return float(val.real)


def tensor_embed(op: Operator, space: HilbertSpace, label: str) -> Operator:
    """Embed a single-factor operator into ``space`` at the named factor.

    The operator must act on a space with exactly one factor whose dimension
    matches the target factor.  Identity is placed on every other factor,
    respecting the slowest-first ordering of :class:`HilbertSpace`.
    """
    if len(op.space.factors) != 1:
        raise ValueError("tensor_embed expects an operator on a single factor")
    k = space.factor_index(label)
    target_dim = space.dims[k]
    if op.space.total_dim != target_dim:
        raise SpaceMismatchError(
            f"operator dimension {op.space.total_dim} does not match factor "
            f"{label!r} of dimension {target_dim}"
        )
    before = int(np.prod(space.dims[:k], dtype=np.int64)) if k else 1
    after = (
        int(np.prod(space.dims[k + 1 :], dtype=np.int64))
        if k + 1 < len(space.dims)
        else 1
    )
    mat = np.kron(np.kron(np.eye(before), op.matrix), np.eye(after))
    return Operator(space, mat, hermitian=op.hermitian)


def ladder_pair(truncation: int, label: str = "mode") -> tuple[Operator, Operator]:
    """Truncated annihilation and creation operators on a fresh oscillator factor.

    ``[a, a^dag] = 1`` holds exactly except in the top Fock state, where the
    commutator picks up ``-(truncation - 1)`` from the cut.
    """
    if int(truncation) < 2:
        raise ValueError(f"truncation must be >= 2, got {truncation}")
    n = int(truncation)
    space = HilbertSpace(((label, n),))
    a = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    a[idx, idx + 1] = np.sqrt(idx + 1.0)
    lower = Operator(space, a)
    return lower, lower.dagger()


def build_liouvillian(
    hamiltonian: Operator | None,
    terms: list[LindbladTerm | GKSSector] = (),
    space: HilbertSpace | None = None,
) -> Superoperator:
    """Assemble the vectorized generator ``-i[H, .] + sum of dissipators``.

    Terms carrying a channel name are additionally exposed through
    ``Superoperator.channel`` as standalone (trace-preserving) generators;
    unnamed terms only contribute to the total.
    """
    if hamiltonian is None and not terms:
        raise ValueError("need a Hamiltonian or at least one dissipative term")
    if space is None:
        if hamiltonian is not None:
            space = hamiltonian.space
        else:
            first = terms[0]
            space = first.jump.space if isinstance(first, LindbladTerm) else first.space
    dim = space.total_dim
    shape = (dim * dim, dim * dim)

    total = sp.csr_matrix(shape, dtype=complex)
    if hamiltonian is not None:
        if hamiltonian.space != space:
            raise SpaceMismatchError("Hamiltonian is not on the requested space")
        h = sp.csr_matrix(hamiltonian.matrix)
        total = total + (-1j) * (_spre(h, dim) - _spost(h, dim))

    channel_parts: dict[str, sp.csr_matrix] = {}
    for term in terms:
        if isinstance(term, LindbladTerm):
            if term.jump.space != space:
                raise SpaceMismatchError("jump operator is not on the requested space")
            v = sp.csr_matrix(term.jump.matrix)
            piece = term.rate * _cross_dissipator(v, v, dim)
            tag = term.channel
        elif isinstance(term, GKSSector):
            if term.space != space:
                raise SpaceMismatchError("sector jumps are not on the requested space")
            ops = [sp.csr_matrix(op.matrix) for op in term.jumps]
            piece = sp.csr_matrix(shape, dtype=complex)
            coeff = term.coefficients
            for i, a_i in enumerate(ops):
                for j, a_j in enumerate(ops):
                    c = coeff[i, j]
                    if c != 0:
                        piece = piece + c * _cross_dissipator(a_i, a_j, dim)
            tag = term.channel
        else:
            raise TypeError(f"unsupported term type {type(term).__name__}")
        total = total + piece
        if tag is not None:
            channel_parts[tag] = (
                channel_parts[tag] + piece if tag in channel_parts else piece
            )

    def _finalize(mat: sp.csr_matrix) -> np.ndarray | sp.csr_matrix:
        return mat.toarray() if dim <= DENSE_DIM_LIMIT else mat

    channels = {
        name: Superoperator(space, _finalize(part))
        for name, part in channel_parts.items()
    }
    return Superoperator(space, _finalize(total), channels)


def _bordered_system(mat, dim: int):
    """Replace the last row with the trace functional; rhs selects trace 1."""
    n2 = dim * dim
    trace_positions = np.arange(dim) * (dim + 1)
    rhs = np.zeros(n2, dtype=complex)
    rhs[-1] = 1.0
    if sp.issparse(mat):
        bordered = mat.tolil(copy=True)
        bordered[n2 - 1, :] = 0.0
        bordered[n2 - 1, trace_positions] = 1.0
        return bordered.tocsc(), rhs
    bordered = np.array(mat, dtype=complex, copy=True)
    bordered[n2 - 1, :] = 0.0
    bordered[n2 - 1, trace_positions] = 1.0
    return bordered, rhs


def _propagate_to_stationarity(
    gen: Superoperator, start: np.ndarray, scale: float
) -> np.ndarray:
    """Evolve ``start`` until the generator's action on it is negligible."""
    mat = gen.sparse
    v = vec(start).astype(complex)
    t = 1.0 / max(scale, 1e-300)
    for _ in range(80):
        v = spla.expm_multiply(mat * t, v)
        drift = float(np.max(np.abs(mat @ v)))
        if drift <= 10.0 * NULL_SPACE_TOL * max(scale, 1.0) * float(
            np.max(np.abs(v))
        ):
            return v
        t *= 2.0
    raise SteadyStateError(
        "propagation did not reach stationarity; the generator may have "
        "purely imaginary spectrum away from zero"
    )


def _matrix_scale(gen: Superoperator) -> float:
    if gen.is_sparse:
        data = gen.sparse.data
        return float(np.abs(data).max()) if data.size else 0.0
    return float(np.abs(gen.matrix).max()) if gen.matrix.size else 0.0


def _refine_dense(bordered, rhs, solution, lu_piv, iterations=3):
    """Iterative refinement of a dense bordered solve in extended precision."""
    a_ld = bordered.astype(np.clongdouble)
    b_ld = rhs.astype(np.clongdouble)
    x = solution.astype(np.clongdouble)
    for _ in range(iterations):
        residual = b_ld - a_ld @ x
        if float(np.max(np.abs(residual))) == 0.0:
            break
        dx = scipy.linalg.lu_solve(lu_piv, residual.astype(complex))
        x = x + dx.astype(np.clongdouble)
    return x.astype(complex)


def _refine_sparse(bordered, rhs, solution, lu, iterations=2):
    x = solution
    for _ in range(iterations):
        residual = rhs - bordered @ x
        x = x + lu.solve(residual)
    return x


def steady_state(
    gen: Superoperator,
    *,
    method: str = "auto",
    cross_check: bool = False,
) -> DensityOperator:
    """Stationary state of a trace-preserving generator.

    Parameters
    ----------
    gen:
        The generator whose kernel is sought.
    method:
        ``"eig"`` diagonalizes the dense generator and takes the eigenvector
        of smallest modulus eigenvalue; ``"direct"`` solves a bordered linear
        system in which one row is replaced by the trace functional, with
        iterative refinement (extended precision on the dense path).
        ``"auto"`` picks ``"eig"`` up to dimension 12 and ``"direct"`` above.
    cross_check:
        When true, additionally propagate the maximally mixed state to long
        times and require agreement with the algebraic solution.

    A degenerate kernel is reported through
    :class:`DegenerateSteadyStateWarning` and resolved by long-time
    propagation from the maximally mixed state.

    Raises
    ------
    SteadyStateError
        If no vector annihilated by the generator can be found, or the
        propagation cross-check disagrees.
    """
    dim = gen.space.total_dim
    n2 = dim * dim
    scale = _matrix_scale(gen)
    if scale == 0.0:
        raise SteadyStateError("generator is identically zero")
    if method == "auto":
        method = "eig" if dim <= 12 else "direct"
    if method not in ("eig", "direct"):
        raise ValueError(f"unknown method {method!r}")

    degenerate = False
    candidate: np.ndarray | None = None

    if method == "eig":
        eigvals, eigvecs = np.linalg.eig(gen.matrix)
        order = np.argsort(np.abs(eigvals))
        smallest = np.abs(eigvals[order[0]])
        if smallest > NULL_SPACE_TOL * max(scale, 1.0):
            raise SteadyStateError(
                f"smallest eigenvalue modulus {smallest:.3e} exceeds the null "
                f"tolerance at scale {scale:.3e}"
            )
        second = np.abs(eigvals[order[1]]) if n2 > 1 else np.inf
        if second <= NULL_SPACE_TOL * max(scale, 1.0) * 1e3:
            degenerate = True
        else:
            candidate = eigvecs[:, order[0]]
    else:
        bordered, rhs = _bordered_system(gen._mat, dim)
        try:
            if sp.issparse(bordered):
                lu = spla.splu(bordered)
                diag_u = np.abs(lu.U.diagonal())
                if diag_u.min() <= 1e-13 * max(diag_u.max(), 1.0):
                    degenerate = True
                else:
                    x = lu.solve(rhs)
                    x = _refine_sparse(bordered, rhs, x, lu)
                    candidate = x
            else:
                lu_piv = scipy.linalg.lu_factor(bordered)
                diag_u = np.abs(np.diag(lu_piv[0]))
                if diag_u.min() <= 1e-13 * max(diag_u.max(), 1.0):
                    degenerate = True
                else:
                    x = scipy.linalg.lu_solve(lu_piv, rhs)
                    x = _refine_dense(bordered, rhs, x, lu_piv)
                    candidate = x
        except RuntimeError:
            # splu signals exactly singular factorizations this way
            degenerate = True

        if candidate is not None:
            drift = float(np.max(np.abs(gen._mat @ candidate)))
            if drift > 1e-6 * max(scale, 1.0) * float(np.max(np.abs(candidate))):
                degenerate = True
                candidate = None

    if degenerate or candidate is None:
        warnings.warn(
            "generator has a degenerate or ill-conditioned kernel; returning "
            "the state reached by long-time propagation from the maximally "
            "mixed state",
            DegenerateSteadyStateWarning,
            stacklevel=2,
        )
        candidate = _propagate_to_stationarity(gen, np.eye(dim) / dim, scale)

    rho = unvec(candidate, dim)
    rho = (rho + rho.conj().T) / 2.0
    tr = np.trace(rho).real
    if abs(tr) < 1e-14:
        raise SteadyStateError("null vector has vanishing trace; not a state")
    rho = rho / tr

    if cross_check and not degenerate:
        propagated = unvec(
            _propagate_to_stationarity(gen, np.eye(dim) / dim, scale), dim
        )
        propagated = (propagated + propagated.conj().T) / 2.0
        propagated /= np.trace(propagated).real
        if float(np.max(np.abs(propagated - rho))) > 1e-6:
            raise SteadyStateError(
                "algebraic steady state disagrees with long-time propagation"
            )

    return DensityOperator(gen.space, rho)


def channel_current(
    part: Superoperator, state: DensityOperator, hamiltonian: Operator
) -> float:
    """Energy current through one channel: ``Tr(H * L_channel(rho))``.

    Positive values flow into the system.  The imaginary part is a numerical
    artifact and is discarded after a sanity bound.
    """
    if part.space != state.space or hamiltonian.space != state.space:
        raise SpaceMismatchError("channel, state, and Hamiltonian must share a space")
    moved = part.apply(state.matrix)
    value = complex(np.trace(hamiltonian.matrix @ moved))
    if abs(value.imag) > 1e-8 * (1.0 + abs(value.real)):
        warnings.warn(
            f"channel current has imaginary part {value.imag:.3e}; "
            "check hermiticity of the inputs",
            stacklevel=2,
        )
    return float(value.real)
