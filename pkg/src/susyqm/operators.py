"""Discrete operators and the supercharge constructions.

Linear operators carry one of three storages: a dense matrix, a real
symmetric tridiagonal band pair (Dirichlet Hamiltonians stay banded for
the eigensolver), or an index permutation (parity, basis reversal).
Antilinear operators are never materialized over the complex field;
they are stored as a linear part applied after complex conjugation.

Supercharges built here:

* Q = p P / sqrt(2 m)        -- momentum times parity (anti-Hermitian)
* q = (p + p P) / sqrt(4 m)  -- nilpotent pair together with its adjoint
* Q = L_z T / sqrt(2 I)      -- angular momentum times time reversal
  plus the analogous nilpotent pair (L_z +/- L_z T) / sqrt(4 I).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalContractError, ParameterError, PotentialEvaluationError
from .grid import DIRICHLET, PERIODIC, Grid1D, parity_permutation

LINEAR = "linear"
ANTILINEAR = "antilinear"
MIXED = "mixed"

_HERMITIAN_TOL = 1e-12


class LinearOperator:
    """Complex-linear operator with dense, tridiagonal, or permutation storage."""

    def __init__(self, *, dense=None, tridiag=None, permutation=None,
                 hermitian_hint: bool = False):
        storages = [s is not None for s in (dense, tridiag, permutation)]
        if sum(storages) != 1:
            raise ParameterError("exactly one storage kind must be given")
        self._dense = None if dense is None else np.asarray(dense)
        self._tridiag = None
        if tridiag is not None:
            d, e = tridiag
            self._tridiag = (np.asarray(d, dtype=float), np.asarray(e, dtype=float))
        self._perm = None if permutation is None else np.asarray(permutation, dtype=int)
        self.hermitian_hint = hermitian_hint
        if hermitian_hint and self._dense is not None:
            a = self._dense
            scale = np.max(np.abs(a))
            if scale > 0 and np.max(np.abs(a - a.conj().T)) > _HERMITIAN_TOL * scale:
                raise NumericalContractError("hermitian_hint set on a non-Hermitian matrix")

    @classmethod
    def from_dense(cls, matrix, hermitian_hint: bool = False) -> "LinearOperator":
        return cls(dense=matrix, hermitian_hint=hermitian_hint)

    @classmethod
    def from_tridiag(cls, diag, offdiag) -> "LinearOperator":
        return cls(tridiag=(diag, offdiag), hermitian_hint=True)

    @classmethod
    def from_permutation(cls, perm) -> "LinearOperator":
        return cls(permutation=perm)

    @property
    def dimension(self) -> int:
        if self._dense is not None:
            return self._dense.shape[0]
        if self._tridiag is not None:
            return len(self._tridiag[0])
        return len(self._perm)

    @property
    def storage(self) -> str:
        if self._dense is not None:
            return "dense"
        if self._tridiag is not None:
            return "tridiag"
        return "permutation"

    @property
    def tridiag_bands(self):
        return self._tridiag

    @property
    def permutation(self):
        return self._perm

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if self._dense is not None:
            return self._dense @ v
        if self._perm is not None:
            return v[self._perm]
        d, e = self._tridiag
        out = d * v.astype(np.result_type(v, d))
        out[:-1] += e * v[1:]
        out[1:] += e * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        if self._dense is not None:
            return self._dense
        n = self.dimension
        if self._perm is not None:
            m = np.zeros((n, n))
            m[np.arange(n), self._perm] = 1.0
            return m
        d, e = self._tridiag
        m = np.diag(d)
        m += np.diag(e, 1) + np.diag(e, -1)
        return m

    def adjoint(self) -> "LinearOperator":
        if self._dense is not None:
            return LinearOperator.from_dense(self._dense.conj().T,
                                             hermitian_hint=self.hermitian_hint)
        if self._perm is not None:
            return LinearOperator.from_permutation(np.argsort(self._perm))
        return self  # real symmetric tridiagonal

    def __call__(self, v):
        return self.apply(v)


@dataclass(frozen=True)
class AntilinearOperator:
    """Action v -> linear_part(conj(v)); A(alpha v) = conj(alpha) A(v) by construction."""

    linear_part: LinearOperator

    @property
    def dimension(self) -> int:
        return self.linear_part.dimension

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.linear_part.apply(np.conj(v))

    def adjoint(self) -> "AntilinearOperator":
        # <A^+ w, v> = <A v, w> forces the transpose (not conjugate transpose).
        return AntilinearOperator(LinearOperator.from_dense(self.linear_part.to_dense().T))

    def __call__(self, v):
        return self.apply(v)


class MixedOperator:
    """Real-linear operator v -> A v + B conj(v).

    Arises from sums of linear and antilinear operators (the rotor's
    nilpotent charge pair) and from closing the algebra under
    composition; linear and antilinear operators are the B = 0 and
    A = 0 special cases.
    """

    def __init__(self, linear_matrix=None, antilinear_matrix=None):
        if linear_matrix is None and antilinear_matrix is None:
            raise ParameterError("mixed operator needs at least one part")
        self.linear_matrix = None if linear_matrix is None else np.asarray(linear_matrix)
        self.antilinear_matrix = (None if antilinear_matrix is None
                                  else np.asarray(antilinear_matrix))

    @property
    def dimension(self) -> int:
        part = self.linear_matrix if self.linear_matrix is not None else self.antilinear_matrix
        return part.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        out = 0
        if self.linear_matrix is not None:
            out = out + self.linear_matrix @ v
        if self.antilinear_matrix is not None:
            out = out + self.antilinear_matrix @ np.conj(v)
        return out

    def adjoint(self) -> "MixedOperator":
        a = None if self.linear_matrix is None else self.linear_matrix.conj().T
        b = None if self.antilinear_matrix is None else self.antilinear_matrix.T
        return MixedOperator(a, b)

    def __call__(self, v):
        return self.apply(v)


Operator = LinearOperator | AntilinearOperator | MixedOperator


def _parts(op: Operator):
    """Dense (linear_matrix, antilinear_matrix) parts, None when structurally absent."""
    if isinstance(op, LinearOperator):
        return op.to_dense(), None
    if isinstance(op, AntilinearOperator):
        return None, op.linear_part.to_dense()
    return op.linear_matrix, op.antilinear_matrix


def _wrap(a, b) -> Operator:
    if b is None:
        return LinearOperator.from_dense(a)
    if a is None:
        return AntilinearOperator(LinearOperator.from_dense(b))
    return MixedOperator(a, b)


def _check_dims(x: Operator, y: Operator):
    if x.dimension != y.dimension:
        raise ParameterError(
            f"operator dimension mismatch: {x.dimension} vs {y.dimension}")


def compose(x: Operator, y: Operator) -> Operator:
    """Operator product x . y, honoring antilinearity.

    An antilinear factor conjugates every matrix to its right:
    antilinear . antilinear is linear, antilinear . linear stays antilinear.
    """
    _check_dims(x, y)
    xa, xb = _parts(x)
    ya, yb = _parts(y)
    a = b = None
    if xa is not None and ya is not None:
        a = xa @ ya
    if xb is not None and yb is not None:
        t = xb @ np.conj(yb)
        a = t if a is None else a + t
    if xa is not None and yb is not None:
        b = xa @ yb
    if xb is not None and ya is not None:
        t = xb @ np.conj(ya)
        b = t if b is None else b + t
    return _wrap(a, b)


def _combine(x: Operator, y: Operator, sign: float) -> Operator:
    _check_dims(x, y)
    xa, xb = _parts(x)
    ya, yb = _parts(y)

    def merge(u, v):
        if u is None and v is None:
            return None
        if u is None:
            return sign * v
        if v is None:
            return u.copy()
        return u + sign * v

    return _wrap(merge(xa, ya), merge(xb, yb))


def add(x: Operator, y: Operator) -> Operator:
    return _combine(x, y, +1.0)


def subtract(x: Operator, y: Operator) -> Operator:
    return _combine(x, y, -1.0)


def scale(x: Operator, c: float) -> Operator:
    xa, xb = _parts(x)
    return _wrap(None if xa is None else c * xa, None if xb is None else c * xb)


def commutator(x: Operator, y: Operator) -> Operator:
    return subtract(compose(x, y), compose(y, x))


def anticommutator(x: Operator, y: Operator) -> Operator:
    return add(compose(x, y), compose(y, x))


def frobenius_norm(op: Operator) -> float:
    a, b = _parts(op)
    total = 0.0
    if a is not None:
        total += float(np.sum(np.abs(a) ** 2))
    if b is not None:
        total += float(np.sum(np.abs(b) ** 2))
    return float(np.sqrt(total))


# ---------------------------------------------------------------------------
# grid operators

def second_derivative(grid: Grid1D) -> LinearOperator:
    """Three-point stencil (f_{j-1} - 2 f_j + f_{j+1}) / h^2.

    Dirichlet drops the out-of-range neighbors (wavefunction pinned to
    zero at the walls); periodic wraps into a circulant.
    """
    n = grid.n_points
    h2 = grid.spacing ** 2
    if grid.boundary == DIRICHLET:
        return LinearOperator.from_tridiag(np.full(n, -2.0 / h2), np.full(n - 1, 1.0 / h2))
    m = np.zeros((n, n))
    idx = np.arange(n)
    m[idx, idx] = -2.0 / h2
    m[idx, (idx + 1) % n] = 1.0 / h2
    m[idx, (idx - 1) % n] = 1.0 / h2
    return LinearOperator.from_dense(m, hermitian_hint=True)


def momentum(grid: Grid1D) -> LinearOperator:
    """p = -i D1 with the central difference (f_{j+1} - f_{j-1}) / 2h."""
    n = grid.n_points
    inv2h = 1.0 / (2.0 * grid.spacing)
    d1 = np.zeros((n, n))
    idx = np.arange(n)
    if grid.boundary == PERIODIC:
        d1[idx, (idx + 1) % n] = inv2h
        d1[idx, (idx - 1) % n] = -inv2h
    else:
        d1[idx[:-1], idx[1:]] = inv2h
        d1[idx[1:], idx[:-1]] = -inv2h
    return LinearOperator.from_dense(-1j * d1, hermitian_hint=True)


def parity_operator(grid: Grid1D) -> LinearOperator:
    """Permutation matrix realizing x -> -x; squares to the identity exactly."""
    return LinearOperator.from_permutation(parity_permutation(grid))


def hamiltonian(grid: Grid1D, potential) -> LinearOperator:
    """H = -1/2 second_derivative + diag(V(x_j)); real symmetric."""
    x = grid.points
    v = np.asarray([float(potential(xi)) for xi in x])
    bad = np.flatnonzero(~np.isfinite(v))
    if bad.size:
        j = int(bad[0])
        raise PotentialEvaluationError(float(x[j]), float(v[j]))
    d2 = second_derivative(grid)
    if d2.storage == "tridiag":
        d, e = d2.tridiag_bands
        return LinearOperator.from_tridiag(-0.5 * d + v, -0.5 * e)
    m = -0.5 * d2.to_dense()
    m[np.arange(grid.n_points), np.arange(grid.n_points)] += v
    return LinearOperator.from_dense(m, hermitian_hint=True)


def delta_well_hamiltonian(grid: Grid1D, lam: float) -> LinearOperator:
    """Free Hamiltonian minus lam/h at the single x = 0 grid point."""
    if lam < 0:
        raise ParameterError(f"delta-well coupling must be non-negative, got {lam!r}")
    if grid.boundary != DIRICHLET:
        raise ParameterError("delta well is discretized on a Dirichlet grid")
    j0 = grid.zero_index
    if j0 is None or abs(grid.points[j0]) > 1e-12 * grid.spacing:
        raise ParameterError(
            "grid has no x = 0 point; use an odd Dirichlet point count")
    h = hamiltonian(grid, lambda x: 0.0)
    d, e = h.tridiag_bands
    d = d.copy()
    d[j0] -= lam / grid.spacing
    return LinearOperator.from_tridiag(d, e)


# ---------------------------------------------------------------------------
# supercharges

Q_EQ3 = "Q_eq3"
Q_EQ4 = "q_eq4"
QDAG_EQ4 = "qdag_eq4"
Q_EQ7 = "Q_eq7"
Q_ROTOR_NILPOTENT = "q_rotor"
QDAG_ROTOR_NILPOTENT = "qdag_rotor"


@dataclass(frozen=True)
class Supercharge:
    """A supercharge together with its adjoint action and provenance label."""

    kind: str  # linear | antilinear | mixed
    action: Operator
    adjoint_action: Operator
    mass_or_inertia: float
    label: str
    nilpotent_by_design: bool

    @property
    def dimension(self) -> int:
        return self.action.dimension

    def apply(self, v):
        return self.action.apply(v)

    def apply_adjoint(self, v):
        return self.adjoint_action.apply(v)


def _kind_of(op: Operator) -> str:
    if isinstance(op, LinearOperator):
        return LINEAR
    if isinstance(op, AntilinearOperator):
        return ANTILINEAR
    return MIXED


def _assert_anti_self_adjoint(op: Operator, label: str):
    resid = frobenius_norm(add(op.adjoint(), op))
    scale_ = frobenius_norm(op)
    if scale_ > 0 and resid > 1e-12 * scale_:
        raise NumericalContractError(
            f"{label}: expected the adjoint to equal the negated charge "
            f"(relative residual {resid / scale_:.2e})")


def supercharge_Q(p: LinearOperator, P: LinearOperator, mass: float) -> Supercharge:
    """Q = p P / sqrt(2 m); the adjoint P p / sqrt(2 m) equals -Q."""
    _check_dims(p, P)
    action = scale(compose(p, P), 1.0 / np.sqrt(2.0 * mass))
    _assert_anti_self_adjoint(action, "supercharge Q = pP")
    return Supercharge(kind=LINEAR, action=action, adjoint_action=scale(action, -1.0),
                       mass_or_inertia=mass, label=Q_EQ3, nilpotent_by_design=False)


def supercharge_q_pair(p: LinearOperator, P: LinearOperator,
                       mass: float) -> tuple[Supercharge, Supercharge]:
    """Nilpotent pair q = (p + pP)/sqrt(4m), qdag = (p - pP)/sqrt(4m)."""
    _check_dims(p, P)
    pref = 1.0 / np.sqrt(4.0 * mass)
    pP = compose(p, P)
    q_act = scale(add(p, pP), pref)
    qdag_act = scale(subtract(p, pP), pref)
    q = Supercharge(kind=LINEAR, action=q_act, adjoint_action=qdag_act,
                    mass_or_inertia=mass, label=Q_EQ4, nilpotent_by_design=True)
    qdag = Supercharge(kind=LINEAR, action=qdag_act, adjoint_action=q_act,
                       mass_or_inertia=mass, label=QDAG_EQ4, nilpotent_by_design=True)
    return q, qdag


def rotor_basis_operators(m_max: int, inertia: float):
    """Angular momentum, time reversal, and Hamiltonian on exp(i m phi), m = -m_max..m_max."""
    if m_max < 1:
        raise ParameterError(f"m_max must be at least 1, got {m_max}")
    m = np.arange(-m_max, m_max + 1, dtype=float)
    lz = LinearOperator.from_dense(np.diag(m), hermitian_hint=True)
    h = LinearOperator.from_dense(np.diag(m ** 2 / (2.0 * inertia)), hermitian_hint=True)
    reversal = np.arange(len(m))[::-1].copy()  # exp(i m phi) -> exp(-i m phi)
    t = AntilinearOperator(LinearOperator.from_permutation(reversal))
    return lz, t, h


def rotor_supercharge(lz: LinearOperator, t: AntilinearOperator,
                      inertia: float) -> Supercharge:
    """Antilinear Q = L_z T / sqrt(2 I); adjoint T L_z / sqrt(2 I) = -Q."""
    _check_dims(lz, t)
    action = scale(compose(lz, t), 1.0 / np.sqrt(2.0 * inertia))
    _assert_anti_self_adjoint(action, "rotor supercharge Q = Lz T")
    return Supercharge(kind=ANTILINEAR, action=action, adjoint_action=scale(action, -1.0),
                       mass_or_inertia=inertia, label=Q_EQ7, nilpotent_by_design=False)


def rotor_supercharge_pair(lz: LinearOperator, t: AntilinearOperator,
                           inertia: float) -> tuple[Supercharge, Supercharge]:
    """Nilpotent rotor pair (L_z +/- L_z T) / sqrt(4 I), mixing linear and antilinear parts."""
    _check_dims(lz, t)
    pref = 1.0 / np.sqrt(4.0 * inertia)
    lzt = compose(lz, t)
    q_act = scale(add(lz, lzt), pref)
    qdag_act = scale(subtract(lz, lzt), pref)
    q = Supercharge(kind=MIXED, action=q_act, adjoint_action=qdag_act,
                    mass_or_inertia=inertia, label=Q_ROTOR_NILPOTENT,
                    nilpotent_by_design=True)
    qdag = Supercharge(kind=MIXED, action=qdag_act, adjoint_action=q_act,
                       mass_or_inertia=inertia, label=QDAG_ROTOR_NILPOTENT,
                       nilpotent_by_design=True)
    return q, qdag


def momentum_squared_hamiltonian(p: LinearOperator, mass: float) -> LinearOperator:
    """H = p^2 / 2m built from the same discrete momentum as the charges.

    The algebra identities H = {Q, Qdag}/2 and Q^2 = -H hold at machine
    precision only against this form; the three-point stencil Hamiltonian
    differs from it at O(h^2) and is used for spectral checks instead.
    """
    return LinearOperator.from_dense(compose(p, p).to_dense() / (2.0 * mass),
                                     hermitian_hint=True)
