"""Dense linear algebra for registers of d-level quantum systems.

States are amplitude vectors over an ordered list of named qudits, indexed
big-endian: the leftmost qudit is the most significant base-d digit of the
basis index.  All qudits in one computation share a single dimension d.

Gates follow the shift/clock construction:

    X^j |m> = |m + j mod d>
    Z^k |m> = w^(k m) |m>          with w = exp(2 pi i / d)
    H   |j> = (1/sqrt d) sum_m w^(-j m) |m>
    RC |m,n> = |m, n + m mod d>    (control first, target second)
    LC |m,n> = |m, n - m mod d>
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerance for normalization / unitarity / hermiticity checks.  Desk-scale
# registers (d**n <= a few thousand amplitudes) accumulate error orders of
# magnitude below this.
EPS_NORM = 1e-9

# Measurement outcomes with weight below this are dropped rather than
# renormalized (dividing by sqrt(0) would produce NaN states).
EPS_PRUNE = 1e-12


class QuditError(ValueError):
    """Bad qudit names, arities or malformed states."""


def omega(d: int) -> complex:
    """Primitive d-th root of unity exp(2*pi*i/d)."""
    return complex(np.exp(2j * np.pi / d))


def phase_power(d: int, k: int) -> complex:
    """w**k computed as exp(2*pi*i*(k mod d)/d).

    Reducing the exponent first keeps w**d == 1 exact to one rounding
    instead of letting repeated float powers drift.
    """
    return complex(np.exp(2j * np.pi * (k % d) / d))


@dataclass(frozen=True)
class Unitary:
    """A gate on `arity` qudits of dimension d, as a dense matrix."""

    d: int
    arity: int
    matrix: np.ndarray

    def __post_init__(self):
        dim = self.d ** self.arity
        if self.matrix.shape != (dim, dim):
            raise QuditError(f"gate matrix must be {dim}x{dim}")
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    def is_unitary(self, tol: float = EPS_NORM) -> bool:
        eye = np.eye(self.matrix.shape[0])
        return bool(np.allclose(self.matrix @ self.matrix.conj().T, eye, atol=tol))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over an ordered tuple of named qudits."""

    qudits: tuple
    amps: np.ndarray
    d: int

    def __post_init__(self):
        if len(set(self.qudits)) != len(self.qudits):
            raise QuditError(f"duplicate qudit names in {self.qudits}")
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (self.d ** len(self.qudits),):
            raise QuditError(
                f"state over {len(self.qudits)} qudits needs "
                f"{self.d ** len(self.qudits)} amplitudes, got {amps.shape[0]}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-6:
            raise QuditError(f"state not normalized (norm {norm})")
        object.__setattr__(self, "qudits", tuple(self.qudits))
        object.__setattr__(self, "amps", _frozen(amps))

    @property
    def n(self) -> int:
        return len(self.qudits)

    def position(self, name) -> int:
        try:
            return self.qudits.index(name)
        except ValueError:
            raise QuditError(f"unknown qudit name {name!r}") from None

    def tensor(self, other: "PureState") -> "PureState":
        if self.d != other.d:
            raise QuditError("tensor product requires equal dimension")
        return PureState(self.qudits + other.qudits, np.kron(self.amps, other.amps), self.d)

    def reorder(self, new_order) -> "PureState":
        """Same state with qudits listed (and the index permuted) in `new_order`."""
        new_order = tuple(new_order)
        if sorted(new_order) != sorted(self.qudits):
            raise QuditError("reorder must permute the existing qudit names")
        perm = [self.position(q) for q in new_order]
        t = self.amps.reshape([self.d] * self.n).transpose(perm).reshape(-1)
        return PureState(new_order, t, self.d)


def basis_state(d: int, qudits, digits) -> PureState:
    """|digits> over the named qudits, digits base d, big-endian."""
    qudits = tuple(qudits)
    digits = tuple(digits)
    if len(digits) != len(qudits):
        raise QuditError("one digit per qudit required")
    idx = 0
    for v in digits:
        if not 0 <= v < d:
            raise QuditError(f"digit {v} out of range for d={d}")
        idx = idx * d + v
    amps = np.zeros(d ** len(qudits), dtype=complex)
    amps[idx] = 1.0
    return PureState(qudits, amps, d)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian trace-one matrix over an ordered tuple of named qudits."""

    qudits: tuple
    matrix: np.ndarray
    d: int

    def __post_init__(self):
        object.__setattr__(self, "qudits", tuple(self.qudits))
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    def validate(self, tol: float = EPS_NORM) -> None:
        m = self.matrix
        if not np.allclose(m, m.conj().T, atol=tol):
            raise QuditError("density matrix not Hermitian")
        if abs(np.trace(m) - 1.0) > tol:
            raise QuditError(f"density matrix trace {np.trace(m)} != 1")
        if np.linalg.eigvalsh(m).min() < -tol:
            raise QuditError("density matrix not positive semidefinite")


@dataclass(frozen=True)
class MeasurementBranch:
    """One outcome of a computational-basis measurement."""

    outcome: int
    weight: float
    post_state: PureState


# ---------------------------------------------------------------------------
# Gate constructors


def hadamard(d: int) -> Unitary:
    """H|j> = (1/sqrt d) sum_m w^(-j m) |m>; entry (m, j) = w^(-j m)/sqrt d."""
    m = np.empty((d, d), dtype=complex)
    for row in range(d):
        for col in range(d):
            m[row, col] = phase_power(d, -row * col)
    return Unitary(d, 1, m / np.sqrt(d))


def pauli_x_pow(d: int, j: int = 1) -> Unitary:
    """Cyclic shift |m> -> |m + j mod d>.  Negative j shifts backwards."""
    m = np.zeros((d, d), dtype=complex)
    for col in range(d):
        m[(col + j) % d, col] = 1.0
    return Unitary(d, 1, m)


def pauli_z_pow(d: int, k: int = 1) -> Unitary:
    """Clock gate diag(w^(k m)) for m = 0..d-1."""
    return Unitary(d, 1, np.diag([phase_power(d, k * m) for m in range(d)]))


def cnot_rshift(d: int) -> Unitary:
    """|m,n> -> |m, n + m mod d>; first qudit controls, second is target."""
    m = np.zeros((d * d, d * d), dtype=complex)
    for c in range(d):
        for t in range(d):
            m[c * d + (t + c) % d, c * d + t] = 1.0
    return Unitary(d, 2, m)


def cnot_lshift(d: int) -> Unitary:
    """|m,n> -> |m, n - m mod d>; inverse of cnot_rshift."""
    m = np.zeros((d * d, d * d), dtype=complex)
    for c in range(d):
        for t in range(d):
            m[c * d + (t - c) % d, c * d + t] = 1.0
    return Unitary(d, 2, m)


_NAMED_GATES = {
    "H": (hadamard, 1),
    "X": (pauli_x_pow, 1),
    "Z": (pauli_z_pow, 1),
    "RC": (cnot_rshift, 2),
    "LC": (cnot_lshift, 2),
}


def gate_arity(name: str) -> int:
    if name not in _NAMED_GATES:
        raise QuditError(f"unknown gate {name!r}")
    return _NAMED_GATES[name][1]


def named_gate(d: int, name: str, power: int = 1) -> Unitary:
    """One of the built-in gates H, X, Z, RC, LC, raised to an integer power.

    X and Z powers fold into the construction (exponent arithmetic mod d);
    the others use a matrix power, with negative powers via the adjoint.
    """
    if name not in _NAMED_GATES:
        raise QuditError(f"unknown gate {name!r}")
    ctor, arity = _NAMED_GATES[name]
    if name in ("X", "Z"):
        return ctor(d, power)
    base = ctor(d)
    if power == 1:
        return base
    if name in ("RC", "LC"):
        power %= d
    if power >= 0:
        return Unitary(d, arity, np.linalg.matrix_power(base.matrix, power))
    return Unitary(d, arity, np.linalg.matrix_power(base.matrix.conj().T, -power))


def bell_state(d: int, n: int, m: int, qudits=("a", "b")) -> PureState:
    """Generalized Bell state (1/sqrt d) sum_j w^(-j n) |j> |j + m mod d>."""
    if not (0 <= n < d and 0 <= m < d):
        raise QuditError("Bell indices must lie in [0, d)")
    amps = np.zeros(d * d, dtype=complex)
    for j in range(d):
        amps[j * d + (j + m) % d] = phase_power(d, -j * n)
    return PureState(tuple(qudits), amps / np.sqrt(d), d)


# ---------------------------------------------------------------------------
# Register operations


def _targets_front(s: PureState, targets) -> tuple:
    """Permutation moving `targets` to the leading axes; returns (perm, rest)."""
    targets = tuple(targets)
    if len(set(targets)) != len(targets):
        raise QuditError(f"duplicate target names {targets}")
    pos = [s.position(q) for q in targets]
    rest = [i for i in range(s.n) if i not in pos]
    return pos + rest, rest


def apply_gate(s: PureState, u: Unitary, targets) -> PureState:
    """Apply `u` to the named target qudits, identity on the rest.

    Targets may sit anywhere in the register; the index permutation reduces
    the general case to a gate on the leading qudits.
    """
    targets = tuple(targets)
    if u.arity != len(targets):
        raise QuditError(f"gate of arity {u.arity} applied to {len(targets)} qudits")
    if u.d != s.d:
        raise QuditError("gate dimension does not match state dimension")
    perm, _ = _targets_front(s, targets)
    d, n, r = s.d, s.n, len(targets)
    t = s.amps.reshape([d] * n).transpose(perm).reshape(d ** r, d ** (n - r))
    t = u.matrix @ t
    inv = np.argsort(perm)
    out = t.reshape([d] * n).transpose(inv).reshape(-1)
    return PureState(s.qudits, out, d)


def measure_qudits(s: PureState, targets) -> list:
    """Computational-basis measurement of the named targets.

    Permuting the targets to the front makes each outcome m a contiguous
    block of d^(n-r) amplitudes: weight g_m is the block's squared norm and
    the post-state divides the block by sqrt(g_m), zeroing the rest.
    Outcomes with g_m <= EPS_PRUNE are omitted.
    """
    targets = tuple(targets)
    perm, _ = _targets_front(s, targets)
    d, n, r = s.d, s.n, len(targets)
    inv = np.argsort(perm)
    front = s.amps.reshape([d] * n).transpose(perm).reshape(d ** r, d ** (n - r))
    branches = []
    for outcome in range(d ** r):
        g = float(np.sum(np.abs(front[outcome]) ** 2))
        if g <= EPS_PRUNE:
            continue
        post = np.zeros_like(front)
        post[outcome] = front[outcome] / np.sqrt(g)
        post = post.reshape([d] * n).transpose(inv).reshape(-1)
        branches.append(MeasurementBranch(outcome, g, PureState(s.qudits, post, d)))
    return branches


def partial_trace(s, keep) -> DensityMatrix:
    """Reduced density matrix over `keep`, tracing out the other qudits.

    Accepts a PureState or a DensityMatrix; the result's qudit order follows
    `keep` as given.
    """
    keep = tuple(keep)
    if isinstance(s, PureState):
        d, n = s.d, s.n
        kpos = [s.position(q) for q in keep]
        tpos = [i for i in range(n) if i not in kpos]
        psi = s.amps.reshape([d] * n)
        rho = np.tensordot(psi, psi.conj(), axes=(tpos, tpos))
        # tensordot leaves kept axes in register order; permute to `keep`.
        order = list(np.argsort(np.argsort(kpos)))
        k = len(keep)
        rho = rho.transpose(order + [k + i for i in order])
        return DensityMatrix(keep, rho.reshape(d ** k, d ** k), d)
    if isinstance(s, DensityMatrix):
        d, n = s.d, len(s.qudits)
        kpos = [list(s.qudits).index(q) if q in s.qudits else -1 for q in keep]
        if -1 in kpos:
            raise QuditError(f"unknown qudit name in keep={keep}")
        tpos = [i for i in range(n) if i not in kpos]
        rho = s.matrix.reshape([d] * (2 * n))
        for i in sorted(tpos, reverse=True):
            rho = np.trace(rho, axis1=i, axis2=i + rho.ndim // 2)
        order = list(np.argsort(np.argsort(kpos)))
        k = len(keep)
        rho = rho.transpose(order + [k + i for i in order])
        return DensityMatrix(keep, rho.reshape(d ** k, d ** k), d)
    raise QuditError(f"cannot trace object of type {type(s).__name__}")


def ketbra(s: PureState) -> DensityMatrix:
    return DensityMatrix(s.qudits, np.outer(s.amps, s.amps.conj()), s.d)


def states_equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = EPS_NORM) -> bool:
    """Vector equality modulo a global phase."""
    a = np.asarray(a).reshape(-1)
    b = np.asarray(b).reshape(-1)
    if a.shape != b.shape:
        return False
    ov = np.vdot(a, b)
    return bool(abs(abs(ov) - 1.0) <= tol and np.allclose(a * ov / abs(ov), b, atol=tol)) \
        if abs(ov) > tol else bool(np.allclose(a, b, atol=tol))


def fix_global_phase(amps: np.ndarray, tol: float = EPS_PRUNE) -> np.ndarray:
    """Rotate the first nonzero amplitude onto the positive real axis."""
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    for x in amps:
        if abs(x) > tol:
            return amps * (abs(x) / x)
    return amps
