"""Bell-type correlation operators under three commutation regimes.

The object of study is B = a1 b1 + a1 b2 + a2 b1 - a2 b2 built from four
Hermitian measurement contractions (operator norm <= 1).  How large |<B>|
can get depends only on which operators are required to commute:

* CLASSICAL: all four commute pairwise.  |<B>| <= 2 and <B B^dag> <= 4.
* COMMUTING_SUBSYSTEMS: each a_j commutes with each b_k (realized here as a
  tensor product, a_j on one factor and b_k on the other).  |<B>| <= 2*sqrt(2)
  and <B B^dag> <= 8.  For involutions the identity
  B^2 = 4 I - [a1, a2] (x) [b1, b2] pins the square down exactly.
* UNRESTRICTED: no commutation at all.  |<B>| <= 2*sqrt(3) and
  <B B^dag> <= 12.  B is then generally non-Hermitian, so the expectation
  maximum is its numerical radius rather than a spectral radius.

`search_bound` drives a randomized alternating ascent toward the bound of a
chosen regime: each block update (state, a-side, b-side) maximizes the
objective exactly over the full set of Hermitian contractions, whose extreme
points are sign operators of the effective Hermitian matrix.  This makes the
ascent monotone, and restarts from a seeded stream make it reproducible.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DimensionError, ParameterError, RegimeError
from .linalg import (
    commutator,
    hermitian_part,
    numerical_radius,
    require_hermitian,
    require_square,
    symmetric_extreme_eigen,
)
from .optimize import SearchConfig
from .rng import RngStream


class Regime(enum.Enum):
    CLASSICAL = "classical"
    COMMUTING_SUBSYSTEMS = "commuting"
    UNRESTRICTED = "unrestricted"


EXPECTATION_LIMITS = {
    Regime.CLASSICAL: 2.0,
    Regime.COMMUTING_SUBSYSTEMS: 2.0 * np.sqrt(2.0),
    Regime.UNRESTRICTED: 2.0 * np.sqrt(3.0),
}

BB_DAGGER_LIMITS = {
    Regime.CLASSICAL: 4.0,
    Regime.COMMUTING_SUBSYSTEMS: 8.0,
    Regime.UNRESTRICTED: 12.0,
}

MAX_TOTAL_DIM = 16

_NORM_SLACK = 1e-9
_COMMUTATOR_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Validated Hermitian measurement operator with norm at most 1."""

    matrix: np.ndarray

    def __post_init__(self):
        arr = require_hermitian(self.matrix, name="measurement operator")
        ext = symmetric_extreme_eigen(arr)
        norm = max(abs(ext.smallest), abs(ext.largest))
        if norm > 1.0 + _NORM_SLACK:
            raise ParameterError(
                f"measurement operator norm {norm:.6f} exceeds 1"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_diagonal(cls, values) -> "HermitianOperator":
        values = np.asarray(values, dtype=float)
        return cls(np.diag(values).astype(complex))


@dataclass(frozen=True, eq=False)
class BellScenario:
    """Four measurement operators plus the regime constraining them.

    COMMUTING_SUBSYSTEMS scenarios keep the a-side and b-side operators on
    separate factors (dims may differ); the other regimes put all four on a
    single space of equal dimension.  CLASSICAL additionally checks that all
    six operator pairs commute.
    """

    regime: Regime
    a1: HermitianOperator
    a2: HermitianOperator
    b1: HermitianOperator
    b2: HermitianOperator

    def __post_init__(self):
        if not isinstance(self.regime, Regime):
            raise ParameterError("regime must be a Regime")
        for name in ("a1", "a2", "b1", "b2"):
            if not isinstance(getattr(self, name), HermitianOperator):
                raise ParameterError(f"{name} must be a HermitianOperator")
        if self.a1.dim != self.a2.dim or self.b1.dim != self.b2.dim:
            raise DimensionError("operators within one side must share a dimension")

        if self.regime is Regime.COMMUTING_SUBSYSTEMS:
            total = self.a1.dim * self.b1.dim
        else:
            if self.a1.dim != self.b1.dim:
                raise DimensionError(
                    "a-side and b-side must act on the same space in this regime"
                )
            total = self.a1.dim
        if total > MAX_TOTAL_DIM:
            raise DimensionError(
                f"total dimension {total} exceeds the supported cap {MAX_TOTAL_DIM}"
            )

        if self.regime is Regime.CLASSICAL:
            ops = [self.a1.matrix, self.a2.matrix, self.b1.matrix, self.b2.matrix]
            names = ["a1", "a2", "b1", "b2"]
            for (i, x), (j, y) in itertools.combinations(enumerate(ops), 2):
                deviation = float(np.abs(commutator(x, y)).max())
                if deviation > _COMMUTATOR_TOL:
                    raise RegimeError(
                        f"classical regime requires [{names[i]}, {names[j]}] = 0; "
                        f"max deviation {deviation:.3e}"
                    )

    @property
    def total_dim(self) -> int:
        if self.regime is Regime.COMMUTING_SUBSYSTEMS:
            return self.a1.dim * self.b1.dim
        return self.a1.dim


def bell_operator(scenario: BellScenario) -> np.ndarray:
    """The matrix of B for the scenario, on the total space."""
    a1, a2 = scenario.a1.matrix, scenario.a2.matrix
    b1, b2 = scenario.b1.matrix, scenario.b2.matrix
    if scenario.regime is Regime.COMMUTING_SUBSYSTEMS:
        return (
            np.kron(a1, b1) + np.kron(a1, b2) + np.kron(a2, b1) - np.kron(a2, b2)
        )
    return a1 @ b1 + a1 @ b2 + a2 @ b1 - a2 @ b2


def max_expectation(scenario: BellScenario) -> float:
    """max over unit states of |<psi|B|psi>|.

    Equals the spectral radius when B is Hermitian (always the case for the
    commuting regimes); otherwise the numerical radius.
    """
    b = bell_operator(scenario)
    deviation = float(np.abs(b - b.conj().T).max())
    if deviation <= 1e-12 * max(1.0, float(np.abs(b).max())):
        ext = symmetric_extreme_eigen(b)
        return float(max(abs(ext.smallest), abs(ext.largest)))
    return numerical_radius(b)


def bb_dagger_expectation(scenario: BellScenario) -> float:
    """max over unit states of <psi|B B^dag|psi> (largest eigenvalue)."""
    b = bell_operator(scenario)
    return float(max(0.0, symmetric_extreme_eigen(b @ b.conj().T).largest))


def classical_bound_bruteforce() -> float:
    """Exhaustive scan of deterministic +/-1 assignments; returns exactly 2."""
    best = 0.0
    for a1, a2, b1, b2 in itertools.product((-1.0, 1.0), repeat=4):
        best = max(best, abs(a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2))
    return best


def chsh_square_identity_check(scenario: BellScenario) -> float:
    """max-abs deviation of B^2 from 4 I - [a1,a2] (x) [b1,b2].

    Only meaningful for COMMUTING_SUBSYSTEMS scenarios whose operators are
    involutions (op^2 = I); both preconditions are enforced.
    """
    if scenario.regime is not Regime.COMMUTING_SUBSYSTEMS:
        raise RegimeError("the square identity requires the commuting-subsystems regime")
    for name in ("a1", "a2", "b1", "b2"):
        op = getattr(scenario, name).matrix
        deviation = float(np.abs(op @ op - np.eye(op.shape[0])).max())
        if deviation > 1e-12:
            raise RegimeError(
                f"{name} is not an involution (|{name}^2 - I| = {deviation:.3e})"
            )
    b = bell_operator(scenario)
    total = b.shape[0]
    comm_a = commutator(scenario.a1.matrix, scenario.a2.matrix)
    comm_b = commutator(scenario.b1.matrix, scenario.b2.matrix)
    target = 4.0 * np.eye(total) - np.kron(comm_a, comm_b)
    return float(np.abs(b @ b - target).max())


def canonical_chsh_scenario() -> BellScenario:
    """The standard qubit pair saturating 2*sqrt(2): Z, X vs (Z+/-X)/sqrt(2)."""
    z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    s = 1.0 / np.sqrt(2.0)
    return BellScenario(
        regime=Regime.COMMUTING_SUBSYSTEMS,
        a1=HermitianOperator(z),
        a2=HermitianOperator(x),
        b1=HermitianOperator(s * (z + x)),
        b2=HermitianOperator(s * (z - x)),
    )


# ---------------------------------------------------------------------------
# randomized ascent


def haar_unitary(dim: int, generator: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    g = generator.standard_normal((dim, dim)) + 1j * generator.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_contraction(dim: int, generator: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with eigenvalues uniform in [-1, 1]."""
    v = haar_unitary(dim, generator)
    return hermitian_part((v * generator.uniform(-1.0, 1.0, size=dim)) @ v.conj().T)


def random_involution(dim: int, generator: np.random.Generator) -> np.ndarray:
    """Random Hermitian involution: Haar frame with +/-1 eigenvalues."""
    v = haar_unitary(dim, generator)
    signs = np.where(generator.uniform(size=dim) < 0.5, -1.0, 1.0)
    return hermitian_part((v * signs) @ v.conj().T)


def random_commuting_involutory_scenario(
    dim_a: int, dim_b: int, stream: RngStream
) -> BellScenario:
    """Commuting-subsystems scenario with four random involutions."""
    gen = stream.generator()
    return BellScenario(
        regime=Regime.COMMUTING_SUBSYSTEMS,
        a1=HermitianOperator(random_involution(dim_a, gen)),
        a2=HermitianOperator(random_involution(dim_a, gen)),
        b1=HermitianOperator(random_involution(dim_b, gen)),
        b2=HermitianOperator(random_involution(dim_b, gen)),
    )


def _sign_operator(matrix: np.ndarray) -> np.ndarray:
    """Hermitian sign function; optimal contraction for tr(A M) ascent."""
    w, v = np.linalg.eigh(hermitian_part(matrix))
    signs = np.where(w >= 0.0, 1.0, -1.0)
    return hermitian_part((v * signs) @ v.conj().T)


def _canonical_block_tuple(dim: int) -> Tuple[np.ndarray, ...]:
    """The canonical qubit tuple tiled along the diagonal of a dim space.

    Any 2x2 corner realizes the Tsirelson-point operators, so the tuple is a
    structured starting point whose Bell combination already evaluates to
    2*sqrt(2) for dim >= 2 (a leftover odd diagonal entry contributes a
    harmless classical block of value 2).
    """
    z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    s = 1.0 / np.sqrt(2.0)

    def embed(block: np.ndarray) -> np.ndarray:
        m = np.zeros((dim, dim), dtype=complex)
        k = 0
        while k + 1 < dim:
            m[k : k + 2, k : k + 2] = block
            k += 2
        if k < dim:
            m[k, k] = 1.0
        return m

    return embed(z), embed(x), embed(s * (z + x)), embed(s * (z - x))


def _top_state(matrix: np.ndarray) -> Tuple[np.ndarray, float]:
    w, v = np.linalg.eigh(hermitian_part(matrix))
    return v[:, -1], float(w[-1])


def _ascend_classical(
    dim: int, generator: np.random.Generator, max_iterations: int, warm: bool = False
):
    # commuting observables are simultaneously diagonalizable, so work with
    # the diagonals directly; each update is an exact per-entry sign choice.
    # no warm start needed: any start reaches the optimum in one pass
    if warm:
        b1 = np.ones(dim)
        b2 = np.ones(dim)
    else:
        b1 = generator.uniform(-1.0, 1.0, size=dim)
        b2 = generator.uniform(-1.0, 1.0, size=dim)
    a1 = np.ones(dim)
    a2 = np.ones(dim)
    value = 0.0
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        a1 = np.where(b1 + b2 >= 0.0, 1.0, -1.0)
        a2 = np.where(b1 - b2 >= 0.0, 1.0, -1.0)
        b1 = np.where(a1 + a2 >= 0.0, 1.0, -1.0)
        b2 = np.where(a1 - a2 >= 0.0, 1.0, -1.0)
        per_index = a1 * (b1 + b2) + a2 * (b1 - b2)
        new_value = float(per_index.max())
        if new_value <= value + 1e-13:
            value = max(value, new_value)
            break
        value = new_value
    per_index = a1 * (b1 + b2) + a2 * (b1 - b2)
    k = int(np.argmax(per_index))
    state = np.zeros(dim, dtype=complex)
    state[k] = 1.0
    ops = tuple(np.diag(vec).astype(complex) for vec in (a1, a2, b1, b2))
    return value, ops, state, iterations


def _ascend_commuting(
    dim: int, generator: np.random.Generator, max_iterations: int, warm: bool = False
):
    if warm:
        a1, a2, b1, b2 = _canonical_block_tuple(dim)
    else:
        a1 = random_contraction(dim, generator)
        a2 = random_contraction(dim, generator)
        b1 = random_contraction(dim, generator)
        b2 = random_contraction(dim, generator)
    value = -np.inf
    psi = None
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        b = np.kron(a1, b1) + np.kron(a1, b2) + np.kron(a2, b1) - np.kron(a2, b2)
        psi, new_value = _top_state(b)
        if new_value <= value + 1e-13:
            value = max(value, new_value)
            break
        value = new_value
        m = psi.reshape(dim, dim)
        a1 = _sign_operator(m @ (b1 + b2).T @ m.conj().T)
        a2 = _sign_operator(m @ (b1 - b2).T @ m.conj().T)
        b1 = _sign_operator(m.T @ (a1 + a2).T @ m.conj())
        b2 = _sign_operator(m.T @ (a1 - a2).T @ m.conj())
    return value, (a1, a2, b1, b2), psi, iterations


def _ascend_unrestricted(
    dim: int, generator: np.random.Generator, max_iterations: int, warm: bool = False
):
    if warm:
        a1, a2, b1, b2 = _canonical_block_tuple(dim)
        psi, _ = _top_state(a1 @ b1 + a1 @ b2 + a2 @ b1 - a2 @ b2)
    else:
        a1 = random_contraction(dim, generator)
        a2 = random_contraction(dim, generator)
        b1 = random_contraction(dim, generator)
        b2 = random_contraction(dim, generator)
        gauss = generator.standard_normal(dim) + 1j * generator.standard_normal(dim)
        psi = gauss / np.linalg.norm(gauss)
    value = -np.inf
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        b = a1 @ b1 + a1 @ b2 + a2 @ b1 - a2 @ b2
        expectation = complex(psi.conj() @ b @ psi)
        new_value = abs(expectation)
        if new_value <= value + 1e-13:
            value = max(value, new_value)
            break
        value = new_value
        theta = -np.angle(expectation) if expectation != 0 else 0.0
        phase = np.exp(1j * theta)
        rho = np.outer(psi, psi.conj())
        a1 = _sign_operator(phase * (b1 + b2) @ rho)
        a2 = _sign_operator(phase * (b1 - b2) @ rho)
        b1 = _sign_operator(phase * rho @ (a1 + a2))
        b2 = _sign_operator(phase * rho @ (a1 - a2))
        psi, _ = _top_state(
            phase * (a1 @ b1 + a1 @ b2 + a2 @ b1 - a2 @ b2)
        )
    return value, (a1, a2, b1, b2), psi, iterations


@dataclass(frozen=True, eq=False)
class BoundReport:
    """Outcome of one randomized bound search."""

    regime: Regime
    dim: int
    restarts: int
    best_restart: int
    iterations: int
    best_expectation: float
    best_bb_dagger: float
    theoretical_limit_expectation: float
    theoretical_limit_bb: float
    witness: BellScenario
    witness_state: np.ndarray

    @property
    def expectation_margin(self) -> float:
        """Distance below the regime limit (negative would mean violation)."""
        return self.theoretical_limit_expectation - self.best_expectation

    @property
    def bb_dagger_margin(self) -> float:
        return self.theoretical_limit_bb - self.best_bb_dagger


def search_bound(
    regime: Regime, dim: int, config: Optional[SearchConfig] = None
) -> BoundReport:
    """Randomized multi-restart ascent toward the regime's expectation limit.

    `dim` is the per-subsystem dimension for COMMUTING_SUBSYSTEMS (total
    space dim^2) and the full space dimension otherwise.  Restart 0 starts
    from the structured canonical tuple (so the known-feasible 2*sqrt(2)
    point is never missed for dim >= 2); the remaining restarts explore from
    random contractions.  The report's best_expectation and best_bb_dagger
    are recomputed from the witness scenario with the package eigensolver,
    not taken from ascent internals.
    """
    config = config or SearchConfig()
    if not isinstance(regime, Regime):
        raise ParameterError("regime must be a Regime")
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise DimensionError("dim must be a positive integer")
    dim = int(dim)
    total = dim * dim if regime is Regime.COMMUTING_SUBSYSTEMS else dim
    if total > MAX_TOTAL_DIM:
        raise DimensionError(
            f"total dimension {total} exceeds the supported cap {MAX_TOTAL_DIM}"
        )

    ascents = {
        Regime.CLASSICAL: _ascend_classical,
        Regime.COMMUTING_SUBSYSTEMS: _ascend_commuting,
        Regime.UNRESTRICTED: _ascend_unrestricted,
    }
    ascend = ascents[regime]

    best = None
    for restart in range(config.restarts):
        generator = config.rng.substream(restart).generator()
        value, ops, state, iterations = ascend(
            dim, generator, config.max_iterations, warm=(restart == 0)
        )
        if best is None or value > best[0]:
            best = (value, ops, state, restart, iterations)

    _, ops, state, best_restart, iterations = best
    witness = BellScenario(
        regime=regime,
        a1=HermitianOperator(ops[0]),
        a2=HermitianOperator(ops[1]),
        b1=HermitianOperator(ops[2]),
        b2=HermitianOperator(ops[3]),
    )
    return BoundReport(
        regime=regime,
        dim=dim,
        restarts=config.restarts,
        best_restart=best_restart,
        iterations=iterations,
        best_expectation=max_expectation(witness),
        best_bb_dagger=bb_dagger_expectation(witness),
        theoretical_limit_expectation=EXPECTATION_LIMITS[regime],
        theoretical_limit_bb=BB_DAGGER_LIMITS[regime],
        witness=witness,
        witness_state=np.asarray(state),
    )
