"""Deformed Poisson-bracket algebras and phase-space Jacobians.

A deformed algebra is described by three tables of bracket functions,

    {X_i, P_j} = f_ij(X, P),   {P_i, P_j} = h_ij(X, P),   {X_i, X_j} = g_ij(X, P),

replacing the canonical relations.  The Jacobian J = d(X,P)/d(x,p) of the map
from auxiliary canonical variables (x, p) to the physical ones equals a signed
sum of bracket products over all perfect matchings of the 2D phase-space
indices, which is the Pfaffian of the antisymmetric bracket matrix.  This
module builds the matching table with permutation-parity signs, evaluates the
Jacobian generically, provides the unreduced Levi-Civita sum as an independent
oracle, and carries closed forms for the two-parameter (beta, beta') algebra
whose position uncertainty is bounded below by hbar*sqrt(beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Mapping, Sequence, Tuple

import numpy as np

BracketFunc = Callable[[np.ndarray, np.ndarray], float]

#: Matching enumeration is cut off here: (2*7-1)!! = 135135 entries.
MAX_PAIRING_DIMENSION = 6
#: The unreduced sum visits (2D)! permutations; 720 terms at D=3 is the limit.
MAX_BRUTEFORCE_DIMENSION = 3


class DimensionTooLarge(ValueError):
    """Requested dimension exceeds a combinatorial practicality guard."""


@dataclass(frozen=True)
class DeformationParams:
    """Parameters of the two-parameter deformed algebra.

    beta and beta_prime carry units of inverse momentum squared; hbar sets the
    minimal position uncertainty hbar*sqrt(beta).
    """

    beta: float
    beta_prime: float
    hbar: float = 1.0

    def __post_init__(self) -> None:
        if self.beta < 0.0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if self.beta_prime < 0.0:
            raise ValueError(f"beta_prime must be >= 0, got {self.beta_prime}")
        if self.hbar <= 0.0:
            raise ValueError(f"hbar must be > 0, got {self.hbar}")

    @property
    def minimal_length(self) -> float:
        """Lower bound on position uncertainty; zero iff beta is zero."""
        return self.hbar * math.sqrt(self.beta)


@dataclass(frozen=True)
class BracketSet:
    """Bracket-function tables of a D-dimensional deformed algebra.

    ``xp`` maps (i, j) to the {X_i, P_j} function for every index pair.
    ``xx`` and ``pp`` store only i < j; the lower triangle is served by
    negation and the diagonal is identically zero, so antisymmetry holds by
    construction.  Absent keys mean the bracket vanishes identically.
    Indices are 0-based.
    """

    dimension: int
    xp: Mapping[Tuple[int, int], BracketFunc] = field(default_factory=dict)
    xx: Mapping[Tuple[int, int], BracketFunc] = field(default_factory=dict)
    pp: Mapping[Tuple[int, int], BracketFunc] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        for table, name in ((self.xx, "xx"), (self.pp, "pp")):
            for (i, j) in table:
                if not i < j:
                    raise ValueError(f"{name} table must hold i < j entries only, got ({i}, {j})")

    def xp_value(self, i: int, j: int, X: np.ndarray, P: np.ndarray) -> float:
        func = self.xp.get((i, j))
        return 0.0 if func is None else float(func(X, P))

    def xx_value(self, i: int, j: int, X: np.ndarray, P: np.ndarray) -> float:
        if i == j:
            return 0.0
        if i < j:
            func = self.xx.get((i, j))
            return 0.0 if func is None else float(func(X, P))
        return -self.xx_value(j, i, X, P)

    def pp_value(self, i: int, j: int, X: np.ndarray, P: np.ndarray) -> float:
        if i == j:
            return 0.0
        if i < j:
            func = self.pp.get((i, j))
            return 0.0 if func is None else float(func(X, P))
        return -self.pp_value(j, i, X, P)

    def flattened(self, a: int, b: int, X: np.ndarray, P: np.ndarray) -> float:
        """Bracket of flattened phase-space coordinates A_a, A_b.

        Odd 1-based index 2i-1 names X_i, even index 2i names P_i.
        """
        i, a_is_x = divmod(a - 1, 2)[0], a % 2 == 1
        j, b_is_x = divmod(b - 1, 2)[0], b % 2 == 1
        if a_is_x and b_is_x:
            return self.xx_value(i, j, X, P)
        if not a_is_x and not b_is_x:
            return self.pp_value(i, j, X, P)
        if a_is_x:
            return self.xp_value(i, j, X, P)
        return -self.xp_value(j, i, X, P)


Pairing = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class PairingTable:
    """All perfect matchings of {1..2D} with permutation-parity signs.

    Within each pair indices ascend and pairs are ordered by first element,
    so entry count is (2D-1)!! and the identity matching {(1,2), (3,4), ...}
    heads the table with sign +1.
    """

    dimension: int
    entries: Tuple[Tuple[Pairing, int], ...]


def _permutation_sign(seq: Sequence[int]) -> int:
    """Parity of the permutation taking sorted(seq) to seq, via inversions."""
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def _matchings(items: Tuple[int, ...]):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for sub in _matchings(rest[:k] + rest[k + 1:]):
            yield ((first, partner),) + sub


@lru_cache(maxsize=None)
def pairing_table(D: int) -> PairingTable:
    """Enumerate signed perfect matchings of the 2D flattened indices.

    Guarded at D > 6 where the (2D-1)!! growth stops being practical.
    """
    if D < 1:
        raise ValueError(f"dimension must be >= 1, got {D}")
    if D > MAX_PAIRING_DIMENSION:
        raise DimensionTooLarge(
            f"pairing table for D={D} would hold {_double_factorial(2 * D - 1)} entries; "
            f"maximum supported dimension is {MAX_PAIRING_DIMENSION}"
        )
    entries = []
    for pairing in _matchings(tuple(range(1, 2 * D + 1))):
        flat = [index for pair in pairing for index in pair]
        entries.append((pairing, _permutation_sign(flat)))
    return PairingTable(dimension=D, entries=tuple(entries))


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def kempf_brackets(params: DeformationParams, D: int) -> BracketSet:
    """Classical bracket tables of the two-parameter deformed algebra.

    {X_i, P_j} = (1 + beta*P^2) delta_ij + beta'*P_i*P_j, momenta commute,
    and {X_i, X_j} is the induced position bracket proportional to
    P_i*X_j - P_j*X_i.
    """
    if D < 1:
        raise ValueError(f"dimension must be >= 1, got {D}")
    beta, beta_prime = params.beta, params.beta_prime

    def make_xp(i: int, j: int) -> BracketFunc:
        def func(X: np.ndarray, P: np.ndarray) -> float:
            P = np.asarray(P, dtype=float)
            p_sq = float(P @ P)
            value = beta_prime * P[i] * P[j]
            if i == j:
                value += 1.0 + beta * p_sq
            return value
        return func

    def make_xx(i: int, j: int) -> BracketFunc:
        def func(X: np.ndarray, P: np.ndarray) -> float:
            X = np.asarray(X, dtype=float)
            P = np.asarray(P, dtype=float)
            p_sq = float(P @ P)
            prefactor = (2.0 * beta - beta_prime + (2.0 * beta + beta_prime) * beta * p_sq) \
                / (1.0 + beta * p_sq)
            return prefactor * (P[i] * X[j] - P[j] * X[i])
        return func

    xp = {(i, j): make_xp(i, j) for i in range(D) for j in range(D)}
    xx = {(i, j): make_xx(i, j) for i in range(D) for j in range(D) if i < j}
    return BracketSet(dimension=D, xp=xp, xx=xx, pp={})


def canonical_brackets(D: int) -> BracketSet:
    """Undeformed algebra: {X_i, P_j} = delta_ij, all other brackets zero."""
    one: BracketFunc = lambda X, P: 1.0
    return BracketSet(dimension=D, xp={(i, i): one for i in range(D)})


def jacobian_generic(brackets: BracketSet, X: np.ndarray, P: np.ndarray) -> float:
    """Jacobian d(X,P)/d(x,p) as the signed matching sum of bracket products.

    Equals the Pfaffian of the 2D x 2D antisymmetric matrix of flattened
    brackets evaluated at (X, P).
    """
    table = pairing_table(brackets.dimension)
    X = np.asarray(X, dtype=float)
    P = np.asarray(P, dtype=float)
    total = 0.0
    for pairing, sign in table.entries:
        term = float(sign)
        for a, b in pairing:
            term *= brackets.flattened(a, b, X, P)
            if term == 0.0:
                break
        total += term
    return total


@lru_cache(maxsize=None)
def _signed_permutations(D: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    return tuple(
        (perm, _permutation_sign(perm))
        for perm in permutations(range(1, 2 * D + 1))
    )


def jacobian_bruteforce(brackets: BracketSet, X: np.ndarray, P: np.ndarray) -> float:
    """Unreduced Jacobian sum over all (2D)! index permutations.

    Evaluates (1 / (2^D D!)) * sum over permutations of sign times the
    product of D flattened brackets.  Exists as an independent oracle for
    ``jacobian_generic``; refuses D > 3 where the permutation count explodes.
    """
    D = brackets.dimension
    if D > MAX_BRUTEFORCE_DIMENSION:
        raise DimensionTooLarge(
            f"brute-force Jacobian sums (2D)! terms; D={D} exceeds the "
            f"maximum supported dimension {MAX_BRUTEFORCE_DIMENSION}"
        )
    X = np.asarray(X, dtype=float)
    P = np.asarray(P, dtype=float)
    total = 0.0
    for perm, sign in _signed_permutations(D):
        term = float(sign)
        for k in range(D):
            term *= brackets.flattened(perm[2 * k], perm[2 * k + 1], X, P)
            if term == 0.0:
                break
        total += term
    return total / (2.0 ** D * math.factorial(D))


def kempf_jacobian(params: DeformationParams, P_squared: float) -> float:
    """Closed-form three-dimensional Jacobian (1+b*P^2)^2 (1+(b+b')*P^2).

    Coordinate independent and >= 1 for nonnegative deformation parameters.
    """
    if P_squared < 0.0:
        raise ValueError(f"P_squared must be >= 0, got {P_squared}")
    b, bp = params.beta, params.beta_prime
    return (1.0 + b * P_squared) ** 2 * (1.0 + (b + bp) * P_squared)


def linearized_jacobian(brackets: BracketSet, X: np.ndarray, P: np.ndarray) -> float:
    """First-order Jacobian 1 + sum_i (f_ii - 1) for near-canonical algebras.

    Only the diagonal {X_i, P_i} brackets survive at linear order in the
    deviation from the canonical table.
    """
    X = np.asarray(X, dtype=float)
    P = np.asarray(P, dtype=float)
    total = 1.0
    for i in range(brackets.dimension):
        total += brackets.xp_value(i, i, X, P) - 1.0
    return total
