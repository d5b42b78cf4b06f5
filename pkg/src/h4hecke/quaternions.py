"""Integral (Lipschitz) quaternion arithmetic and norm-p orbit tables.

Quaternions a + bi + cj + dk are identified with the Clifford algebra
C_2 via i = e1, j = e2, k = e12, and V3 = Z + Zi + Zj denotes the
lattice of quaternions without k-component, written as plain integer
triples (b0, b1, b2) throughout.

The module enumerates the 8(p+1) integral quaternions of norm p, fixes
the lexicographically minimal representative of each left unit-orbit,
computes the conjugation action beta -> alpha' beta bar(alpha) on V3,
and brute-force sweeps the two divisibility lemmas that the coefficient
operators rely on (the two-sided v_p bound for conjugates, invariance
of v_q at other primes, the at-most-two-exceptional-orbits bound, and
the >16-conjugates squared-divisibility criterion).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

LatticeVector = tuple[int, int, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def odd_primes_in(lo: float, hi: float) -> list[int]:
    """Odd primes p with lo <= p <= hi, ascending."""
    start = max(3, math.ceil(lo))
    return [p for p in range(start, math.floor(hi) + 1) if p % 2 and is_prime(p)]


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Quaternion with exact (int or Fraction) coordinates on 1, i, j, k."""

    a: Union[int, Fraction]
    b: Union[int, Fraction]
    c: Union[int, Fraction]
    d: Union[int, Fraction]

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def norm(self):
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def conjugate(self) -> "Quaternion":
        """bar: negate i, j, k."""
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def main(self) -> "Quaternion":
        """Main involution (prime): negate i and j, fix k = ij."""
        return Quaternion(self.a, -self.b, -self.c, self.d)

    def star(self) -> "Quaternion":
        """Reversal: fix i and j, negate k."""
        return Quaternion(self.a, self.b, self.c, -self.d)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
                   for v in (self.a, self.b, self.c, self.d))

    @property
    def in_v3(self) -> bool:
        return self.d == 0

    def coords(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"Quaternion({self.a}, {self.b}, {self.c}, {self.d})"


ONE = Quaternion(1, 0, 0, 0)
UNITS: tuple[Quaternion, ...] = tuple(
    Quaternion(*(s if idx == pos else 0 for idx in range(4)))
    for pos in range(4) for s in (1, -1)
)


def lattice_to_quaternion(beta: Sequence[int]) -> Quaternion:
    return Quaternion(int(beta[0]), int(beta[1]), int(beta[2]), 0)


def quaternion_to_lattice(q: Quaternion) -> LatticeVector:
    if q.d != 0:
        raise ArithmeticError(f"quaternion {q} has nonzero k-component, not in V3")
    return (int(q.a), int(q.b), int(q.c))


def lattice_norm(beta: Sequence[int]) -> int:
    return beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2]


def enumerate_norm(n: int) -> list[Quaternion]:
    """All integral quaternions of norm n, in lexicographic coordinate order."""
    if n < 1:
        raise ValueError("norm must be a positive integer")
    m = math.isqrt(n)
    out = []
    for a in range(-m, m + 1):
        ra = n - a * a
        for b in range(-m, m + 1):
            rb = ra - b * b
            if rb < 0:
                continue
            for c in range(-m, m + 1):
                rc = rb - c * c
                if rc < 0:
                    continue
                d = math.isqrt(rc)
                if d * d == rc:
                    if d == 0:
                        out.append(Quaternion(a, b, c, 0))
                    else:
                        out.append(Quaternion(a, b, c, -d))
                        out.append(Quaternion(a, b, c, d))
    return sorted(out, key=Quaternion.coords)


def canonical_orbit_representative(alpha: Quaternion) -> Quaternion:
    """Lexicographically smallest element of the left unit-orbit of alpha."""
    return min((u * alpha for u in UNITS), key=Quaternion.coords)


@dataclass(frozen=True)
class NormPOrbitTable:
    """The 8(p+1) norm-p quaternions and one representative per unit orbit."""

    p: int
    all_elements: tuple[Quaternion, ...]
    representatives: tuple[Quaternion, ...]


@lru_cache(maxsize=None)
def orbit_representatives(p: int) -> NormPOrbitTable:
    """Deterministic orbit table for an odd prime p: exactly p+1 representatives."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    elements = enumerate_norm(p)
    if len(elements) != 8 * (p + 1):
        raise AssertionError(f"expected {8 * (p + 1)} norm-{p} quaternions, found {len(elements)}")
    reps = sorted({canonical_orbit_representative(q) for q in elements}, key=Quaternion.coords)
    if len(reps) != p + 1:
        raise AssertionError(f"expected {p + 1} orbits for p={p}, found {len(reps)}")
    return NormPOrbitTable(p=p, all_elements=tuple(elements), representatives=tuple(reps))


def conjugate_action(alpha: Quaternion, beta: Sequence[int]) -> LatticeVector:
    """beta -> alpha' * beta * bar(alpha), which stays inside V3.

    Raises ArithmeticError if the product acquires a k-component (it
    cannot; a nonzero k-component signals an internal inconsistency).
    """
    q = alpha.main() * lattice_to_quaternion(beta) * alpha.conjugate()
    return quaternion_to_lattice(q)


def star_conjugate_action(alpha: Quaternion, delta: Sequence[int]) -> LatticeVector:
    """delta -> alpha^* * delta * alpha, the inverse-direction conjugation."""
    q = alpha.star() * lattice_to_quaternion(delta) * alpha
    return quaternion_to_lattice(q)


def conjugation_matrix(alpha: Quaternion) -> tuple[tuple[int, int, int], ...]:
    """3x3 integer matrix of beta -> alpha' beta bar(alpha) on V3 (rows act on column vectors)."""
    cols = [conjugate_action(alpha, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def star_conjugation_matrix(alpha: Quaternion) -> tuple[tuple[int, int, int], ...]:
    cols = [star_conjugate_action(alpha, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def apply_matrix(mat: Sequence[Sequence[int]], beta: Sequence[int]) -> LatticeVector:
    b0, b1, b2 = beta
    return (
        mat[0][0] * b0 + mat[0][1] * b1 + mat[0][2] * b2,
        mat[1][0] * b0 + mat[1][1] * b1 + mat[1][2] * b2,
        mat[2][0] * b0 + mat[2][1] * b1 + mat[2][2] * b2,
    )


@lru_cache(maxsize=None)
def conjugation_matrices(p: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """Conjugation matrices for the p+1 orbit representatives at an odd prime p."""
    return tuple(conjugation_matrix(a) for a in orbit_representatives(p).representatives)


@lru_cache(maxsize=None)
def star_conjugation_matrices(p: int) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    return tuple(star_conjugation_matrix(a) for a in orbit_representatives(p).representatives)


def divide_lattice(beta: Sequence[int], m: int) -> Optional[LatticeVector]:
    """beta/m when m divides every coordinate, else None (off-lattice)."""
    if beta[0] % m == 0 and beta[1] % m == 0 and beta[2] % m == 0:
        return (beta[0] // m, beta[1] // m, beta[2] // m)
    return None


def scale_lattice(beta: Sequence[int], m: int) -> LatticeVector:
    return (beta[0] * m, beta[1] * m, beta[2] * m)


def valuation(gamma, q: int):
    """Largest e with q^e dividing every coordinate; infinity for gamma = 0."""
    if isinstance(gamma, Quaternion):
        coords = [int(v) for v in gamma.coords()]
    else:
        coords = [int(v) for v in gamma]
    g = 0
    for c in coords:
        g = math.gcd(g, abs(c))
    if g == 0:
        return math.inf
    e = 0
    while g % q == 0:
        g //= q
        e += 1
    return e


# -- exhaustive lemma sweeps ----------------------------------------------

class LemmaSweepError(AssertionError):
    """A brute-force sweep found a counterexample; carries the witness."""

    def __init__(self, message: str, witness):
        super().__init__(f"{message}: witness {witness}")
        self.witness = witness


@dataclass(frozen=True)
class ConjugationSweepReport:
    p: int
    bound: int
    q_primes: tuple[int, ...]
    beta_count: int
    alpha_count: int
    pairs_checked: int
    max_vp_jump: int
    max_unequal_reps: int
    max_exceptional_set: int
    squared_divisibility_max_small: int
    violations: int = 0


_INF_SENTINEL = np.int64(2 ** 60)


def _vp_of_gcd(arr: np.ndarray, q: int) -> np.ndarray:
    """Vectorized v_q of integer row vectors (gcd of |coords|); 0-rows get a huge sentinel."""
    g = np.gcd.reduce(np.abs(arr), axis=1).astype(np.int64)
    v = np.zeros(g.shape, dtype=np.int64)
    alive = g != 0
    cur = g.copy()
    while True:
        div = alive & (cur % q == 0)
        if not div.any():
            break
        v[div] += 1
        cur[div] //= q
    v[~alive] = _INF_SENTINEL
    return v


def _beta_grid(bound: int) -> np.ndarray:
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(rng, rng, rng, indexing="ij"), axis=-1).reshape(-1, 3)
    return grid[np.any(grid != 0, axis=1)]


def verify_conjugation_lemmas(
    p: int,
    coordinate_bound: int,
    q_primes: Optional[Iterable[int]] = None,
) -> ConjugationSweepReport:
    """Exhaustive check of the conjugation valuation lemmas over a coordinate box.

    Sweeps every nonzero beta with |coords| <= coordinate_bound against
    every norm-p alpha (cost O(bound^3 * p)), asserting:

      (i)   v_p(beta) <= v_p(alpha' beta bar(alpha)) <= v_p(beta) + 2;
      (ii)  v_q is preserved for each supplied odd prime q != p;
      (iii) at most two representative orbits change v_p, and the
            exceptional set I(beta) = {i : v_p jumps} has size <= 2;
      (iv)  any delta with more than 16 norm-p alpha satisfying
            p^2 | alpha^* delta alpha is itself divisible by p^2.

    Returns counts on success; raises LemmaSweepError with the offending
    tuple otherwise.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if q_primes is None:
        q_primes = [q for q in (3, 5, 7, 11) if q != p]
    q_primes = tuple(q_primes)
    if any(q == p or q == 2 or not is_prime(q) for q in q_primes):
        raise ValueError(f"q primes must be odd primes different from p: {q_primes}")

    table = orbit_representatives(p)
    betas = _beta_grid(coordinate_bound)
    n_beta = betas.shape[0]
    vp_beta = _vp_of_gcd(betas, p)
    vq_beta = {q: _vp_of_gcd(betas, q) for q in q_primes}

    max_jump = 0
    pairs = 0

    # (i) + (ii) over every norm-p alpha; conjugation is linear in beta.
    for alpha in table.all_elements:
        mat = np.array(conjugation_matrix(alpha), dtype=np.int64)
        conj = betas @ mat.T
        vp_conj = _vp_of_gcd(conj, p)
        pairs += n_beta
        low = vp_conj < vp_beta
        high = vp_conj > vp_beta + 2
        if low.any() or high.any():
            idx = int(np.argmax(low | high))
            raise LemmaSweepError(
                "two-sided v_p bound failed",
                (tuple(betas[idx]), alpha, int(vp_beta[idx]), int(vp_conj[idx])),
            )
        max_jump = max(max_jump, int((vp_conj - vp_beta).max()))
        for q in q_primes:
            vq_conj = _vp_of_gcd(conj, q)
            bad = vq_conj != vq_beta[q]
            if bad.any():
                idx = int(np.argmax(bad))
                raise LemmaSweepError(
                    f"v_{q} not preserved under conjugation",
                    (tuple(betas[idx]), alpha, int(vq_beta[q][idx]), int(vq_conj[idx])),
                )

    # (iii) over the p+1 representatives.
    unequal = np.zeros(n_beta, dtype=np.int64)
    exceptional = np.zeros(n_beta, dtype=np.int64)
    for alpha in table.representatives:
        mat = np.array(conjugation_matrix(alpha), dtype=np.int64)
        vp_conj = _vp_of_gcd(betas @ mat.T, p)
        unequal += (vp_conj != vp_beta).astype(np.int64)
        exceptional += (vp_conj >= vp_beta + 1).astype(np.int64)
    if int(unequal.max()) > 2:
        idx = int(np.argmax(unequal))
        raise LemmaSweepError("more than two orbits changed v_p", (tuple(betas[idx]), int(unequal[idx])))
    if int(exceptional.max()) > 2:
        idx = int(np.argmax(exceptional))
        raise LemmaSweepError("|I(beta)| > 2", (tuple(betas[idx]), int(exceptional[idx])))

    # (iv): count, per delta, all norm-p alpha with p^2 | alpha^* delta alpha.
    psq = p * p
    counts = np.zeros(n_beta, dtype=np.int64)
    for alpha in table.all_elements:
        mat = np.array(star_conjugation_matrix(alpha), dtype=np.int64)
        counts += np.all((betas @ mat.T) % psq == 0, axis=1).astype(np.int64)
    many = counts > 16
    delta_not_sq = np.any(betas % psq != 0, axis=1)
    bad = many & delta_not_sq
    if bad.any():
        idx = int(np.argmax(bad))
        raise LemmaSweepError(
            "more than 16 conjugates divisible by p^2 without p^2 | delta",
            (tuple(betas[idx]), int(counts[idx])),
        )
    # Diagnostic: among delta with v_p(delta) = 0, the largest count observed.
    small = vp_beta == 0
    max_small = int(counts[small].max()) if small.any() else 0

    return ConjugationSweepReport(
        p=p,
        bound=coordinate_bound,
        q_primes=q_primes,
        beta_count=n_beta,
        alpha_count=len(table.all_elements),
        pairs_checked=pairs,
        max_vp_jump=max_jump,
        max_unequal_reps=int(unequal.max()),
        max_exceptional_set=int(exceptional.max()),
        squared_divisibility_max_small=max_small,
    )
