"""Lattice sums over coefficient fields and the amplification bookkeeping.

The basic objects are

    S_d(z)        = sum of |A(beta)|^2 over nonzero beta with N(beta) <= z
                    and d | beta,
    R^{p,l}_d(z)  = (1/p) sum over the same range of
                    | sum_i A(alpha_i' beta bar(alpha_i) / p^l) |^2,

computed exactly (thresholds z are rationals compared against the
integer N(beta), values live in Q or Q(sqrt p)).  On top of these the
module provides the multiplicity classes M_l(K) over a prime window,
the sharp/flat splits, amplified sums weighted by eigenvalue tables,
the closed-form parameter selections (eigenvalue power sums, K cutoffs),
the dyadic prime partition, an exact index-shift identity for R, and
two-sided empirical reports for the comparison inequalities the decay
argument chains together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .hecke import CoefficientField, EigenvalueTriple, QComplex, QuadExt
from .quaternions import (
    LatticeVector,
    apply_matrix,
    conjugation_matrices,
    divide_lattice as _divide,
    is_prime,
    lattice_norm,
    odd_primes_in,
    scale_lattice as _scale,
    star_conjugation_matrices,
)

Rational = Union[int, Fraction]


def _as_threshold(z) -> Fraction:
    return Fraction(z)


def _divides_vector(d: int, beta: LatticeVector) -> bool:
    return beta[0] % d == 0 and beta[1] % d == 0 and beta[2] % d == 0


def sum_S_d(A: CoefficientField, d: int, z) -> QuadExt:
    """S_d(z): the squared-coefficient mass on multiples of d up to norm z."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    z = _as_threshold(z)
    total = QuadExt.of(0, A.p)
    for beta, value in A.entries.items():
        if lattice_norm(beta) <= z and _divides_vector(d, beta):
            total = total + value.abs_sq()
    return total


def sum_R(A: CoefficientField, p: int, ell: int, d: int, z) -> QuadExt:
    """R^{p,ell}_d(z), computed over the finitely many beta that can contribute.

    A beta contributes only if some alpha_i' beta bar(alpha_i) / p^ell
    lies in the support of A; inverting the conjugation enumerates all
    candidates as p^{ell-2} alpha_i^* gamma alpha_i over support points
    gamma.
    """
    if ell < 0 or d < 1:
        raise ValueError("need ell >= 0 and d >= 1")
    z = _as_threshold(z)
    conj_mats = conjugation_matrices(p)
    star_mats = star_conjugation_matrices(p)
    pl = p ** ell
    candidates: set[LatticeVector] = set()
    for gamma in A.entries:
        for mat in star_mats:
            star = apply_matrix(mat, gamma)
            if ell >= 2:
                beta = _scale(star, p ** (ell - 2))
            else:
                beta = _divide(star, p ** (2 - ell))
            if beta is not None and beta != (0, 0, 0):
                candidates.add(beta)
    total = QuadExt.of(0, A.p)
    for beta in candidates:
        if lattice_norm(beta) > z or not _divides_vector(d, beta):
            continue
        inner = QComplex.of(0, p=A.p)
        for mat in conj_mats:
            inner = inner + A.at(_divide(apply_matrix(mat, beta), pl))
        total = total + inner.abs_sq()
    return total * Fraction(1, p)


class ShiftIdentityError(AssertionError):
    def __init__(self, message, witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


def verify_R_shift_identity(A: CoefficientField, p: int, ell: int, d: int, z) -> bool:
    """Exact check of R^{p,ell}_{d p^ell}(z) = R^{p,0}_d(z / p^{2 ell})."""
    z = _as_threshold(z)
    lhs = sum_R(A, p, ell, d * p ** ell, z)
    rhs = sum_R(A, p, 0, d, z / p ** (2 * ell))
    if lhs != rhs:
        raise ShiftIdentityError(
            "index-shift identity failed",
            {"p": p, "ell": ell, "d": d, "z": z, "lhs": lhs, "rhs": rhs},
        )
    return True


# -- prime windows and multiplicity classes ----------------------------------

@dataclass(frozen=True)
class PrimeWindow:
    """A subset of the odd primes in [P/2, P]."""

    P: float
    primes: tuple[int, ...]

    def __post_init__(self):
        for p in self.primes:
            if p == 2 or not is_prime(p):
                raise ValueError(f"{p} is not an odd prime")
            if not (self.P / 2 - 1e-12 <= p <= self.P + 1e-12):
                raise ValueError(f"prime {p} outside window [{self.P / 2}, {self.P}]")

    @classmethod
    def from_bound(cls, P: float, subset: Optional[Iterable[int]] = None) -> "PrimeWindow":
        primes = tuple(subset) if subset is not None else tuple(odd_primes_in(P / 2, P))
        return cls(P=float(P), primes=tuple(sorted(primes)))

    def __len__(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class MultiplicitySpec:
    """beta belongs to M_ell(K) when at most K primes p in the window have p^ell | beta."""

    ell: int
    K: float
    window: PrimeWindow

    def count(self, beta: LatticeVector) -> int:
        pe = [p ** self.ell for p in self.window.primes]
        return sum(1 for q in pe if _divides_vector(q, beta))

    def member(self, beta: LatticeVector) -> bool:
        return self.count(beta) <= self.K


def multiplicity_membership(beta: LatticeVector, spec: MultiplicitySpec) -> bool:
    return spec.member(tuple(beta))


@dataclass(frozen=True)
class SharpFlatSplit:
    sharp: QuadExt
    flats: tuple[QuadExt, ...]
    total: QuadExt


def split_sharp_flat(A: CoefficientField, specs: Sequence[MultiplicitySpec], z) -> SharpFlatSplit:
    """S^sharp over the intersection of the M_ell(K_ell), and each S_ell^flat over its complement."""
    z = _as_threshold(z)
    sharp = QuadExt.of(0, A.p)
    flats = [QuadExt.of(0, A.p) for _ in specs]
    total = QuadExt.of(0, A.p)
    for beta, value in A.entries.items():
        if lattice_norm(beta) > z:
            continue
        sq = value.abs_sq()
        total = total + sq
        if all(s.member(beta) for s in specs):
            sharp = sharp + sq
        for idx, s in enumerate(specs):
            if not s.member(beta):
                flats[idx] = flats[idx] + sq
    return SharpFlatSplit(sharp=sharp, flats=tuple(flats), total=total)


# -- amplification -------------------------------------------------------------

def amplified_sum(
    A: CoefficientField,
    window: PrimeWindow,
    lam_table: Mapping[int, EigenvalueTriple],
    ell: int,
    specs: Sequence[MultiplicitySpec],
    z,
) -> float:
    """sum over beta in M(K) of |A(beta)|^2 * sum_{p in window, p not dividing beta} |lambda_ell(p)|^2."""
    missing = [p for p in window.primes if p not in lam_table]
    if missing:
        raise KeyError(f"eigenvalue table missing primes {missing}")
    z = _as_threshold(z)
    total = 0.0
    for beta, value in A.entries.items():
        if lattice_norm(beta) > z or not all(s.member(beta) for s in specs):
            continue
        weight = sum(
            getattr(lam_table[p], f"lam{ell}") ** 2
            for p in window.primes
            if not _divides_vector(p, beta)
        )
        total += float(value.abs_sq()) * weight
    return total


def eigen_power_sum(lam: EigenvalueTriple, ell: int) -> float:
    """sum over a, b >= 0 with a + 2b <= ell of |lambda_1|^{2a} |lambda_2|^{2b}."""
    total = 0.0
    for b in range(ell // 2 + 1):
        for a in range(ell - 2 * b + 1):
            total += abs(lam.lam1) ** (2 * a) * abs(lam.lam2) ** (2 * b)
    return total


@dataclass(frozen=True)
class ParameterChoice:
    power_sums: dict[int, float]
    K: int
    used_L: bool


def choose_parameters(
    B: float,
    window: PrimeWindow,
    L: float,
    ell: int,
    nu: float,
    lam_table: Optional[Mapping[int, EigenvalueTriple]] = None,
    *,
    use_L: bool = True,
) -> ParameterChoice:
    """Amplifier cutoff K_ell = ceil(e * B * L * |window| / (P/2)^{2 ell nu}) - 1.

    The variant without the L factor (use_L=False) matches the
    small-eigenvalue branch of the decay argument.  Per-prime eigenvalue
    power sums are tabulated when a table is supplied.
    """
    if B < 1:
        raise ValueError("B must be at least 1")
    if not 0 < nu < 1:
        raise ValueError("nu must lie in (0, 1)")
    scale = L if use_L else 1.0
    K = math.ceil(math.e * B * scale * len(window) / (window.P / 2) ** (2 * ell * nu)) - 1
    table = {}
    if lam_table is not None:
        table = {p: eigen_power_sum(lam_table[p], ell) for p in window.primes}
    return ParameterChoice(power_sums=table, K=K, used_L=use_L)


# -- dyadic prime partition -----------------------------------------------------

@dataclass(frozen=True)
class PrimePartition:
    y: float
    P: float
    J: int
    Q: tuple[int, ...]
    cells: dict[tuple[int, int, int], tuple[int, ...]]
    best: tuple[int, int, int]
    best_cell: tuple[int, ...]

    @property
    def best_is_nonzero(self) -> bool:
        return self.best != (0, 0, 0)


def _dyadic_bin(lam_sq: float, J: int) -> int:
    if lam_sq <= 1 / 100:
        return 0
    i = max(1, math.ceil(math.log2(lam_sq * 100)))
    while 2 ** (i - 1) / 100 >= lam_sq:  # guard float boundary
        i -= 1
    while 2 ** i / 100 < lam_sq:
        i += 1
    if i > J:
        raise ValueError(f"|lambda|^2 = {lam_sq} exceeds the dyadic range (J = {J})")
    return i


def partition_primes(lam_table: Mapping[int, EigenvalueTriple], y: float) -> PrimePartition:
    """Split the primes in [P/2, P], P = y^(1/8), into dyadic eigenvalue cells.

    Each prime lands in the cell (i, j, k) recording the dyadic sizes of
    |lambda_1|^2, |lambda_2|^2, |lambda_3|^2 (index 0 collects values
    <= 1/100).  Returns the largest cell, breaking ties toward the
    lexicographically smallest index; relation-consistent eigenvalue
    data never concentrates in cell (0, 0, 0).
    """
    if y < 1:
        raise ValueError("y must be >= 1")
    P = y ** 0.125
    Q = tuple(odd_primes_in(P / 2, P))
    missing = [p for p in Q if p not in lam_table]
    if missing:
        raise KeyError(f"eigenvalue table missing primes {missing}")
    J = math.ceil(2 * math.log(y)) if y > 1 else 1
    cells: dict[tuple[int, int, int], list[int]] = {}
    for p in Q:
        lam = lam_table[p]
        key = tuple(_dyadic_bin(getattr(lam, f"lam{ell}") ** 2, J) for ell in (1, 2, 3))
        cells.setdefault(key, []).append(p)
    if cells:
        best = min(cells, key=lambda k: (-len(cells[k]), k))
        best_cell = tuple(cells[best])
    else:
        best = (0, 0, 0)
        best_cell = ()
    return PrimePartition(
        y=float(y),
        P=P,
        J=J,
        Q=Q,
        cells={k: tuple(v) for k, v in cells.items()},
        best=best,
        best_cell=best_cell,
    )


def lambda3_lower_bound_sq(p: int) -> Fraction:
    """Exact lower bound for |lambda_3|^2 when |lambda_1|^2, |lambda_2|^2 <= 1/100.

    From the quadratic relation, |lambda_3| >= (1 + 1/p + 1/p^2 + 1/p^3)
    - 1/100 - (1 + 1/p)/10; the square of that bound is returned as an
    exact rational (it exceeds 1/2 for every odd prime).
    """
    c = 1 + Fraction(1, p) + Fraction(1, p * p) + Fraction(1, p ** 3)
    bound = c - Fraction(1, 100) - (1 + Fraction(1, p)) * Fraction(1, 10)
    if bound < 0:
        return Fraction(0)
    return bound * bound


# -- inequality reports ----------------------------------------------------------

@dataclass(frozen=True)
class SumReport:
    name: str
    left: float
    right: float
    ratio: Optional[float]
    params: dict
    vacuous: bool = False

    def asserted(self) -> "SumReport":
        if not self.vacuous and self.left > self.right * (1 + 1e-12):
            raise AssertionError(f"{self.name}: left {self.left} exceeds right {self.right}")
        return self


def _report(name: str, left: float, right: float, params: dict) -> SumReport:
    vacuous = right == 0
    ratio = None if vacuous else left / right
    return SumReport(name=name, left=left, right=right, ratio=ratio, params=params,
                     vacuous=vacuous and left == 0)


def _conj_square_sum(A: CoefficientField, window: PrimeWindow, K: float, ell: int, z) -> float:
    """sum_{beta in M_1(K), N <= z} sum_{p in window, p nmid beta} (1/p) |sum_i A(conj_i(beta)/p^ell)|^2."""
    z = _as_threshold(z)
    total = 0.0
    for p in window.primes:
        spec = MultiplicitySpec(1, K, window)
        conj_mats = conjugation_matrices(p)
        star_mats = star_conjugation_matrices(p)
        pl = p ** ell
        candidates: set[LatticeVector] = set()
        for gamma in A.entries:
            for mat in star_mats:
                star = apply_matrix(mat, gamma)
                beta = _scale(star, p ** (ell - 2)) if ell >= 2 else _divide(star, p ** (2 - ell))
                if beta is not None and beta != (0, 0, 0):
                    candidates.add(beta)
        for beta in candidates:
            if lattice_norm(beta) > z or _divides_vector(p, beta) or not spec.member(beta):
                continue
            inner = QComplex.of(0, p=A.p)
            for mat in conj_mats:
                inner = inner + A.at(_divide(apply_matrix(mat, beta), pl))
            total += float(inner.abs_sq()) / p
    return total


def inequality_report(which: str, **kw) -> SumReport:
    """Both sides of one of the chained comparison inequalities, without implied constants.

    Supported keys: Prop6.1, Cor6.2, L6.3i, L6.3ii, L6.3iii, L6.4a,
    L6.4b, L6.5.  Inputs arrive as keyword arguments (A, z, p, d, c, k,
    ell, window, K, lam, lam_table, const_A, const_B); reports are
    informational unless `.asserted()` is called with user-supplied
    constants.
    """
    A: CoefficientField = kw["A"]
    z = kw["z"]

    if which == "Prop6.1":
        p, k, c = kw["p"], kw["k"], kw.get("c", 1)
        lam: EigenvalueTriple = kw["lam"]
        const_A = kw.get("const_A", 1.0)
        if c % p == 0:
            raise ValueError("c must be coprime to p")
        left = float(sum_S_d(A, c * p ** k, z))
        right = const_A ** k * eigen_power_sum(lam, k) * float(sum_S_d(A, c, Fraction(z) / p ** (2 * k)))
        return _report(which, left, right, {"p": p, "k": k, "c": c, "A": const_A})

    if which == "Cor6.2":
        d = kw["d"]
        lam_table = kw["lam_table"]
        const_A = kw.get("const_A", 1.0)
        if d % 2 == 0:
            raise ValueError("d must be odd")
        prod = 1.0
        dd = d
        for p in range(3, d + 1, 2):
            if dd % p == 0 and is_prime(p):
                v = 0
                while dd % p == 0:
                    dd //= p
                    v += 1
                prod *= const_A ** v * eigen_power_sum(lam_table[p], v)
        left = float(sum_S_d(A, d, z))
        right = prod * float(sum_S_d(A, 1, Fraction(z) / (d * d)))
        return _report(which, left, right, {"d": d, "A": const_A})

    if which == "L6.3i":
        p, d = kw["p"], kw["d"]
        lam: EigenvalueTriple = kw["lam"]
        left = float(sum_S_d(A, d * p, z))
        zf = Fraction(z)
        right = (
            lam.lam1 ** 2 * float(sum_S_d(A, d, zf / p ** 2))
            + float(sum_S_d(A, d // math.gcd(d, p), zf / p ** 4))
            + float(sum_R(A, p, 1, d, zf / p ** 2))
        )
        return _report(which, left, right, {"p": p, "d": d})

    if which == "L6.3ii":
        p, d, ell = kw["p"], kw["d"], kw["ell"]
        lam: EigenvalueTriple = kw["lam"]
        zf = Fraction(z)
        left = float(sum_R(A, p, ell, d * p ** ell, z))
        right = (lam.lam2 ** 2 + 1) * float(sum_S_d(A, d, zf / p ** (2 * ell))) + float(
            sum_R(A, p, 2, d, zf / p ** (2 * ell))
        )
        return _report(which, left, right, {"p": p, "d": d, "ell": ell})

    if which == "L6.3iii":
        p, c, k, ell = kw["p"], kw["c"], kw["k"], kw["ell"]
        if c % p == 0:
            raise ValueError("c must be coprime to p")
        zf = Fraction(z)
        left = float(sum_R(A, p, ell, c * p ** k, z))
        right = float(sum_S_d(A, c * p ** max(0, k - ell), zf / Fraction(p) ** (2 * (ell - 1))))
        return _report(which, left, right, {"p": p, "c": c, "k": k, "ell": ell})

    if which in ("L6.4a", "L6.4b"):
        window: PrimeWindow = kw["window"]
        K = kw["K"]
        ell = 1 if which == "L6.4a" else 2
        left = _conj_square_sum(A, window, K, ell, z)
        if which == "L6.4a":
            right = K * float(sum_S_d(A, 1, z))
        else:
            right = len(window) * float(sum_S_d(A, 1, Fraction(z) / Fraction(window.P / 2) ** 2))
        return _report(which, left, right, {"K": K, "window": window.primes})

    if which == "L6.5":
        window: PrimeWindow = kw["window"]
        K, ell = kw["K"], kw["ell"]
        lam_table = kw["lam_table"]
        const_B = kw.get("const_B", 1.0)
        spec = MultiplicitySpec(ell, K, window)
        split = split_sharp_flat(A, [spec], z)
        left = float(split.flats[0])
        sup_L = max(eigen_power_sum(lam_table[p], ell) for p in window.primes)
        half_P = Fraction(window.P) / 2
        right = (const_B ** ell * len(window) * sup_L / (K + 1)) ** (K + 1) * float(
            sum_S_d(A, 1, Fraction(z) / half_P ** (2 * ell * (K + 1)))
        )
        return _report(which, left, right, {"K": K, "ell": ell, "B": const_B, "window": window.primes})

    raise ValueError(f"unknown inequality {which!r}")
