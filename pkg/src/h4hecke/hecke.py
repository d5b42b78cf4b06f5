"""Coefficient operators at an odd prime p with exact Q(sqrt p) scalars.

A coefficient field is a finitely supported map beta -> A(beta) from the
lattice V3(Z) (integer triples, beta != 0) into complex numbers whose
real and imaginary parts live in Q(sqrt p).  Lookups are total: any
argument outside the support, outside the lattice (beta/p with p not
dividing beta), or equal to zero reads as 0.

Three linear operators H_1, H_2, H_3 act on such fields.  Writing
conj_i(beta) = alpha_i' beta bar(alpha_i) over the fixed norm-p orbit
representatives alpha_1..alpha_{p+1}:

  (H_1 A)(beta) = A(p beta) + A(beta/p) + p^{-1/2} sum_i A(conj_i(beta)/p)

  (H_2 A)(beta) = p^{-1/2} sum_i [A(conj_i(beta)) + A(conj_i(beta)/p^2)]
                  + E(beta, p) A(beta)

  (H_3 A)(beta) = A(p^2 beta) + A(beta) (1_p(beta) - (p+1)/p E(beta,p)
                  - (p^2+p+1)/p^3) + A(beta/p^2)
                  + p^{-1/2} sum_i [A(conj_i(beta)) (1_p(conj_i(beta)) - 1/p)
                  + A(conj_i(beta)/p^2) (1_p(beta) - 1/p)]
                  + p^{-1} sum_j sum_i A(conj_j(conj_i(beta))/p^2) 1_p(conj_i(beta)),

where E(beta, p) is the four-case rational factor driven by p | beta,
p | N(beta), and the Legendre symbol (-N(beta) | p), and 1_p is the
indicator of p dividing every coordinate.  On eigenvector data the three
operators reproduce the normalized eigenvalue triple, and they satisfy

    H_1^2 - (1 + 1/p) H_2 - H_3 = (1 + 1/p + 1/p^2 + 1/p^3) Id

as an exact operator identity on arbitrary fields (any fixed orbit
table); verify_hecke_relation computes the residual of that identity
without rounding.

Two finer properties need the Klein-group sign symmetry
A(-b0,-b1,b2) = A(-b0,b1,-b2) = A(b0,-b1,-b2) = A(b0,b1,b2) that
unit-rotation isometries force on genuine Fourier-coefficient data:
only on that symmetric subspace are the conjugation sums independent of
the choice of orbit representatives, and only there do operators at
distinct primes commute (CoefficientField.symmetrized projects onto the
subspace; on unsymmetric fields the commutator can be of size one).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .quaternions import (
    LatticeVector,
    apply_matrix,
    conjugation_matrices,
    divide_lattice as _divide,
    is_prime,
    lattice_norm,
    scale_lattice as _scale,
    star_conjugation_matrices,
)

Rational = Union[int, Fraction]


def _join_primes(p1: Optional[int], p2: Optional[int]) -> Optional[int]:
    if p1 is None:
        return p2
    if p2 is None or p1 == p2:
        return p1
    raise ValueError(f"mixed sqrt-extensions: sqrt({p1}) vs sqrt({p2})")


@dataclass(frozen=True, slots=True)
class QuadExt:
    """Exact element a + b*sqrt(p) of Q(sqrt p); p None means plain Q."""

    p: Optional[int]
    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.p is None and self.b != 0:
            raise ValueError("a sqrt coefficient requires a prime context")

    @classmethod
    def of(cls, value: Rational, p: Optional[int] = None) -> "QuadExt":
        return cls(p, Fraction(value), Fraction(0))

    @classmethod
    def sqrt_term(cls, p: int, coeff: Rational = 1) -> "QuadExt":
        return cls(p, Fraction(0), Fraction(coeff))

    @classmethod
    def inv_sqrt(cls, p: int) -> "QuadExt":
        """1/sqrt(p) = sqrt(p)/p."""
        return cls(p, Fraction(0), Fraction(1, p))

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt.of(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = _join_primes(self.p, other.p)
        return QuadExt(p, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadExt(self.p, -self.a, -self.b)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = _join_primes(self.p, other.p)
        root_sq = Fraction(p) if p is not None else Fraction(0)
        return QuadExt(
            p,
            self.a * other.a + root_sq * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = _join_primes(self.p, other.p)
        root_sq = Fraction(p) if p is not None else Fraction(0)
        denom = other.a * other.a - root_sq * other.b * other.b
        if denom == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt p)")
        conj_num = self * QuadExt(p, other.a, -other.b)
        return QuadExt(p, conj_num.a / denom, conj_num.b / denom)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.p == other.p and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.p, self.a, self.b))

    def __float__(self) -> float:
        root = math.sqrt(self.p) if self.p is not None else 0.0
        return float(self.a) + float(self.b) * root

    def with_prime(self, p: Optional[int]) -> "QuadExt":
        return QuadExt(_join_primes(self.p, p) if p is not None else self.p, self.a, self.b)

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a} + {self.b}*sqrt({self.p}))"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.p})"


@dataclass(frozen=True, slots=True)
class QComplex:
    """Complex number with QuadExt real and imaginary parts."""

    re: QuadExt
    im: QuadExt

    @classmethod
    def of(cls, re: Rational = 0, im: Rational = 0, p: Optional[int] = None) -> "QComplex":
        return cls(QuadExt.of(re, p), QuadExt.of(im, p))

    def __add__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, QComplex):
            return QComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return QComplex(self.re * other, self.im * other)

    def __rmul__(self, other):
        return QComplex(self.re * other, self.im * other)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs_sq(self) -> QuadExt:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def with_prime(self, p: Optional[int]) -> "QComplex":
        return QComplex(self.re.with_prime(p), self.im.with_prime(p))


def legendre_symbol(a: int, p: int) -> int:
    """(a | p) by Euler's criterion for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    val = pow(a, (p - 1) // 2, p)
    return 1 if val == 1 else -1


def divides(m: int, beta: Iterable[int]) -> bool:
    return all(c % m == 0 for c in beta)


def epsilon_factor(beta: Iterable[int], p: int) -> Fraction:
    """Four-case rational factor in the H_2 action, with denominator p^2.

    Cases in order: p | beta gives p^2 - 1; p | N(beta) (but not beta)
    gives -1; (-N(beta) | p) = 1 gives p - 1; otherwise -p - 1.
    """
    beta = tuple(beta)
    if lattice_norm(beta) == 0:
        raise ValueError("epsilon factor is undefined at beta = 0")
    n = lattice_norm(beta)
    if divides(p, beta):
        num = p * p - 1
    elif n % p == 0:
        num = -1
    elif legendre_symbol(-n, p) == 1:
        num = p - 1
    else:
        num = -p - 1
    return Fraction(num, p * p)


# -- coefficient fields ----------------------------------------------------

# Images of (b0, b1, b2) under conjugation by the unit quaternions:
# u' gamma bar(u) flips two coordinate signs for u in {i, j, k}.
_SIGN_PATTERNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


class CoefficientField:
    """Finitely supported map V3(Z) -> C with exact Q(sqrt p) entries.

    Entries at beta = 0 are forbidden, zero values are dropped, and the
    lookup `at` follows the total-extension convention (0 off the
    support and off the lattice).
    """

    __slots__ = ("p", "entries")

    def __init__(self, p: Optional[int], entries: Mapping[LatticeVector, QComplex]):
        if p is not None and (p == 2 or not is_prime(p)):
            raise ValueError(f"p must be an odd prime or None, got {p}")
        clean: dict[LatticeVector, QComplex] = {}
        for beta, value in entries.items():
            beta = (int(beta[0]), int(beta[1]), int(beta[2]))
            if beta == (0, 0, 0):
                raise ValueError("coefficient fields store no entry at beta = 0")
            value = value.with_prime(p) if p is not None else value
            _join_primes(_join_primes(value.re.p, value.im.p), p)
            if value:
                clean[beta] = value
        self.p = p
        self.entries = clean

    @classmethod
    def zero(cls, p: Optional[int] = None) -> "CoefficientField":
        return cls(p, {})

    @classmethod
    def delta(cls, beta: LatticeVector, value: Rational = 1, p: Optional[int] = None) -> "CoefficientField":
        return cls(p, {tuple(beta): QComplex.of(value, p=p)})

    @classmethod
    def ones_ball(cls, radius: int, p: Optional[int] = None) -> "CoefficientField":
        """A(beta) = 1 on every nonzero beta with N(beta) <= radius."""
        entries = {}
        m = math.isqrt(radius)
        for b0 in range(-m, m + 1):
            for b1 in range(-m, m + 1):
                for b2 in range(-m, m + 1):
                    if (b0, b1, b2) != (0, 0, 0) and b0 * b0 + b1 * b1 + b2 * b2 <= radius:
                        entries[(b0, b1, b2)] = QComplex.of(1, p=p)
        return cls(p, entries)

    @classmethod
    def random(
        cls,
        rng: random.Random,
        *,
        p: Optional[int] = None,
        support: int = 8,
        coord_bound: int = 3,
        entry_bound: int = 10,
        sqrt_parts: bool = False,
        symmetric: bool = False,
    ) -> "CoefficientField":
        """Random sparse field with integer (or integer + integer*sqrt(p)) entries."""
        if sqrt_parts and p is None:
            raise ValueError("sqrt parts require a prime context")
        entries: dict[LatticeVector, QComplex] = {}
        while len(entries) < support:
            beta = tuple(rng.randint(-coord_bound, coord_bound) for _ in range(3))
            if beta == (0, 0, 0) or beta in entries:
                continue

            def scalar():
                a = Fraction(rng.randint(-entry_bound, entry_bound))
                b = Fraction(rng.randint(-entry_bound, entry_bound)) if sqrt_parts else Fraction(0)
                return QuadExt(p if sqrt_parts else None, a, b)

            value = QComplex(scalar(), scalar())
            if value:
                entries[beta] = value
        field = cls(p, entries)
        return field.symmetrized() if symmetric else field

    # -- lookup and linear structure ------------------------------------

    def symmetrized(self) -> "CoefficientField":
        """Average over the four coordinate sign patterns (+++), (--+), (-+-), (+--).

        Unit-rotation isometries force this Klein-group symmetry on
        genuine Fourier-coefficient data; the conjugation sums in the
        operators are independent of the orbit-representative choice
        (and the operators at different primes commute) exactly on this
        symmetric subspace.  Idempotent projection, exact arithmetic.
        """
        quarter = Fraction(1, 4)
        out: dict[LatticeVector, QComplex] = {}
        for beta, value in self.entries.items():
            share = value * quarter
            for s in _SIGN_PATTERNS:
                key = (s[0] * beta[0], s[1] * beta[1], s[2] * beta[2])
                acc = out.get(key)
                out[key] = share if acc is None else acc + share
        return CoefficientField(self.p, {b: v for b, v in out.items() if v})

    @property
    def is_sign_symmetric(self) -> bool:
        for beta, value in self.entries.items():
            for s in _SIGN_PATTERNS:
                key = (s[0] * beta[0], s[1] * beta[1], s[2] * beta[2])
                if self.entries.get(key) != value:
                    return False
        return True

    def at(self, beta: Optional[Iterable[int]]) -> QComplex:
        """Total lookup: zero off the support, off the lattice, and at 0."""
        if beta is None:
            return QComplex.of(0, p=self.p)
        beta = tuple(beta)
        return self.entries.get(beta, QComplex.of(0, p=self.p))

    @property
    def support_radius(self) -> int:
        return max((lattice_norm(b) for b in self.entries), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def with_prime(self, p: int) -> "CoefficientField":
        if self.p is not None and self.p != p:
            raise ValueError(f"field over Q(sqrt {self.p}) cannot be promoted to Q(sqrt {p})")
        return CoefficientField(p, self.entries)

    def scale(self, factor) -> "CoefficientField":
        return CoefficientField(self.p, {b: v * factor for b, v in self.entries.items()})

    def __add__(self, other: "CoefficientField") -> "CoefficientField":
        p = _join_primes(self.p, other.p)
        out = dict(self.entries)
        for beta, value in other.entries.items():
            acc = out.get(beta)
            out[beta] = value if acc is None else acc + value
        return CoefficientField(p, {b: v for b, v in out.items() if v})

    def __sub__(self, other: "CoefficientField") -> "CoefficientField":
        return self + other.scale(Fraction(-1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoefficientField):
            return NotImplemented
        return self.entries == other.entries

    def max_abs(self) -> float:
        return max((abs(complex(v)) for v in self.entries.values()), default=0.0)

    def as_complex_dict(self) -> dict[LatticeVector, complex]:
        return {b: complex(v) for b, v in self.entries.items()}

    def __repr__(self):
        return f"CoefficientField(p={self.p}, support={len(self.entries)}, radius={self.support_radius})"


# -- the operators -----------------------------------------------------------

def _hecke_value(ell: int, p: int, at: Callable, lift: Callable, inv_sqrt_p, beta: LatticeVector,
                 conj_mats) -> object:
    """Evaluate (H_ell A)(beta) with scalar arithmetic injected by the caller.

    `at` is a total lookup (None-safe), `lift` embeds a Fraction weight,
    and `inv_sqrt_p` is 1/sqrt(p) in the target scalar domain.
    """
    psq = p * p
    if ell == 1:
        total = at(_scale(beta, p)) + at(_divide(beta, p))
        inner = at(None)
        for mat in conj_mats:
            inner = inner + at(_divide(apply_matrix(mat, beta), p))
        return total + inv_sqrt_p * inner

    if ell == 2:
        inner = at(None)
        for mat in conj_mats:
            conj = apply_matrix(mat, beta)
            inner = inner + at(conj) + at(_divide(conj, psq))
        return inv_sqrt_p * inner + lift(epsilon_factor(beta, p)) * at(beta)

    if ell == 3:
        one_over_p = Fraction(1, p)
        ind_beta = Fraction(1 if divides(p, beta) else 0)
        mid_weight = ind_beta - Fraction(p + 1, p) * epsilon_factor(beta, p) - Fraction(p * p + p + 1, p ** 3)
        total = at(_scale(beta, psq)) + lift(mid_weight) * at(beta) + at(_divide(beta, psq))
        inner = at(None)
        double = at(None)
        for mat in conj_mats:
            conj = apply_matrix(mat, beta)
            ind_conj = Fraction(1 if divides(p, conj) else 0)
            inner = inner + lift(ind_conj - one_over_p) * at(conj)
            inner = inner + lift(ind_beta - one_over_p) * at(_divide(conj, psq))
            if ind_conj:
                for mat2 in conj_mats:
                    double = double + at(_divide(apply_matrix(mat2, conj), psq))
        return total + inv_sqrt_p * inner + lift(one_over_p) * double

    raise ValueError(f"ell must be 1, 2, or 3, got {ell}")


def _hecke_candidates(ell: int, p: int, support: Iterable[LatticeVector], star_mats) -> set[LatticeVector]:
    """Every beta at which (H_ell A)(beta) can be nonzero, by inverting each term."""
    psq = p * p
    out: set[LatticeVector] = set()

    def put(beta: Optional[LatticeVector]):
        if beta is not None and beta != (0, 0, 0):
            out.add(beta)

    for gamma in support:
        if ell == 1:
            put(_divide(gamma, p))
            put(_scale(gamma, p))
            for mat in star_mats:
                put(_divide(apply_matrix(mat, gamma), p))
        elif ell == 2:
            put(gamma)
            for mat in star_mats:
                star = apply_matrix(mat, gamma)
                put(_divide(star, psq))
                put(star)
        else:
            put(_divide(gamma, psq))
            put(gamma)
            put(_scale(gamma, psq))
            for mat in star_mats:
                star = apply_matrix(mat, gamma)
                put(_divide(star, psq))
                put(star)
                for mat2 in star_mats:
                    put(_divide(apply_matrix(mat2, star), psq))
    return out


def _matrices_for(p: int, representatives):
    if representatives is None:
        return conjugation_matrices(p), star_conjugation_matrices(p)
    from .quaternions import conjugation_matrix, star_conjugation_matrix
    return (tuple(conjugation_matrix(a) for a in representatives),
            tuple(star_conjugation_matrix(a) for a in representatives))


def apply_hecke(ell: int, p: int, A: CoefficientField, *, representatives=None) -> CoefficientField:
    """H_ell A in exact arithmetic.

    The support radius grows by a factor of at most p^2 (ell = 1, 2) or
    p^4 (ell = 3).  Fields over plain Q are promoted to Q(sqrt p); a
    field over a different sqrt-extension is rejected.  The orbit table
    is the canonical one unless an alternative representative set is
    supplied (the output is the same for any valid choice).
    """
    A = A.with_prime(p)
    conj_mats, star_mats = _matrices_for(p, representatives)
    inv_sqrt_p = QuadExt.inv_sqrt(p)

    def lift(fr: Fraction) -> QuadExt:
        return QuadExt.of(fr, p)

    out: dict[LatticeVector, QComplex] = {}
    for beta in _hecke_candidates(ell, p, A.entries, star_mats):
        value = _hecke_value(ell, p, A.at, lift, inv_sqrt_p, beta, conj_mats)
        if value:
            out[beta] = value
    return CoefficientField(p, out)


def apply_hecke_float(ell: int, p: int, entries: Mapping[LatticeVector, complex]) -> dict[LatticeVector, complex]:
    """Floating-point twin of apply_hecke for cross-prime experiments."""
    conj_mats, star_mats = _matrices_for(p, None)
    inv_sqrt_p = 1.0 / math.sqrt(p)

    def at(beta):
        if beta is None:
            return 0j
        return entries.get(tuple(beta), 0j)

    out = {}
    for beta in _hecke_candidates(ell, p, entries, star_mats):
        value = _hecke_value(ell, p, at, float, inv_sqrt_p, beta, conj_mats)
        if value != 0:
            out[beta] = value
    return out


def hecke_relation_constant(p: int) -> Fraction:
    return 1 + Fraction(1, p) + Fraction(1, p * p) + Fraction(1, p ** 3)


def verify_hecke_relation(p: int, A: CoefficientField) -> CoefficientField:
    """Exact residual of H_1(H_1 A) - (1 + 1/p) H_2 A - H_3 A - (1+1/p+1/p^2+1/p^3) A.

    The returned field is identically zero precisely when the quadratic
    relation between the three operators holds on A; a structured
    nonzero residual is a reportable finding, not an error.
    """
    A = A.with_prime(p)
    h1h1 = apply_hecke(1, p, apply_hecke(1, p, A))
    h2 = apply_hecke(2, p, A).scale(QuadExt.of(1 + Fraction(1, p), p))
    h3 = apply_hecke(3, p, A)
    const = A.scale(QuadExt.of(hecke_relation_constant(p), p))
    return h1h1 - h2 - h3 - const


def verify_commutativity(p: int, q: int, ell: int, m: int, A: CoefficientField) -> float:
    """Max-abs entry of [H_ell(p), H_m(q)] A evaluated in doubles."""
    if p == q:
        raise ValueError("commutativity check needs distinct primes")
    entries = A.as_complex_dict()
    pq = apply_hecke_float(ell, p, apply_hecke_float(m, q, entries))
    qp = apply_hecke_float(m, q, apply_hecke_float(ell, p, entries))
    keys = set(pq) | set(qp)
    return max((abs(pq.get(k, 0j) - qp.get(k, 0j)) for k in keys), default=0.0)


# -- eigenvalue data ----------------------------------------------------------

@dataclass(frozen=True)
class EigenvalueTriple:
    """Normalized eigenvalues (lambda_1, lambda_2, lambda_3) at a prime p."""

    p: int
    lam1: float
    lam2: float
    lam3: float

    def relation_residual(self) -> float:
        """lambda_1^2 - (1+1/p) lambda_2 - lambda_3 - (1+1/p+1/p^2+1/p^3); zero for consistent data."""
        return (
            self.lam1 ** 2
            - (1 + 1 / self.p) * self.lam2
            - self.lam3
            - float(hecke_relation_constant(self.p))
        )

    @classmethod
    def from_lam12(cls, p: int, lam1: float, lam2: float) -> "EigenvalueTriple":
        """Complete (lam1, lam2) to a relation-consistent triple."""
        lam3 = lam1 ** 2 - (1 + 1 / p) * lam2 - float(hecke_relation_constant(p))
        return cls(p, lam1, lam2, lam3)


@dataclass(frozen=True)
class EigenResidualReport:
    safe_radius: Fraction
    points_checked: int
    residuals: Optional[tuple[float, float, float]]
    empty_safe_support: bool = False


def eigen_residual(A: CoefficientField, lam: EigenvalueTriple) -> EigenResidualReport:
    """Sup-norm of H_ell A - lambda_ell A over the truncation-safe ball N(beta) <= z0/p^4.

    Inside that ball every lattice point the operators consult lies
    within the declared support radius z0, so truncation cannot leak
    into the comparison.  Evaluated in doubles against the float
    eigenvalue triple; zero (to rounding) for eigenvector data.
    """
    p = lam.p
    safe_radius = Fraction(A.support_radius, p ** 4)
    if A.is_zero:
        return EigenResidualReport(safe_radius, 0, (0.0, 0.0, 0.0))
    entries = A.as_complex_dict()
    residuals = []
    checked = 0
    lams = (lam.lam1, lam.lam2, lam.lam3)
    any_points = False
    for ell in (1, 2, 3):
        h = apply_hecke_float(ell, p, entries)
        worst = 0.0
        points = {b for b in list(h) + list(entries) if lattice_norm(b) <= safe_radius}
        any_points = any_points or bool(points)
        checked = max(checked, len(points))
        for beta in points:
            diff = h.get(beta, 0j) - lams[ell - 1] * entries.get(beta, 0j)
            worst = max(worst, abs(diff))
        residuals.append(worst)
    if not any_points:
        return EigenResidualReport(safe_radius, 0, None, empty_safe_support=True)
    return EigenResidualReport(safe_radius, checked, tuple(residuals))
