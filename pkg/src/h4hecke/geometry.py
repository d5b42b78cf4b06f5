"""Isometries of hyperbolic 4-space via 2x2 quaternion matrices.

Points z = (x0, x1, x2, y), y > 0, live in upper half-space; a matrix
g = [[a, b], [c, d]] with quaternion entries and positive real
pseudo-determinant mu(g) = a d^* - b c^* acts by

    g . z = (a z + b)(c z + d)^{-1},

evaluated inside the rank-3 Clifford algebra, which splits as pairs
(q, w) = q + w*e3 of quaternions.  Matrices carry exact integer or
rational entries; points are floats.

The integral matrices with mu = 1 form a lattice; its fundamental
domain is Krieg's quarter box

    F = { -1/2 <= x0 <= 1/2,  0 <= x1, x2 <= 1/2,  |z| >= 1 },

and this module reduces arbitrary points into F by translations,
sign-flip rotations, and the inversion s: z -> -bar(z)/|z|^2, returning
the generator word alongside the reduced point.  The cusp region
|x_i| <= 1/2, y >= T decomposes into four rotated copies of its
intersection with F; verify_cusp_decomposition samples that tiling.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .quaternions import Quaternion

Token = tuple
GeneratorWord = tuple[Token, ...]

_Q_ZERO = Quaternion(0, 0, 0, 0)
_Q_ONE = Quaternion(1, 0, 0, 0)


@dataclass(frozen=True, slots=True)
class PointH4:
    x0: float
    x1: float
    x2: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"point must have y > 0, got y = {self.y}")

    @property
    def norm_sq(self) -> float:
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.y * self.y

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.x2, self.y)


def as_point(z) -> PointH4:
    if isinstance(z, PointH4):
        return z
    return PointH4(*map(float, z))


@dataclass(frozen=True)
class IsometryMatrix:
    """2x2 quaternion matrix [[a, b], [c, d]] with exact entries."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    def __matmul__(self, other: "IsometryMatrix") -> "IsometryMatrix":
        return IsometryMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @classmethod
    def identity(cls) -> "IsometryMatrix":
        return cls(_Q_ONE, _Q_ZERO, _Q_ZERO, _Q_ONE)

    def entries(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.a, self.b, self.c, self.d)


def pseudo_det(g: IsometryMatrix) -> Fraction:
    """a d^* - b c^*, when it is a real scalar; otherwise the matrix is not a similitude."""
    val = g.a * g.d.star() - g.b * g.c.star()
    if val.b != 0 or val.c != 0 or val.d != 0:
        raise ValueError(f"not a similitude: pseudo-determinant {val} is not a real scalar")
    return Fraction(val.a)


def is_similitude(g: IsometryMatrix) -> bool:
    """Positive real pseudo-determinant and a b^*, d c^* without k-component."""
    try:
        mu = pseudo_det(g)
    except ValueError:
        return False
    return mu > 0 and (g.a * g.b.star()).d == 0 and (g.d * g.c.star()).d == 0


def is_integral_sv2(g: IsometryMatrix) -> bool:
    """Integral entries satisfying g J g-dagger = J with J = [[0,1],[-1,0]].

    The identity is checked entrywise in exact arithmetic; it encodes
    a b^*, c d^* in V3 together with pseudo-determinant 1.
    """
    if not all(q.is_integral for q in g.entries()):
        return False
    a, b, c, d = g.entries()
    top_left = a * b.star() - b * a.star()
    top_right = a * d.star() - b * c.star()
    bot_left = c * b.star() - d * a.star()
    bot_right = c * d.star() - d * c.star()
    return (
        top_left == _Q_ZERO
        and bot_right == _Q_ZERO
        and top_right == _Q_ONE
        and bot_left == -_Q_ONE
    )


# -- generators -------------------------------------------------------------

def translation(beta: Sequence[int]) -> IsometryMatrix:
    """t_beta = [[1, beta], [0, 1]]: z -> z + beta for beta in V3."""
    return IsometryMatrix(_Q_ONE, Quaternion(int(beta[0]), int(beta[1]), int(beta[2]), 0), _Q_ZERO, _Q_ONE)


def inversion() -> IsometryMatrix:
    """s = [[0, 1], [-1, 0]]: z -> -bar(z)/|z|^2."""
    return IsometryMatrix(_Q_ZERO, _Q_ONE, -_Q_ONE, _Q_ZERO)


def rotation(axis: str) -> IsometryMatrix:
    """diag(u, u') for u in {i, j, k}: the three sign-flip rotations."""
    units = {"i": Quaternion(0, 1, 0, 0), "j": Quaternion(0, 0, 1, 0), "k": Quaternion(0, 0, 0, 1)}
    u = units[axis]
    return IsometryMatrix(u, _Q_ZERO, _Q_ZERO, u.main())


_TOKEN_MATRICES = {
    "inversion": inversion,
    "rot_i": lambda: rotation("i"),
    "rot_j": lambda: rotation("j"),
    "rot_k": lambda: rotation("k"),
}


def word_to_matrix(word: GeneratorWord) -> IsometryMatrix:
    """Product of token matrices, applied left-to-right as actions."""
    g = IsometryMatrix.identity()
    for token in word:
        if token[0] == "translate":
            m = translation(token[1])
        else:
            m = _TOKEN_MATRICES[token[0]]()
        g = m @ g
    return g


# -- the action -------------------------------------------------------------

def _fq(q: Quaternion) -> tuple[float, float, float, float]:
    return (float(q.a), float(q.b), float(q.c), float(q.d))


def _fq_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _fq_add(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3])


def _fq_main(q):
    return (q[0], -q[1], -q[2], q[3])


def _fq_bar(q):
    return (q[0], -q[1], -q[2], -q[3])


def _fq_norm(q):
    return q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]


def _pair_mul(m1, m2):
    # (q1 + w1 e3)(q2 + w2 e3) = (q1 q2 - w1 w2'^) + (q1 w2 + w1 q2') e3,
    # where ' is the main involution of the quaternion factor.
    q1, w1 = m1
    q2, w2 = m2
    q = tuple(x - y for x, y in zip(_fq_mul(q1, q2), _fq_mul(w1, _fq_main(w2))))
    w = _fq_add(_fq_mul(q1, w2), _fq_mul(w1, _fq_main(q2)))
    return (q, w)


def act(g: IsometryMatrix, z, *, tol: float = 1e-9) -> PointH4:
    """g . z = (a z + b)(c z + d)^{-1} for a matrix with mu(g) > 0."""
    mu = pseudo_det(g)
    if not mu > 0:
        raise ValueError(f"action requires positive pseudo-determinant, got {mu}")
    z = as_point(z)
    v = (z.x0, z.x1, z.x2, 0.0)
    a, b, c, d = (_fq(q) for q in g.entries())
    num = (_fq_add(_fq_mul(a, v), b), tuple(z.y * t for t in a))
    den = (_fq_add(_fq_mul(c, v), d), tuple(z.y * t for t in c))

    # den^{-1} = bar(den)/(den bar(den)); the product must be a real scalar.
    dq, dw = den
    den_bar = (_fq_bar(dq), tuple(-t for t in _fq_main(_fq_bar(dw))))
    nrm_pair = _pair_mul(den, den_bar)
    nrm = nrm_pair[0][0]
    scale = max(_fq_norm(dq) + _fq_norm(dw), 1e-300)
    if abs(nrm) < tol * scale:
        raise ArithmeticError("c z + d is numerically non-invertible")
    off = math.hypot(*nrm_pair[0][1:], *nrm_pair[1])
    if off > 1e-6 * abs(nrm):
        raise AssertionError(f"den * bar(den) is not scalar (off-part {off}); invalid matrix")
    inv = (tuple(t / nrm for t in den_bar[0]), tuple(t / nrm for t in den_bar[1]))

    q, w = _pair_mul(num, inv)
    # Result must be a vector: q in V3 and w a positive real scalar.
    stray = math.hypot(q[3], w[1], w[2], w[3])
    if stray > 1e-6 * (1.0 + math.hypot(*q, *w)):
        raise AssertionError(f"action left the upper half-space model (stray part {stray})")
    return PointH4(q[0], q[1], q[2], w[0])


def apply_word(word: GeneratorWord, z) -> PointH4:
    out = as_point(z)
    for token in word:
        if token[0] == "translate":
            m = translation(token[1])
        else:
            m = _TOKEN_MATRICES[token[0]]()
        out = act(m, out)
    return out


def cosh_distance(z, w) -> float:
    """cosh of the hyperbolic distance: 1 + |z - w|^2 / (2 y_z y_w)."""
    z = as_point(z)
    w = as_point(w)
    diff = sum((zc - wc) ** 2 for zc, wc in zip(z.as_tuple(), w.as_tuple()))
    return 1.0 + diff / (2.0 * z.y * w.y)


# -- regions and reduction ---------------------------------------------------

def is_in_region(z, region: str, T: float = 1.0, tol: float = 1e-9) -> bool:
    """Membership in F, S_T, or the symmetric cusp box S~_T, with boundary slack."""
    z = as_point(z)
    if region == "F":
        return (
            -0.5 - tol <= z.x0 <= 0.5 + tol
            and -tol <= z.x1 <= 0.5 + tol
            and -tol <= z.x2 <= 0.5 + tol
            and z.norm_sq >= 1.0 - tol
        )
    if region == "S_T":
        if T < 1:
            raise ValueError("cusp regions require T >= 1")
        return z.y >= T - tol and is_in_region(z, "F", tol=tol)
    if region == "S~_T":
        if T < 1:
            raise ValueError("cusp regions require T >= 1")
        return (
            z.y >= T - tol
            and all(-0.5 - tol <= c <= 0.5 + tol for c in (z.x0, z.x1, z.x2))
        )
    raise ValueError(f"unknown region {region!r}")


class ReductionError(RuntimeError):
    def __init__(self, message: str, trace: list[PointH4]):
        super().__init__(message)
        self.trace = trace


def reduce_to_fundamental_domain(
    z, *, tol: float = 1e-9, max_iter: int = 10_000
) -> tuple[GeneratorWord, PointH4]:
    """Reduce z into F, returning the generator word that carries z there.

    Repeats: integer-translate x into [-1/2, 1/2]^3; flip signs with the
    rotations diag(u, u') to force x1, x2 >= 0; invert when |z| < 1.
    Each inversion strictly increases y, so the loop terminates; the
    iteration cap guards the float boundary cases.
    """
    cur = as_point(z)
    word: list[Token] = []
    trace = [cur]
    for _ in range(max_iter):
        shifts = tuple(-math.floor(c + 0.5) for c in (cur.x0, cur.x1, cur.x2))
        if any(shifts):
            word.append(("translate", shifts))
            cur = PointH4(cur.x0 + shifts[0], cur.x1 + shifts[1], cur.x2 + shifts[2], cur.y)
        if cur.x1 < -tol and cur.x2 < -tol:
            word.append(("rot_k",))
            cur = PointH4(cur.x0, -cur.x1, -cur.x2, cur.y)
        elif cur.x1 < -tol:
            word.append(("rot_i",))
            cur = PointH4(-cur.x0, -cur.x1, cur.x2, cur.y)
        elif cur.x2 < -tol:
            word.append(("rot_j",))
            cur = PointH4(-cur.x0, cur.x1, -cur.x2, cur.y)
        if cur.norm_sq < 1.0 - tol:
            nrm = cur.norm_sq
            word.append(("inversion",))
            cur = PointH4(-cur.x0 / nrm, cur.x1 / nrm, cur.x2 / nrm, cur.y / nrm)
            trace.append(cur)
            continue
        if is_in_region(cur, "F", tol=tol):
            return tuple(word), cur
        trace.append(cur)
    raise ReductionError(f"reduction did not converge after {max_iter} iterations", trace)


# -- cusp decomposition -------------------------------------------------------

_CUSP_FLIPS = (
    ("identity", lambda z: z),
    ("rot_i", lambda z: PointH4(-z.x0, -z.x1, z.x2, z.y)),
    ("rot_j", lambda z: PointH4(-z.x0, z.x1, -z.x2, z.y)),
    ("rot_k", lambda z: PointH4(z.x0, -z.x1, -z.x2, z.y)),
)


@dataclass(frozen=True)
class CuspDecompositionReport:
    T: float
    samples: int
    interior_checked: int
    boundary_ties: int
    matches_by_matrix: dict


def verify_cusp_decomposition(
    T: float, sample_count: int, *, seed: int = 0, tol: float = 1e-9
) -> CuspDecompositionReport:
    """Sample the cusp box y >= T and check the four-fold tiling by copies of S_T.

    Each sampled z in S~_T must lie in exactly one of S_T, i.S_T, j.S_T,
    k.S_T; the four rotations are involutive actions, so membership is
    tested by flipping z back and asking for z' in S_T.  Samples within
    tol of a sign boundary are reported as ties, not failures.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    rng = random.Random(seed)
    matches_by_matrix = {name: 0 for name, _ in _CUSP_FLIPS}
    interior = 0
    ties = 0
    for _ in range(sample_count):
        z = PointH4(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                    rng.uniform(T, 4.0 * T))
        near_boundary = min(abs(z.x1), abs(z.x2)) <= tol
        hits = [name for name, flip in _CUSP_FLIPS if is_in_region(flip(z), "S_T", T=T, tol=tol)]
        if near_boundary:
            ties += 1
            continue
        interior += 1
        if len(hits) != 1:
            raise AssertionError(f"sample {z} matched {hits!r} instead of exactly one region")
        matches_by_matrix[hits[0]] += 1
    return CuspDecompositionReport(
        T=T,
        samples=sample_count,
        interior_checked=interior,
        boundary_ties=ties,
        matches_by_matrix=matches_by_matrix,
    )
