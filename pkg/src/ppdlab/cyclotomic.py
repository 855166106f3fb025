"""Exact scalar arithmetic over cyclotomic fields, with certified sign decisions.

An exact scalar is either a plain ``int``/``Fraction`` or a :class:`Cyc`:
an element of Q(zeta_E) stored in the power basis ``1, zeta, ..., zeta^(d-1)``
(d = phi(E)) with coordinates reduced modulo the E-th cyclotomic polynomial.
Arithmetic contracts rational results back to ``Fraction``, so the two kinds
mix freely and a reduced nonzero ``Cyc`` is never rational.

Sign queries on real values run a double-precision screen with a conservative
error margin and escalate to arbitrary precision only near zero.  Exact zeros
are recognized structurally (the reduced representation is zero iff every
coordinate is), so the refinement loop terminates on all inputs.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "Cyc"]

# Margin multiplier over the worst-case double rounding error of a short
# cyclotomic sum; values this small fall through to exact/arbitrary precision.
_FLOAT_SCREEN = 1e-12


def euler_phi(n: int) -> int:
    result = n
    p, m = 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division is exact for cyclotomic factors of x^E - 1
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(E: int) -> tuple[int, ...]:
    """Coefficients of the E-th cyclotomic polynomial, low degree first."""
    if E < 1:
        raise ValueError(f"conductor must be positive, got {E}")
    if E == 1:
        return (-1, 1)
    poly = [-1] + [0] * (E - 1) + [1]
    for d in divisors(E):
        if d < E:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class CycField:
    """Cached arithmetic tables for Q(zeta_E) in the power basis."""

    __slots__ = ("E", "degree", "pow_vec", "conj_vec", "roots_complex")

    def __init__(self, E: int):
        self.E = E
        phi = cyclotomic_polynomial(E)
        d = len(phi) - 1
        self.degree = d
        # x^d = -(phi - x^d); iterate to get x^k mod phi for every needed power
        tail = tuple(Fraction(-c) for c in phi[:d])
        pows: list[tuple[Fraction, ...]] = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        limit = max(E, 2 * d - 1)
        for _ in range(limit):
            pows.append(tuple(cur))
            lead = cur[d - 1]
            nxt = [Fraction(0)] + cur[: d - 1]
            if lead:
                nxt = [a + lead * t for a, t in zip(nxt, tail)]
            cur = nxt
        self.pow_vec = pows
        self.conj_vec = tuple(pows[(E - j) % E] for j in range(d))
        self.roots_complex = tuple(
            cmath.exp(2j * cmath.pi * j / E) for j in range(d)
        )

    def __repr__(self):
        return f"CycField({self.E})"


@lru_cache(maxsize=None)
def field(E: int) -> CycField:
    return CycField(E)


def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Cyc:
    """A non-rational element of Q(zeta_E); rational results contract to Fraction."""

    __slots__ = ("field", "vec")

    def __init__(self, fld: CycField, vec: tuple[Fraction, ...]):
        self.field = fld
        self.vec = vec

    # -- construction -------------------------------------------------------

    @staticmethod
    def make(fld: CycField, vec) -> Scalar:
        vec = tuple(vec)
        if not any(vec[1:]):
            return vec[0]
        return Cyc(fld, vec)

    def lift_vec(self, E2: int) -> tuple[Fraction, ...]:
        """Coordinates of this value inside Q(zeta_E2); requires E | E2."""
        f2 = field(E2)
        step = E2 // self.field.E
        out = [Fraction(0)] * f2.degree
        for j, c in enumerate(self.vec):
            if c:
                for i, b in enumerate(f2.pow_vec[j * step]):
                    if b:
                        out[i] += c * b
        return tuple(out)

    # -- arithmetic ---------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Cyc):
            if other.field is self.field:
                return self.field, self.vec, other.vec
            E = math.lcm(self.field.E, other.field.E)
            return field(E), self.lift_vec(E), other.lift_vec(E)
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            vec = (q,) + (Fraction(0),) * (self.field.degree - 1)
            return self.field, self.vec, vec
        return None

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        fld, a, b = p
        return Cyc.make(fld, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, tuple(-c for c in self.vec))

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        fld, a, b = p
        return Cyc.make(fld, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            q = _as_fraction(other)
            return Cyc(self.field, tuple(c * q for c in self.vec))
        if not isinstance(other, Cyc):
            return NotImplemented
        fld, a, b = self._pair(other)
        d = fld.degree
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                for i, b2 in enumerate(fld.pow_vec[k]):
                    if b2:
                        out[i] += c * b2
        return Cyc.make(fld, out)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        # solve z*w = 1 as a rational linear system in the power basis
        fld = self.field
        d = fld.degree
        cols = []
        for j in range(d):
            basis = Cyc.make(fld, fld.pow_vec[j])
            prod = self * basis
            if isinstance(prod, Cyc):
                cols.append(list(prod.lift_vec(fld.E)))
            else:
                col = [Fraction(0)] * d
                col[0] = _as_fraction(prod)
                cols.append(col)
        rhs = [Fraction(0)] * d
        rhs[0] = Fraction(1)
        sol = _solve_rational([[cols[j][i] for j in range(d)] for i in range(d)], rhs)
        if sol is None:
            raise ZeroDivisionError("cyclotomic inverse of zero")
        return Cyc.make(fld, sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        if isinstance(other, Cyc):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- structure ----------------------------------------------------------

    def conjugate(self) -> Scalar:
        fld = self.field
        out = [Fraction(0)] * fld.degree
        for j, c in enumerate(self.vec):
            if c:
                for i, b in enumerate(fld.conj_vec[j]):
                    if b:
                        out[i] += c * b
        return Cyc.make(fld, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # reduced non-rational value
        if isinstance(other, Cyc):
            _, a, b = self._pair(other)
            return a == b
        return NotImplemented

    def __hash__(self):
        raise TypeError("Cyc values are not hashable")

    def to_complex(self) -> complex:
        return sum(
            float(c) * r for c, r in zip(self.vec, self.field.roots_complex) if c
        )

    def __repr__(self):
        return f"Cyc({self.field.E}, {[str(c) for c in self.vec]})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.vec):
            if c:
                if j == 0:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(f"z{self.field.E}^{j}")
                else:
                    terms.append(f"{c}*z{self.field.E}^{j}")
        return " + ".join(terms) if terms else "0"


def _solve_rational(mat: list[list[Fraction]], rhs: list[Fraction]):
    """Gaussian elimination over Q; returns a solution or None."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    piv_cols = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][m]:
            return None
    sol = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][m]
    return sol


# -- public scalar helpers ---------------------------------------------------


def unit_root(E: int, k: int) -> Scalar:
    """exp(2*pi*i*k/E) as an exact scalar, stored at its minimal conductor."""
    k %= E
    g = math.gcd(k, E)
    Er, kr = E // g, k // g
    if Er == 1:
        return Fraction(1)
    if Er == 2:
        return Fraction(-1)
    fld = field(Er)
    return Cyc.make(fld, fld.pow_vec[kr])


def is_rational(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction))


def conj_scalar(x: Scalar) -> Scalar:
    return x if isinstance(x, (int, Fraction)) else x.conjugate()


def is_real_scalar(x: Scalar) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    return x.conjugate() == x


def to_complex(x) -> complex:
    if isinstance(x, Cyc):
        return x.to_complex()
    return complex(x)


def scalar_eq(a: Scalar, b: Scalar) -> bool:
    if isinstance(a, Cyc) or isinstance(b, Cyc):
        return a == b
    return _as_fraction(a) == _as_fraction(b)


def real_sign(x: Scalar) -> int:
    """Certified sign (-1, 0, +1) of a real exact scalar."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if not is_real_scalar(x):
        raise ValueError(f"sign of a non-real value: {x!r}")
    # structural zero is impossible for a reduced Cyc; screen in doubles first
    mass = sum(abs(float(c)) for c in x.vec)
    v = x.to_complex().real
    if abs(v) > _FLOAT_SCREEN * mass:
        return 1 if v > 0 else -1
    return _refined_sign(x)


def _refined_sign(x: Cyc) -> int:
    E = x.field.E
    for dps in (60, 120, 240, 480, 960):
        with mpmath.workdps(dps):
            total = mpmath.mpf(0)
            mass = mpmath.mpf(0)
            for j, c in enumerate(x.vec):
                if c:
                    term = mpmath.cos(2 * mpmath.pi * j / E) * mpmath.mpf(
                        c.numerator
                    ) / mpmath.mpf(c.denominator)
                    total += term
                    mass += abs(term) + 1
            bound = mass * mpmath.mpf(10) ** (4 - dps)
            if abs(total) > bound:
                return 1 if total > 0 else -1
    raise ArithmeticError(f"could not certify sign of {x!r}")


def real_abs(x: Scalar) -> Scalar:
    return x if real_sign(x) >= 0 else -x


def scalar_inv(x: Scalar) -> Scalar:
    if isinstance(x, (int, Fraction)):
        return Fraction(1) / _as_fraction(x)
    return x.inverse()


def real_max(values) -> Scalar:
    best = None
    for v in values:
        if best is None or real_sign(v - best) > 0:
            best = v
    if best is None:
        raise ValueError("real_max of empty sequence")
    return best


# -- real cyclotomic subfield expansions --------------------------------------


def cos_basis_size(e: int) -> int:
    """Size of the integral basis {1} + {2cos(2*pi*j/e)} of Z[2cos(2*pi/e)]."""
    if e <= 2:
        return 1
    return euler_phi(e) // 2


def expand_in_cos_basis(x: Scalar, e: int):
    """Rational coordinates of x in the basis [1, 2cos(2pi/e), ..., 2cos(2pi(m-1)/e)].

    Returns None when x does not lie in the real subfield of Q(zeta_e).
    """
    m = cos_basis_size(e)
    if isinstance(x, (int, Fraction)):
        return [_as_fraction(x)] + [Fraction(0)] * (m - 1)
    L = math.lcm(x.field.E, e)
    fld = field(L)
    d = fld.degree
    basis_vecs = []
    for j in range(m):
        if j == 0:
            v = [Fraction(0)] * d
            v[0] = Fraction(1)
            basis_vecs.append(v)
        else:
            b = unit_root(e, j) + unit_root(e, -j)
            if isinstance(b, Cyc):
                basis_vecs.append(list(b.lift_vec(L)))
            else:
                v = [Fraction(0)] * d
                v[0] = _as_fraction(b)
                basis_vecs.append(v)
    target = list(x.lift_vec(L))
    mat = [[basis_vecs[j][i] for j in range(m)] for i in range(d)]
    return _solve_rational(mat, target)


def cos_basis_string(coeffs, e: int) -> str:
    """Printable expansion over the {1, 2cos(2*pi*j/e)} basis."""
    parts = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        if j == 0:
            parts.append(str(c))
        else:
            atom = f"2cos(2pi*{j}/{e})"
            if c == 1:
                parts.append(atom)
            elif c == -1:
                parts.append(f"-{atom}")
            else:
                parts.append(f"{c}*{atom}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
