"""The polyhedral cone of PPD functions inside the even-function subspace.

Real PPD functions are even, so the cone lives in coordinates indexed by the
orbits {x, -x}.  Its H-representation has one inequality per element orbit
(pointwise nonnegativity) and one per dual orbit (transform nonnegativity);
the good functions are exactly the strict interior.  Extremal rays come from
an incremental double-description pass with exact cyclotomic arithmetic:
sign decisions are certified, insertion order is fixed, and every output ray
is re-verified by the tightness-rank test, so the atlas is reproducible
bit for bit.

Canonical ray scaling: coordinates are cleared to a primitive integer vector
over the {1, 2cos(2pi j/e)} basis of Z[2cos(2pi/e)] (e the group exponent),
with the first nonzero coordinate positive.  For rational rays this is the
usual primitive-integer normalization; for the rest it also hands the
algebraicity certificate its integrality for free.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Optional

from .cyclotomic import (
    cos_basis_string,
    expand_in_cos_basis,
    is_rational,
    real_sign,
    scalar_eq,
    scalar_inv,
    to_complex,
    unit_root,
)
from .fourier import FLOAT_TOL, GroupFunction, counting_haar, exponent_table, fourier_transform
from .groups import FiniteAbelianGroup
from .ppd import STRICT_TIE_TOL

HREP_ORDER_BOUND = 16
RAY_DIM_BOUND = 10


class EvenBasis:
    """Orbit coordinates for the even subspace of functions on G."""

    __slots__ = ("group", "orbit_reps", "orbits", "dim")

    def __init__(self, group: FiniteAbelianGroup):
        reps: list[int] = []
        orbits: list[tuple[int, ...]] = []
        seen = set()
        for i in range(group.order):
            if i in seen:
                continue
            j = group.neg_index(i)
            orbit = (i,) if i == j else (i, j)
            seen.update(orbit)
            reps.append(i)
            orbits.append(orbit)
        self.group = group
        self.orbit_reps = tuple(reps)
        self.orbits = tuple(orbits)
        self.dim = len(reps)

    def vector_from_function(self, f: GroupFunction, tol: float = FLOAT_TOL):
        if f.group != self.group:
            raise ValueError("function lives on a different group")
        exact = f.is_exact
        for orbit in self.orbits:
            if len(orbit) == 2:
                a, b = f.values[orbit[0]], f.values[orbit[1]]
                ok = scalar_eq(a, b) if exact else abs(
                    to_complex(a) - to_complex(b)
                ) <= tol * max(1.0, abs(to_complex(a)))
                if not ok:
                    raise ValueError("function is not even")
        return tuple(f.values[r] for r in self.orbit_reps)

    def function_from_vector(self, vec) -> GroupFunction:
        vals = [None] * self.group.order
        for v, orbit in zip(vec, self.orbits):
            for i in orbit:
                vals[i] = v
        return GroupFunction(self.group, vals)


@dataclass(frozen=True)
class Inequality:
    coeffs: tuple
    kind: str  # "point" or "dual"
    orbit_rep: int

    def evaluate(self, vec):
        total = Fraction(0)
        for c, v in zip(self.coeffs, vec):
            if not (is_rational(c) and c == 0):
                total = total + c * v
        return total


@dataclass(frozen=True)
class PolyhedralCone:
    basis: EvenBasis
    inequalities: tuple[Inequality, ...]
    rays: Optional[tuple[tuple, ...]] = None
    ray_tight: Optional[tuple[frozenset, ...]] = None


def ppd_cone_hrep(G: FiniteAbelianGroup,
                  bound: int = HREP_ORDER_BOUND) -> PolyhedralCone:
    """One inequality per element orbit and per dual orbit, point ones first."""
    if G.order > bound:
        raise ValueError(f"group order {G.order} exceeds H-rep bound {bound}")
    basis = EvenBasis(G)
    E = G.exponent()
    table = exponent_table(G.moduli)
    ineqs: list[Inequality] = []
    for j, rep in enumerate(basis.orbit_reps):
        coeffs = tuple(
            Fraction(1) if t == j else Fraction(0) for t in range(basis.dim)
        )
        ineqs.append(Inequality(coeffs, "point", rep))
    for rep in basis.orbit_reps:  # dual orbits have the same representatives
        row = table[rep]
        coeffs = []
        for orbit in basis.orbits:
            coeffs.append(
                sum((unit_root(E, -row[x]) for x in orbit), Fraction(0))
            )
        ineqs.append(Inequality(tuple(coeffs), "dual", rep))
    return PolyhedralCone(basis, tuple(ineqs))


# -- exact sign of an inequality value -------------------------------------------


def _value_sign(ineq: Inequality, vec, exact: bool, base: float) -> int:
    if exact:
        return real_sign(ineq.evaluate(vec))
    total = sum(
        to_complex(c) * to_complex(v) for c, v in zip(ineq.coeffs, vec)
    ).real
    if total > STRICT_TIE_TOL * base:
        return 1
    if total < -STRICT_TIE_TOL * base:
        return -1
    return 0


def is_interior(f: GroupFunction, cone: PolyhedralCone) -> bool:
    """Strict membership: every inequality positive.  Agrees with goodness."""
    vec = cone.basis.vector_from_function(f)
    exact = f.is_exact
    base = max([1.0] + [abs(to_complex(v)) for v in vec])
    return all(
        _value_sign(ineq, vec, exact, base) > 0 for ineq in cone.inequalities
    )


def is_member(f: GroupFunction, cone: PolyhedralCone) -> bool:
    """Closed membership: every inequality nonnegative.  Agrees with PPD."""
    vec = cone.basis.vector_from_function(f)
    exact = f.is_exact
    base = max([1.0] + [abs(to_complex(v)) for v in vec])
    return all(
        _value_sign(ineq, vec, exact, base) >= 0 for ineq in cone.inequalities
    )


# -- canonical ray form ------------------------------------------------------------


def canonical_ray(vec, e: int):
    """Primitive integral form over the real-subfield basis, leading coord positive.

    First scale so the leading coordinate is 1 (this quotients out arbitrary
    positive scalings inside the field), then clear denominators to a
    primitive integer coordinate vector over the cos basis.
    """
    first = next((v for v in vec if not (is_rational(v) and v == 0)), None)
    if first is None:
        raise ValueError("zero vector is not a ray")
    inv = scalar_inv(first)
    vec = tuple(v * inv for v in vec)
    expansions = []
    for v in vec:
        exp = expand_in_cos_basis(v, e)
        if exp is None:
            raise AssertionError(
                f"ray coordinate {v!r} left the real subfield of conductor {e}"
            )
        expansions.append(exp)
    denom = 1
    for exp in expansions:
        for c in exp:
            denom = lcm(denom, c.denominator)
    ints = [[int(c * denom) for c in exp] for exp in expansions]
    g = 0
    for row in ints:
        for c in row:
            g = gcd(g, c)
    scale = Fraction(denom, g)
    out = tuple(v * scale for v in vec)
    int_coords = tuple(tuple(c // g for c in row) for row in ints)
    return out, int_coords


def _ray_key(int_coords) -> tuple:
    return int_coords


# -- double description --------------------------------------------------------------


def extremal_rays(cone: PolyhedralCone,
                  dim_bound: int = RAY_DIM_BOUND) -> PolyhedralCone:
    """Fill in the V-representation by incremental double description.

    Starts from the nonnegative orthant cut out by the point inequalities
    (its rays are the coordinate axes) and inserts the dual inequalities in
    listed order, keeping only adjacent pairs when generating new rays.
    """
    basis = cone.basis
    d = basis.dim
    if d > dim_bound:
        raise ValueError(f"cone dimension {d} exceeds ray bound {dim_bound}")
    e = basis.group.exponent()
    point_idx = [i for i, q in enumerate(cone.inequalities) if q.kind == "point"]
    dual_idx = [i for i, q in enumerate(cone.inequalities) if q.kind == "dual"]
    if len(point_idx) != d:
        raise AssertionError("expected one point inequality per orbit")

    def tight_set(vec, processed):
        out = set()
        for q in processed:
            if _value_sign(cone.inequalities[q], vec, True, 1.0) == 0:
                out.add(q)
        return frozenset(out)

    rays: list[tuple] = []
    tights: list[frozenset] = []
    for j in range(d):
        vec = tuple(Fraction(1) if t == j else Fraction(0) for t in range(d))
        rays.append(vec)
        tights.append(frozenset(q for q in point_idx if q != point_idx[j]))

    processed = list(point_idx)
    for q in dual_idx:
        ineq = cone.inequalities[q]
        processed.append(q)
        signs = [real_sign(ineq.evaluate(r)) for r in rays]
        keep_r, keep_t = [], []
        plus = [i for i, s in enumerate(signs) if s > 0]
        minus = [i for i, s in enumerate(signs) if s < 0]
        for i, s in enumerate(signs):
            if s > 0:
                keep_r.append(rays[i])
                keep_t.append(tights[i])
            elif s == 0:
                keep_r.append(rays[i])
                keep_t.append(tights[i] | {q})
        for ip in plus:
            for im in minus:
                common = tights[ip] & tights[im]
                adjacent = not any(
                    k != ip and k != im and common <= tights[k]
                    for k in range(len(rays))
                )
                if not adjacent:
                    continue
                vp = ineq.evaluate(rays[ip])
                vm = ineq.evaluate(rays[im])
                new = tuple(
                    vp * b - vm * a for a, b in zip(rays[ip], rays[im])
                )
                keep_r.append(new)
                keep_t.append(tight_set(new, processed))
        rays, tights = keep_r, keep_t

    canon: dict[tuple, tuple] = {}
    canon_tight: dict[tuple, frozenset] = {}
    for vec, t in zip(rays, tights):
        cvec, icoords = canonical_ray(vec, e)
        key = _ray_key(icoords)
        canon[key] = cvec
        canon_tight[key] = tight_set(cvec, range(len(cone.inequalities)))
    order = sorted(canon)
    out_rays = tuple(canon[k] for k in order)
    out_tight = tuple(canon_tight[k] for k in order)

    for vec, t in zip(out_rays, out_tight):
        _verify_extremal(cone, vec, t)
    return replace(cone, rays=out_rays, ray_tight=out_tight)


def _verify_extremal(cone: PolyhedralCone, vec, tight: frozenset) -> None:
    for i, ineq in enumerate(cone.inequalities):
        s = real_sign(ineq.evaluate(vec))
        if s < 0:
            raise AssertionError("ray violates an inequality")
        if (s == 0) != (i in tight):
            raise AssertionError("tight set inconsistent with ray values")
    rows = [cone.inequalities[i].coeffs for i in sorted(tight)]
    if _rank(rows, cone.basis.dim) != cone.basis.dim - 1:
        raise AssertionError("ray fails the tightness-rank extremality test")


def _rank(rows, width: int) -> int:
    mat = [list(r) for r in rows]
    r = 0
    for c in range(width):
        piv = None
        for i in range(r, len(mat)):
            v = mat[i][c]
            if not (is_rational(v) and v == 0):
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = scalar_inv(mat[r][c])
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r:
                f = mat[i][c]
                if not (is_rational(f) and f == 0):
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
    return r


def brute_force_rays(cone: PolyhedralCone) -> tuple[tuple, ...]:
    """Oracle: nullspaces of all (dim-1)-subsets of inequalities, then filter.

    Exponential; intended for the completeness cross-check on tiny groups.
    """
    import itertools

    basis = cone.basis
    d = basis.dim
    e = basis.group.exponent()
    found: dict[tuple, tuple] = {}
    if d == 1:
        vec = (Fraction(1),)
        if all(real_sign(q.evaluate(vec)) >= 0 for q in cone.inequalities):
            cvec, icoords = canonical_ray(vec, e)
            found[_ray_key(icoords)] = cvec
        return tuple(found[k] for k in sorted(found))
    for subset in itertools.combinations(range(len(cone.inequalities)), d - 1):
        rows = [cone.inequalities[i].coeffs for i in subset]
        null = _nullspace(rows, d)
        if len(null) != 1:
            continue
        vec = null[0]
        for candidate in (vec, tuple(-v for v in vec)):
            if all(real_sign(q.evaluate(candidate)) >= 0 for q in cone.inequalities):
                cvec, icoords = canonical_ray(candidate, e)
                found[_ray_key(icoords)] = cvec
                break
    return tuple(found[k] for k in sorted(found))


def _nullspace(rows, width: int):
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        piv = None
        for i in range(r, len(mat)):
            v = mat[i][c]
            if not (is_rational(v) and v == 0):
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = scalar_inv(mat[r][c])
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r:
                f = mat[i][c]
                if not (is_rational(f) and f == 0):
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(width) if c not in pivots]
    out = []
    for fc in free:
        vec = [Fraction(0)] * width
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        out.append(tuple(vec))
    return out


# -- reports --------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldEntry:
    location: str
    value_str: str
    expansion: str
    integral: bool


@dataclass(frozen=True)
class FieldReport:
    exponent: int
    entries: tuple[FieldEntry, ...]

    @property
    def all_integral(self) -> bool:
        return all(x.integral for x in self.entries)

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "all_integral": self.all_integral,
            "entries": [
                {
                    "location": x.location,
                    "value": x.value_str,
                    "expansion": x.expansion,
                    "integral": x.integral,
                }
                for x in self.entries
            ],
        }


def field_of_definition_check(cone: PolyhedralCone) -> FieldReport:
    """Certify every coefficient and ray coordinate inside Z[2cos(2pi/e)].

    Each entry gets an explicit integer expansion over the basis
    {1, 2cos(2pi j/e)}, re-evaluated and compared against the original value.
    """
    if cone.rays is None:
        raise ValueError("V-representation not computed yet")
    e = cone.basis.group.exponent()
    entries = []

    def record(location, value):
        exp = expand_in_cos_basis(value, e)
        if exp is None:
            entries.append(FieldEntry(location, repr(value), "<not in field>", False))
            return
        integral = all(c.denominator == 1 for c in exp)
        rebuilt = _from_cos_basis(exp, e)
        if not scalar_eq(rebuilt, value + Fraction(0)):
            raise AssertionError(f"expansion failed to reproduce {location}")
        entries.append(
            FieldEntry(location, str(value), cos_basis_string(exp, e), integral)
        )

    for i, ineq in enumerate(cone.inequalities):
        for j, c in enumerate(ineq.coeffs):
            record(f"inequality[{i}].coeff[{j}]", c)
    for r, ray in enumerate(cone.rays):
        for j, c in enumerate(ray):
            record(f"ray[{r}].coord[{j}]", c)
    return FieldReport(e, tuple(entries))


def _from_cos_basis(coeffs, e: int):
    total = coeffs[0] + Fraction(0)
    for j, c in enumerate(coeffs[1:], start=1):
        if c:
            total = total + c * (unit_root(e, j) + unit_root(e, -j))
    return total


@dataclass(frozen=True)
class SelfDualityReport:
    pairing: tuple[int, ...]  # ray index -> ray index of its transform direction

    @property
    def is_involution(self) -> bool:
        return all(self.pairing[j] == i for i, j in enumerate(self.pairing))

    def to_dict(self):
        return {"pairing": list(self.pairing), "involution": self.is_involution}


def self_duality_check(cone: PolyhedralCone) -> SelfDualityReport:
    """Match each ray's transform direction against the (self-dual) ray list."""
    if cone.rays is None:
        raise ValueError("V-representation not computed yet")
    basis = cone.basis
    e = basis.group.exponent()
    keys = {}
    for i, ray in enumerate(cone.rays):
        _, icoords = canonical_ray(ray, e)
        keys[_ray_key(icoords)] = i
    pairing = []
    for ray in cone.rays:
        f = basis.function_from_vector(ray)
        fhat = fourier_transform(f, counting_haar(basis.group))
        vec = tuple(fhat.values[r] for r in basis.orbit_reps)
        _, icoords = canonical_ray(vec, e)
        j = keys.get(_ray_key(icoords))
        if j is None:
            raise AssertionError("transform of an extremal ray is not a listed ray")
        pairing.append(j)
    return SelfDualityReport(tuple(pairing))
