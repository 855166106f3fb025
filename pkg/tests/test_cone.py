import random
from fractions import Fraction

import pytest

from ppdlab.cone import (
    EvenBasis,
    brute_force_rays,
    canonical_ray,
    extremal_rays,
    field_of_definition_check,
    is_interior,
    is_member,
    ppd_cone_hrep,
    self_duality_check,
)
from ppdlab.cyclotomic import real_sign, to_complex, unit_root
from ppdlab.fourier import GroupFunction
from ppdlab.groups import abelian_group_catalog, make_group
from ppdlab.ppd import evaluate_function, sample_good, spectral_min_sign

Z2 = make_group([2])
Z3 = make_group([3])
Z4 = make_group([4])


def coeff_floats(ineq):
    return [to_complex(c).real for c in ineq.coeffs]


def ray_key_set(rays, e):
    return {canonical_ray(r, e)[1] for r in rays}


def test_even_basis_z4():
    basis = EvenBasis(Z4)
    assert basis.orbit_reps == (0, 1, 2)
    assert basis.orbits == ((0,), (1, 3), (2,))
    assert basis.dim == 3
    f = GroupFunction(Z4, [Fraction(4), Fraction(2), Fraction(1), Fraction(2)])
    assert basis.vector_from_function(f) == (Fraction(4), Fraction(2), Fraction(1))
    with pytest.raises(ValueError):
        basis.vector_from_function(
            GroupFunction(Z4, [Fraction(1), Fraction(2), Fraction(3), Fraction(4)])
        )


def test_hrep_golden_z2_z3_z4():
    c2 = ppd_cone_hrep(Z2)
    got = {(q.kind, tuple(coeff_floats(q))) for q in c2.inequalities}
    assert got == {
        ("point", (1.0, 0.0)),
        ("point", (0.0, 1.0)),
        ("dual", (1.0, 1.0)),
        ("dual", (1.0, -1.0)),
    }
    c3 = ppd_cone_hrep(Z3)
    got3 = {(q.kind, tuple(round(x, 9) for x in coeff_floats(q)))
            for q in c3.inequalities}
    assert got3 == {
        ("point", (1.0, 0.0)),
        ("point", (0.0, 1.0)),
        ("dual", (1.0, 2.0)),
        ("dual", (1.0, -1.0)),
    }
    c4 = ppd_cone_hrep(Z4)
    got4 = {(q.kind, tuple(round(x, 9) for x in coeff_floats(q)))
            for q in c4.inequalities}
    assert got4 == {
        ("point", (1.0, 0.0, 0.0)),
        ("point", (0.0, 1.0, 0.0)),
        ("point", (0.0, 0.0, 1.0)),
        ("dual", (1.0, 2.0, 1.0)),
        ("dual", (1.0, 0.0, -1.0)),
        ("dual", (1.0, -2.0, 1.0)),
    }


def test_hrep_bound():
    with pytest.raises(ValueError):
        ppd_cone_hrep(make_group([17]), bound=16)


def test_extremal_rays_golden_counts_and_vectors():
    r2 = extremal_rays(ppd_cone_hrep(Z2)).rays
    assert set(r2) == {(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))}
    r3 = extremal_rays(ppd_cone_hrep(Z3)).rays
    assert set(r3) == {(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))}
    r4 = extremal_rays(ppd_cone_hrep(Z4)).rays
    assert set(r4) == {
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(1), Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(1), Fraction(1)),
        (Fraction(2), Fraction(1), Fraction(0)),
    }
    assert len(r4) == 4


def test_extremal_rays_tightness_rank():
    cone = extremal_rays(ppd_cone_hrep(Z4))
    for tight in cone.ray_tight:
        assert len(tight) >= cone.basis.dim - 1


def test_double_description_matches_bruteforce_z2_to_z6():
    for n in (2, 3, 4, 5, 6):
        G = make_group([n])
        cone = extremal_rays(ppd_cone_hrep(G))
        brute = brute_force_rays(cone)
        e = G.exponent()
        assert ray_key_set(cone.rays, e) == ray_key_set(brute, e), n


def test_double_description_matches_bruteforce_products():
    for moduli in ([2, 2], [3, 2], [2, 2, 2]):
        G = make_group(moduli)
        cone = extremal_rays(ppd_cone_hrep(G))
        brute = brute_force_rays(cone)
        e = G.exponent()
        assert ray_key_set(cone.rays, e) == ray_key_set(brute, e), moduli


def test_rays_removal_shrinks_cone():
    """Every ray is outside the cone generated by the others: some inequality
    tight at it is strictly positive on every other ray."""
    for n in (2, 3, 4, 5, 6):
        cone = extremal_rays(ppd_cone_hrep(make_group([n])))
        for i, (ray, tight) in enumerate(zip(cone.rays, cone.ray_tight)):
            for j, other in enumerate(cone.rays):
                if i == j:
                    continue
                assert any(
                    real_sign(cone.inequalities[q].evaluate(other)) > 0
                    for q in tight
                )


def test_conic_combinations_are_interior():
    rng = random.Random(3)
    for n in (2, 3, 4, 5):
        G = make_group([n])
        cone = extremal_rays(ppd_cone_hrep(G))
        for _ in range(10):
            coeffs = [Fraction(rng.randint(1, 5)) for _ in cone.rays]
            vec = tuple(
                sum((c * r[j] for c, r in zip(coeffs, cone.rays)), Fraction(0))
                for j in range(cone.basis.dim)
            )
            f = cone.basis.function_from_vector(vec)
            assert is_interior(f, cone)
            assert evaluate_function(f).is_good


def test_interior_agrees_with_good_golden():
    cone = ppd_cone_hrep(Z4)
    good = GroupFunction(Z4, [Fraction(4), Fraction(2), Fraction(1), Fraction(2)])
    assert is_interior(good, cone)
    assert evaluate_function(good).is_good
    boundary = GroupFunction(Z4, [Fraction(1), Fraction(0), Fraction(1), Fraction(0)])
    assert not is_interior(boundary, cone)
    assert is_member(boundary, cone)
    assert not evaluate_function(boundary).is_good
    outside = GroupFunction(Z4, [Fraction(1), Fraction(1), Fraction(-1), Fraction(1)])
    assert not is_member(outside, cone)
    assert not evaluate_function(outside).is_ppd


def test_membership_equivalence_random_rational():
    rng = random.Random(23)
    for G in abelian_group_catalog(8):
        cone = ppd_cone_hrep(G)
        basis = cone.basis
        for _ in range(60):
            vec = tuple(
                Fraction(rng.randint(-3, 6), rng.randint(1, 3))
                for _ in range(basis.dim)
            )
            f = basis.function_from_vector(vec)
            member = is_member(f, cone)
            pointwise = all(real_sign(v) >= 0 for v in vec)
            spectral = spectral_min_sign(f) >= 0 if pointwise else None
            assert member == (pointwise and bool(spectral)), (G, vec)
            assert member == evaluate_function(f).is_ppd


def test_interior_good_agreement_sampled():
    for G in abelian_group_catalog(8):
        cone = ppd_cone_hrep(G)
        for s in range(5):
            f = sample_good(G, seed=600 + s)
            assert is_interior(f, cone)
            assert evaluate_function(f).is_good


def test_canonical_ray_scaling():
    vec = (Fraction(2, 3), Fraction(4, 3), Fraction(0))
    canon, icoords = canonical_ray(vec, 4)
    assert canon == (Fraction(1), Fraction(2), Fraction(0))
    neg = tuple(-v for v in vec)
    canon2, _ = canonical_ray(neg, 4)
    assert canon2 == canon
    # irrational coordinates stay integral over the cos basis
    g = unit_root(5, 1) + unit_root(5, 4)
    canon3, icoords3 = canonical_ray((Fraction(1), g), 5)
    assert canon3 == (Fraction(1), g)
    assert icoords3 == ((1, 0), (0, 1))


def test_field_of_definition_rational_groups():
    for n in (2, 3, 4, 6):
        cone = extremal_rays(ppd_cone_hrep(make_group([n])))
        report = field_of_definition_check(cone)
        assert report.all_integral
        # every expansion is a plain integer for these exponents
        for entry in report.entries:
            assert "2cos" not in entry.expansion or n in (5,)


def test_field_of_definition_z5():
    cone = extremal_rays(ppd_cone_hrep(make_group([5])))
    report = field_of_definition_check(cone)
    assert report.all_integral
    assert any("2cos(2pi*1/5)" in entry.expansion for entry in report.entries)


def test_field_of_definition_z8_z12():
    for n in (8, 12):
        cone = extremal_rays(ppd_cone_hrep(make_group([n])))
        report = field_of_definition_check(cone)
        assert report.all_integral, n


def test_self_duality_z4():
    cone = extremal_rays(ppd_cone_hrep(Z4))
    report = self_duality_check(cone)
    assert report.is_involution
    rays = list(cone.rays)
    i_delta = rays.index((Fraction(1), Fraction(0), Fraction(0)))
    i_const = rays.index((Fraction(1), Fraction(1), Fraction(1)))
    i_half = rays.index((Fraction(1), Fraction(0), Fraction(1)))
    i_mix = rays.index((Fraction(2), Fraction(1), Fraction(0)))
    assert report.pairing[i_delta] == i_const
    assert report.pairing[i_const] == i_delta
    assert report.pairing[i_half] == i_half
    assert report.pairing[i_mix] == i_mix


def test_self_duality_involution_sweep():
    for moduli in ([2], [3], [5], [2, 2], [6], [3, 2], [8]):
        cone = extremal_rays(ppd_cone_hrep(make_group(moduli)))
        assert self_duality_check(cone).is_involution, moduli


def test_rays_are_ppd_boundary_functions():
    for n in (2, 3, 4, 5, 6):
        cone = extremal_rays(ppd_cone_hrep(make_group([n])))
        for ray in cone.rays:
            f = cone.basis.function_from_vector(ray)
            v = evaluate_function(f)
            assert v.is_ppd
            assert not v.is_good  # extremal rays sit on the boundary
