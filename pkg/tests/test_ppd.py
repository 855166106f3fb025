import itertools
import random
from fractions import Fraction

import pytest

from ppdlab.cyclotomic import real_sign, scalar_eq
from ppdlab.fourier import (
    GroupFunction,
    HaarScale,
    ScaledMeasure,
    counting_haar,
    fourier_transform,
    inverse_transform,
    measure_from_function,
    pullback,
    pushforward,
)
from ppdlab.groups import (
    Homomorphism,
    abelian_group_catalog,
    make_group,
    quotient,
    subgroup_from_generators,
)
from ppdlab.ppd import (
    bochner_oracle,
    descend_to_quotient,
    dual_measure,
    evaluate_function,
    is_good,
    is_ppd,
    normalize_function,
    normalize_measure,
    normalized_dual,
    sample_good,
    sample_normalized_good,
    sample_ppd,
    spectral_min_sign,
    stabilizer_subgroup,
)

Z2 = make_group([2])
Z3 = make_group([3])
Z4 = make_group([4])


def F(group, *vals):
    return GroupFunction(group, [Fraction(v) for v in vals])


def test_constant_is_ppd_not_good_on_nontrivial():
    f = F(Z4, 1, 1, 1, 1)
    v = is_ppd(f)
    assert v.is_ppd and not v.is_good
    assert any(w.condition == "3.1.4" and w.kind == "character" for w in v.witnesses)


def test_indicator_subgroup_is_ppd_not_good():
    f = F(Z4, 1, 0, 1, 0)
    v = evaluate_function(f)
    assert v.is_ppd and not v.is_good
    # transform is (2, 0, 2, 0): witnesses at x=1 and at character 1
    conds = {(w.condition, w.kind, w.index) for w in v.witnesses}
    assert ("3.1.4", "element", 1) in conds
    assert ("3.1.4", "character", 1) in conds


def test_not_ppd_two_point():
    f = F(Z2, 1, 2)
    v = is_ppd(f)
    assert not v.is_ppd
    assert any(
        w.condition == "2.1.2" and w.kind == "character" and w.index == 1
        for w in v.witnesses
    )


def test_good_golden_z4():
    f = F(Z4, 4, 2, 1, 2)
    v = is_good(f)
    assert v.is_ppd and v.is_good
    assert v.witnesses == ()
    assert v.condition_status["3.1.2"] == "vacuous"
    assert v.condition_status["3.1.5"] == "vacuous"


def test_delta_is_ppd_not_good():
    f = F(Z4, 1, 0, 0, 0)
    v = evaluate_function(f)
    assert v.is_ppd and not v.is_good


def test_verdict_flags_consistency():
    rng = random.Random(1)
    for _ in range(50):
        G = make_group([rng.choice([2, 3, 4, 6])])
        f = GroupFunction(
            G, [Fraction(rng.randint(-2, 4)) for _ in range(G.order)]
        )
        v = evaluate_function(f)
        assert (not v.is_good) or v.is_ppd  # good implies ppd
        assert (v.is_ppd and v.is_good) == (len(v.witnesses) == 0)


def test_bochner_oracle_golden():
    assert bochner_oracle(F(Z4, 1, 0, 0, 0))
    assert bochner_oracle(F(Z3, 1, 1, 1))
    assert not bochner_oracle(F(Z2, 1, 2))
    with pytest.raises(ValueError):
        bochner_oracle(GroupFunction(Z2, [Fraction(1), unit_i()]))


def unit_i():
    from ppdlab.cyclotomic import unit_root

    return unit_root(4, 1)


def test_bochner_oracle_matches_spectral_exhaustive_small():
    # every even integer vector in a small box, on Z2, Z3, Z4
    for moduli, box in (((2,), 3), ((3,), 2), ((4,), 2)):
        G = make_group(list(moduli))
        reps = []
        seen = set()
        for i in range(G.order):
            j = G.neg_index(i)
            key = min(i, j)
            if key not in seen:
                seen.add(key)
                reps.append(key)
        for combo in itertools.product(range(-box, box + 1), repeat=len(reps)):
            vals = [Fraction(0)] * G.order
            for rep, c in zip(reps, combo):
                vals[rep] = Fraction(c)
                vals[G.neg_index(rep)] = Fraction(c)
            f = GroupFunction(G, vals)
            assert bochner_oracle(f) == (spectral_min_sign(f) >= 0)


def test_bochner_oracle_matches_spectral_random():
    rng = random.Random(13)
    for G in abelian_group_catalog(12):
        for _ in range(30):
            vals = [Fraction(0)] * G.order
            for i in range(G.order):
                if vals[i] == 0:
                    v = Fraction(rng.randint(-5, 5))
                    vals[i] = v
                    vals[G.neg_index(i)] = v
            f = GroupFunction(G, vals)
            assert bochner_oracle(f) == (spectral_min_sign(f) >= 0)


def test_bochner_oracle_float_mode():
    f = GroupFunction(Z4, [4.0, 2.0, 1.0, 2.0])
    assert bochner_oracle(f)
    g = GroupFunction(Z2, [1.0, 2.0])
    assert not bochner_oracle(g)


def test_bochner_oracle_exact_irrational_values():
    f = sample_ppd(make_group([5]), seed=77)
    assert f.is_exact
    assert bochner_oracle(f)


def test_normalize_function():
    f = F(Z4, 4, 2, 1, 2)
    g = normalize_function(f)
    assert g.values == (
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 4),
        Fraction(1, 2),
    )
    assert normalize_function(g).values == g.values
    with pytest.raises(ValueError):
        normalize_function(F(Z4, 0, 1, 1, 1))


def test_normalize_measure_matches_function_normalization():
    G = Z4
    mu = ScaledMeasure(G, F(G, 2, 1, 0, 1), HaarScale(G, Fraction(5, 4)))
    nu = normalize_measure(mu)
    assert nu.total_mass() == 1
    # a probability measure is unchanged
    again = normalize_measure(nu)
    assert again.total_mass() == 1 and again.haar.scale == nu.haar.scale
    # normalized measure <-> normalized inverse transform
    assert inverse_transform(nu).values[0] == 1
    with pytest.raises(ValueError):
        normalize_measure(ScaledMeasure(G, F(G, 0, 0, 0, 0), counting_haar(G)))


def test_dual_measure_roundtrip_and_goldens():
    f = F(Z4, 1, 1, 1, 1)
    mu = dual_measure(f)
    assert mu.mass_at(0) == 1
    assert all(mu.mass_at(i) == 0 for i in range(1, 4))
    back = inverse_transform(mu)
    assert back == f
    # indicator of {0}: dual is uniform of mass 1
    d = F(Z4, 1, 0, 0, 0)
    nu = dual_measure(d)
    assert all(nu.mass_at(i) == Fraction(1, 4) for i in range(4))
    assert inverse_transform(nu) == d
    with pytest.raises(ValueError):
        dual_measure(F(Z2, 1, 2))


def test_normalized_dual_golden_two_point():
    for t in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 5)):
        f = GroupFunction(Z2, [Fraction(1), t])
        g = normalized_dual(f)
        assert g.values[0] == 1
        assert g.values[1] == (1 - t) / (1 + t)


def test_normalized_dual_rejects_constant_one():
    with pytest.raises(ValueError):
        normalized_dual(F(Z4, 1, 1, 1, 1))


def test_normalized_dual_involution_golden():
    f = normalize_function(F(Z4, 4, 2, 1, 2))
    g = normalized_dual(f)
    back = normalized_dual(g)
    assert all(scalar_eq(a, b) for a, b in zip(back.values, f.values))


def test_normalized_dual_involution_sampled():
    for G in abelian_group_catalog(12):
        if G.order == 1:
            continue
        for s in range(5):
            f = sample_normalized_good(G, seed=100 + s)
            back = normalized_dual(normalized_dual(f))
            assert all(scalar_eq(a, b) for a, b in zip(back.values, f.values))


def test_stabilizer_golden():
    f = F(Z4, 1, 0, 1, 0)
    H = stabilizer_subgroup(f)
    assert H.elements == (0, 2)
    assert stabilizer_subgroup(F(Z4, 1, 1, 1, 1)).order == 4
    g = sample_good(Z4, seed=3)
    assert stabilizer_subgroup(g).elements == (0,)


def test_descend_to_quotient_golden():
    f = F(Z4, 1, 0, 1, 0)
    H = subgroup_from_generators(Z4, [(2,)])
    g = descend_to_quotient(f, H)
    assert g.group.moduli == (2,)
    assert g.values == (Fraction(1), Fraction(0))
    # H = {0}: unchanged
    t = subgroup_from_generators(Z4, [])
    same = descend_to_quotient(f, t)
    assert same.values == f.values
    # constant descends along the full group to the trivial group
    c = F(Z4, 1, 1, 1, 1)
    full = subgroup_from_generators(Z4, [(1,)])
    one = descend_to_quotient(c, full)
    assert one.group.order == 1 and one.values == (Fraction(1),)
    with pytest.raises(ValueError):
        descend_to_quotient(F(Z4, 4, 2, 1, 2), H)


def test_sampler_determinism_and_membership():
    for G in abelian_group_catalog(8):
        for s in (0, 1, 7):
            f1 = sample_ppd(G, seed=s)
            f2 = sample_ppd(G, seed=s)
            assert f1.values == f2.values
            assert evaluate_function(f1).is_ppd
            g = sample_good(G, seed=s)
            assert evaluate_function(g).is_good


def test_sampled_ppd_max_at_identity_and_even():
    for G in abelian_group_catalog(10):
        for s in range(8):
            f = sample_ppd(G, seed=50 + s)
            v0 = f.values[0]
            for i, v in enumerate(f.values):
                d = v0 - v
                assert real_sign(d) >= 0
                assert scalar_eq(v, f.values[G.neg_index(i)])


def test_sampled_ppd_three_by_three_minors():
    rng = random.Random(99)
    for G in abelian_group_catalog(8):
        f = sample_ppd(G, seed=11)
        for _ in range(10):
            x = rng.randrange(G.order)
            y = rng.randrange(G.order)
            xy = G.add_index(x, y)
            u0, ux, uy, uxy = (
                f.values[0],
                f.values[x],
                f.values[y],
                f.values[xy],
            )
            # det of [[u0,ux,uxy],[ux,u0,uy],[uxy,uy,u0]]
            det = (
                u0 * (u0 * u0 - uy * uy)
                - ux * (ux * u0 - uy * uxy)
                + uxy * (ux * uy - u0 * uxy)
            )
            assert real_sign(det) >= 0


def random_valid_hom(rng):
    """Well-defined map: entry (i, j) is a multiple of m_i / gcd(m_i, n_j)."""
    import math

    src = make_group(rng.choice([[2], [4], [2, 2], [6], [3, 2], [8]]))
    tgt = make_group(rng.choice([[2], [4], [2, 2], [6], [3, 2], [8]]))
    rows = []
    for mi in tgt.moduli:
        row = []
        for nj in src.moduli:
            step = mi // math.gcd(mi, nj)
            row.append(step * rng.randrange(mi // step))
        rows.append(tuple(row))
    return Homomorphism(src, tgt, tuple(rows))


def test_pullback_preserves_normalized_ppd():
    G = make_group([4, 2])
    T = make_group([4])
    phi = Homomorphism(G, T, ((1, 2),))
    for s in range(5):
        f = normalize_function(sample_ppd(T, seed=s))
        g = pullback(phi, f)
        v = evaluate_function(g)
        assert v.is_ppd and g.values[0] == 1


def test_pullback_preserves_normalized_ppd_random_homs():
    from ppdlab.groups import hom_validate

    rng = random.Random(321)
    for s in range(25):
        phi = random_valid_hom(rng)
        hom_validate(phi)
        f = normalize_function(sample_ppd(phi.target, seed=s))
        g = pullback(phi, f)
        v = evaluate_function(g)
        assert v.is_ppd and g.values[0] == 1


def test_pushforward_preserves_normalized_ppd_measures():
    from ppdlab.groups import hom_validate

    rng = random.Random(99)
    for s in range(15):
        phi = random_valid_hom(rng)
        hom_validate(phi)
        # a normalized PPD measure on the source: the dual measure of a
        # normalized PPD function on the (same-moduli) dual group
        f = normalize_function(sample_ppd(phi.source, seed=s))
        mu = dual_measure(f)
        assert mu.group.moduli == phi.source.moduli
        assert scalar_eq(mu.total_mass(), Fraction(1))
        moved = pushforward(phi, mu)
        assert scalar_eq(moved.total_mass(), Fraction(1))
        check = inverse_transform(moved)
        v = evaluate_function(check)
        assert v.is_ppd
        assert scalar_eq(check.values[0], Fraction(1))


def test_goodness_duality():
    # f good iff its normalized dual is good, checked per witness structure
    for G in abelian_group_catalog(8):
        if G.order == 1:
            continue
        f = sample_normalized_good(G, seed=5)
        g = normalized_dual(f)
        assert evaluate_function(g).is_good
        # a PPD-but-not-good function has a transform with a zero somewhere
        h = GroupFunction(G, [Fraction(1)] + [Fraction(0)] * (G.order - 1))
        hv = evaluate_function(inverse_transform(measure_from_function(
            fourier_transform(h, counting_haar(G)),
            HaarScale(G, Fraction(1, G.order)),
        )))
        assert hv.is_ppd


def test_float_mode_verdicts():
    f = GroupFunction(Z4, [4.0, 2.0, 1.0, 2.0])
    v = evaluate_function(f)
    assert v.is_ppd and v.is_good
    boundary = GroupFunction(Z4, [1.0, 0.0, 1.0, 0.0])
    vb = evaluate_function(boundary)
    assert vb.is_ppd and not vb.is_good
    # a function off the cone by a visible margin
    bad = GroupFunction(Z2, [1.0, 2.0])
    assert not evaluate_function(bad).is_ppd
    # strictness tie: a value at 1e-13 * f(0) counts as zero in float mode
    tied = GroupFunction(Z4, [1.0, 0.25, 1e-13, 0.25])
    assert not evaluate_function(tied).is_good


def test_float_mode_stabilizer_and_descent():
    f = GroupFunction(Z4, [1.0, 0.0, 1.0, 0.0])
    H = stabilizer_subgroup(f)
    assert H.elements == (0, 2)
    g = descend_to_quotient(f, H)
    assert g.values == (1.0, 0.0)


def test_float_mode_normalized_dual():
    f = GroupFunction(Z2, [1.0, 0.5])
    g = normalized_dual(f)
    assert abs(g.values[0] - 1.0) < 1e-12
    assert abs(g.values[1] - (0.5 / 1.5)) < 1e-12


def test_verdict_json_shape():
    d = evaluate_function(F(Z4, 1, 0, 1, 0)).to_dict()
    assert d["is_ppd"] is True and d["is_good"] is False
    assert d["conditions"]["2.1.1"] is True
    assert d["conditions"]["3.1.4"] is False
    assert d["vacuous_conditions"] == ["3.1.2", "3.1.3", "3.1.5"]
    assert all(isinstance(v, bool) for v in d["conditions"].values())


def test_caches_safe_under_concurrent_first_access():
    import threading

    from ppdlab.fourier import exponent_table

    moduli = (13,)  # not used anywhere else in the suite
    results = []
    errors = []

    def worker():
        try:
            results.append(exponent_table(moduli))
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert all(r == results[0] for r in results)


def test_stabilizer_descent_roundtrip_sampled():
    for G in abelian_group_catalog(10):
        for s in range(6):
            f = sample_ppd(G, seed=500 + s)
            H = stabilizer_subgroup(f)
            g = descend_to_quotient(f, H)
            Q = quotient(G, H)
            back = pullback(Q.projection_hom, g)
            assert all(scalar_eq(a, b) for a, b in zip(back.values, f.values))
            # descending by the full stabilizer leaves a trivial stabilizer
            if H.order > 1:
                assert stabilizer_subgroup(g).order == 1 or g.group.order == 1
