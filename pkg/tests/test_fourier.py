import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppdlab.cyclotomic import scalar_eq, to_complex
from ppdlab.fourier import (
    GroupFunction,
    HaarScale,
    ScaledMeasure,
    convolve,
    counting_haar,
    dual_haar,
    fourier_transform,
    functions_equal,
    inverse_transform,
    measure_from_function,
    plancherel_check,
    pullback,
    pushforward,
)
from ppdlab.groups import (
    Homomorphism,
    abelian_group_catalog,
    all_subgroups,
    dual_hom,
    identity_hom,
    make_group,
    pairing,
    subgroup_from_generators,
)

Z2 = make_group([2])
Z4 = make_group([4])


def naive_dft(values, moduli):
    """Independent oracle: direct complex DFT straight from the definition."""
    G = make_group(moduli)
    out = []
    for a in G.elements():
        acc = 0j
        for i, x in enumerate(G.elements()):
            acc += pairing(G, a, x).conjugate() * complex(values[i])
        out.append(acc)
    return out


def test_transform_constant_on_z2():
    f = GroupFunction(Z2, [Fraction(1), Fraction(1)])
    fhat = fourier_transform(f, counting_haar(Z2))
    assert fhat.values == (Fraction(2), Fraction(0))


def test_transform_golden_z4():
    f = GroupFunction(Z4, [Fraction(4), Fraction(2), Fraction(1), Fraction(2)])
    fhat = fourier_transform(f, counting_haar(Z4))
    assert fhat.values == (Fraction(9), Fraction(3), Fraction(1), Fraction(3))
    # oracle agreement
    ref = naive_dft([4, 2, 1, 2], (4,))
    assert all(abs(to_complex(v) - r) < 1e-12 for v, r in zip(fhat.values, ref))


def test_transform_delta_is_constant():
    for moduli in ([4], [2, 2], [6], [3, 2]):
        G = make_group(moduli)
        f = GroupFunction(G, [Fraction(1)] + [Fraction(0)] * (G.order - 1))
        fhat = fourier_transform(f, counting_haar(G))
        assert all(v == 1 for v in fhat.values)


def test_inverse_point_mass_is_constant():
    mu = ScaledMeasure(
        Z4,
        GroupFunction(Z4, [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]),
        counting_haar(Z4),
    )
    f = inverse_transform(mu)
    assert all(v == 1 for v in f.values)


def test_inverse_uniform_probability_is_delta():
    for moduli in ([4], [2, 2], [5]):
        G = make_group(moduli)
        mu = ScaledMeasure(
            G,
            GroupFunction(G, [Fraction(1, G.order)] * G.order),
            counting_haar(G),
        )
        f = inverse_transform(mu)
        assert f.values[0] == 1
        assert all(v == 0 for v in f.values[1:])


def test_dual_haar_golden():
    m = HaarScale(Z4, Fraction(1))
    assert dual_haar(m).scale == Fraction(1, 4)
    assert dual_haar(dual_haar(m)) == m
    md = HaarScale(Z4, 0.5)
    assert abs(dual_haar(md).scale - 1 / (0.5 * 4)) < 1e-15


def test_dual_haar_self_dual_scale():
    import math

    for n in (2, 4, 9):
        G = make_group([n])
        m = HaarScale(G, 1.0 / math.sqrt(G.order))
        assert abs(dual_haar(m).scale - m.scale) < 1e-15


def test_inversion_roundtrip_exhaustive():
    rng = random.Random(11)
    for G in abelian_group_catalog(16):
        scale = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        m = HaarScale(G, scale)
        f = GroupFunction(
            G,
            [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(G.order)],
        )
        fhat = fourier_transform(f, m)
        back = inverse_transform(measure_from_function(fhat, dual_haar(m)))
        assert back.group == G and all(
            scalar_eq(a, b) for a, b in zip(back.values, f.values)
        )


def test_inversion_roundtrip_float():
    rng = random.Random(5)
    for moduli in ([4], [3, 2], [8]):
        G = make_group(moduli)
        m = HaarScale(G, 0.7)
        f = GroupFunction(
            G, [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(G.order)]
        )
        back = inverse_transform(
            measure_from_function(fourier_transform(f, m), dual_haar(m))
        )
        assert functions_equal(back, f)


def test_transform_linear_and_scales_with_haar():
    G = make_group([3, 2])
    rng = random.Random(3)
    f = GroupFunction(G, [Fraction(rng.randint(-5, 5)) for _ in range(G.order)])
    g = GroupFunction(G, [Fraction(rng.randint(-5, 5)) for _ in range(G.order)])
    m = counting_haar(G)
    fg = GroupFunction(G, [a + b for a, b in zip(f.values, g.values)])
    lhs = fourier_transform(fg, m)
    rhs = [
        a + b
        for a, b in zip(
            fourier_transform(f, m).values, fourier_transform(g, m).values
        )
    ]
    assert all(scalar_eq(a, b) for a, b in zip(lhs.values, rhs))
    m2 = HaarScale(G, Fraction(3, 2))
    assert all(
        scalar_eq(a * Fraction(3, 2), b)
        for a, b in zip(
            fourier_transform(f, m).values, fourier_transform(f, m2).values
        )
    )


def test_real_even_transforms_to_real_even():
    rng = random.Random(9)
    for moduli in ([5], [8], [4, 3]):
        G = make_group(moduli)
        vals = [Fraction(0)] * G.order
        for i in range(G.order):
            if vals[i] == 0:
                v = Fraction(rng.randint(-4, 4))
                vals[i] = v
                vals[G.neg_index(i)] = v
        fhat = fourier_transform(GroupFunction(G, vals), counting_haar(G))
        for a in range(G.order):
            v = fhat.values[a]
            if not isinstance(v, (int, Fraction)):
                from ppdlab.cyclotomic import is_real_scalar

                assert is_real_scalar(v)
            assert scalar_eq(v, fhat.values[G.neg_index(a)])


def test_convolution_theorem_exhaustive():
    rng = random.Random(17)
    for G in abelian_group_catalog(12):
        mu = ScaledMeasure(
            G,
            GroupFunction(G, [Fraction(rng.randint(0, 5)) for _ in range(G.order)]),
            HaarScale(G, Fraction(rng.randint(1, 3))),
        )
        nu = ScaledMeasure(
            G,
            GroupFunction(G, [Fraction(rng.randint(0, 5)) for _ in range(G.order)]),
            HaarScale(G, Fraction(1, rng.randint(1, 3))),
        )
        conv = convolve(mu, nu)
        lhs = inverse_transform(conv)
        mc, nc = inverse_transform(mu), inverse_transform(nu)
        rhs = [a * b for a, b in zip(mc.values, nc.values)]
        assert all(scalar_eq(a, b) for a, b in zip(lhs.values, rhs))


def test_convolution_golden_two_point():
    mu = ScaledMeasure(
        Z2, GroupFunction(Z2, [Fraction(3, 4), Fraction(1, 4)]), counting_haar(Z2)
    )
    conv = convolve(mu, mu)
    assert conv.density.values == (Fraction(5, 8), Fraction(3, 8))
    assert conv.total_mass() == 1


def test_convolution_identity_and_uniform():
    G = make_group([3, 2])
    delta = ScaledMeasure(
        G,
        GroupFunction(G, [Fraction(1)] + [Fraction(0)] * (G.order - 1)),
        counting_haar(G),
    )
    rng = random.Random(2)
    nu = ScaledMeasure(
        G,
        GroupFunction(G, [Fraction(rng.randint(0, 9)) for _ in range(G.order)]),
        counting_haar(G),
    )
    conv = convolve(delta, nu)
    assert conv.density.values == nu.density.values
    uniform = ScaledMeasure(
        G, GroupFunction(G, [Fraction(1, G.order)] * G.order), counting_haar(G)
    )
    uu = convolve(uniform, uniform)
    assert all(v == Fraction(1, G.order) for v in uu.density.values)


def test_pullback_golden():
    phi = Homomorphism(Z2, Z4, ((2,),))
    f = GroupFunction(Z4, [Fraction(4), Fraction(2), Fraction(1), Fraction(2)])
    g = pullback(phi, f)
    assert g.values == (Fraction(4), Fraction(1))
    ident = identity_hom(Z4)
    assert pullback(ident, f).values == f.values
    zero = Homomorphism(Z2, Z4, ((0,),))
    assert pullback(zero, f).values == (Fraction(4), Fraction(4))


def test_pushforward_golden():
    G = make_group([4])
    Z2g = make_group([2])
    proj = Homomorphism(G, Z2g, ((1,),))
    uniform = ScaledMeasure(
        G, GroupFunction(G, [Fraction(1, 4)] * 4, ), counting_haar(G)
    )
    out = pushforward(proj, uniform)
    assert out.density.values == (Fraction(1, 2), Fraction(1, 2))
    assert out.total_mass() == 1
    # point-mass transport through the inclusion {0,2} -> Z4
    H = subgroup_from_generators(G, [(2,)])
    H_abs, incl = H.as_group()
    delta2 = ScaledMeasure(
        H_abs,
        GroupFunction(H_abs, [Fraction(0), Fraction(1)]),
        counting_haar(H_abs),
    )
    moved = pushforward(incl, delta2)
    assert moved.density.values == (Fraction(0), Fraction(0), Fraction(1), Fraction(0))


def test_pushforward_dual_identity():
    """(phi_* mu)-check = mu-check composed with the dual homomorphism."""
    rng = random.Random(23)
    G = make_group([4, 2])
    T = make_group([4])
    phi = Homomorphism(G, T, ((1, 2),))
    mu = ScaledMeasure(
        G,
        GroupFunction(G, [Fraction(rng.randint(0, 6)) for _ in range(G.order)]),
        HaarScale(G, Fraction(2, 3)),
    )
    lhs = inverse_transform(pushforward(phi, mu))
    rhs = pullback(dual_hom(phi), inverse_transform(mu))
    assert all(scalar_eq(a, b) for a, b in zip(lhs.values, rhs.values))


def test_restriction_transform_pushforward_scale():
    """Transforming a restriction matches pushing the transform along the dual
    projection, once both sides carry their dual Haar scales."""
    rng = random.Random(31)
    for moduli in ([4], [4, 2], [6]):
        G = make_group(moduli)
        m = HaarScale(G, Fraction(1))
        f = GroupFunction(G, [Fraction(rng.randint(-5, 5)) for _ in range(G.order)])
        for H in all_subgroups(G):
            H_abs, incl = H.as_group()
            mH = HaarScale(H_abs, Fraction(1))
            lhs = fourier_transform(pullback(incl, f), mH)  # on dual of H_abs
            fhat = fourier_transform(f, m)
            moved = pushforward(dual_hom(incl), measure_from_function(fhat, dual_haar(m)))
            # measure density equals lhs * dual_haar(mH) mass at each character
            dh = dual_haar(mH)
            for idx in range(H_abs.order):
                assert scalar_eq(moved.mass_at(idx), lhs.values[idx] * dh.scale)


def test_plancherel_exact_and_float():
    rng = random.Random(41)
    G = make_group([6])
    f = GroupFunction(
        G, [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(G.order)]
    )
    assert plancherel_check(f, counting_haar(G)) == 0
    delta = GroupFunction(G, [Fraction(1)] + [Fraction(0)] * 5)
    assert plancherel_check(delta, counting_haar(G)) == 0
    ff = GroupFunction(
        G, [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(G.order)]
    )
    norm2 = sum(abs(v) ** 2 for v in ff.values)
    assert plancherel_check(ff, HaarScale(G, 1.0)) < 1e-12 * norm2


def test_group_mismatch_errors():
    f = GroupFunction(Z4, [1, 0, 0, 0])
    with pytest.raises(ValueError):
        fourier_transform(f, counting_haar(Z2))
    mu = ScaledMeasure(Z2, GroupFunction(Z2, [1, 1]), counting_haar(Z2))
    nu = ScaledMeasure(Z4, GroupFunction(Z4, [1, 1, 1, 1]), counting_haar(Z4))
    with pytest.raises(ValueError):
        convolve(mu, nu)


@settings(max_examples=40, deadline=None)
@given(
    moduli=st.sampled_from([(2,), (3,), (4,), (2, 2), (5,), (6,)]),
    data=st.data(),
)
def test_inversion_property(moduli, data):
    G = make_group(list(moduli))
    vals = [
        Fraction(data.draw(st.integers(min_value=-6, max_value=6)))
        for _ in range(G.order)
    ]
    num = data.draw(st.integers(min_value=1, max_value=4))
    den = data.draw(st.integers(min_value=1, max_value=4))
    m = HaarScale(G, Fraction(num, den))
    f = GroupFunction(G, vals)
    back = inverse_transform(
        measure_from_function(fourier_transform(f, m), dual_haar(m))
    )
    assert all(scalar_eq(a, b) for a, b in zip(back.values, f.values))
