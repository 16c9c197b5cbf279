"""Structure checks for GF((2^w)^kappa): modulus, embedding, basis, span."""

import pytest

from regencodes import ValidationError, binary_field
from regencodes.extfield import (
    BinaryExtensionField,
    _is_irreducible,
    extension_field,
    find_modulus,
)


def gf2_polymul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def irreducible_by_trial_division(h, degree):
    # independent of the Frobenius-based test: try every factor of degree
    # 1..degree//2 by polynomial long division over GF(2)
    for f in range(2, 1 << (degree // 2 + 1)):
        rem = h
        fdeg = f.bit_length() - 1
        while rem.bit_length() - 1 >= fdeg and rem:
            rem ^= f << (rem.bit_length() - 1 - fdeg)
        if rem == 0:
            return False
    return True


@pytest.mark.parametrize("degree", [2, 3, 4, 6, 8, 10, 12])
def test_modulus_is_irreducible(degree):
    h = find_modulus(degree)
    assert h.bit_length() - 1 == degree
    assert _is_irreducible(h, degree)
    assert irreducible_by_trial_division(h, degree)


def test_irreducibility_test_agrees_with_trial_division():
    for degree in (2, 3, 4, 5, 6):
        for h in range(1 << degree, 1 << (degree + 1)):
            assert _is_irreducible(h, degree) == irreducible_by_trial_division(h, degree)


def test_modulus_is_deterministic():
    assert find_modulus(20) == find_modulus(20)
    f1 = extension_field(4, 5)
    f2 = BinaryExtensionField(binary_field(4), 5)
    assert f1.modulus == f2.modulus
    assert f1.theta == f2.theta
    assert f1 is extension_field(4, 5)


def test_embedding_is_a_field_homomorphism():
    sub = binary_field(4)
    f = extension_field(4, 3)
    for a in range(16):
        for b in range(16):
            assert f.embed(sub.add(a, b)) == f.add(f.embed(a), f.embed(b))
            assert f.embed(sub.mul(a, b)) == f.mul(f.embed(a), f.embed(b))
    assert f.embed(0) == f.zero
    assert f.embed(1) == f.one
    # injective
    assert len({f.embed(a) for a in range(16)}) == 16


def test_frobenius_fixes_exactly_the_subfield(rng):
    f = extension_field(4, 3)
    embedded = {f.embed(a) for a in range(16)}
    for z in embedded:
        assert f.frobenius(z) == z
    moved = 0
    for _ in range(50):
        z = rng.randrange(1, 1 << f.degree)
        if z not in embedded:
            moved += f.frobenius(z) != z
    assert moved > 0
    # frobenius is x -> x^(2^w)
    z = rng.randrange(1, 1 << f.degree)
    assert f.frobenius(z) == f.pow(z, 1 << 4)


def test_arithmetic(rng):
    f = extension_field(2, 5)
    top = 1 << f.degree
    for _ in range(200):
        a, b = rng.randrange(top), rng.randrange(top)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sqr(a) == f.mul(a, a)
        assert f.add(a, a) == 0
    for _ in range(50):
        a = rng.randrange(1, top)
        assert f.mul(a, f.inv(a)) == f.one
    with pytest.raises(ValidationError):
        f.inv(0)
    assert f.pow(3, 0) == f.one
    assert f.pow(0, 9) == f.zero


def test_theta_is_an_independent_basis():
    f = extension_field(2, 6)
    assert len(f.theta) == 6
    assert f.independent_over_subfield(f.theta)
    # scaling one basis vector by a subfield unit keeps independence,
    # appending any subfield combination of the others breaks it
    scaled = (f.mul(f.embed(2), f.theta[0]),) + f.theta[1:]
    assert f.independent_over_subfield(scaled)
    combo = f.add(f.theta[0], f.mul(f.embed(3), f.theta[1]))
    assert not f.independent_over_subfield(f.theta + (combo,))


def test_span_tracks_dimension():
    f = extension_field(3, 4)
    sp = f.span()
    assert sp.insert(f.theta[0])
    assert not sp.insert(f.mul(f.embed(5), f.theta[0]))
    assert sp.insert(f.theta[1])
    assert sp.dimension == 2
    assert not sp.insert(f.zero)


def test_element_points_are_embedded_subfield():
    f = extension_field(4, 3)
    pts = [f.element(i) for i in range(16)]
    assert pts[0] == 0 and pts[1] == 1
    assert len(set(pts)) == 16
    for p in pts[1:]:
        assert f.frobenius(p) == p
    with pytest.raises(ValidationError):
        f.element(16)


def test_contains():
    f = extension_field(2, 5)
    assert f.contains(0)
    assert f.contains((1 << 10) - 1)
    assert not f.contains(1 << 10)
    assert not f.contains(-1)
    assert not f.contains(None)


def test_constructor_validation():
    with pytest.raises(ValidationError):
        extension_field(1, 1)  # total degree 1
    with pytest.raises(ValidationError):
        BinaryExtensionField(binary_field(12), 2)  # subfield too wide
    with pytest.raises(ValidationError):
        extension_field(2, 0)


def test_wide_field_builds_quickly():
    f = extension_field(4, 20)  # GF(2^80)
    assert f.degree == 80
    a = (1 << 79) | 0x1234
    assert f.mul(a, f.inv(a)) == 1
