import itertools

import pytest

from regencodes import IntegrityError, ValidationError, binary_field
from regencodes.mds import MdsCodec, mds_codec


@pytest.fixture(scope="module")
def codec():
    return mds_codec(binary_field(8), length=7, dimension=4)


def test_systematic_prefix(codec, rng):
    msg = [rng.randrange(256) for _ in range(4)]
    cw = codec.encode(msg)
    assert len(cw) == 7
    assert cw[:4] == msg


def test_every_k_subset_decodes(codec, rng):
    for _ in range(5):
        msg = [rng.randrange(256) for _ in range(4)]
        cw = codec.encode(msg)
        for positions in itertools.combinations(range(7), 4):
            available = {p: cw[p] for p in positions}
            assert codec.decode(available) == cw


def test_linearity(codec, rng):
    f = binary_field(8)
    for _ in range(20):
        a = [rng.randrange(256) for _ in range(4)]
        b = [rng.randrange(256) for _ in range(4)]
        ca = codec.encode(a)
        cb = codec.encode(b)
        summed = codec.encode([f.add(x, y) for x, y in zip(a, b)])
        assert summed == [f.add(x, y) for x, y in zip(ca, cb)]


def test_extra_symbols_are_verified(codec, rng):
    msg = [rng.randrange(256) for _ in range(4)]
    cw = codec.encode(msg)
    available = {p: cw[p] for p in range(6)}
    available[5] ^= 1
    with pytest.raises(IntegrityError):
        codec.decode(available)


def test_decode_needs_dimension_symbols(codec):
    cw = codec.encode([1, 2, 3, 4])
    with pytest.raises(ValidationError):
        codec.decode({p: cw[p] for p in range(3)})


def test_decode_rejects_unknown_position(codec):
    cw = codec.encode([1, 2, 3, 4])
    available = {p: cw[p] for p in range(3)}
    available[9] = 0
    with pytest.raises(ValidationError):
        codec.decode(available)


def test_decode_rejects_non_field_symbol(codec):
    cw = codec.encode([1, 2, 3, 4])
    available = {p: cw[p] for p in range(4)}
    available[0] = 256
    with pytest.raises(ValidationError):
        codec.decode(available)


def test_encode_validates_message(codec):
    with pytest.raises(ValidationError):
        codec.encode([1, 2, 3])
    with pytest.raises(ValidationError):
        codec.encode([1, 2, 3, 300])


def test_extended_codec_keeps_old_positions(codec, rng):
    f = binary_field(8)
    bigger = codec.extended((f.element(7),))
    assert bigger.length == 8
    msg = [rng.randrange(256) for _ in range(4)]
    assert bigger.encode(msg)[:7] == codec.encode(msg)
    # the new position joins decoding like any other
    cw = bigger.encode(msg)
    assert bigger.decode({p: cw[p] for p in (0, 5, 6, 7)}) == cw


def test_extended_rejects_reused_point():
    f = binary_field(8)
    c = mds_codec(f, 5, 3)
    with pytest.raises(ValidationError):
        c.extended((c.points[0],))


def test_constructor_validation():
    f = binary_field(8)
    with pytest.raises(ValidationError):
        mds_codec(f, 4, 5)  # dimension > length
    with pytest.raises(ValidationError):
        mds_codec(f, 300, 2)  # not enough field elements
    with pytest.raises(ValidationError):
        MdsCodec(field=f, length=3, dimension=2, points=(1, 1, 2))


def test_identity_when_no_parity():
    c = mds_codec(binary_field(8), 4, 4)
    assert c.encode([9, 8, 7, 6]) == [9, 8, 7, 6]
