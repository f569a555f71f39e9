import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superconv.bipartite import BipartiteOp, BipartiteShape, cnot_channel
from superconv.channelfile import ChannelFile, dump_channel, encode_matrix, parse_channel
from superconv.channels import KrausSet, from_kraus
from superconv.errors import InputError, ParseError, SchemaError
from superconv.sampling import random_kraus, random_superop
from superconv.superop import SuperOp, identity_channel, identity_element, to_choi


def doc(dims_in, dims_out, rep, data):
    return json.dumps({"dims": {"in": dims_in, "out": dims_out}, "repr": rep, "data": data})


def test_parse_examples():
    kraus = '{"dims":{"in":[2],"out":[2]},"repr":"kraus","data":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}'
    assert parse_channel(kraus).distance(identity_channel(2)) == 0
    phi = parse_channel(doc([2], [2], "choi", encode_matrix(np.eye(4))))
    assert phi.distance(identity_element(2)) == 0
    cnot = parse_channel(doc([2, 2], [2, 2], "aform", encode_matrix(cnot_channel().op.aform)))
    assert isinstance(cnot, BipartiteOp)
    assert cnot.shape == BipartiteShape(2, 2, 2, 2)
    assert cnot.op.distance(cnot_channel().op) == 0


def test_parse_accepts_bytes():
    text = doc([1], [2], "aform", encode_matrix(np.ones((4, 1)))).encode()
    phi = parse_channel(text)
    assert isinstance(phi, SuperOp) and phi.dims == (1, 2)


@pytest.mark.parametrize("rep", ["kraus", "aform", "choi"])
@given(seed=st.integers(0, 2**32 - 1))
def test_file_roundtrip_exact(rep, seed):
    rng = np.random.default_rng(seed)
    if rep == "kraus":
        ks = random_kraus(2, 3, 2, rng)
        cf = ChannelFile((2,), (3,), "kraus", ks.ops)
    else:
        side = (9, 4) if rep == "aform" else (6, 6)
        cf = ChannelFile((2,), (3,), rep, rng.normal(size=side) + 1j * rng.normal(size=side))
    text = cf.to_json()
    again = ChannelFile.from_json(text)
    assert again.to_json() == text
    if rep == "kraus":
        assert all(np.array_equal(a, b) for a, b in zip(again.data, cf.data))
    else:
        assert np.array_equal(again.data, cf.data)


@given(st.integers(0, 2**32 - 1))
def test_channel_roundtrip(seed):
    phi = random_superop(2, 3, seed)
    assert parse_channel(dump_channel(phi, "aform")).distance(phi) == 0
    assert np.array_equal(to_choi(parse_channel(dump_channel(phi, "choi"))), to_choi(phi))
    bop = BipartiteOp(BipartiteShape(1, 2, 2, 1), random_superop(2, 2, seed))
    back = parse_channel(dump_channel(bop))
    assert back.shape == bop.shape and back.op.distance(bop.op) == 0


def test_kraus_dump_reproduces_channel():
    ks = random_kraus(2, 2, 3, 5)
    phi = from_kraus(ks)
    assert parse_channel(dump_channel(phi, "kraus")).distance(phi) < 1e-12


@pytest.mark.parametrize(
    "text, path",
    [
        ('{"repr": "aform", "data": []}', "dims"),
        ('{"dims": {"in": [2]}, "repr": "aform", "data": []}', "dims.out"),
        ('{"dims": {"in": [0], "out": [2]}, "repr": "aform", "data": []}', "dims.in[0]"),
        ('{"dims": {"in": [2], "out": [2, 2]}, "repr": "aform", "data": []}', "dims"),
        ('{"dims": {"in": [2], "out": [2]}, "repr": "ptm", "data": []}', "repr"),
        ('{"dims": {"in": [1], "out": [1]}, "repr": "aform", "data": [[[1, 0]], [[1, 0]]]}', "data"),
        ('{"dims": {"in": [1], "out": [1]}, "repr": "aform", "data": [[[1, 0], [1, 0]]]}', "data[0]"),
        ('{"dims": {"in": [1], "out": [1]}, "repr": "aform", "data": [[[1]]]}', "data[0][0]"),
        ('{"dims": {"in": [1], "out": [1]}, "repr": "aform", "data": [[["1", 0]]]}', "data[0][0]"),
        ('{"dims": {"in": [1], "out": [1]}, "repr": "kraus", "data": []}', "data"),
        ('{"dims": {"in": [1], "out": [2]}, "repr": "kraus", "data": [[[[1, 0]]]]}', "data[0]"),
        ("[1, 2]", "$"),
    ],
)
def test_schema_errors_name_the_field(text, path):
    with pytest.raises(SchemaError) as info:
        parse_channel(text)
    assert info.value.path == path
    assert str(info.value).startswith(path + ":")


def test_parse_errors():
    with pytest.raises(ParseError, match="line 1 column"):
        parse_channel('{"dims": ')
    with pytest.raises(ParseError):
        parse_channel(b"\xff\xfe")
    with pytest.raises(InputError):
        parse_channel('{"dims": {"in": [1], "out": [1]}, "repr": "aform", "data": [[[NaN, 0]]]}')


def test_kraus_file_builds_operator_sum():
    ops = [np.array([[1, 0], [0, 0]]), np.array([[0, 0], [0, 1]])]
    cf = ChannelFile((2,), (2,), "kraus", tuple(o.astype(complex) for o in ops))
    phi = cf.to_channel()
    assert phi.distance(from_kraus(KrausSet.from_ops(ops))) == 0
