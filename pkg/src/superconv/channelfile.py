"""JSON channel files.

    {"dims": {"in": [n], "out": [m]},          # or [nA, nB] / [mA, mB]
     "repr": "kraus" | "aform" | "choi",
     "data": ...}                               # complex entries as [re, im]

``kraus`` data is a list of m x n matrices, ``aform`` an m^2 x n^2 matrix
and ``choi`` an nm x nm matrix.  Two-entry dims lists make the channel
bipartite.  Floats are written with Python's shortest round-trip repr, so
parse(dump(x)) reproduces x bit for bit.
"""

import cmath
import json
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .bipartite import BipartiteOp, BipartiteShape
from .channels import KrausSet, from_kraus, minimal_kraus
from .errors import ParseError, SchemaError
from .superop import SuperOp, from_choi, to_choi

REPRS = ("kraus", "aform", "choi")


def _dims_list(obj, path):
    if not isinstance(obj, list) or len(obj) not in (1, 2):
        raise SchemaError(path, "expected a list of 1 or 2 positive integers")
    for k, d in enumerate(obj):
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise SchemaError(f"{path}[{k}]", f"expected a positive integer, got {d!r}")
    return list(obj)


def _complex(obj, path) -> complex:
    if (
        not isinstance(obj, list)
        or len(obj) != 2
        or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in obj)
    ):
        raise SchemaError(path, f"expected a [re, im] pair of numbers, got {json.dumps(obj)[:40]}")
    z = complex(float(obj[0]), float(obj[1]))
    if not cmath.isfinite(z):
        raise SchemaError(path, "entries must be finite")
    return z


def _matrix(obj, path, rows, cols) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != rows:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise SchemaError(path, f"expected {rows} rows, got {got}")
    out = np.empty((rows, cols), dtype=np.complex128)
    for r, row in enumerate(obj):
        rpath = f"{path}[{r}]"
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise SchemaError(rpath, f"expected {cols} entries, got {got}")
        for c, z in enumerate(row):
            out[r, c] = _complex(z, f"{rpath}[{c}]")
    return out


@dataclass(frozen=True, eq=False)
class ChannelFile:
    """In-memory form of a channel file, before building the map."""

    dims_in: tuple[int, ...]
    dims_out: tuple[int, ...]
    repr: str
    data: np.ndarray | tuple[np.ndarray, ...] = field(repr=False)

    @property
    def bipartite(self) -> bool:
        return len(self.dims_in) == 2

    @classmethod
    def from_document(cls, doc) -> "ChannelFile":
        if not isinstance(doc, dict):
            raise SchemaError("$", "top level must be a JSON object")
        for key in ("dims", "repr", "data"):
            if key not in doc:
                raise SchemaError(key, "missing field")
        dims = doc["dims"]
        if not isinstance(dims, dict):
            raise SchemaError("dims", "expected an object with 'in' and 'out'")
        for key in ("in", "out"):
            if key not in dims:
                raise SchemaError(f"dims.{key}", "missing field")
        din = _dims_list(dims["in"], "dims.in")
        dout = _dims_list(dims["out"], "dims.out")
        if len(din) != len(dout):
            raise SchemaError("dims", "'in' and 'out' must have the same length")
        rep = doc["repr"]
        if rep not in REPRS:
            raise SchemaError("repr", f"expected one of {list(REPRS)}, got {rep!r}")
        n, m = prod(din), prod(dout)
        raw = doc["data"]
        if rep == "kraus":
            if not isinstance(raw, list) or not raw:
                raise SchemaError("data", "expected a nonempty list of Kraus matrices")
            data = tuple(_matrix(op, f"data[{k}]", m, n) for k, op in enumerate(raw))
        elif rep == "aform":
            data = _matrix(raw, "data", m * m, n * n)
        else:
            data = _matrix(raw, "data", n * m, n * m)
        return cls(tuple(din), tuple(dout), rep, data)

    @classmethod
    def from_json(cls, text) -> "ChannelFile":
        if isinstance(text, (bytes, bytearray)):
            try:
                text = text.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(f"input is not UTF-8: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        return cls.from_document(doc)

    @classmethod
    def from_channel(cls, obj, rep: str = "aform") -> "ChannelFile":
        op = obj.op if isinstance(obj, BipartiteOp) else obj
        if isinstance(obj, BipartiteOp):
            s = obj.shape
            din, dout = (s.nA, s.nB), (s.mA, s.mB)
        else:
            din, dout = (op.n,), (op.m,)
        if rep == "aform":
            data = np.array(op.aform)
        elif rep == "choi":
            data = to_choi(op)
        elif rep == "kraus":
            data = minimal_kraus(op).ops
        else:
            raise ValueError(f"unknown representation {rep!r}")
        return cls(din, dout, rep, data)

    def to_channel(self) -> SuperOp | BipartiteOp:
        n, m = prod(self.dims_in), prod(self.dims_out)
        if self.repr == "kraus":
            op = from_kraus(KrausSet(n, m, tuple(self.data)))
        elif self.repr == "aform":
            op = SuperOp(n, m, self.data)
        else:
            op = from_choi(self.data, n, m)
        if self.bipartite:
            (na, nb), (ma, mb) = self.dims_in, self.dims_out
            return BipartiteOp(BipartiteShape(na, nb, ma, mb), op)
        return op

    def to_document(self) -> dict:
        if self.repr == "kraus":
            data = [encode_matrix(k) for k in self.data]
        else:
            data = encode_matrix(self.data)
        return {
            "dims": {"in": list(self.dims_in), "out": list(self.dims_out)},
            "repr": self.repr,
            "data": data,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document())


def encode_matrix(a) -> list:
    a = np.asarray(a, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def parse_channel(text) -> SuperOp | BipartiteOp:
    return ChannelFile.from_json(text).to_channel()


def to_document(obj, rep: str = "aform") -> dict:
    return ChannelFile.from_channel(obj, rep).to_document()


def dump_channel(obj, rep: str = "aform") -> str:
    return ChannelFile.from_channel(obj, rep).to_json()
