"""Command-line front end.

Results go to stdout as JSON, diagnostics to stderr.  Exit status is 0 on
success, 1 when a computation fails on valid input and 2 for bad input.
"""

import argparse
import json
import sys

import numpy as np

from . import bipartite as bp
from .channelfile import ChannelFile, encode_matrix
from .channels import channel_checks
from .errors import ComputationError, InputError
from .superop import compose, convolve, norm_lp, spectrum, to_choi


class CLIInputError(InputError):
    pass


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                text = fh.read()
    except OSError as exc:
        raise CLIInputError(f"{path}: {exc.strerror}") from exc
    try:
        return ChannelFile.from_json(text).to_channel()
    except InputError as exc:
        raise CLIInputError(f"{path}: {exc}") from exc


def _op(obj):
    return obj.op if isinstance(obj, bp.BipartiteOp) else obj


def _rewrap(result, *sources):
    """Keep the bipartite structure when every operand had the same one."""
    shapes = {s.shape for s in sources if isinstance(s, bp.BipartiteOp)}
    if len(shapes) == 1 and all(isinstance(s, bp.BipartiteOp) for s in sources):
        shape = shapes.pop()
        if result.dims == (shape.n, shape.m):
            return bp.BipartiteOp(shape, result)
    return result


def _complex_pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _emit(obj, out=None):
    text = json.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_choi(args):
    obj = _read(args.file)
    _emit({"dims": ChannelFile.from_channel(obj).to_document()["dims"],
           "choi": encode_matrix(to_choi(_op(obj)))})


def cmd_conv(args):
    a, b = _read(args.file1), _read(args.file2)
    res = _rewrap(convolve(_op(a), _op(b)), a, b)
    _emit(ChannelFile.from_channel(res, "aform").to_document(), args.output)


def cmd_compose(args):
    a, b = _read(args.file1), _read(args.file2)
    res = compose(_op(a), _op(b))
    if isinstance(a, bp.BipartiteOp) and isinstance(b, bp.BipartiteOp):
        sa, sb = a.shape, b.shape
        res = bp.BipartiteOp(bp.BipartiteShape(sb.nA, sb.nB, sa.mA, sa.mB), res)
    _emit(ChannelFile.from_channel(res, "aform").to_document(), args.output)


def cmd_spectrum(args):
    eigs = spectrum(_op(_read(args.file)), args.cluster_tol)
    _emit({
        "hermitian": eigs.hermitian,
        "cluster_tol": eigs.cluster_tol,
        "values": [_complex_pair(v) for v in eigs.values],
        "clusters": [
            {"eigenvalue": _complex_pair(lam), "multiplicity": k}
            for lam, k in zip(eigs.representatives, eigs.multiplicities)
        ],
    })


def cmd_norm(args):
    _emit({"p": args.p, "norm": norm_lp(_op(_read(args.file)), args.p)})


def cmd_check(args):
    _emit(channel_checks(_op(_read(args.file)), args.tol).to_dict())


def _selector(text: str):
    if text == "most-negative":
        return text
    if text.startswith("index:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise CLIInputError(f"--eig: expected 'most-negative' or 'index:k', got {text!r}")


def cmd_witness(args):
    obj = _read(args.file)
    if not isinstance(obj, bp.BipartiteOp):
        raise CLIInputError(f"{args.file}: dims: witness needs a bipartite channel (two-entry dims)")
    try:
        report = bp.build_witness(obj, _selector(args.eig))
    except IndexError as exc:
        raise CLIInputError(f"--eig: {exc}") from exc
    out = report.summary()
    out["witness"] = ChannelFile.from_channel(report.witness, "aform").to_document()
    _emit(out)


def cmd_demo(args):
    cnot = bp.cnot_channel()
    eigs = spectrum(bp.pt_A(cnot).op)
    report = bp.build_witness(cnot)
    out = report.summary()
    out["pt_spectrum"] = [
        {"eigenvalue": float(np.real(lam)), "multiplicity": k}
        for lam, k in zip(eigs.representatives, eigs.multiplicities)
    ]
    _emit(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superconv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("choi", help="print the Choi matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_choi)

    for name, func, what in (("conv", cmd_conv, "convolution"), ("compose", cmd_compose, "composition F1 o F2")):
        s = sub.add_parser(name, help=f"write the {what} as an aform channel file")
        s.add_argument("file1")
        s.add_argument("file2")
        s.add_argument("-o", "--output")
        s.set_defaults(func=func)

    s = sub.add_parser("spectrum", help="clustered eigenvalues of the Choi matrix")
    s.add_argument("file")
    s.add_argument("--cluster-tol", type=float, default=None)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("norm", help="entrywise l1/l2 norm")
    s.add_argument("file")
    s.add_argument("--p", type=int, choices=(1, 2), default=2)
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("check", help="CP / TP / unital / unitary report")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("witness", help="nonseparability witness for a bipartite channel")
    s.add_argument("file")
    s.add_argument("--eig", default="most-negative", help="most-negative | index:k")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("demo", help="run a worked example")
    s.add_argument("example", choices=("cnot",))
    s.set_defaults(func=cmd_demo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
