"""Convolution algebra of superoperators and nonseparability witnesses."""

from .bipartite import (
    BipartiteOp,
    BipartiteShape,
    WitnessReport,
    build_witness,
    cnot_channel,
    pt_A,
    random_separable_channel,
    tensor_op,
)
from .channelfile import ChannelFile, dump_channel, parse_channel
from .channels import (
    ChannelReport,
    KrausSet,
    channel_checks,
    complementary_channel,
    convolve_kraus,
    from_kraus,
    minimal_kraus,
    schur_map,
    transposition_map,
    unitary_channel,
)
from .superop import (
    Spectrum,
    SuperOp,
    apply,
    compose,
    convolve,
    from_choi,
    identity_channel,
    identity_element,
    lagrange_projection,
    norm_lp,
    pt_input,
    spectrum,
    tau,
    to_choi,
    trace_conv,
    trace_hs,
)

__version__ = "0.1.0"
