# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the irsbim simulator core."""

from ._core import (  # noqa: F401
    __version__,
    bpcu,
    colex_rank,
    colex_unrank,
    constellation,
    encode,
    decode,
    validate_design,
    pattern_bank,
    q_function,
    kummer_1f1,
    pcf_d,
    mrc_tail,
    pairwise_params,
    prob_jk,
    prob_jk_pochhammer,
    kappa_pdf,
    average_ber_bound,
    Simulator,
    parse_config,
)
