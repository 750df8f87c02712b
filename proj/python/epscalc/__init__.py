"""Verified, limit-free calculus: certified envelopes, jets, Taylor models,
bracketed integrals, and limit verdicts, all backed by curve-area kernels."""

from ._core import (
    CertificationError,
    CheckRecord,
    DomainError,
    ErrorEnvelope,
    ExprParseError,
    FunnelBox,
    IntegralBracket,
    Jet,
    LimitVerdict,
    PeanoVerdict,
    TaylorJet,
    Witness,
    check_taylor,
    cos_sin,
    cosh_sinh,
    exp,
    ftc_jet,
    funnel,
    integrate,
    jet,
    limit,
    ln,
    mean_value_witness,
    pi,
    taylor,
    value,
    verify,
)

__all__ = [
    "CertificationError",
    "CheckRecord",
    "DomainError",
    "ErrorEnvelope",
    "ExprParseError",
    "FunnelBox",
    "IntegralBracket",
    "Jet",
    "LimitVerdict",
    "PeanoVerdict",
    "TaylorJet",
    "Witness",
    "check_taylor",
    "cos_sin",
    "cosh_sinh",
    "exp",
    "ftc_jet",
    "funnel",
    "integrate",
    "jet",
    "limit",
    "ln",
    "mean_value_witness",
    "pi",
    "taylor",
    "value",
    "verify",
]
