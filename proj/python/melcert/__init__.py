"""Rigorous enclosures and certificates for perturbed manifold intersections."""

import json

from ._melcert import (
    CertificateError,
    ConfigError,
    ParseError,
    certify_root,
    format_double,
    integrals,
    ivec_norm_ub,
    manifold_samples,
    sigma_min_lb,
    spectral_norm_ub,
    tool_version,
    verify_practical,
)
from ._melcert import lu_verify as _lu_verify

__all__ = [
    "CertificateError",
    "ConfigError",
    "ParseError",
    "certify_root",
    "format_double",
    "integrals",
    "ivec_norm_ub",
    "lu_verify",
    "manifold_samples",
    "sigma_min_lb",
    "spectral_norm_ub",
    "tool_version",
    "verify_practical",
]


def lu_verify(config=None):
    """Run the Lerman-Umanskii certificate; config is a dict of overrides."""
    return json.loads(_lu_verify(json.dumps(config or {})))
