"""Shattering certificates and VC-dimension estimation via ERM oracles.

The library decides whether a hypothesis class shatters a point set by
running the class's empirical-risk-minimization oracle over all labelings,
estimates VC dimension by Hoeffding-calibrated random sampling of point
sets, and validates both against an exact brute force for finite classes.
"""

from .core import (
    ContractViolation,
    DomainError,
    ErmOutcome,
    HypothesisClass,
    LabelVector,
    LabeledSample,
    OracleError,
    Point,
    certified_outcome,
    empirical_loss,
)
from .classes import (
    ConceptMatrix,
    FiniteClass,
    HalfspacesLP,
    HalfspacesPerceptron,
    Intervals,
    MatrixParseError,
    Rectangles,
    Thresholds,
)
from .shattering import (
    ShatterVerdict,
    enumerate_labelings,
    shatters,
    shatters_matrix_reference,
)
from .estimator import (
    Certificate,
    DepthStats,
    DomainSampler,
    EstimationAborted,
    ExhaustiveFinite,
    FiniteUniform,
    UniformBox,
    VcEstimate,
    estimate_vcdim,
    hoeffding_sample_size,
    run_depth,
)
from .exact import exact_shattered_witness, exact_vcdim_matrix

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ConceptMatrix",
    "ContractViolation",
    "DepthStats",
    "DomainError",
    "DomainSampler",
    "ErmOutcome",
    "EstimationAborted",
    "ExhaustiveFinite",
    "FiniteClass",
    "FiniteUniform",
    "HalfspacesLP",
    "HalfspacesPerceptron",
    "HypothesisClass",
    "Intervals",
    "LabelVector",
    "LabeledSample",
    "MatrixParseError",
    "OracleError",
    "Point",
    "Rectangles",
    "ShatterVerdict",
    "Thresholds",
    "UniformBox",
    "VcEstimate",
    "certified_outcome",
    "empirical_loss",
    "enumerate_labelings",
    "estimate_vcdim",
    "exact_shattered_witness",
    "exact_vcdim_matrix",
    "hoeffding_sample_size",
    "run_depth",
    "shatters",
    "shatters_matrix_reference",
]
