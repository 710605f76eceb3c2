"""t-wise presence-condition coverage and sampling for preprocessor-based product lines."""

from .coverage import CoverageReport, FaultSpec, brute_force_coverage, coverage, fault_covered
from .extract import extract_file, extract_text, extract_tree, parse_condition
from .logic import Configuration, FeatureModel, PresenceCondition, active, canonicalize, complete
from .sampler import Sample, random_sample, sample, sample_grouped
from .sat import SatContext, extend_to_complete, valid
from .transform import PcUniverse, conjoin, equivalent, negate, preprocess, simplify

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "CoverageReport",
    "FaultSpec",
    "FeatureModel",
    "PcUniverse",
    "PresenceCondition",
    "Sample",
    "SatContext",
    "active",
    "brute_force_coverage",
    "canonicalize",
    "complete",
    "conjoin",
    "coverage",
    "equivalent",
    "extend_to_complete",
    "extract_file",
    "extract_text",
    "extract_tree",
    "fault_covered",
    "negate",
    "parse_condition",
    "preprocess",
    "random_sample",
    "sample",
    "sample_grouped",
    "simplify",
    "valid",
]
