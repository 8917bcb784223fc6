"""Toolkit for finite awareness and unawareness models."""

from __future__ import annotations

from .category import FHCategory, build_category
from .fh import FHModel, build_fh_model, fh_sat
from .hms import HMSModel, complete_with_pi_star, validate_model
from .lattice import Event, HMSFrame, build_frame
from .parser import parse_formula
from .semantics import extension, hms_sat, valid_in
from .syntax import print_formula
from .transforms import transform_with_trace

__version__ = "0.1.0"

__all__ = [
    "Event",
    "FHCategory",
    "FHModel",
    "HMSFrame",
    "HMSModel",
    "build_category",
    "build_fh_model",
    "build_frame",
    "complete_with_pi_star",
    "extension",
    "fh_sat",
    "hms_sat",
    "parse_formula",
    "print_formula",
    "transform_with_trace",
    "valid_in",
    "validate_model",
]
