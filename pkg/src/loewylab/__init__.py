"""Exact computation of Loewy lengths, regularity and lifting certificates for local rings."""

from .certify import build_certificate, certified_bound, linearity_defect_check, verify_certificate
from .graded import hilbert_numerator, is_cohen_macaulay, krull_dim, random_linear_sop, tangent_cone
from .harness import HarnessConfig, InvariantReport, corpus, ring_by_id, verify
from .koszul import castelnuovo_mumford_regularity, regularity
from .localring import artinian_reduction, cohen_presentation, gll_estimate, loewy_length
from .presentation import RingSpec, make_ring, parse_ring, serialize_ring
from .resolve import betti_numbers, complexity_probe, minimal_resolution

__version__ = "0.1.0"
