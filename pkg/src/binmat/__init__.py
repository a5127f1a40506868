"""Binary matroids: GF(2) representations, connectivity, minors and splitter certificates."""

__version__ = "0.1.0"

from .bmx import BmxParseError, emit_matroid, parse_matroid, read_matroid, write_matroid
from .catalog import CatalogScope, catalog, enumerate_binary_matroids
from .families import (
    FamilySpec,
    ag32,
    biwheel,
    biwheel_plus,
    construct,
    cycle_K4,
    fano,
    fano_dual,
    graphic_from_edges,
    mobius_delta,
    mobius_delta_minus_z,
)
from .gf2 import BitMatrix, DimensionError, rank, rref, solve_membership
from .iso import IsoWitness, are_isomorphic
from .matroid import BinaryMatroid
from .minors import MinorCertificate, ResourceLimitExceeded, has_minor
from .splitter import (
    DichotomyResult,
    HypothesisError,
    HypothesisReport,
    NoCertificateFound,
    SplitterCertificate,
    check_hypotheses,
    exhaustive_removal_oracle,
    find_candidate_element,
    splitter_step,
    zhou_dichotomy_classify,
)
from .structure import (
    ConnectivityClass,
    FanOrdering,
    Quad,
    Separation,
    connectivity_class,
    fans,
    find_violator,
    quads,
    triads,
    triangles,
)
from .suites import SuiteReport, verify_lemma_suite
