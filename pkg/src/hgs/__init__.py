"""Counting Hopf Galois structures on separable extensions of odd prime-power
degree, through regular-subgroup/holomorph counting."""

from .aut import (
    Automorphism,
    CyclicHolomorphFrame,
    aut_order,
    aut_pair_count,
    automorphism_count,
    automorphism_group,
    cyclic_holomorph_frame,
    holomorph,
    holomorph_membership,
    sylow_p_of_cyclic_holomorph,
)
from .byott import HgsRow, count_embeddings, hgs_count, hgs_row, hgs_table
from .catalog import (
    LabeledGroup,
    P3Type,
    P3_COLUMNS,
    build_cpn_semidirect,
    build_cyclic,
    build_elementary,
    build_exp_p2,
    build_heisenberg,
    build_mixed,
    build_P1,
    build_P2,
    classify_p3_type,
    regular_representation,
)
from .groups import PermGroup, PointedGroup, all_subgroups, normalizes
from .oracle import oracle_row, regular_subgroups_normalized_by
from .perm import Perm, compose, cycle_type, element_order, format_cycles, inverse, parse_cycles
from .transgrp import TransitiveGroupRecord, load_corpus, parse_transitive_file, resolve_spec

__version__ = "0.1.0"
