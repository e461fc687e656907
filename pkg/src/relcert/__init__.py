"""Certified homotopy-theoretic constructions on finite relative categories.

The package represents finite categories by total composition tables,
builds zigzag/ladder categories and Grothendieck constructions on top of
them, and produces machine-checkable certificates: weak-homotopy-
equivalence certificates stratified by evidence strength, homotopy-
pullback certificates for commutative squares, a three-arrow-calculus
certificate, hom-space and level-gluing certificates for the levelwise
classification diagram, and bounded homotopy-category reports.  Every
certificate re-validates from its serialized evidence alone.
"""

from .budget import Budget, limit
from .classify import (
    CompletenessReport,
    HoHomReport,
    HtacCert,
    InsertPair,
    PadPair,
    SaturationReport,
    SegalCert,
    arrow_degeneracy,
    classification_homology_table,
    classification_level,
    completeness_report,
    ho_homset,
    hom_space_certificate,
    htac_certificate,
    identity_insertion_functors,
    pad_functors,
    saturation_report,
    segal_certificate,
)
from .errors import (
    BadIdentity,
    BadZigzagType,
    CubeNotCommutative,
    EdgeMismatch,
    InputParse,
    MissingComposite,
    NonAssociative,
    NotAFibration,
    RelcertError,
    ShapeMismatch,
    SizeBudgetExceeded,
    UnknownMorphism,
    UnknownObject,
)
from .fincat import (
    FinCat,
    Functor,
    NatTrans,
    arrow_category,
    compose_functors,
    constant_functor,
    discrete_category,
    enumerate_functors,
    enumerate_nat_trans,
    functor_category,
    identity_functor,
    nat_trans_zigzag,
    opposite,
    ordinal,
    product,
    slice_category,
    terminal_category,
    validate_category,
)
from .groth import (
    CatValuedBifunctor,
    FibrationReport,
    check_fibration,
    constant_diagram,
    fiber,
    opposite_functor,
    transition_functor,
    two_sided_grothendieck,
    verify_canonical_iso,
    zigzag_bifunctor,
)
from .homology import (
    ChainComplex,
    ChainMap,
    HomologySummary,
    WheCert,
    chain_map,
    composite_whe_certificate,
    find_contraction,
    homology,
    mapping_cone,
    nerve_complex,
    pi0,
    whe_certificate,
)
from .hpb import (
    HpbCert,
    Square,
    is_strict_pullback,
    parallel_whe_certificate,
    paste_certificates,
    product_certificate,
    pullback_square,
    strict_pullback,
    theorem_b_certificate,
    transport_certificate,
)
from .relcat import (
    RelCat,
    ShapeMap,
    ZigzagType,
    all_weq,
    dirs_of,
    enumerate_ladders,
    enumerate_zigzags,
    identities_only,
    induced_functor,
    insertion_functor,
    make_relative,
    node_functor,
    rel_functor_category,
    two_out_of_three,
    weq_relfun_line,
    weq_subcategory,
    zigzag_category,
)
from .serialize import dumps, loads, relcat_from_input_data, relcat_to_input_data, verify_certificate
from .snf import integer_rank, smith_normal_form, torsion_of

__version__ = "0.1.0"
