"""Quasifields, extra special groups, bricks, and sum-product graphs."""

from ._core import (  # noqa: F401
    AssocReport,
    AxiomCheck,
    AxiomReport,
    Brick,
    CoverageReport,
    EdgeWitness,
    Error,
    Family,
    GElem,
    GroupParams,
    GroupSubset,
    HGraph,
    JacobiResult,
    MixingResult,
    NoConvergence,
    NotAField,
    NotMFamily,
    NotPrime,
    NoWitness,
    PairResult,
    ParseError,
    PreconditionFailed,
    QTable,
    RelationCheck,
    RelationReport,
    SpectralReport,
    SPGraph,
    TooLarge,
    brick_elements,
    carry_f,
    certificate,
    check_associativity_exhaustive,
    check_associativity_sampled,
    check_relations,
    coset_contained,
    coverage,
    dot,
    eq1_check,
    g_decode,
    g_encode,
    gpow,
    h_graph,
    h_mul,
    identity,
    inverse,
    is_prime,
    jacobi_eigenvalues,
    large_z_branch,
    lemma4_set_check,
    load_brick,
    m_mul,
    m_squared_check,
    matrix_check,
    mixing_check,
    mul,
    product_set,
    qf_load,
    qf_prime,
    qf_verify,
    shifted_intersection,
    spectrum,
    sumset,
)

__all__ = [name for name in dir() if not name.startswith("_")]
