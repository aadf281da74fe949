"""Exact automorphism groups and permutation representations of evolution algebras."""

from .algebra import (
    EvolutionAlgebra,
    idempotent_natural_elements,
    is_idempotent,
    permute_basis,
    rescale_basis,
    zero_pattern_digraph,
)
from .autgroup import (
    AutomorphismGroup,
    WeightedAutomorphism,
    automorphism_group,
    check_automorphism,
    kernel,
    lambda_B,
    lambda_from_diagonal,
    rho,
    rho_tilde,
    solve_lambda,
)
from .field import FieldSpec, ModP, nth_roots
from .permgroup import (
    PermGroup,
    are_isomorphic_small,
    equivalence_of_representations,
    is_k_transitive,
    transitivity_degree,
)
from .realize import LabeledGraph, build_algebra_from_graph, graph_automorphisms, verify_realization

__version__ = "0.1.0"
