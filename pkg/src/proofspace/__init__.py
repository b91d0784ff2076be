"""Proof complexes of unit-only linear logic, their integer homology, and
the subset monad on abstract simplicial complexes."""
from .complex import (Complex, ComplexError, Simplex, SimplicialMap, SizeGuardError, are_isomorphic,
                      down_closure_complex, format_facet_text, from_facets, parse_facet_text, standard_space)
from .homology import (HomologyGroup, IntegerMatrix, boundary_matrix, chain_complex, chain_map_of_simplicial_map,
                       homology_groups, homology_report, induced_homology_map, is_chain_map, smith_normal_form)
from .monad import (KleisliMap, homology_of_subset_space, iterate_subset, kleisli_compose, kleisli_of_relation,
                    mult, relation_of_kleisli, rs_functor_map, subset_complex, subset_map, unit)
from .proofs import ProofSpace, ProofTree, enumerate_proofs, proofs_space, witness_check
from .relations import (CountingRelation, SimplicialRelation, compose_relations, is_simplicial_relation,
                        naive_chain_image, verify_paper_counterexamples)
from .semantics import (Bool, CoherenceSpace, Formula, ParseError, bool_with, gustave, interpret,
                        parse_formula, space_complex)

__version__ = "0.1.0"
