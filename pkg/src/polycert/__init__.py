"""Vertex-edge graphs of rational polytopes, with checked certificates.

The prover enumerates the lexicographic perturbation graph of A x >= b,
collapses it to the vertex-edge graph and emits witnesses; the verifier
re-derives everything from the inequality data alone and finishes with a
Hirsch-bound audit (diameter versus facets minus dimension).
"""

from .bundle import load_bundle, write_bundle
from .instances import (InstanceSpec, gen_cross, gen_cube, gen_cyclic_polar,
                        load_ine)
from .polytope import HPolytope, load_poly, perturb, save_poly
from .prover import EnumerationError, build_certificates, enumerate_lex_graph
from .verifier import (CertificateBundle, Stage, Verdict, certify_stages,
                       hirsch_audit)

__version__ = "0.1.0"

__all__ = [
    "CertificateBundle", "EnumerationError", "HPolytope", "InstanceSpec",
    "Stage", "Verdict", "build_certificates", "certify_stages",
    "enumerate_lex_graph", "gen_cross", "gen_cube", "gen_cyclic_polar",
    "hirsch_audit", "load_bundle", "load_ine", "load_poly", "perturb",
    "save_poly", "write_bundle",
]
