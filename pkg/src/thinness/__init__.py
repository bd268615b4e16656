"""Exact thinness and its variants, graph products, product witnesses and certified bounds."""

from __future__ import annotations

from .bounds import BoundCertificate, lb_boxminus, lb_isoperimetric, lb_neighborhood, lb_product_suite, ub_suite
from .canon import canonical_key
from .constructions import compose, compose_witness, rule_catalog
from .errors import (
    CertificationError, ConfigError, DomainError, ParameterError, SizeError, ThinnessError,
)
from .families import family
from .graph import Graph, complement, induced_subgraph
from .harness import run_corpus, verify_theorem
from .products import ProductKind, apply_product
from .representation import VARIANTS, Partition, Variant, VertexOrdering, check_consistent, incompatibility_graph
from .solver import SolveResult, ThinWitness, brute_force_oracle, exact_value, thinness

__version__ = "0.1.0"
