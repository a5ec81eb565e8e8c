"""Finite and finitely presented groupoids, their (2-)limits and (2-)colimits,
and checks of the cosheaf and costack conditions on combinatorial spaces."""

from .core import ConcreteFunctor, ConcreteGroupoid, NatIso, is_equivalence, is_full_and_faithful, validate
from .cosheaf import (
    check_cosheaf_sets, check_sh, check_st, check_vankampen, induced_map_to_terminal, pi0_cosheaf,
    terminal_cosheaf_map,
)
from .deformation import deform
from .diagrams import (
    CONTRAVARIANT, COVARIANT, GroupoidDiagram, chain, delta_comparison, diagram_colim, diagram_tc,
    filtered_colim, span,
)
from .equivalence import Verdict, are_equivalent, battery_invariant, equivalence_fingerprint
from .errors import (
    CoverError, GroupoidError, NotFilteredError, ResourceLimitError, SchemaError, ShapeError,
)
from .functor_groupoid import LazyFunctorGroupoid, enumerate_functors, functor_groupoid
from .limits import StrictLimit, TwoLimit, diagram_lim, diagram_tl, gamma_embedding
from .poset import FinitePoset
from .presentation import PresentedGroupoid, PresFunctor, Word, concretize
from .space import Complex2, Subcomplex, build_nerve, pi0, pi1

__all__ = [
    "CONTRAVARIANT", "COVARIANT", "Complex2", "ConcreteFunctor", "ConcreteGroupoid", "CoverError",
    "FinitePoset", "GroupoidDiagram", "GroupoidError", "LazyFunctorGroupoid", "NatIso", "NotFilteredError",
    "PresFunctor", "PresentedGroupoid", "ResourceLimitError", "SchemaError", "ShapeError", "StrictLimit",
    "Subcomplex", "TwoLimit", "Verdict", "Word", "are_equivalent", "battery_invariant", "build_nerve",
    "chain", "check_cosheaf_sets", "check_sh", "check_st", "check_vankampen", "concretize", "deform",
    "delta_comparison", "diagram_colim", "diagram_lim", "diagram_tc", "diagram_tl", "enumerate_functors",
    "equivalence_fingerprint", "filtered_colim", "functor_groupoid", "gamma_embedding",
    "induced_map_to_terminal", "is_equivalence", "is_full_and_faithful", "pi0", "pi0_cosheaf", "pi1",
    "span", "terminal_cosheaf_map", "validate",
]
