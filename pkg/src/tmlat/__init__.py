"""Presentations of transversal matroids and their extension lattices."""

from .core import (GroundSet, SetSystem, SubsetLattice, make_system,
                   parse_lattice, parse_presentation, serialize, support)
from .matching import Matching, is_independent, max_matching, rank
from .matroid import (Matroid, is_transversal, matroid_doc, parse_matroid,
                      principal_extension, transversal_presentation)
from .presentations import (PresentationChain, cover_chain, is_maximal,
                            is_minimal, maximalize, minimal_presentations_below,
                            preceq, presentation_rank, reindexing_equivalent)
from .extlattice import (CommonExtensions, ExtensionRecord,
                         common_extension_lattice, cyclic_flat_supports,
                         extend, extension_lattice,
                         extension_lattice_from_supports, extension_matroid,
                         extension_matroids, hasse_dot, index_closure,
                         irreducibles, is_index_closed, iterated_extend,
                         tight_supports)
from .constructions import (build_maximal_presentation,
                            build_uniform_presentation, first_occurrence,
                            ideals_of_poset, validate_lattice)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
