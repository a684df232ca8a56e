"""hyparr: exact lattices, modular elements and supersolvability for complex
hyperplane arrangements.

All arithmetic runs over cyclotomic fields Q(zeta_n) with exact rationals;
no tolerances exist anywhere.  See the README for the CLI and the
verification suite.
"""

__version__ = "0.1.0"

from ._kernel import backend as kernel_backend
from .analysis import (ModularityVerdict, PoincarePolynomial, Rank2Report,
                       SupersolvabilityCertificate, check_rank2_criterion,
                       exponents_from_poincare, exponents_if_supersolvable,
                       is_modular, is_supersolvable, mobius, modular_flats_of_rank,
                       poincare, replay_witness, validate_certificate)
from .arrangement import (Arrangement, Flat, IntersectionLattice, build_lattice,
                          brute_force_lattice, closure, deletion, essentialize,
                          in_lattice, irreducible_decomposition, localization,
                          make_arrangement, product, restriction)
from .cyclo import CyclotomicNumber, cyclotomic_polynomial, embed, root_of_unity
from .errors import (HyparrError, InternalInconsistencyError, InvalidHyperplaneError,
                     ParseError, RefusalError)
from .linalg import (LinearForm, Subspace, contains, intersect, subspace_from_forms,
                     subspace_sum)
from .parse import parse_arrangement_file, parse_arrangement_text, parse_form, parse_scalar
from .reflection import (CatalogEntry, braid_arrangement, build_named, catalog,
                         exceptional_arrangement, monomial_arrangement)

__all__ = [name for name in dir() if not name.startswith("_")]
