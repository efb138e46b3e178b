"""Finite distributive semilattices, their Boolean resolutions and matricial realizations."""

from .boolean import (Cone, SequentialSystem, embed_boolean, extend_hom,
                      synth_boolean_tower, triangle_factor, verify_cone)
from .bergman import (BratteliTower, MatricialAlgebraShape, MultiplicityMatrix,
                      nabla_v, synth_tower, verify_squares)
from .monoid import (FiniteCommutativeMonoid, idc, ideals, nabla, property_report,
                     strong_rip_witness)
from .order import FinitePoset, birkhoff, join_irreducibles, lower_sets, meet_irreducibles
from .semilattice import (AxiomError, Congruence, FiniteSemilattice, NotALatticeError,
                          NotDistributiveError, SemilatticeHom, boolean_lattice, chain,
                          is_distributive, quotient, validate)
from .serialization import dumps, load, to_document
from .temperate import (RationalVector, SetLatticeD, bd_closure, lift_hom, lift_tower,
                        propto_witness, refinement_witness, verify_lift_dlat)

__version__ = "0.1.0"
