"""Exact computations with exponential maps on finitely presented algebras.

Fields (Q and F_p), sparse polynomials, Groebner bases, presented algebras
and their tensor products, verified exponential maps with their higher
derivations, invariant-ring rewriting, conductors of curve subalgebras,
specialization maps, and a small script language driving all of them.
"""

from .algebra import AlgebraElement, AlgebraHom, PresentedAlgebra, TensorAlgebra, hom, present, tensor
from .conductor import CurveSubalgebra, check_u_divides_Dn_u, conductor_generator, member
from .expmap import (
    AxiomViolation,
    ExponentialMap,
    ak_upper_bound,
    check_iterative,
    eps1_automorphism,
    extend_to_tensor,
    from_lnd,
    make_expmap,
)
from .field import GF, QQ, Field, Scalar, binomial_mod_p
from .groebner import GroebnerBasis, buchberger
from .invariant import default_pool, minimal_positive_degree, rewrite_in_invariants
from .poly import GREVLEX, LEX, PolyRing, Polynomial, poly_ring
from .specialize import find_good_point, push_expmap, sigma_hom

__all__ = [
    "AlgebraElement", "AlgebraHom", "AxiomViolation", "CurveSubalgebra", "ExponentialMap", "Field",
    "GF", "GREVLEX", "GroebnerBasis", "LEX", "PolyRing", "Polynomial", "PresentedAlgebra", "QQ",
    "Scalar", "TensorAlgebra", "ak_upper_bound", "binomial_mod_p", "buchberger", "check_iterative",
    "check_u_divides_Dn_u", "conductor_generator", "default_pool", "eps1_automorphism",
    "extend_to_tensor", "find_good_point", "from_lnd", "hom", "make_expmap", "member",
    "minimal_positive_degree", "poly_ring", "present", "push_expmap", "rewrite_in_invariants",
    "sigma_hom", "tensor",
]
