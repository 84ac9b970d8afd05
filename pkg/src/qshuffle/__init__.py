"""Exact computations with shuffle algebras and quadratic quantum loop groups."""

from .errors import (BudgetExhausted, NotDivisible, ParseError, PoleAtValue, QShuffleError,
                     SignMismatch)
from .exactfield import Q, RatFunc, format_scalar, parse_scalar, qpow
from .laurent import LaurentPoly, VarId, const, var
from .pairing import pair_minus, pair_plus, pair_words_oracle
from .quantum import (Budget, MembershipVerdict, UElement, kernel_window, membership,
                      phi_map, psi_map, relation_element, straighten, transfer_kernel, u_mul,
                      upsilon)
from .shuffle import ShuffleElement, shuffle_mul, word_to_shuffle
from .words import Letter, is_non_increasing, lead, leading_word, word
from .zeta import (FactoredZeta, SpecPoint, ZetaDatum, find_wheels, from_kac_moody, from_quiver,
                   is_symmetric, specialize)

__version__ = "0.1.0"
