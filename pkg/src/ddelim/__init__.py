"""Elimination, consistency and bounds for differential-difference polynomial systems."""
from .ddpoly import (DSPolynomial, PolySystem, VarRef, delta_derive, measure, prolong,
                     sigma_shift, var, x, y)
from .elim import (EliminationReport, iterative_deepening_eliminate, sigma_power_membership,
                   truncated_consistency, witness_refute)
from .field import QQ, QQ_t, RatFunc
from .groebner import MonomialOrder, buchberger, normal_form
from .parser import parse, parse_polynomial
from .seq import SequencePoint, evaluate, is_partial_solution, unroll_recurrence

__version__ = "0.1.0"
