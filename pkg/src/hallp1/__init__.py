"""Exact Hall algebras of quivers and of coherent sheaves on P^1 over F_q,
their Hopf structure, the automorphic generating functions on P^1, and the
Heisenberg and Drinfeld doubles."""
from .finitary import CohP1, Quiver, TorsionLocal, Window, coh
from .hallhopf import Elem, b_mul, coproduct, green_pair, hall_mul, parse_element, ringel_mul
from .kernels import BACKEND as KERNEL_BACKEND
from .scalars import LaurentPoly, RationalFn, Scalar

__version__ = "0.1.0"

__all__ = ["CohP1", "Quiver", "TorsionLocal", "Window", "coh", "Elem", "b_mul", "coproduct",
           "green_pair", "hall_mul", "ringel_mul", "parse_element", "Scalar", "LaurentPoly",
           "RationalFn", "KERNEL_BACKEND"]
