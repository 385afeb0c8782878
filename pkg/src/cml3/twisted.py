"""The twisted commutative alternative algebra on the Grassmann space.

The product keeps the plain exterior product whenever one factor is even
and replaces the odd-odd case by d(x)y - x d(y).  Mixed-parity inputs are
split into homogeneous parts and recombined bilinearly, so loop elements
of the form 1 + a multiply directly.  On the subalgebra generated by the
underived generators every element cubes to zero.
"""

from __future__ import annotations

from . import _kernel
from .grassmann import GElement


def cmul(x: GElement, y: GElement) -> GElement:
    """Twisted product of two elements."""
    return GElement._wrap(_kernel.cmul_terms(x.raw(), y.raw()))


def associator(x: GElement, y: GElement, z: GElement) -> GElement:
    """Ternary associator (x*y)*z - x*(y*z) of the twisted product."""
    return cmul(cmul(x, y), z) - cmul(x, cmul(y, z))


def cube(x: GElement) -> GElement:
    """(x*x)*x under the twisted product.

    Vanishes on the subalgebra generated by the underived generators; for
    other inputs (for example the unit) the nonzero value is returned
    unchanged and the caller decides what that means.
    """
    return cmul(cmul(x, x), x)
