"""
Symbolic fixtures, which have no structure file form.
"""

from collections import OrderedDict

from trussalg.heap_modules import hom_from_module
from trussalg.modules import TrussModule, free_pointed_module
from trussalg.trusses import progression_truss, universal_ring


def integer_truss():
    """The truss Z = 1Z + 0 of the integers."""
    return progression_truss(1, 0, name="Z")


def z63():
    """The truss 6Z + 3 of odd multiples of 3 (no unit)."""
    return progression_truss(6, 3, name="Z63")


def free_z63():
    """The free pointed module on one symbol over 6Z + 3."""
    free, _ = free_pointed_module(z63(), validate=False)
    return free


def integer_heap_of_modules():
    """The heap of modules of Z over the truss Z, `t |>_m n = t(n - m) + m`."""
    Z = integer_truss()
    module = TrussModule(Z, Z.heap, lambda t, m: t * m, name="Z", validate=False)
    return hom_from_module(module, name="H(Z)")


def universal_ring_of(truss, o=None):
    """R(T) of a truss, as a fixture (for example R(T39))."""
    ring, _ = universal_ring(truss, o, validate=False)
    return ring


SYMBOLIC = OrderedDict(
    [
        ("Z", integer_truss),
        ("Z63", z63),
        ("F(Z63)", free_z63),
        ("H(Z)", integer_heap_of_modules),
    ]
)


def symbolic_fixtures():
    """OrderedDict: Freshly built symbolic fixtures, by name."""
    return OrderedDict((name, factory()) for name, factory in SYMBOLIC.items())
