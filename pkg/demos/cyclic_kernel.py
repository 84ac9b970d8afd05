"""Kernel element and membership on the cyclic three-vertex quiver."""

from qshuffle import LaurentPoly, ShuffleElement, UElement, kernel_window, membership, upsilon
from qshuffle import from_quiver, pair_plus
from qshuffle.shuffle import slot_vars
from qshuffle.words import word


def main():
    z = from_quiver([[0, 0, 1], [1, 0, 0], [0, 1, 0]], vertices=["i1", "i2", "i3"])
    n = {0: 1, 1: 1, 2: 1}
    phi = UElement("+", {word((0, 0), (1, 0), (2, 0)): 1,
                         word((1, 0), (2, -1), (0, 1)): 1,
                         word((2, -1), (0, 0), (1, 1)): 1})
    print("phi =", phi.to_string())
    print("upsilon(phi) == 0:", not upsilon(phi, z).body)

    basis = kernel_window((n, 0), (-1, 1), z)
    print("kernel in window [-1, 1]:", len(basis), "element(s)")
    for k in basis:
        print("  ", k.to_string())

    z1, z2, _ = slot_vars(n)
    for label, body in (("z1 - z2", LaurentPoly.monomial({z1: 1}) - LaurentPoly.monomial({z2: 1})),
                        ("1", LaurentPoly.constant(1))):
        R = ShuffleElement("-", n, body)
        v = membership(R, z)
        print("membership(%s): %s" % (label, v.status))
        if v.witness is not None:
            print("   witness pairs to", pair_plus(v.witness, R, z))


if __name__ == "__main__":
    main()
