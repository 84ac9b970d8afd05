"""Straighten random two-letter elements for the sl2 datum."""

import random

from qshuffle import UElement, from_kac_moody, straighten, upsilon
from qshuffle.words import word


def main(seed=0):
    z = from_kac_moody([[2]])
    rng = random.Random(seed)
    for _ in range(5):
        d = rng.randint(-2, 2)
        a = UElement("+")
        for _ in range(2):
            e = rng.randint(-2, 2)
            a = a + UElement.of_word(word((0, e), (0, d - e)), coeff=rng.randint(1, 3))
        s = straighten(a, z)
        same = upsilon(s, z, {0: 2}) == upsilon(a, z, {0: 2})
        print(a.to_string(), "->", s.to_string(), "(upsilon preserved: %s)" % same)


if __name__ == "__main__":
    main()
