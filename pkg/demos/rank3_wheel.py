"""Wheels of the rank-3 Kac-Moody datum at degree (3, 2, 3)."""

from qshuffle import SpecPoint, find_wheels, from_kac_moody, qpow


def main():
    z = from_kac_moody([[4, -6, -10], [-6, 6, -6], [-10, -6, 4]])
    n = {0: 3, 1: 2, 2: 3}
    target = SpecPoint.from_sequence(n, [qpow(e) for e in (0, 4, 8, 2, 8, 2, 6, 10)])
    for p, w in find_wheels(z, n):
        mark = "  <- target" if p.same_as(target) else ""
        print(p, "cycle", w.cycle, "verified", w.verify(p, z), mark)


if __name__ == "__main__":
    main()
