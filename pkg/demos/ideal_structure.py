"""Principal series: peeling a monoid into Brandt factors.

Each step of the series adjoins one J-class whose lower classes are already
present; the quotient of consecutive ideals collapses everything below to a
single zero. For rook monoids the classes are the rank levels and every
factor is a Brandt semigroup over a symmetric group.
"""

from invalg.families import rook_monoid, rook_monoid_restricted_3
from invalg.structure import classify_hm, j_classes, principal_series


def main():
    for name, S in (("rook:2", rook_monoid(2)),
                    ("rook:3", rook_monoid(3)),
                    ("rook3-restricted", rook_monoid_restricted_3()),
                    ("rook:4", rook_monoid(4))):
        jc = j_classes(S)
        ser = principal_series(S)
        hm = classify_hm(S)
        print(f"--- {name} (size {S.size})")
        print(f"  J-class sizes: {[len(c) for c in jc.classes]}")
        for k, ((F, tag), ideal) in enumerate(zip(ser.factors, ser.chain)):
            print(f"  S_{k} size={len(ideal)} factor={tag}")
        if hm.is_hm:
            print(f"  every factor abelian: (h,m)=({hm.h},{hm.m})")
        else:
            print(f"  non-abelian factor present; lcm of exponents {hm.m}")
        print()


if __name__ == "__main__":
    main()
