"""Checking an identity over a substitution space far beyond enumeration.

The nested word v_{2,6}^{(4)} has 256 distinct variables, so the full
substitution space over the 34-element rook monoid has 34^256 points. The
composed representation keeps each nesting level separate; the image of a
level is computed from the images of its inner parts, and renaming-equal
parts are computed once. The exact covered count is carried as a big
integer.
"""

import time

from invalg.checker import check_idempotent_image, image_set
from invalg.families import rook_monoid, rook_monoid_restricted_3
from invalg.terms import build_v, build_v_composed


def main():
    S = rook_monoid(3)
    cw = build_v_composed(2, 6, 4)

    start = time.perf_counter()
    rep = check_idempotent_image(S, cw)
    elapsed = time.perf_counter() - start

    print(f"verdict: {rep.verdict} in {elapsed:.2f}s")
    print(f"substitutions covered: {rep.substitutions_checked}")
    print(f"(that is about 10^{len(str(rep.substitutions_checked)) - 1})")

    # the level-1 image already lands in the subsemigroup without the
    # odd permutations, which is what makes the recursion work
    img = image_set(S, build_v(2, 6, 1))
    allowed = set(rook_monoid_restricted_3().labels)
    outside = [S.labels[v] for v in img.values if S.labels[v] not in allowed]
    print(f"\nlevel-1 image size: {len(img.values)}; values outside the "
          f"restricted monoid: {outside or 'none'}")


if __name__ == "__main__":
    main()
