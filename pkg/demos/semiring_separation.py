"""Two additions on the same seven matrices, told apart by one identity.

The multiplicative reduct of the seven Boolean matrices is an inverse
semigroup with a natural partial order, and the infimum in that order is
one way to add. Entrywise Boolean OR is another. Both give additively
idempotent semirings over the same multiplication, but the identity
(xy + yx)^2 ~ x^2 + y^2 separates them.
"""

from invalg.checker import check_identity, render_report
from invalg.claims import build_algebra
from invalg.families import parse_matrix, rook_monoid
from invalg.order_semiring import inf_table, natural_order
from invalg.terms import parse_term


def main():
    lhs, rhs = parse_term("(x*y+y*x)^2"), parse_term("x^2+y^2")

    nat = build_algebra("sigma7:nat")
    rep = check_identity(nat, lhs, rhs)
    print("with + as the natural-order infimum:")
    print(render_report(rep, nat, lhs, rhs))

    boolean = build_algebra("sigma7:bool")
    rep = check_identity(boolean, lhs, rhs)
    print("with + as entrywise OR:")
    print(render_report(rep, boolean, lhs, rhs))

    # on rook matrices the infimum is simply the entrywise AND
    S = rook_monoid(2)
    inf = inf_table(natural_order(S))
    print("infimum on rook:2 = entrywise AND; for example")
    a, b = S.labels.index("10/01"), S.labels.index("10/00")
    print(f"  inf({S.labels[a]}, {S.labels[b]}) = {S.labels[int(inf[a, b])]}")


if __name__ == "__main__":
    main()
