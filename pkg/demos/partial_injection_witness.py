"""A finite inverse semigroup that satisfies x^2 ~ x^3 but not v ~ v^2.

Each generator is a partial injection on the letter positions of the unary
word w. Plain letters shift their position up by one, inverted letters shift
it down. Evaluating w at the inverse generators therefore chains the whole
word into the single pair {last -> 0}, while the square of w evaluates to
the empty map: one substitution separating v_{2,1}^{(h)} from its square.
"""

from invalg.checker import check_identity, render_report
from invalg.families import kadourek_generators, kadourek_semigroup
from invalg.terms import build_v, build_w, phi_psi, print_term


def main():
    for h in (1, 2):
        print(f"--- level h={h}")
        gens = kadourek_generators(2, h)
        for var, g in gens:
            print(f"  chi{list(var)} = {g.label()}")
        sg, _, gen_map = kadourek_semigroup(2, h)
        print(f"  closure size: {sg.size}")

        w = build_w(2, h)
        tau = {v: int(sg.inv[e]) for v, e in gen_map.items()}
        from invalg.terms import evaluate
        val = evaluate(w, sg, tau)
        sq = evaluate(type(w)(letters=w.letters + w.letters), sg, tau)
        print(f"  w at the inverse generators: {sg.labels[val]}")
        print(f"  its square:                  {sg.labels[sq]}")

        # phi turns that into a substitution refuting v ~ v^2
        phi, _ = phi_psi(2, h)
        v = build_v(2, 1, h)
        witness = {}
        for var in sorted(set(v.letters)):
            (base, sign), = phi[var].letters
            e = gen_map[base]
            witness[var] = int(sg.inv[e]) if sign > 0 else int(e)
        rep = check_identity(sg, v, v * v, mode="witness", witness=witness)
        print(f"  v_{{2,1}}^{{({h})}} ~ square: {rep.verdict}")
        print()


if __name__ == "__main__":
    main()
