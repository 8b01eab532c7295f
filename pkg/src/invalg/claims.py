"""Claim registry behind the verify-paper command.

Each claim is data: a builder spec for the algebra, term references, a mode,
and an expected verdict. The small engine below interprets the cases, so the
registry stays declarative and each claim id appears exactly once.
"""

import fnmatch
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core_algebra import (FiniteSemigroup, from_cayley_text, idempotents,
                           subsemigroup, with_inverses)
from .families import (AbelianGroupSpec, DimensionTooLarge, SizeExceeded,
                       abelian_group, adjoin_identity, b2, b21,
                       brandt_semigroup, direct_product, kadourek_semigroup,
                       parse_matrix, rook_monoid, rook_monoid_restricted_3,
                       sigma7)
from .checker import check_identity, check_idempotent_image, image_set
from .order_semiring import (AiSemiring, aperiodicity_index, from_semiring_text,
                             inf_table, make_nat_semiring, natural_order)
from .structure import principal_series
from .terms import (SemiringTerm, build_u, build_v, build_v_composed, build_w,
                    parse_term, phi_psi)


class BadSpec(Exception):
    pass


def build_algebra(spec: str):
    """Build an algebra from a builder spec string.

    Specs: brandt:<orders>:<i> (orders 'x'-separated), rook:<t>,
    rook3-restricted, b2, b21, sigma7[:bool|:nat], kadourek:<n>:<h>,
    group:<orders>, product:<a>,<b>, adjoin1:<a>, file:<path>.
    """
    try:
        return _build_algebra(spec)
    except BadSpec:
        raise
    except (ValueError, OSError, DimensionTooLarge, SizeExceeded) as err:
        raise BadSpec(f"cannot build {spec!r}: {err}") from err


def _build_algebra(spec: str):
    if spec == "b2":
        return b2()
    if spec == "b21":
        return b21()
    if spec == "rook3-restricted":
        return rook_monoid_restricted_3()
    if spec == "sigma7":
        return sigma7().reduct
    if spec == "sigma7:bool":
        return sigma7().bool_semiring
    if spec == "sigma7:nat":
        return make_nat_semiring(sigma7().reduct)
    if spec.startswith("rook:"):
        return rook_monoid(_int_field(spec, spec[5:]))
    if spec.startswith("brandt:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise BadSpec(f"brandt spec needs orders and index size: {spec!r}")
        return brandt_semigroup(_group_spec(spec, parts[1]),
                                _int_field(spec, parts[2]))
    if spec.startswith("group:"):
        return abelian_group(_group_spec(spec, spec[6:]))
    if spec.startswith("kadourek:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise BadSpec(f"kadourek spec needs points and height: {spec!r}")
        sg, _, _ = kadourek_semigroup(_int_field(spec, parts[1]),
                                      _int_field(spec, parts[2]))
        return sg
    if spec.startswith("product:"):
        body = spec[len("product:"):]
        if body.count(",") != 1:
            raise BadSpec(f"product spec needs exactly two factors: {spec!r}")
        a, b = body.split(",")
        left = build_algebra(a)
        right = build_algebra(b)
        if not isinstance(left, FiniteSemigroup) or not isinstance(right, FiniteSemigroup):
            raise BadSpec("product factors must be semigroups")
        return direct_product(left, right)
    if spec.startswith("adjoin1:"):
        inner = build_algebra(spec[len("adjoin1:"):])
        if not isinstance(inner, FiniteSemigroup):
            raise BadSpec("adjoin1 needs a semigroup")
        return adjoin_identity(inner)
    if spec.startswith("file:"):
        with open(spec[5:], "r", encoding="utf-8") as f:
            text = f.read()
        if "\n---\n" in text or text.startswith("---"):
            return from_semiring_text(text)
        return from_cayley_text(text)
    raise BadSpec(f"unknown builder spec {spec!r}")


def _int_field(spec, text):
    try:
        return int(text)
    except ValueError:
        raise BadSpec(f"bad integer field in {spec!r}")


def _group_spec(spec, text):
    try:
        orders = tuple(int(p) for p in text.split("x"))
    except ValueError:
        raise BadSpec(f"bad group orders in {spec!r}")
    return AbelianGroupSpec(orders)


def wrap_for_terms(algebra, lhs, rhs):
    """Semiring-flavored terms over a plain semigroup mean its natural
    semiring: inf for addition, the given multiplication.
    """
    flavored = isinstance(lhs, SemiringTerm) or isinstance(rhs, SemiringTerm)
    if flavored and isinstance(algebra, FiniteSemigroup):
        return make_nat_semiring(with_inverses(algebra))
    return algebra


# ---------------------------------------------------------------------------
# declarative cases

@dataclass(frozen=True)
class Case:
    kind: str                    # identity | idempotent-image | containment |
                                 # lemma22-tower | kadourek-witness | natsum | hadamard
    algebra: str = ""
    lhs: object = None
    rhs: object = None
    mode: str = "exhaustive"
    expect: str = "holds"
    params: tuple = ()


@dataclass(frozen=True)
class Claim:
    id: str
    locus: str
    description: str
    cases: tuple


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    locus: str
    ok: bool
    checked: int
    detail: str
    elapsed: float


def resolve_term(ref):
    if isinstance(ref, str):
        return parse_term(ref)
    kind = ref[0]
    if kind == "u":
        return build_u(*ref[1:])
    if kind == "v":
        return build_v(*ref[1:])
    if kind == "vc":
        return build_v_composed(*ref[1:])
    if kind == "w":
        return build_w(*ref[1:])
    if kind == "square":
        t = resolve_term(ref[1])
        return t * t
    raise ValueError(f"unknown term reference {ref!r}")


def _run_case(case: Case, workers: Optional[int]):
    """Returns (ok, substitutions_checked, note)."""
    if case.kind == "identity":
        algebra = build_algebra(case.algebra)
        lhs = resolve_term(case.lhs)
        rhs = resolve_term(case.rhs)
        algebra = wrap_for_terms(algebra, lhs, rhs)
        kwargs = dict(mode=case.mode, workers=workers)
        for key, val in case.params:
            kwargs[key] = val
        rep = check_identity(algebra, lhs, rhs, **kwargs)
        ok = _verdict_matches(rep.verdict, case.expect)
        note = rep.machine_line()
        return ok, rep.substitutions_checked, note

    if case.kind == "idempotent-image":
        S = build_algebra(case.algebra)
        cw = resolve_term(case.lhs)
        rep = check_idempotent_image(S, cw, workers=workers)
        ok = _verdict_matches(rep.verdict, case.expect)
        return ok, rep.substitutions_checked, rep.machine_line()

    if case.kind == "containment":
        S = build_algebra(case.algebra)
        word = resolve_term(case.lhs)
        target = build_algebra(case.params[0])
        img = image_set(S, word, workers=workers)
        target_labels = {target.label(e) for e in range(target.size)}
        stray = [v for v in img.values if S.label(v) not in target_labels]
        ok = not stray
        note = f"image values={len(img.values)} stray={len(stray)}"
        return ok, img.covered, note

    if case.kind == "lemma22-tower":
        orders, i_size, n = case.params
        T = adjoin_identity(brandt_semigroup(AbelianGroupSpec(orders), i_size))
        series = principal_series(T)
        elems = sorted(set(idempotents(T)) | set(series.chain[1]))
        sub, _ = subsemigroup(T, elems, closed_under_inv=True)
        m = AbelianGroupSpec(orders).exponent
        v = build_v(n, m, 1)
        rep = check_identity(sub, v, v * v, mode="exhaustive", workers=workers)
        ok = rep.verdict == "holds"
        return ok, rep.substitutions_checked, f"|S|={sub.size} " + rep.machine_line()

    if case.kind == "kadourek-witness":
        n, h = case.params
        sg, _, gen_map = kadourek_semigroup(n, h)
        phi, _ = phi_psi(n, h)
        v = build_v(n, 1, h)
        # the base substitution sends each variable to the inverse generator,
        # so a positive phi-letter picks inv(chi) and a negative one chi itself
        tau = {}
        for var in sorted(set(v.letters)):
            (base, sign), = phi[var].letters
            e = gen_map[base]
            tau[var] = int(sg.inv[e]) if sign > 0 else int(e)
        rep = check_identity(sg, v, v * v, mode="witness", witness=tau)
        points = (2 * n) ** h
        ok = (rep.verdict == "fails"
              and sg.label(rep.counterexample[1]) == f"{{{points}->0}}"
              and sg.label(rep.counterexample[2]) == "{}")
        return ok, rep.substitutions_checked, rep.machine_line()

    if case.kind == "natsum":
        S = build_algebra(case.algebra)
        expected_p, = case.params
        p = aperiodicity_index(S)
        if p != expected_p:
            return False, 0, f"aperiodicity index {p} != {expected_p}"
        inf = inf_table(natural_order(S))
        n = S.size
        rng = np.arange(n)
        ab_inv = S.mul[rng[:, None], S.inv[rng][None, :]]
        power = ab_inv
        for _ in range(p - 1):
            power = S.mul[power, ab_inv]
        formula = S.mul[power, rng[:, None]]
        ok = bool(np.array_equal(formula, inf))
        return ok, n * n, f"p={p}"

    if case.kind == "hadamard":
        S = build_algebra(case.algebra)
        inf = inf_table(natural_order(S))
        mats = [parse_matrix(S.label(e)) for e in range(S.size)]
        index = {m: e for e, m in enumerate(mats)}
        n = S.size
        ok = True
        for a in range(n):
            for b in range(n):
                had = tuple(tuple(x & y for x, y in zip(ra, rb))
                            for ra, rb in zip(mats[a], mats[b]))
                if index[had] != int(inf[a, b]):
                    ok = False
        return ok, n * n, "entrywise product"

    raise ValueError(f"unknown case kind {case.kind!r}")


def _verdict_matches(verdict: str, expect: str) -> bool:
    if expect == "holds":
        return verdict in ("holds", "holds-sampled")
    return verdict == expect


def run_claim(claim: Claim, workers: Optional[int] = None) -> ClaimResult:
    start = time.perf_counter()
    total = 0
    ok = True
    notes = []
    for case in claim.cases:
        case_ok, checked, note = _run_case(case, workers)
        total += checked
        if not case_ok:
            ok = False
            notes.append(f"FAILED[{case.kind}:{case.algebra}] {note}")
    elapsed = time.perf_counter() - start
    detail = "; ".join(notes) if notes else f"cases={len(claim.cases)}"
    return ClaimResult(claim_id=claim.id, locus=claim.locus, ok=ok,
                       checked=total, detail=detail, elapsed=elapsed)


def select_claims(pattern: Optional[str] = None):
    if not pattern:
        return list(REGISTRY)
    return [c for c in REGISTRY if fnmatch.fnmatchcase(c.id, pattern)]


def run_claims(pattern: Optional[str] = None, workers: Optional[int] = None):
    return [run_claim(c, workers=workers) for c in select_claims(pattern)]


# ---------------------------------------------------------------------------
# the registry

_BRANDT_SWEEP_GROUPS = (((1,), 1), ((2,), 2), ((3,), 3), ((2, 2), 2))
_UK_PAIRS = tuple((n, k) for n in range(5) for k in range(5) if 1 <= n + k <= 4)


def _sweep_cases():
    cases = []
    for orders, m in _BRANDT_SWEEP_GROUPS:
        orders_str = "x".join(str(o) for o in orders)
        for i in (1, 2, 3):
            for n, k in _UK_PAIRS:
                cases.append(Case(
                    kind="identity",
                    algebra=f"brandt:{orders_str}:{i}",
                    lhs=("u", n, k, m),
                    rhs=("square", ("u", n, k, m)),
                    expect="holds"))
    return tuple(cases)


REGISTRY = (
    Claim(
        id="lemma2.1",
        locus="Lemma 2.1",
        description="u-words always evaluate to idempotents on Brandt "
                    "semigroups over small abelian groups",
        cases=_sweep_cases()),
    Claim(
        id="lemma2.2",
        locus="Lemma 2.2",
        description="level-1 v-words square to themselves when the semigroup "
                    "is its idempotents plus the bottom ideal",
        cases=(
            Case(kind="lemma22-tower", params=((1,), 2, 2)),
            Case(kind="lemma22-tower", params=((2,), 2, 2)),
        )),
    Claim(
        id="prop2.3",
        locus="Prop 2.3",
        description="level-h v-words square to themselves when the series "
                    "bottom is the zero alone",
        cases=(
            Case(kind="idempotent-image", algebra="b21",
                 lhs=("vc", 2, 1, 2), expect="holds"),
        )),
    Claim(
        id="prop2.5",
        locus="Prop 2.5",
        description="level-(h+1) v-words square to themselves on towers "
                    "whose bottom is an abelian group",
        cases=(
            Case(kind="idempotent-image", algebra="product:group:2,brandt:2:2",
                 lhs=("vc", 2, 2, 2), expect="holds"),
        )),
    Claim(
        id="prop2.6.1",
        locus="Prop 2.6(1)",
        description="the degree-2 rook monoid satisfies v(n,2,2) ~ its square",
        cases=(
            Case(kind="idempotent-image", algebra="rook:2",
                 lhs=("vc", 2, 2, 2), expect="holds"),
            Case(kind="idempotent-image", algebra="rook:2",
                 lhs=("vc", 3, 2, 2), expect="holds"),
        )),
    Claim(
        id="prop2.6.2",
        locus="Prop 2.6(2)",
        description="the degree-3 rook monoid satisfies v(2,6,4) ~ its square",
        cases=(
            Case(kind="idempotent-image", algebra="rook:3",
                 lhs=("vc", 2, 6, 4), expect="holds"),
        )),
    Claim(
        id="rprime3-containment",
        locus="Prop 2.6 proof (parity step)",
        description="level-1 image values over degree-3 rook matrices avoid "
                    "the three transpositions",
        cases=(
            Case(kind="containment", algebra="rook:3", lhs=("v", 2, 6, 1),
                 params=("rook3-restricted",)),
        )),
    Claim(
        id="cor3.2",
        locus="Cor 3.2",
        description="the position-shift closures satisfy x^2 ~ x^3",
        cases=(
            Case(kind="identity", algebra="kadourek:2:1",
                 lhs="x x", rhs="x x x", expect="holds"),
            Case(kind="identity", algebra="kadourek:2:2",
                 lhs="x x", rhs="x x x", expect="holds"),
        )),
    Claim(
        id="prop3.3",
        locus="Prop 3.3",
        description="a composed substitution defeats v(2,1,2) ~ its square "
                    "on the height-2 closure",
        cases=(
            Case(kind="kadourek-witness", params=(2, 2)),
        )),
    Claim(
        id="lemma4.1",
        locus="Lemma 4.1",
        description="natural meet agrees with (x y^-1)^p x and with the "
                    "entrywise product of rook matrices",
        cases=(
            Case(kind="natsum", algebra="b21", params=(2,)),
            Case(kind="natsum", algebra="sigma7", params=(2,)),
            Case(kind="hadamard", algebra="rook:2"),
            Case(kind="hadamard", algebra="rook:3"),
        )),
    Claim(
        id="remark1.3",
        locus="Remark 1.3",
        description="the two-element natural semiring satisfies x*y ~ x+y",
        cases=(
            Case(kind="identity", algebra="rook:1",
                 lhs="x*y", rhs="x+y", expect="holds"),
        )),
    Claim(
        id="remark4.3",
        locus="Remark 4.3",
        description="(xy+yx)^2 ~ x^2+y^2 separates natural addition from "
                    "Boolean addition on the seven matrices",
        cases=(
            Case(kind="identity", algebra="sigma7:nat",
                 lhs="(x*y+y*x)^2", rhs="x^2+y^2", expect="holds"),
            Case(kind="identity", algebra="sigma7:bool",
                 lhs="(x*y+y*x)^2", rhs="x^2+y^2", expect="fails"),
        )),
)


def render_results(results) -> str:
    lines = []
    width = max(len(r.claim_id) for r in results) if results else 8
    for r in results:
        status = "pass" if r.ok else "FAIL"
        lines.append(f"{r.claim_id:<{width}}  {status}  checked={r.checked}"
                     f"  {r.elapsed:.2f}s  [{r.locus}] {r.detail}")
    total = len(results)
    passed = sum(1 for r in results if r.ok)
    lines.append(f"{passed}/{total} claims pass")
    return "\n".join(lines) + "\n"
