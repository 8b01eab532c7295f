"""Constructors for the concrete semigroups and semirings.

All builders return FiniteSemigroup values over a canonical element order so
that tables, counterexamples and reports are reproducible:

- Brandt semigroups: zero first, then triples (l, g, r) lexicographically;
- matrix monoids: sorted by (rank, row-major positions of the ones), which
  puts the zero matrix first and the identity right after the rank-1 block;
- closures: breadth-first discovery order (see core_algebra.generate_closure).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core_algebra import (FiniteSemigroup, GeneratorSet, compute_inverses,
                           find_identity, find_zero, generate_closure)
from .order_semiring import AiSemiring
from .terms import build_w


class DimensionTooLarge(Exception):
    pass


class SizeExceeded(Exception):
    pass


class GroundSetMismatch(Exception):
    pass


# ---------------------------------------------------------------------------
# abelian groups and Brandt semigroups

@dataclass(frozen=True)
class AbelianGroupSpec:
    """Direct product of cyclic groups; elements are residue tuples."""

    cyclic_orders: tuple

    def __post_init__(self):
        if not self.cyclic_orders or any(d < 1 for d in self.cyclic_orders):
            raise ValueError(f"bad cyclic orders {self.cyclic_orders}")
        object.__setattr__(self, "cyclic_orders", tuple(self.cyclic_orders))

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.cyclic_orders)

    def elements(self) -> list:
        return list(itertools.product(*(range(d) for d in self.cyclic_orders)))

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.cyclic_orders))

    def negate(self, a: tuple) -> tuple:
        return tuple((-x) % d for x, d in zip(a, self.cyclic_orders))

    def label(self, a: tuple) -> str:
        return ".".join(str(x) for x in a)


@dataclass(frozen=True)
class BrandtElement:
    """Zero or a triple (l, g, r) with l, r < i_size."""

    triple: tuple = None  # None encodes the zero element

    @property
    def is_zero(self) -> bool:
        return self.triple is None


def abelian_group(spec: AbelianGroupSpec) -> FiniteSemigroup:
    els = spec.elements()
    index = {g: i for i, g in enumerate(els)}
    n = len(els)
    mul = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            mul[i, j] = index[spec.add(a, b)]
    inv = np.array([index[spec.negate(a)] for a in els], dtype=np.int32)
    labels = tuple(spec.label(a) for a in els)
    return FiniteSemigroup(mul=mul, inv=inv, labels=labels,
                           identity=index[tuple(0 for _ in spec.cyclic_orders)])


def brandt_semigroup(G: AbelianGroupSpec, i_size: int) -> FiniteSemigroup:
    """Zero plus I x G x I with the coordinate multiplication rule."""
    if i_size < 1:
        raise ValueError(f"bad index size {i_size}")
    group = abelian_group(G)
    return brandt_over_group(group, i_size)


def brandt_over_group(group: FiniteSemigroup, i_size: int) -> FiniteSemigroup:
    """Brandt construction over an arbitrary finite group table.

    Element 0 is the zero; triple (l, g, r) sits at 1 + (l*|G| + g)*i + r.
    Also used by the structure module to reconstruct factors, where the
    group need not be abelian.
    """
    ng = group.size
    if group.identity is None or group.inv is None:
        raise ValueError("brandt_over_group needs a group with identity and inverses")
    n = i_size * i_size * ng + 1

    def at(l, g, r):
        return 1 + (l * ng + g) * i_size + r

    mul = np.zeros((n, n), dtype=np.int32)
    for l1 in range(i_size):
        for g1 in range(ng):
            for r1 in range(i_size):
                a = at(l1, g1, r1)
                # only r1 == l2 survives; everything else lands on zero
                for g2 in range(ng):
                    for r2 in range(i_size):
                        b = at(r1, g2, r2)
                        mul[a, b] = at(l1, int(group.mul[g1, g2]), r2)
    inv = np.zeros(n, dtype=np.int32)
    for l in range(i_size):
        for g in range(ng):
            for r in range(i_size):
                inv[at(l, g, r)] = at(r, int(group.inv[g]), l)
    labels = ["0"]
    for l in range(i_size):
        for g in range(ng):
            for r in range(i_size):
                glab = group.label(g) if group.labels else str(g)
                labels.append(f"({l},{glab},{r})")
    return FiniteSemigroup(mul=mul, inv=inv, labels=tuple(labels),
                           zero=0, identity=find_identity(mul))


# ---------------------------------------------------------------------------
# zero-one matrices with at most one 1 per row and column

def format_matrix(bits: tuple) -> str:
    return "/".join("".join(str(b) for b in row) for row in bits)


def parse_matrix(text: str) -> tuple:
    rows = tuple(tuple(int(c) for c in part) for part in text.strip().split("/"))
    t = len(rows)
    if any(len(r) != t for r in rows) or any(b not in (0, 1) for r in rows for b in r):
        raise ValueError(f"bad matrix text {text!r}")
    return rows


def _matrix_to_map(bits: tuple) -> dict:
    out = {}
    for i, row in enumerate(bits):
        for j, b in enumerate(row):
            if b:
                out[i] = j
    return out


def _map_to_matrix(m: dict, t: int) -> tuple:
    return tuple(tuple(1 if m.get(i) == j else 0 for j in range(t)) for i in range(t))


def _bool_product(a: tuple, b: tuple) -> tuple:
    t = len(a)
    am, bm = _matrix_to_map(a), _matrix_to_map(b)
    comp = {i: bm[am[i]] for i in am if am[i] in bm}
    return _map_to_matrix(comp, t)


def _transpose(a: tuple) -> tuple:
    t = len(a)
    return tuple(tuple(a[j][i] for j in range(t)) for i in range(t))


def _enumerate_rook(t: int) -> list:
    """All zero-one t x t matrices with at most one 1 per row and column."""
    out = []
    for choice in itertools.product(range(t + 1), repeat=t):
        # value t means the row is empty; others must be pairwise distinct
        used = [c for c in choice if c < t]
        if len(used) != len(set(used)):
            continue
        bits = tuple(tuple(1 if choice[i] == j else 0 for j in range(t))
                     for i in range(t))
        out.append(bits)
    out.sort(key=_matrix_sort_key)
    return out


def _matrix_sort_key(bits: tuple):
    t = len(bits)
    positions = tuple(i * t + j for i in range(t) for j in range(t) if bits[i][j])
    return (len(positions), positions)


def _matrix_semigroup(mats: list) -> FiniteSemigroup:
    index = {m: i for i, m in enumerate(mats)}
    n = len(mats)
    mul = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            p = _bool_product(a, b)
            if p not in index:
                raise ValueError(f"set not closed: {format_matrix(a)} * {format_matrix(b)}")
            mul[i, j] = index[p]
    inv = None
    if all(_transpose(m) in index for m in mats):
        inv = np.array([index[_transpose(m)] for m in mats], dtype=np.int32)
    labels = tuple(format_matrix(m) for m in mats)
    return FiniteSemigroup(mul=mul, inv=inv, labels=labels,
                           zero=find_zero(mul), identity=find_identity(mul))


def rook_monoid(t: int) -> FiniteSemigroup:
    """All partial-injection matrices on t points under Boolean product."""
    if not 1 <= t <= 5:
        raise DimensionTooLarge(f"rook dimension {t} outside 1..5")
    return _matrix_semigroup(_enumerate_rook(t))


def rook_monoid_restricted_3() -> FiniteSemigroup:
    """The 3x3 variant with the three transposition matrices removed."""
    removed = {
        ((0, 1, 0), (1, 0, 0), (0, 0, 1)),
        ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
        ((1, 0, 0), (0, 0, 1), (0, 1, 0)),
    }
    mats = [m for m in _enumerate_rook(3) if m not in removed]
    return _matrix_semigroup(mats)  # closure is verified by construction


def b2() -> FiniteSemigroup:
    """Five-element Brandt semigroup as zero-one 2x2 matrices."""
    keep = {"00/00", "10/00", "01/00", "00/10", "00/01"}
    mats = [m for m in _enumerate_rook(2) if format_matrix(m) in keep]
    return _matrix_semigroup(mats)


def b21() -> FiniteSemigroup:
    """Six-element Brandt monoid: b2 plus the identity matrix."""
    keep = {"00/00", "10/00", "01/00", "00/10", "00/01", "10/01"}
    mats = [m for m in _enumerate_rook(2) if format_matrix(m) in keep]
    return _matrix_semigroup(mats)


_SIGMA7_MATRICES = (
    ((1, 1), (1, 1)),
    ((1, 0), (0, 1)),
    ((1, 0), (1, 1)),
    ((1, 1), (0, 1)),
    ((0, 1), (1, 1)),
    ((1, 1), (1, 0)),
    ((0, 0), (0, 0)),
)


@dataclass(frozen=True)
class Sigma7Views:
    """The seven Boolean matrices with their two semiring readings."""

    bool_semiring: AiSemiring     # + is entrywise Boolean or
    reduct: FiniteSemigroup       # multiplicative reduct, inverse-verified


def sigma7() -> Sigma7Views:
    mats = list(_SIGMA7_MATRICES)
    index = {m: i for i, m in enumerate(mats)}
    n = len(mats)
    mul = np.zeros((n, n), dtype=np.int32)
    add = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            p = _full_bool_product(a, b)
            s = tuple(tuple(x | y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))
            mul[i, j] = index[p]
            add[i, j] = index[s]
    labels = tuple(format_matrix(m) for m in mats)
    reduct = FiniteSemigroup(mul=mul, labels=labels,
                             zero=find_zero(mul), identity=find_identity(mul))
    reduct = FiniteSemigroup(mul=mul, inv=compute_inverses(reduct), labels=labels,
                             zero=reduct.zero, identity=reduct.identity)
    return Sigma7Views(
        bool_semiring=AiSemiring(add=add, mul=mul, labels=labels),
        reduct=reduct,
    )


def _full_bool_product(a: tuple, b: tuple) -> tuple:
    # general Boolean matrices here, not only rook ones
    t = len(a)
    return tuple(
        tuple(int(any(a[i][k] and b[k][j] for k in range(t))) for j in range(t))
        for i in range(t)
    )


# ---------------------------------------------------------------------------
# partial injections and the letter-position generators

@dataclass(frozen=True)
class PartialInjection:
    """Partial one-to-one self-map of {0..n_points-1}."""

    n_points: int
    pairs: tuple  # sorted tuple of (q, q') pairs

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs))
        object.__setattr__(self, "pairs", pairs)
        dom = [q for q, _ in pairs]
        rng = [q for _, q in pairs]
        if len(set(dom)) != len(dom) or len(set(rng)) != len(rng):
            raise ValueError("not a partial injection")
        if any(q < 0 or q >= self.n_points or r < 0 or r >= self.n_points
               for q, r in pairs):
            raise ValueError("pair outside the ground set")

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def label(self) -> str:
        if not self.pairs:
            return "{}"
        return "{" + ",".join(f"{q}->{r}" for q, r in self.pairs) + "}"


def partial_compose(a: PartialInjection, b: PartialInjection) -> PartialInjection:
    """(a*b)(q) = a(b(q)); the right factor acts first."""
    if a.n_points != b.n_points:
        raise GroundSetMismatch(f"{a.n_points} vs {b.n_points}")
    am = a.as_dict()
    pairs = tuple((q, am[r]) for q, r in b.pairs if r in am)
    return PartialInjection(a.n_points, pairs)


def partial_invert(a: PartialInjection) -> PartialInjection:
    return PartialInjection(a.n_points, tuple((r, q) for q, r in a.pairs))


def format_partial_injection(a: PartialInjection) -> str:
    lines = [f"points {a.n_points}"]
    lines += [f"{q} -> {r}" for q, r in a.pairs]
    return "\n".join(lines) + "\n"


def parse_partial_injection(text: str) -> PartialInjection:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("points "):
        raise ValueError("partial injection text must start with 'points N'")
    n_points = int(lines[0].split()[1])
    pairs = []
    for ln in lines[1:]:
        q, arrow, r = ln.split()
        if arrow != "->":
            raise ValueError(f"bad pair line {ln!r}")
        pairs.append((int(q), int(r)))
    return PartialInjection(n_points, tuple(pairs))


def kadourek_generators(n: int, h: int) -> list:
    """One labeled partial injection per level-h variable, read off the
    letter positions of build_w(n, h): a plain letter at 1-based position q
    contributes q-1 -> q, a formal inverse contributes q -> q-1.
    """
    if n < 2 or h < 1:
        raise ValueError(f"bad generator parameters n={n} h={h}")
    total = (2 * n) ** h
    if total > 10_000:
        raise SizeExceeded(f"ground set of {total + 1} points exceeds the bound")
    w = build_w(n, h)
    assert len(w) == total
    moves = {}
    for pos0, (v, s) in enumerate(w.letters):
        q = pos0 + 1
        if s > 0:
            moves.setdefault(v, []).append((q - 1, q))
        else:
            moves.setdefault(v, []).append((q, q - 1))
    out = []
    for v in sorted(moves):
        out.append((v, PartialInjection(total + 1, tuple(moves[v]))))
    return out


def kadourek_semigroup(n: int, h: int, limit: int = 1_000_000):
    """Closure of the generators with their inverses adjoined.

    Returns (FiniteSemigroup, elements, generator map var -> element index).
    The result is closed under inversion, so the inverse table is present.
    """
    gens = kadourek_generators(n, h)
    seeds = [pi for _, pi in gens] + [partial_invert(pi) for _, pi in gens]
    gen_set = GeneratorSet(elements=seeds, product=partial_compose,
                           key=lambda p: p.pairs)
    sg, elements = generate_closure(gen_set, limit=limit,
                                    labeler=lambda p: p.label())
    sg = FiniteSemigroup(mul=sg.mul, inv=compute_inverses(sg), labels=sg.labels,
                         zero=sg.zero, identity=sg.identity)
    index = {p.pairs: i for i, p in enumerate(elements)}
    gen_map = {v: index[pi.pairs] for v, pi in gens}
    return sg, elements, gen_map


# ---------------------------------------------------------------------------
# combinators

def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    ns, nt = S.size, T.size
    mul = (S.mul[:, None, :, None].astype(np.int64) * nt
           + T.mul[None, :, None, :]).reshape(ns * nt, ns * nt).astype(np.int32)
    inv = None
    if S.inv is not None and T.inv is not None:
        inv = (S.inv[:, None].astype(np.int64) * nt
               + T.inv[None, :]).reshape(ns * nt).astype(np.int32)
    labels = None
    if S.labels is not None and T.labels is not None:
        labels = tuple(f"({a}|{b})" for a in S.labels for b in T.labels)
    zero = None
    if S.zero is not None and T.zero is not None:
        zero = S.zero * nt + T.zero
    identity = None
    if S.identity is not None and T.identity is not None:
        identity = S.identity * nt + T.identity
    return FiniteSemigroup(mul=mul, inv=inv, labels=labels,
                           zero=zero, identity=identity)


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """S with a fresh identity element appended at the last index."""
    n = S.size
    mul = np.zeros((n + 1, n + 1), dtype=np.int32)
    mul[:n, :n] = S.mul
    mul[n, :n] = np.arange(n)
    mul[:n, n] = np.arange(n)
    mul[n, n] = n
    inv = None
    if S.inv is not None:
        inv = np.concatenate([S.inv, [n]]).astype(np.int32)
    labels = None
    if S.labels is not None:
        labels = S.labels + ("1",)
    return FiniteSemigroup(mul=mul, inv=inv, labels=labels,
                           zero=S.zero, identity=n)
