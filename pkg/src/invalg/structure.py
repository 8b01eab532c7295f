"""Ideal structure: J-classes, principal series, Rees quotients, maximal
subgroups, and (h,m)-recognition.

A principal series is built greedily: a J-class may be adjoined once every
class strictly below it is already in the ideal, so each chain member is a
two-sided ideal and each step adds exactly one class. Factor classification
is constructive: Brandt-ness is proved by reconstructing (row, group, column)
coordinates and comparing the full table against the canonical one, never by
trusting a classification theorem.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core_algebra import (FiniteSemigroup, compute_inverses, find_identity,
                           idempotents)
from .families import brandt_over_group
from .order_semiring import aperiodicity_index


class NotIdempotent(Exception):
    def __init__(self, e):
        self.element = e
        super().__init__(f"element {e} is not idempotent")


class UnrecognizedFactor(Exception):
    pass


@dataclass(frozen=True)
class GroupTag:
    abelian: bool
    exponent: int

    def __str__(self):
        kind = "abelian" if self.abelian else "non-abelian"
        return f"Group({kind},exp={self.exponent})"


@dataclass(frozen=True)
class BrandtTag:
    abelian: bool
    exponent: int
    index_size: int

    def __str__(self):
        kind = "abelian" if self.abelian else "non-abelian"
        return f"BrandtOverGroup({kind},exp={self.exponent},index={self.index_size})"


@dataclass(frozen=True)
class OtherTag:
    reason: str = ""

    def __str__(self):
        return "Other"


@dataclass(frozen=True)
class JClasses:
    classes: tuple      # sorted element tuples, ordered by least element
    below: np.ndarray   # below[i, j] iff class i lies in the ideal of class j


@dataclass(frozen=True)
class PrincipalSeries:
    chain: tuple    # ascending ideals S_0 < S_1 < ... < S_h, each a sorted tuple
    factors: tuple  # per chain member: (FiniteSemigroup, tag); index 0 is S_0 itself

    @property
    def height(self):
        return len(self.chain) - 1


@dataclass(frozen=True)
class HmClassification:
    is_hm: bool
    h: int
    m: int
    tags: tuple


def j_classes(S: FiniteSemigroup) -> JClasses:
    n = S.size
    mul = S.mul
    contains = np.zeros((n, n), dtype=bool)
    for a in range(n):
        left = np.zeros(n, dtype=bool)
        left[mul[:, a]] = True
        left[a] = True
        ideal = left.copy()
        ideal[mul[np.flatnonzero(left), :].ravel()] = True
        contains[a] = ideal
    # contains[a, b] iff b lies in the principal ideal of a
    equiv = contains & contains.T
    seen = np.zeros(n, dtype=bool)
    classes = []
    for a in range(n):
        if not seen[a]:
            members = np.flatnonzero(equiv[a])
            seen[members] = True
            classes.append(tuple(int(x) for x in members))
    reps = [cls[0] for cls in classes]
    below = np.zeros((len(classes), len(classes)), dtype=bool)
    for i, ri in enumerate(reps):
        for j, rj in enumerate(reps):
            below[i, j] = bool(contains[rj, ri])
    return JClasses(classes=tuple(classes), below=below)


def _restrict(S: FiniteSemigroup, elems) -> FiniteSemigroup:
    """Reindex a multiplicatively closed subset as a standalone semigroup."""
    elems = sorted(elems)
    lookup = np.full(S.size, -1, dtype=np.int64)
    lookup[elems] = np.arange(len(elems))
    table = lookup[S.mul[np.ix_(elems, elems)]]
    if (table < 0).any():
        raise ValueError("subset is not closed under multiplication")
    inv = None
    if S.inv is not None and all(lookup[S.inv[e]] >= 0 for e in elems):
        inv = lookup[S.inv[elems]]
    labels = tuple(S.label(e) for e in elems) if S.labels is not None else None
    zero = int(lookup[S.zero]) if S.zero is not None and lookup[S.zero] >= 0 else None
    ident = (int(lookup[S.identity])
             if S.identity is not None and lookup[S.identity] >= 0 else None)
    return FiniteSemigroup(mul=table, inv=inv, labels=labels, zero=zero,
                           identity=ident)


def rees_quotient(S: FiniteSemigroup, cls) -> FiniteSemigroup:
    """One J-class plus a fresh zero; products leaving the class map to zero."""
    cls = sorted(cls)
    k = len(cls)
    lookup = np.full(S.size, k, dtype=np.int64)
    lookup[cls] = np.arange(k)
    table = np.full((k + 1, k + 1), k, dtype=np.int64)
    table[:k, :k] = lookup[S.mul[np.ix_(cls, cls)]]
    inv = None
    if S.inv is not None and all(int(lookup[S.inv[e]]) < k for e in cls):
        inv = np.concatenate([lookup[S.inv[cls]], [k]])
    labels = None
    if S.labels is not None:
        labels = tuple(S.label(e) for e in cls) + ("0",)
    return FiniteSemigroup(mul=table, inv=inv, labels=labels, zero=k)


def principal_series(S: FiniteSemigroup, priority=None) -> PrincipalSeries:
    """Maximal chain of ideals; ties among adjoinable classes go to the class
    holding the least element index (or the least `priority` value).
    """
    jc = j_classes(S)
    ncls = len(jc.classes)
    if priority is None:
        keyfn = lambda ci: min(jc.classes[ci])
    else:
        keyfn = lambda ci: min(priority[e] for e in jc.classes[ci])
    taken = [False] * ncls
    chain = []
    order = []
    included = set()
    for _ in range(ncls):
        ready = [ci for ci in range(ncls) if not taken[ci]
                 and all(taken[cj] for cj in range(ncls)
                         if cj != ci and jc.below[cj, ci])]
        pick = min(ready, key=keyfn)
        taken[pick] = True
        order.append(pick)
        included.update(jc.classes[pick])
        chain.append(tuple(sorted(included)))
    factors = []
    for step, ci in enumerate(order):
        if step == 0:
            F = _restrict(S, jc.classes[ci])
        else:
            F = rees_quotient(S, jc.classes[ci])
        try:
            tag = classify_factor(F)
        except UnrecognizedFactor as err:
            tag = OtherTag(reason=str(err))
        factors.append((F, tag))
    return PrincipalSeries(chain=tuple(chain), factors=tuple(factors))


def _is_group(F: FiniteSemigroup) -> bool:
    n = F.size
    rng = np.arange(n)
    rows = np.all(np.sort(F.mul, axis=1) == rng, axis=None)
    cols = np.all(np.sort(F.mul, axis=0) == rng[:, None], axis=None)
    return bool(rows and cols)


def _group_exponent(F: FiniteSemigroup) -> int:
    es = idempotents(F)
    assert len(es) == 1, "a group has a unique idempotent"
    e = es[0]
    m = 1
    for g in range(F.size):
        acc, order = g, 1
        while acc != e:
            acc = int(F.mul[acc, g])
            order += 1
        m = math.lcm(m, order)
    return m


def _is_abelian(F: FiniteSemigroup) -> bool:
    return bool(np.array_equal(F.mul, F.mul.T))


def classify_factor(F: FiniteSemigroup):
    """Tag a principal-series factor as Group or BrandtOverGroup.

    The Brandt case is verified by full coordinate reconstruction against
    the canonical table; anything that fails is UnrecognizedFactor.
    """
    if _is_group(F):
        return GroupTag(abelian=_is_abelian(F), exponent=_group_exponent(F))
    if F.zero is None:
        raise UnrecognizedFactor("factor is neither a group nor has a zero")
    z = F.zero
    inv = F.inv
    if inv is None:
        try:
            inv = compute_inverses(F)
        except Exception as err:
            raise UnrecognizedFactor(f"factor is not inverse: {err}")
    idems = [e for e in idempotents(F) if e != z]
    k = len(idems)
    if k == 0:
        raise UnrecognizedFactor("no nonzero idempotent")
    e1 = idems[0]
    group_elems = [x for x in range(F.size)
                   if int(F.mul[x, inv[x]]) == e1 and int(F.mul[inv[x], x]) == e1]
    g_size = len(group_elems)
    if F.size != k * k * g_size + 1:
        raise UnrecognizedFactor(
            f"size {F.size} != {k}^2*{g_size}+1, not Brandt-shaped")
    G0 = _restrict(FiniteSemigroup(mul=F.mul, inv=inv, labels=F.labels),
                   group_elems)
    if not _is_group(G0):
        raise UnrecognizedFactor("maximal subgroup candidate is not a group")
    G = FiniteSemigroup(mul=G0.mul, inv=compute_inverses(G0), labels=G0.labels,
                        identity=find_identity(G0.mul))
    # connecting elements: q_i with q_i q_i^-1 = e_i and q_i^-1 q_i = e_1
    q = []
    for e in idems:
        hits = [x for x in range(F.size)
                if int(F.mul[x, inv[x]]) == e and int(F.mul[inv[x], x]) == e1]
        if not hits:
            raise UnrecognizedFactor(f"no connecting element for idempotent {e}")
        q.append(hits[0])
    g_pos = {x: i for i, x in enumerate(sorted(group_elems))}
    canon = brandt_over_group(G, k)
    phi = np.full(F.size, -1, dtype=np.int64)
    phi[z] = 0
    row_of = {e: i for i, e in enumerate(idems)}
    for x in range(F.size):
        if x == z:
            continue
        ex = int(F.mul[x, inv[x]])
        fx = int(F.mul[inv[x], x])
        if ex not in row_of or fx not in row_of:
            raise UnrecognizedFactor(f"element {x} has no Brandt coordinates")
        i, j = row_of[ex], row_of[fx]
        g = int(F.mul[F.mul[inv[q[i]], x], q[j]])
        if g not in g_pos:
            raise UnrecognizedFactor(f"element {x} does not reduce into the group")
        phi[x] = 1 + (i * g_size + g_pos[g]) * k + j
    if len(set(int(v) for v in phi)) != F.size:
        raise UnrecognizedFactor("coordinate map is not a bijection")
    if not np.array_equal(canon.mul[phi[:, None], phi[None, :]], phi[F.mul]):
        raise UnrecognizedFactor("table mismatch against canonical Brandt form")
    return BrandtTag(abelian=_is_abelian(G), exponent=_group_exponent(G),
                     index_size=k)


def classify_hm(S: FiniteSemigroup, priority=None) -> HmClassification:
    series = principal_series(S, priority=priority)
    tags = tuple(tag for _, tag in series.factors)
    bottom = tags[0]
    upper = tags[1:]
    is_hm = (isinstance(bottom, GroupTag) and bottom.abelian
             and all(isinstance(t, BrandtTag) and t.abelian for t in upper))
    m = 1
    for t in tags:
        if isinstance(t, (GroupTag, BrandtTag)):
            m = math.lcm(m, t.exponent)
    return HmClassification(is_hm=is_hm, h=series.height, m=m, tags=tags)


def maximal_subgroup(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """Group of units of the local monoid eSe."""
    if int(S.mul[e, e]) != e:
        raise NotIdempotent(e)
    local = np.unique(S.mul[e, S.mul[:, e]])
    T = S.mul[np.ix_(local, local)]
    units = []
    for i, x in enumerate(local):
        if np.any((T[i, :] == e) & (T[:, i] == e)):
            units.append(int(x))
    return _restrict(S, units)


def is_combinatorial(S: FiniteSemigroup) -> bool:
    by_subgroups = all(maximal_subgroup(S, e).size == 1 for e in idempotents(S))
    by_aperiodicity = aperiodicity_index(S) is not None
    assert by_subgroups == by_aperiodicity, \
        "subgroup triviality and aperiodicity disagree"
    return by_subgroups


def render_analysis(S: FiniteSemigroup) -> str:
    """One line per series step plus the final (h,m) verdict line."""
    series = principal_series(S)
    hm = classify_hm(S)
    lines = []
    for j, (ideal, (_, tag)) in enumerate(zip(series.chain, series.factors)):
        lines.append(f"S_{j} size={len(ideal)} factor={tag}")
    if hm.is_hm:
        lines.append(f"(h,m)={hm.h},{hm.m}")
    else:
        lines.append("not-hm")
    return "\n".join(lines) + "\n"
