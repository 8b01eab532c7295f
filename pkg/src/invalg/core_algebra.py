"""Universal finite-semigroup representation.

Everything downstream works over one carrier type: elements are the indices
0..size-1 and the binary operation is a dense size x size table. Concrete
element kinds (matrices, partial maps, triples) only exist while a semigroup
is being constructed; afterwards they survive as labels.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

DEFAULT_CLOSURE_LIMIT = 1_000_000


class LimitExceeded(Exception):
    """Closure grew past the configured element limit."""

    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"closure exceeded limit of {limit} elements")


class NotInverse(Exception):
    """Some element has zero or several inverses."""

    def __init__(self, element, witnesses):
        self.element = element
        self.witnesses = witnesses
        super().__init__(
            f"element {element} has {len(witnesses)} inverse candidates: {witnesses}"
        )


@dataclass(frozen=True)
class FiniteSemigroup:
    """Carrier {0..size-1} with a dense multiplication table.

    `inv`, `labels`, `zero` and `identity` are optional annotations; when
    present they satisfy the usual laws (checked by the constructors and the
    test suite, not on every instantiation).
    """

    mul: np.ndarray
    inv: Optional[np.ndarray] = None
    labels: Optional[tuple] = None
    zero: Optional[int] = None
    identity: Optional[int] = None

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int32)
        object.__setattr__(self, "mul", mul)
        if self.inv is not None:
            object.__setattr__(self, "inv", np.asarray(self.inv, dtype=np.int32))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        mul.setflags(write=False)
        if self.inv is not None:
            self.inv.setflags(write=False)

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def product(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def product_seq(self, elements: Sequence[int]) -> int:
        # left-to-right fold; associativity makes the order immaterial
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.mul[acc, x]
        return int(acc)


@dataclass
class GeneratorSet:
    """Concrete generators with their product and a dedup key.

    `product` must be total and deterministic on the generated set; `key`
    must be injective on it.
    """

    elements: list
    product: Callable
    key: Callable = field(default=lambda x: x)


def find_zero(mul: np.ndarray) -> Optional[int]:
    n = mul.shape[0]
    for z in range(n):
        if np.all(mul[z, :] == z) and np.all(mul[:, z] == z):
            return z
    return None


def find_identity(mul: np.ndarray) -> Optional[int]:
    n = mul.shape[0]
    rng = np.arange(n)
    for e in range(n):
        if np.array_equal(mul[e, :], rng) and np.array_equal(mul[:, e], rng):
            return e
    return None


def generate_closure(gens: GeneratorSet, limit: int = DEFAULT_CLOSURE_LIMIT,
                     labeler: Optional[Callable] = None):
    """Close `gens` under its product; return (FiniteSemigroup, elements).

    Elements are indexed in breadth-first discovery order: the given
    generators first (deduplicated, order kept), then products in rounds,
    scanning each round's pair block in row-major order. The returned list
    maps indices back to the concrete elements.
    """
    if not gens.elements:
        raise ValueError("generator set is empty")
    elements = []
    index = {}
    for g in gens.elements:
        k = gens.key(g)
        if k not in index:
            index[k] = len(elements)
            elements.append(g)
    products = {}
    frontier = 0
    while True:
        before = len(elements)
        for i in range(before):
            for j in range(before):
                # pairs entirely inside the previous closure round are done
                if i < frontier and j < frontier:
                    continue
                p = gens.product(elements[i], elements[j])
                k = gens.key(p)
                at = index.get(k)
                if at is None:
                    at = len(elements)
                    if at >= limit:
                        raise LimitExceeded(limit)
                    index[k] = at
                    elements.append(p)
                products[(i, j)] = at
        if len(elements) == before:
            break
        frontier = before
    n = len(elements)
    mul = np.zeros((n, n), dtype=np.int32)
    for (i, j), at in products.items():
        mul[i, j] = at
    labels = None
    if labeler is not None:
        labels = tuple(labeler(x) for x in elements)
    sg = FiniteSemigroup(mul=mul, labels=labels,
                         zero=find_zero(mul), identity=find_identity(mul))
    return sg, elements


def associativity_witness(S: FiniteSemigroup):
    """First triple (a,b,c) with (ab)c != a(bc), or None."""
    mul = S.mul
    n = S.size
    for a in range(n):
        left = mul[mul[a, :], :]      # [b,c] -> (ab)c
        right = mul[a, mul]           # [b,c] -> a(bc)
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            return (a, int(b), int(c))
    return None


def verify_associativity(S: FiniteSemigroup) -> bool:
    return associativity_witness(S) is None


def compute_inverses(S: FiniteSemigroup) -> np.ndarray:
    """Inversion table for an inverse semigroup; NotInverse otherwise.

    b is an inverse of a iff aba = a and bab = b; the semigroup is inverse
    iff the inverse is unique for every element.
    """
    mul = S.mul
    n = S.size
    inv = np.zeros(n, dtype=np.int32)
    for a in range(n):
        aba = mul[mul[a, :], a]                # over b: (ab)a
        bab = np.diagonal(mul[mul[:, a], :])   # over b: (ba)b
        cands = np.flatnonzero((aba == a) & (bab == np.arange(n)))
        if len(cands) != 1:
            raise NotInverse(a, [int(c) for c in cands])
        inv[a] = cands[0]
    return inv


def with_inverses(S: FiniteSemigroup) -> FiniteSemigroup:
    """Copy of S with the inversion table filled in."""
    if S.inv is not None:
        return S
    return FiniteSemigroup(mul=S.mul, inv=compute_inverses(S), labels=S.labels,
                           zero=S.zero, identity=S.identity)


def idempotents(S: FiniteSemigroup) -> list:
    """Sorted indices e with e*e = e."""
    diag = np.diagonal(S.mul)
    return [int(e) for e in np.flatnonzero(diag == np.arange(S.size))]


def subsemigroup(S: FiniteSemigroup, seed, closed_under_inv: bool = False):
    """Least subset containing `seed` closed under mul (and inv on request).

    Returns (FiniteSemigroup, embedding) where embedding[i] is the S-index of
    the i-th subsemigroup element. Indexing is breadth-first discovery order,
    seed first in the given order.
    """
    seed = list(seed)
    if not seed:
        raise ValueError("seed is empty")
    if closed_under_inv and S.inv is None:
        raise ValueError("closed_under_inv requires an inversion table")
    order = []
    seen = set()
    for s in seed:
        if s not in seen:
            seen.add(s)
            order.append(int(s))
    if closed_under_inv:
        for s in list(order):
            t = int(S.inv[s])
            if t not in seen:
                seen.add(t)
                order.append(t)
    mul = S.mul
    frontier = 0
    while True:
        before = len(order)
        for i in range(before):
            for j in range(before):
                if i < frontier and j < frontier:
                    continue
                p = int(mul[order[i], order[j]])
                if p not in seen:
                    seen.add(p)
                    order.append(p)
                    if closed_under_inv:
                        q = int(S.inv[p])
                        if q not in seen:
                            seen.add(q)
                            order.append(q)
        if len(order) == before:
            break
        frontier = before
    embedding = np.array(order, dtype=np.int32)
    back = {g: i for i, g in enumerate(order)}
    k = len(order)
    sub_mul = np.zeros((k, k), dtype=np.int32)
    for i in range(k):
        row = mul[order[i], embedding]
        sub_mul[i, :] = [back[int(x)] for x in row]
    sub_inv = None
    if S.inv is not None and all(int(S.inv[g]) in back for g in order):
        sub_inv = np.array([back[int(S.inv[g])] for g in order], dtype=np.int32)
    labels = None
    if S.labels is not None:
        labels = tuple(S.labels[g] for g in order)
    sub = FiniteSemigroup(mul=sub_mul, inv=sub_inv, labels=labels,
                          zero=find_zero(sub_mul), identity=find_identity(sub_mul))
    return sub, embedding


def to_cayley_text(S: FiniteSemigroup) -> str:
    """Cayley-table text format; bit-exact round trip with from_cayley_text."""
    lines = [str(S.size)]
    for a in range(S.size):
        lines.append(" ".join(str(int(x)) for x in S.mul[a]))
    if S.labels is not None:
        for i, lab in enumerate(S.labels):
            lines.append(f"# label {i} {lab}")
    if S.inv is not None:
        lines.append("inv: " + " ".join(str(int(x)) for x in S.inv))
    return "\n".join(lines) + "\n"


def from_cayley_text(text: str) -> FiniteSemigroup:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty Cayley text")
    n = int(lines[0])
    if len(lines) < 1 + n:
        raise ValueError("truncated Cayley table")
    mul = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        row = [int(x) for x in lines[1 + a].split()]
        if len(row) != n:
            raise ValueError(f"row {a} has {len(row)} entries, expected {n}")
        mul[a, :] = row
    inv = None
    labels = {}
    for ln in lines[1 + n:]:
        if ln.startswith("# label "):
            rest = ln[len("# label "):]
            idx, _, lab = rest.partition(" ")
            labels[int(idx)] = lab
        elif ln.startswith("inv:"):
            inv = np.array([int(x) for x in ln[4:].split()], dtype=np.int32)
        else:
            raise ValueError(f"unrecognized trailer line: {ln!r}")
    label_tuple = None
    if labels:
        label_tuple = tuple(labels.get(i, str(i)) for i in range(n))
    return FiniteSemigroup(mul=mul, inv=inv, labels=label_tuple,
                           zero=find_zero(mul), identity=find_identity(mul))
