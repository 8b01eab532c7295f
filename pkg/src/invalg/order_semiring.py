"""Natural partial order, infimum addition, and semiring validation.

The natural order on an inverse semigroup is x <= y iff x = x x^-1 y. When
every pair has an infimum, inf becomes an idempotent commutative addition
over which multiplication distributes, giving an additively idempotent
semiring on the same carrier.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core_algebra import FiniteSemigroup, from_cayley_text, to_cayley_text


class MissingInverses(Exception):
    pass


class NotASemilattice(Exception):
    """Some pair has no infimum under the natural order."""

    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"pair ({x},{y}) has no infimum")


class IndexInvalid(Exception):
    pass


@dataclass(frozen=True)
class NaturalOrder:
    le: np.ndarray  # le[x,y] iff x <= y

    @property
    def size(self) -> int:
        return self.le.shape[0]


@dataclass(frozen=True)
class AiSemiring:
    """Carrier {0..size-1} with addition and multiplication tables."""

    add: np.ndarray
    mul: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "add", np.asarray(self.add, dtype=np.int32))
        object.__setattr__(self, "mul", np.asarray(self.mul, dtype=np.int32))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)


def natural_order(S: FiniteSemigroup) -> NaturalOrder:
    """le[x,y] iff x = x x^-1 y."""
    if S.inv is None:
        raise MissingInverses("natural_order needs an inversion table")
    n = S.size
    rng = np.arange(n)
    ee = S.mul[rng, S.inv[rng]]          # x x^-1
    le = S.mul[ee[:, None], rng[None, :]] == rng[:, None]
    return NaturalOrder(le=le)


def inf_table(order: NaturalOrder) -> np.ndarray:
    """Pairwise infima; NotASemilattice on the first pair without one."""
    le = order.le
    n = order.size
    table = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(a, n):
            lower = np.flatnonzero(le[:, a] & le[:, b])
            # the infimum is a lower bound above all other lower bounds
            greatest = lower[np.all(le[np.ix_(lower, lower)], axis=0)]
            if len(greatest) != 1:
                raise NotASemilattice(a, b)
            table[a, b] = table[b, a] = greatest[0]
    return table


def aperiodicity_index(S: FiniteSemigroup) -> Optional[int]:
    """Least p with x^p = x^(p+1) for every x, or None if there is none."""
    n = S.size
    rng = np.arange(n)
    power = rng.copy()
    for p in range(1, n + 2):
        nxt = S.mul[power, rng]  # x^(p+1)
        if np.array_equal(nxt, power):
            return p
        power = nxt
    return None


def nat_sum_formula(S: FiniteSemigroup, p: int, a: int, b: int) -> int:
    """(a b^-1)^p a, the closed form of inf when x^p = x^(p+1) holds."""
    if S.inv is None:
        raise MissingInverses("nat_sum_formula needs an inversion table")
    if not (0 <= a < S.size and 0 <= b < S.size) or p < 1:
        raise IndexInvalid(f"bad arguments a={a} b={b} p={p}")
    ab = int(S.mul[a, S.inv[b]])
    acc = ab
    for _ in range(p - 1):
        acc = int(S.mul[acc, ab])
    return int(S.mul[acc, a])


def make_nat_semiring(S: FiniteSemigroup) -> AiSemiring:
    """AiSemiring with add = natural-order infimum, mul = the given table."""
    table = inf_table(natural_order(S))
    ring = AiSemiring(add=table, mul=S.mul, labels=S.labels)
    report = validate_ai_semiring(ring)
    bad = [name for name, ok, _ in report if not ok]
    if bad:
        raise AssertionError(f"natural semiring failed axioms: {bad}")
    return ring


def validate_ai_semiring(A: AiSemiring):
    """Exhaustive axiom checks; list of (axiom, ok, witness-or-None)."""
    add, mul = A.add, A.mul
    n = A.size
    rng = np.arange(n)
    out = []

    def check(name, ok_table):
        bad = np.argwhere(~np.asarray(ok_table))
        if len(bad) == 0:
            out.append((name, True, None))
        else:
            out.append((name, False, tuple(int(v) for v in bad[0])))

    check("add-commutative", add == add.T)
    check("add-idempotent", np.diagonal(add) == rng)
    assoc_add = np.ones((n, n, n), dtype=bool)
    assoc_mul = np.ones((n, n, n), dtype=bool)
    ldist = np.ones((n, n, n), dtype=bool)
    rdist = np.ones((n, n, n), dtype=bool)
    for a in range(n):
        assoc_add[a] = add[add[a, :], :] == add[a, add]
        assoc_mul[a] = mul[mul[a, :], :] == mul[a, mul]
        ldist[a] = mul[a, add] == add[mul[a, :][:, None], mul[a, :][None, :]]
        rdist[a] = mul[add, a] == add[mul[:, a][:, None], mul[:, a][None, :]]
    check("add-associative", assoc_add)
    check("mul-associative", assoc_mul)
    check("left-distributive", ldist)
    check("right-distributive", rdist)
    return out


def to_semiring_text(A: AiSemiring) -> str:
    """Two Cayley blocks (add, then mul) separated by a --- line."""
    add_block = to_cayley_text(FiniteSemigroup(mul=A.add, labels=A.labels))
    mul_block = to_cayley_text(FiniteSemigroup(mul=A.mul, labels=A.labels))
    return add_block + "---\n" + mul_block


def from_semiring_text(text: str) -> AiSemiring:
    head, sep, tail = text.partition("\n---\n")
    if not sep:
        raise ValueError("semiring text needs a --- separator line")
    add_part = from_cayley_text(head)
    mul_part = from_cayley_text(tail)
    if add_part.size != mul_part.size:
        raise ValueError("addition and multiplication blocks disagree in size")
    return AiSemiring(add=add_part.mul, mul=mul_part.mul,
                      labels=mul_part.labels or add_part.labels)
