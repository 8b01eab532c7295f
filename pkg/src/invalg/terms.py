"""Terms and the recursive identity families.

Three term flavors share indexed variables x[i1,...,ih]:

- Word: plain product of variables;
- UnaryTerm: product of variables and formal inverses, kept normalized as a
  sequence of signed letters (nested inverses are flattened at construction
  via (uv)^-1 = v^-1 u^-1);
- SemiringTerm: a +/* tree over variables.

ComposedWord is a leveled view of a word: an outer word over slot variables
plus inner words with pairwise-disjoint variable sets. The hierarchical
image-set machinery in the checker depends on that disjointness.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

Var = tuple  # nonempty tuple of positive ints; renders as x[i1,...,ih]

MAX_TERM_LETTERS = 2_000_000


class SizeExceeded(Exception):
    pass


class BadParameters(Exception):
    pass


class UnboundVariable(Exception):
    pass


class FlavorMismatch(Exception):
    pass


class DisjointnessViolated(Exception):
    pass


@dataclass(frozen=True)
class Word:
    letters: tuple  # tuple of Var

    def __post_init__(self):
        if not self.letters:
            raise BadParameters("empty word")

    def variables(self):
        return sorted(set(self.letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def power(self, k: int) -> "Word":
        return Word(self.letters * k)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class UnaryTerm:
    letters: tuple  # tuple of (Var, sign) with sign in {+1, -1}

    def __post_init__(self):
        if not self.letters:
            raise BadParameters("empty term")

    def variables(self):
        return sorted(set(v for v, _ in self.letters))

    def __mul__(self, other: "UnaryTerm") -> "UnaryTerm":
        return UnaryTerm(self.letters + other.letters)

    def power(self, k: int) -> "UnaryTerm":
        return UnaryTerm(self.letters * k)

    def inverse(self) -> "UnaryTerm":
        return UnaryTerm(tuple((v, -s) for v, s in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)


class SemiringTerm:
    pass


@dataclass(frozen=True)
class SLeaf(SemiringTerm):
    var: Var


@dataclass(frozen=True)
class SPlus(SemiringTerm):
    left: SemiringTerm
    right: SemiringTerm


@dataclass(frozen=True)
class STimes(SemiringTerm):
    left: SemiringTerm
    right: SemiringTerm


def semiring_variables(t: SemiringTerm):
    out = set()

    def walk(node):
        if isinstance(node, SLeaf):
            out.add(node.var)
        else:
            walk(node.left)
            walk(node.right)

    walk(t)
    return sorted(out)


@dataclass(frozen=True)
class ComposedWord:
    """Outer word over slots, inner word (or nested composition) per slot."""

    outer: Word
    inner: dict  # slot Var -> Word | ComposedWord

    def __post_init__(self):
        seen = set()
        for slot in self.outer.variables():
            if slot not in self.inner:
                raise UnboundVariable(f"slot {slot} has no inner word")
            vars_ = leaf_variables(self.inner[slot])
            if seen & set(vars_):
                raise DisjointnessViolated(
                    f"inner variable sets overlap at slot {slot}")
            seen |= set(vars_)
        extra = set(self.inner) - set(self.outer.variables())
        if extra:
            raise UnboundVariable(f"inner word for unused slot {sorted(extra)[0]}")

    def flatten(self) -> Word:
        letters = []
        for slot in self.outer.letters:
            part = self.inner[slot]
            if isinstance(part, ComposedWord):
                part = part.flatten()
            letters.extend(part.letters)
        return Word(tuple(letters))


def leaf_variables(part) -> list:
    if isinstance(part, Word):
        return part.variables()
    out = set()
    for slot in part.outer.variables():
        out |= set(leaf_variables(part.inner[slot]))
    return sorted(out)


def x(*indices) -> Var:
    return tuple(indices)


# ---------------------------------------------------------------------------
# the recursive families

def build_u(n: int, k: int, m: int) -> Word:
    """x1..x(n+k) (xn..x1 x(n+1)..x(n+k))^(2m-1); length 2m(n+k)."""
    if n < 0 or k < 0 or n + k <= 0 or m < 1:
        raise BadParameters(f"bad u parameters n={n} k={k} m={m}")
    head = [x(i) for i in range(1, n + k + 1)]
    block = [x(i) for i in range(n, 0, -1)] + [x(i) for i in range(n + 1, n + k + 1)]
    letters = head + block * (2 * m - 1)
    return Word(tuple(letters))


def _append_index(word: Word, j: int) -> Word:
    return Word(tuple(v + (j,) for v in word.letters))


def build_v(n: int, m: int, h: int) -> Word:
    """Level-h recursion: the level-1 pattern applied to index-extended copies."""
    if n < 1 or m < 1 or h < 1:
        raise BadParameters(f"bad v parameters n={n} m={m} h={h}")
    if (4 * n * m) ** h > MAX_TERM_LETTERS:
        raise SizeExceeded(f"v with n={n} m={m} h={h} has {(4*n*m)**h} letters")
    if h == 1:
        return build_u(n, n, m)
    prev = build_v(n, m, h - 1)
    copies = {j: _append_index(prev, j) for j in range(1, 2 * n + 1)}
    head = []
    for j in range(1, 2 * n + 1):
        head.extend(copies[j].letters)
    block = []
    for j in range(n, 0, -1):
        block.extend(copies[j].letters)
    for j in range(n + 1, 2 * n + 1):
        block.extend(copies[j].letters)
    return Word(tuple(head + block * (2 * m - 1)))


def build_v_composed(n: int, m: int, h: int) -> ComposedWord:
    """Leveled view of build_v; flatten() equals the flat word letter for letter.

    The outer pattern is the level-1 word over slot variables (j,); slot j
    holds the index-extended level-(h-1) copy. At h = 1 the inner words are
    single letters, making the view degenerate but still valid.
    """
    if n < 1 or m < 1 or h < 1:
        raise BadParameters(f"bad v parameters n={n} m={m} h={h}")
    outer = build_u(n, n, m)
    if h == 1:
        inner = {x(j): Word((x(j),)) for j in range(1, 2 * n + 1)}
        return ComposedWord(outer=outer, inner=inner)
    inner = {}
    for j in range(1, 2 * n + 1):
        part = build_v_composed(n, m, h - 1)
        inner[x(j)] = _append_composed_index(part, j)
    return ComposedWord(outer=outer, inner=inner)


def _append_composed_index(part, j: int):
    if isinstance(part, Word):
        return _append_index(part, j)
    return ComposedWord(
        outer=part.outer,
        inner={slot: _append_composed_index(sub, j) for slot, sub in part.inner.items()},
    )


def build_w(n: int, h: int) -> UnaryTerm:
    """w(1) = x1..xn x1^-1..xn^-1; higher levels substitute extended copies."""
    if n < 1 or h < 1:
        raise BadParameters(f"bad w parameters n={n} h={h}")
    if (2 * n) ** h > MAX_TERM_LETTERS:
        raise SizeExceeded(f"w with n={n} h={h} has {(2*n)**h} letters")
    if h == 1:
        letters = [(x(i), +1) for i in range(1, n + 1)]
        letters += [(x(i), -1) for i in range(1, n + 1)]
        return UnaryTerm(tuple(letters))
    prev = build_w(n, h - 1)
    copies = [UnaryTerm(tuple((v + (j,), s) for v, s in prev.letters))
              for j in range(1, n + 1)]
    out = copies[0]
    for c in copies[1:]:
        out = out * c
    for c in copies:
        out = out * c.inverse()
    return out


# ---------------------------------------------------------------------------
# substitution

def _as_unary(term) -> UnaryTerm:
    if isinstance(term, UnaryTerm):
        return term
    if isinstance(term, Word):
        return UnaryTerm(tuple((v, +1) for v in term.letters))
    raise FlavorMismatch(f"cannot view {type(term).__name__} as a unary term")


def substitute(term, assignment: dict):
    """Homomorphic replacement of variables by words or unary terms.

    A Word stays a Word when every assigned value is a Word; any UnaryTerm
    value promotes the result to a UnaryTerm. Signs compose: substituting
    into a negative letter inverts the assigned term.
    """
    if isinstance(term, Word):
        missing = [v for v in term.variables() if v not in assignment]
        if missing:
            raise UnboundVariable(f"unassigned variables: {missing}")
        if all(isinstance(assignment[v], Word) for v in term.variables()):
            letters = []
            for v in term.letters:
                letters.extend(assignment[v].letters)
            return Word(tuple(letters))
        term = _as_unary(term)
    if isinstance(term, UnaryTerm):
        missing = [v for v in term.variables() if v not in assignment]
        if missing:
            raise UnboundVariable(f"unassigned variables: {missing}")
        letters = []
        for v, s in term.letters:
            value = _as_unary(assignment[v])
            if s < 0:
                value = value.inverse()
            letters.extend(value.letters)
        return UnaryTerm(tuple(letters))
    raise FlavorMismatch(f"cannot substitute into {type(term).__name__}")


def phi_psi(n: int, h: int):
    """The two sign-twisting assignments from 2n-indexed to n-indexed variables.

    Both map every level-h variable over indices 1..2n to a single signed
    level-h variable over indices 1..n; substitute(build_v(n,m,h), phi)
    evaluates equal to build_w(n,h) in every inverse semigroup, and psi
    likewise against its inverse.
    """
    if n < 1 or h < 1:
        raise BadParameters(f"bad phi/psi parameters n={n} h={h}")
    phi = {}
    psi = {}
    if h == 1:
        for i in range(1, 2 * n + 1):
            if i <= n:
                phi[x(i)] = UnaryTerm(((x(i), +1),))
                psi[x(i)] = UnaryTerm(((x(n + 1 - i), +1),))
            else:
                phi[x(i)] = UnaryTerm(((x(i - n), -1),))
                psi[x(i)] = UnaryTerm(((x(2 * n + 1 - i), -1),))
        return phi, psi
    phi_prev, psi_prev = phi_psi(n, h - 1)
    for prefix, image in phi_prev.items():
        (alpha, delta), = image.letters
        (beta, eps), = psi_prev[prefix].letters
        for ih in range(1, 2 * n + 1):
            if ih <= n:
                phi[prefix + (ih,)] = UnaryTerm(((alpha + (ih,), delta),))
                psi[prefix + (ih,)] = UnaryTerm(((alpha + (n + 1 - ih,), delta),))
            else:
                phi[prefix + (ih,)] = UnaryTerm(((beta + (ih - n,), eps),))
                psi[prefix + (ih,)] = UnaryTerm(((beta + (2 * n + 1 - ih,), eps),))
    return phi, psi


def rewrite_plus(term: SemiringTerm, p: int) -> UnaryTerm:
    """Replace every plus(a,b) by (a b^-1)^p a, bottom-up; times concatenates."""
    if p < 1:
        raise BadParameters(f"bad power p={p}")
    if isinstance(term, SLeaf):
        return UnaryTerm(((term.var, +1),))
    if isinstance(term, STimes):
        return rewrite_plus(term.left, p) * rewrite_plus(term.right, p)
    if isinstance(term, SPlus):
        a = rewrite_plus(term.left, p)
        b = rewrite_plus(term.right, p)
        return (a * b.inverse()).power(p) * a
    raise FlavorMismatch(f"cannot rewrite {type(term).__name__}")


# ---------------------------------------------------------------------------
# evaluation

def evaluate(term, algebra, tau: dict) -> int:
    """Value of `term` under variable assignment `tau` (indices into algebra).

    Words and unary terms evaluate over a FiniteSemigroup (unary needs inv);
    semiring terms evaluate over an AiSemiring. The fold is strictly left to
    right.
    """
    if isinstance(term, Word):
        mul = algebra.mul
        it = iter(term.letters)
        acc = _lookup(tau, next(it))
        for v in it:
            acc = mul[acc, _lookup(tau, v)]
        return int(acc)
    if isinstance(term, UnaryTerm):
        mul = algebra.mul
        inv = algebra.inv
        if inv is None:
            raise FlavorMismatch("unary term needs an inversion table")
        it = iter(term.letters)
        v, s = next(it)
        acc = _lookup(tau, v) if s > 0 else inv[_lookup(tau, v)]
        for v, s in it:
            val = _lookup(tau, v) if s > 0 else inv[_lookup(tau, v)]
            acc = mul[acc, val]
        return int(acc)
    if isinstance(term, SemiringTerm):
        add = getattr(algebra, "add", None)
        if add is None:
            raise FlavorMismatch("semiring term needs an addition table")

        def walk(node):
            if isinstance(node, SLeaf):
                return _lookup(tau, node.var)
            l = walk(node.left)
            r = walk(node.right)
            if isinstance(node, SPlus):
                return algebra.add[l, r]
            return algebra.mul[l, r]

        return int(walk(term))
    raise FlavorMismatch(f"cannot evaluate {type(term).__name__}")


def _lookup(tau: dict, v: Var) -> int:
    try:
        return tau[v]
    except KeyError:
        raise UnboundVariable(f"variable x{list(v)} unassigned") from None


# ---------------------------------------------------------------------------
# text syntax

_SUGAR = {"x": (1,), "y": (2,), "z": (3,), "t": (4,)}


def format_var(v: Var) -> str:
    return "x[" + ",".join(str(i) for i in v) + "]"


def print_term(term) -> str:
    if isinstance(term, Word):
        return " ".join(format_var(v) for v in term.letters)
    if isinstance(term, UnaryTerm):
        return " ".join(
            format_var(v) + ("" if s > 0 else "^-1") for v, s in term.letters)
    if isinstance(term, SemiringTerm):
        return _print_semiring(term, top=True)
    raise FlavorMismatch(f"cannot print {type(term).__name__}")


def _print_semiring(node, top=False) -> str:
    if isinstance(node, SLeaf):
        return format_var(node.var)
    if isinstance(node, SPlus):
        s = f"{_print_semiring(node.left, top=True)} + {_print_semiring(node.right, top=True)}"
        return s if top else f"({s})"
    left = _print_semiring(node.left)
    right = _print_semiring(node.right)
    return f"{left}*{right}"


class _Tokens:
    def __init__(self, text: str):
        self.items = []
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c in "()+*":
                self.items.append(c)
                i += 1
            elif c == "^":
                j = i + 1
                if j < len(text) and text[j] == "-":
                    j += 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.items.append(text[i:j])
                i = j
            elif c.isalpha():
                j = i + 1
                if j < len(text) and text[j] == "[":
                    j = text.index("]", j) + 1
                self.items.append(text[i:j])
                i = j
            else:
                raise ValueError(f"bad character {c!r} in term")
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self):
        t = self.peek()
        self.pos += 1
        return t


def _parse_var(tok: str) -> Var:
    if "[" in tok:
        name, _, inside = tok.partition("[")
        if name != "x":
            raise ValueError(f"unknown variable {tok!r}")
        return tuple(int(p) for p in inside.rstrip("]").split(","))
    if tok in _SUGAR:
        return _SUGAR[tok]
    raise ValueError(f"unknown variable {tok!r}")


def parse_term(text: str):
    """Parse the term syntax; returns the most specific flavor.

    Plain sequences of letters parse as Word, any ^-1 makes it a UnaryTerm,
    any + or * makes it a SemiringTerm (in which ^-1 is not allowed).
    """
    if "+" in text or "*" in text:
        toks = _Tokens(text)
        term = _parse_sum(toks)
        if toks.peek() is not None:
            raise ValueError(f"trailing input at {toks.peek()!r}")
        return term
    toks = _Tokens(text)
    letters = _parse_sequence(toks)
    if toks.peek() is not None:
        raise ValueError(f"trailing input at {toks.peek()!r}")
    if any(s < 0 for _, s in letters):
        return UnaryTerm(tuple(letters))
    return Word(tuple(v for v, _ in letters))


def _parse_sequence(toks) -> list:
    letters = []
    while True:
        t = toks.peek()
        if t is None or t == ")":
            if not letters:
                raise ValueError("empty term")
            return letters
        if t == "(":
            toks.take()
            inner = _parse_sequence(toks)
            if toks.take() != ")":
                raise ValueError("unbalanced parenthesis")
            inner = _apply_power(inner, toks)
        else:
            v = _parse_var(toks.take())
            inner = _apply_power([(v, +1)], toks)
        letters.extend(inner)


def _apply_power(letters: list, toks) -> list:
    t = toks.peek()
    if t is None or not t.startswith("^"):
        return letters
    toks.take()
    k = int(t[1:])
    if k == -1:
        return [(v, -s) for v, s in reversed(letters)]
    if k < 1:
        raise ValueError(f"bad power {k}")
    return letters * k


def _parse_sum(toks) -> SemiringTerm:
    node = _parse_product(toks)
    while toks.peek() == "+":
        toks.take()
        node = SPlus(node, _parse_product(toks))
    return node


def _parse_product(toks) -> SemiringTerm:
    node = _parse_factor(toks)
    while True:
        t = toks.peek()
        if t == "*":
            toks.take()
            node = STimes(node, _parse_factor(toks))
        elif t is not None and (t == "(" or t[0].isalpha()):
            # juxtaposition also multiplies
            node = STimes(node, _parse_factor(toks))
        else:
            return node


def _parse_factor(toks) -> SemiringTerm:
    t = toks.take()
    if t == "(":
        node = _parse_sum(toks)
        if toks.take() != ")":
            raise ValueError("unbalanced parenthesis")
    elif t is not None and t[0].isalpha():
        node = SLeaf(_parse_var(t))
    else:
        raise ValueError(f"unexpected token {t!r}")
    p = toks.peek()
    if p is not None and p.startswith("^"):
        toks.take()
        k = int(p[1:])
        if k < 1:
            raise ValueError("inverses are not semiring operations")
        out = node
        for _ in range(k - 1):
            out = STimes(out, node)
        node = out
    return node
