"""Identity satisfaction engine.

Exhaustive mode enumerates substitutions as a mixed-radix counter over the
variables in sorted order (first variable most significant), so "the least
counterexample" is well defined and worker-count independent: the space is
partitioned into contiguous shards, each worker reports its local least
mismatch, and a final reduction takes the global minimum.

Hierarchical image sets exploit composed words whose inner variable sets are
pairwise disjoint: the value of the whole word only depends on the values of
the inner words, so the image can be computed level by level instead of over
the full substitution space.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core_algebra import FiniteSemigroup, subsemigroup
from .order_semiring import AiSemiring
from .terms import (ComposedWord, FlavorMismatch, SemiringTerm, SLeaf, SPlus,
                    STimes, UnaryTerm, Word, evaluate, format_var, print_term,
                    semiring_variables)

DEFAULT_BUDGET = 100_000_000
DEFAULT_TRIALS = 1_000_000
_CHUNK = 1 << 18


class BudgetExceeded(Exception):
    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(f"substitution space of {count} exceeds budget {budget}")


@dataclass(frozen=True)
class IdentityReport:
    verdict: str                       # holds | holds-sampled | fails
    substitutions_checked: int
    counterexample: Optional[tuple] = None  # (sorted (var, element) list, lhs, rhs)
    mode: str = "exhaustive"
    trials: Optional[int] = None

    def machine_line(self) -> str:
        if self.counterexample is None:
            cex = "none"
        else:
            subs, _, _ = self.counterexample
            cex = ",".join(f"{format_var(v)}={e}" for v, e in subs)
        return f"VERDICT {self.verdict} CHECKED {self.substitutions_checked} CEX {cex}"


def render_report(report: IdentityReport, algebra, lhs=None, rhs=None) -> str:
    """Canonical text report; timing-free so identical runs render identically."""
    lines = []
    if lhs is not None and rhs is not None:
        lines.append(f"identity: {print_term(lhs)} ~ {print_term(rhs)}")
    lines.append(f"algebra size: {algebra.size}")
    lines.append(f"mode: {report.mode}")
    lines.append(f"verdict: {report.verdict}")
    lines.append(f"substitutions checked: {report.substitutions_checked}")
    if report.counterexample is None:
        lines.append("counterexample: none")
    else:
        subs, lv, rv = report.counterexample
        lines.append("counterexample:")
        for v, e in subs:
            lines.append(f"  {format_var(v)} = {algebra.label(e)} (element {e})")
        lines.append(f"  lhs value: {algebra.label(lv)} (element {lv})")
        lines.append(f"  rhs value: {algebra.label(rv)} (element {rv})")
    lines.append(report.machine_line())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# term compilation: terms become flat op lists over a fixed variable order

def _compile_term(term, var_pos: dict):
    if isinstance(term, Word):
        return ("word", tuple((var_pos[v], 1) for v in term.letters))
    if isinstance(term, UnaryTerm):
        return ("word", tuple((var_pos[v], s) for v, s in term.letters))
    if isinstance(term, SemiringTerm):
        def enc(node):
            if isinstance(node, SLeaf):
                return ("leaf", var_pos[node.var])
            tag = "plus" if isinstance(node, SPlus) else "times"
            return (tag, enc(node.left), enc(node.right))
        return ("tree", enc(term))
    raise FlavorMismatch(f"cannot compile {type(term).__name__}")


def _eval_compiled(spec, cols, mul, inv, add):
    kind, body = spec
    if kind == "word":
        (p0, s0) = body[0]
        acc = cols[p0] if s0 > 0 else inv[cols[p0]]
        for p, s in body[1:]:
            acc = mul[acc, cols[p] if s > 0 else inv[cols[p]]]
        return acc

    def walk(node):
        if node[0] == "leaf":
            return cols[node[1]]
        l = walk(node[1])
        r = walk(node[2])
        return add[l, r] if node[0] == "plus" else mul[l, r]

    return walk(body)


def _decode_columns(flat, radices, domains):
    """Mixed-radix decode; last variable is least significant."""
    cols = [None] * len(radices)
    rest = flat
    for i in range(len(radices) - 1, -1, -1):
        pos = rest % radices[i]
        rest = rest // radices[i]
        cols[i] = domains[i][pos]
    return cols


def _scan_mismatch(args):
    """Least flat index in [lo, hi) where lhs != rhs, or None."""
    mul, inv, add, lhs_spec, rhs_spec, radices, domains, lo, hi = args
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        flat = np.arange(start, stop, dtype=np.int64)
        cols = _decode_columns(flat, radices, domains)
        lv = _eval_compiled(lhs_spec, cols, mul, inv, add)
        rv = _eval_compiled(rhs_spec, cols, mul, inv, add)
        bad = np.flatnonzero(lv != rv)
        if len(bad):
            at = int(bad[0])
            return start + at, int(lv[at]), int(rv[at])
    return None


def _scan_sample_mismatch(args):
    """Least row index in [lo, hi) of the sample matrix where lhs != rhs."""
    mul, inv, add, lhs_spec, rhs_spec, samples, lo, hi = args
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        block = samples[start:stop]
        cols = [block[:, i] for i in range(block.shape[1])]
        lv = _eval_compiled(lhs_spec, cols, mul, inv, add)
        rv = _eval_compiled(rhs_spec, cols, mul, inv, add)
        bad = np.flatnonzero(lv != rv)
        if len(bad):
            at = int(bad[0])
            return start + at, int(lv[at]), int(rv[at])
    return None


def _scan_values(args):
    """Map value -> least flat index over [lo, hi)."""
    mul, inv, add, spec, radices, domains, lo, hi = args
    found = {}
    for start in range(lo, hi, _CHUNK):
        stop = min(start + _CHUNK, hi)
        flat = np.arange(start, stop, dtype=np.int64)
        cols = _decode_columns(flat, radices, domains)
        vals = _eval_compiled(spec, cols, mul, inv, add)
        uniq, first = np.unique(vals, return_index=True)
        for u, f in zip(uniq, first):
            u = int(u)
            if u not in found:
                found[u] = start + int(f)
    return found


def _shards(total: int, workers: int) -> list:
    bounds = np.linspace(0, total, workers + 1, dtype=np.int64)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(workers)
            if bounds[i] < bounds[i + 1]]


def _run_sharded(fn, make_args, total: int, workers: int):
    # pools only pay off on big spaces; results are shard-independent anyway
    if total < (1 << 16):
        workers = 1
    pieces = _shards(total, max(1, workers))
    if len(pieces) <= 1 or workers <= 1:
        return [fn(make_args(lo, hi)) for lo, hi in pieces]
    with ProcessPoolExecutor(max_workers=len(pieces)) as pool:
        return list(pool.map(fn, [make_args(lo, hi) for lo, hi in pieces]))


def effective_workers(workers: Optional[int]) -> int:
    cap = os.environ.get("WORKBENCH_THREADS")
    w = workers if workers is not None else 1
    if cap is not None:
        w = min(w, max(1, int(cap)))
    return max(1, w)


# ---------------------------------------------------------------------------
# flavor handling

def _promote_semiring(term) -> SemiringTerm:
    if isinstance(term, SemiringTerm):
        return term
    if isinstance(term, Word):
        node = SLeaf(term.letters[0])
        for v in term.letters[1:]:
            node = STimes(node, SLeaf(v))
        return node
    if isinstance(term, UnaryTerm):
        if any(s < 0 for _, s in term.letters):
            raise FlavorMismatch("formal inverses are not semiring operations")
        node = SLeaf(term.letters[0][0])
        for v, _ in term.letters[1:]:
            node = STimes(node, SLeaf(v))
        return node
    raise FlavorMismatch(f"cannot promote {type(term).__name__}")


def _prepare(algebra, lhs, rhs):
    """Unify term flavors against the algebra; return (lhs, rhs, vars)."""
    if isinstance(algebra, AiSemiring):
        lhs = _promote_semiring(lhs)
        rhs = _promote_semiring(rhs)
        vars_ = sorted(set(semiring_variables(lhs)) | set(semiring_variables(rhs)))
        return lhs, rhs, vars_
    if isinstance(lhs, SemiringTerm) or isinstance(rhs, SemiringTerm):
        raise FlavorMismatch("semiring terms need a semiring, not a semigroup")
    if isinstance(lhs, UnaryTerm) or isinstance(rhs, UnaryTerm):
        lhs = UnaryTerm(tuple((v, 1) for v in lhs.letters)) if isinstance(lhs, Word) else lhs
        rhs = UnaryTerm(tuple((v, 1) for v in rhs.letters)) if isinstance(rhs, Word) else rhs
        if algebra.inv is None:
            raise FlavorMismatch("unary terms need an inversion table")
    vars_ = sorted(set(lhs.variables()) | set(rhs.variables()))
    return lhs, rhs, vars_


def _tables(algebra):
    if isinstance(algebra, AiSemiring):
        return algebra.mul, None, algebra.add
    return algebra.mul, algebra.inv, None


# ---------------------------------------------------------------------------
# the checker

def check_identity(algebra, lhs, rhs, mode: str = "exhaustive",
                   budget: int = DEFAULT_BUDGET, trials: int = DEFAULT_TRIALS,
                   seed: Optional[int] = None, witness: Optional[dict] = None,
                   workers: Optional[int] = None) -> IdentityReport:
    """Check lhs ~ rhs over a FiniteSemigroup or AiSemiring.

    exhaustive: every substitution, least counterexample reported; the space
    must fit the budget. sampled: `trials` seeded uniform substitutions; can
    only report fails or holds-sampled; the seed is mandatory. witness:
    evaluate one caller-provided substitution.
    """
    lhs, rhs, vars_ = _prepare(algebra, lhs, rhs)
    var_pos = {v: i for i, v in enumerate(vars_)}
    lhs_spec = _compile_term(lhs, var_pos)
    rhs_spec = _compile_term(rhs, var_pos)
    mul, inv, add = _tables(algebra)
    size = algebra.size
    workers = effective_workers(workers)

    if mode == "witness":
        if witness is None:
            raise ValueError("witness mode needs a substitution")
        tau = {v: int(witness[v]) for v in vars_}
        lv = evaluate(lhs, algebra, tau)
        rv = evaluate(rhs, algebra, tau)
        if lv != rv:
            subs = tuple((v, tau[v]) for v in vars_)
            return IdentityReport(verdict="fails", substitutions_checked=1,
                                  counterexample=(subs, lv, rv), mode="witness")
        return IdentityReport(verdict="holds-sampled", substitutions_checked=1,
                              mode="witness", trials=1)

    if mode == "sampled":
        if seed is None:
            raise ValueError("sampled mode needs an explicit seed")
        rng = np.random.default_rng(seed)
        samples = rng.integers(0, size, size=(trials, len(vars_)), dtype=np.int32)
        # workers get their own slice; row indices are rebased afterwards
        pieces = _shards(trials, workers)
        results = []
        args = [(mul, inv, add, lhs_spec, rhs_spec, samples[lo:hi], 0, hi - lo)
                for lo, hi in pieces]
        if workers <= 1 or len(pieces) <= 1:
            raw = [_scan_sample_mismatch(a) for a in args]
        else:
            with ProcessPoolExecutor(max_workers=len(pieces)) as pool:
                raw = list(pool.map(_scan_sample_mismatch, args))
        for (lo, _), r in zip(pieces, raw):
            results.append(None if r is None else (r[0] + lo, r[1], r[2]))
        hits = [r for r in results if r is not None]
        if hits:
            at, lv, rv = min(hits)
            subs = tuple((v, int(samples[at, i])) for i, v in enumerate(vars_))
            return IdentityReport(verdict="fails", substitutions_checked=at + 1,
                                  counterexample=(subs, lv, rv), mode="sampled",
                                  trials=trials)
        return IdentityReport(verdict="holds-sampled", substitutions_checked=trials,
                              mode="sampled", trials=trials)

    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    count = size ** len(vars_)
    if count > budget:
        raise BudgetExceeded(count, budget)
    radices = [size] * len(vars_)
    domains = [np.arange(size, dtype=np.int32)] * len(vars_)
    results = _run_sharded(
        _scan_mismatch,
        lambda lo, hi: (mul, inv, add, lhs_spec, rhs_spec, radices, domains, lo, hi),
        count, workers)
    hits = [r for r in results if r is not None]
    if hits:
        at, lv, rv = min(hits)
        cols = _decode_columns(np.int64(at), radices, domains)
        subs = tuple((v, int(cols[i])) for i, v in enumerate(vars_))
        return IdentityReport(verdict="fails", substitutions_checked=at + 1,
                              counterexample=(subs, lv, rv), mode="exhaustive")
    return IdentityReport(verdict="holds", substitutions_checked=count,
                          mode="exhaustive")


# ---------------------------------------------------------------------------
# hierarchical image sets

@dataclass(frozen=True)
class ImageSet:
    """Image of a (composed) word with per-value witness substitutions."""

    values: tuple                 # sorted element indices
    witnesses: dict               # value -> {var: element}
    covered: int = field(default=0)  # size of the substitution space, exact


def _word_image(S: FiniteSemigroup, word: Word, workers: int) -> ImageSet:
    vars_ = word.variables()
    var_pos = {v: i for i, v in enumerate(vars_)}
    spec = _compile_term(word, var_pos)
    size = S.size
    count = size ** len(vars_)
    radices = [size] * len(vars_)
    domains = [np.arange(size, dtype=np.int32)] * len(vars_)
    results = _run_sharded(
        _scan_values,
        lambda lo, hi: (S.mul, S.inv, None, spec, radices, domains, lo, hi),
        count, workers)
    merged = {}
    for part in results:
        for val, at in part.items():
            if val not in merged or at < merged[val]:
                merged[val] = at
    witnesses = {}
    for val, at in merged.items():
        cols = _decode_columns(np.int64(at), radices, domains)
        witnesses[val] = {v: int(cols[i]) for i, v in enumerate(vars_)}
    return ImageSet(values=tuple(sorted(merged)), witnesses=witnesses,
                    covered=count)


def _canonical_part(part):
    """(key, leaf_map): a small structural key under first-occurrence
    renaming, plus the bijection from the part's leaf variables to canonical
    leaf names. Keys nest child keys, not child structures, so key size is
    linear in one level's pattern. Equal keys mean the parts coincide up to
    renaming of leaves, and then equal canonical leaf names correspond.
    """
    if isinstance(part, Word):
        mapping = {}
        seq = []
        for v in part.letters:
            if v not in mapping:
                mapping[v] = (len(mapping) + 1,)
            seq.append(mapping[v])
        return ("word", tuple(seq)), mapping
    slot_ids = {}
    outer_seq = []
    for s in part.outer.letters:
        if s not in slot_ids:
            slot_ids[s] = len(slot_ids) + 1
        outer_seq.append(slot_ids[s])
    inner_keys = []
    leaf_map = {}
    for s, sid in sorted(slot_ids.items(), key=lambda kv: kv[1]):
        ikey, imap = _canonical_part(part.inner[s])
        inner_keys.append(ikey)
        for leaf, canon in imap.items():
            leaf_map[leaf] = (sid,) + canon
    return ("composed", tuple(outer_seq), tuple(inner_keys)), leaf_map


def image_set(S: FiniteSemigroup, cw, workers: Optional[int] = None) -> ImageSet:
    """Exact image of a composed word, computed level by level.

    Inner parts that coincide up to variable renaming share one computation.
    Sound and complete because inner variable sets are pairwise disjoint.
    """
    workers = effective_workers(workers)
    return _image_rec(S, cw, workers, {})


def _image_rec(S: FiniteSemigroup, part, workers: int, cache: dict) -> ImageSet:
    key, leaf_map = _canonical_part(part)
    hit = cache.get(key)
    if hit is None:
        hit = _image_fresh(S, part, workers, cache, leaf_map)
        cache[key] = hit
    back = {c: v for v, c in leaf_map.items()}
    witnesses = {val: {back[c]: e for c, e in sub.items()}
                 for val, sub in hit.witnesses.items()}
    return ImageSet(values=hit.values, witnesses=witnesses, covered=hit.covered)


def _image_fresh(S: FiniteSemigroup, part, workers: int, cache: dict,
                 leaf_map: dict) -> ImageSet:
    """Image of one part, with witnesses keyed by canonical leaf names."""
    if isinstance(part, Word):
        canon = Word(tuple(leaf_map[v] for v in part.letters))
        return _word_image(S, canon, workers)

    slots = sorted(part.inner)
    inner_images = {slot: _image_rec(S, part.inner[slot], workers, cache)
                    for slot in slots}
    # outer pass: enumerate tuples of inner image values
    var_pos = {v: i for i, v in enumerate(slots)}
    spec = _compile_term(part.outer, var_pos)
    radices = [len(inner_images[s].values) for s in slots]
    domains = [np.array(inner_images[s].values, dtype=np.int32) for s in slots]
    covered = 1
    for s in slots:
        covered *= inner_images[s].covered
    total = 1
    for r in radices:
        total *= r
    results = _run_sharded(
        _scan_values,
        lambda lo, hi: (S.mul, S.inv, None, spec, radices, domains, lo, hi),
        total, workers)
    merged = {}
    for piece in results:
        for val, at in piece.items():
            if val not in merged or at < merged[val]:
                merged[val] = at
    witnesses = {}
    for val, at in merged.items():
        cols = _decode_columns(np.int64(at), radices, domains)
        sub = {}
        for i, slot in enumerate(slots):
            inner_val = int(cols[i])
            inner_sub = inner_images[slot].witnesses[inner_val]
            sub.update({leaf_map[v]: e for v, e in inner_sub.items()})
        witnesses[val] = sub
    return ImageSet(values=tuple(sorted(merged)), witnesses=witnesses,
                    covered=covered)


def check_idempotent_image(S: FiniteSemigroup, cw,
                           workers: Optional[int] = None) -> IdentityReport:
    """Check word ~ word^2 through the image set: holds iff every image
    value is an idempotent. A failure reports a substitution reconstructed
    from the level-wise witnesses and re-validated on the flat word.
    """
    img = image_set(S, cw, workers=workers)
    bad = [v for v in img.values if int(S.mul[v, v]) != v]
    if not bad:
        return IdentityReport(verdict="holds",
                              substitutions_checked=img.covered, mode="image")
    val = bad[0]
    tau = img.witnesses[val]
    flat = cw.flatten() if isinstance(cw, ComposedWord) else cw
    check = evaluate(flat, S, tau)
    assert check == val, "image witness failed re-validation"
    subs = tuple((v, tau[v]) for v in sorted(tau))
    return IdentityReport(verdict="fails", substitutions_checked=img.covered,
                          counterexample=(subs, val, int(S.mul[val, val])),
                          mode="image")


# ---------------------------------------------------------------------------
# sampled identity transfer

@dataclass(frozen=True)
class TransferReport:
    identities_tested: int
    subsemigroups_tested: int
    violations: tuple


def _random_unary(rng, nvars: int, max_len: int) -> UnaryTerm:
    length = int(rng.integers(1, max_len + 1))
    letters = []
    for _ in range(length):
        v = (int(rng.integers(1, nvars + 1)),)
        s = 1 if rng.integers(2) else -1
        letters.append((v, s))
    return UnaryTerm(tuple(letters))


def transfer_spotcheck(big: FiniteSemigroup, small: FiniteSemigroup,
                       gens_count: int, trials: int, seed: int) -> TransferReport:
    """Sample identities holding in `small`, then test each on a random
    gens_count-generated inverse subsemigroup of `big`.

    Identities are found by bucketing random unary terms by their value
    vector over all substitutions in `small`; same-bucket pairs are
    identities of `small` by construction (so "verified exhaustively").
    """
    if big.inv is None or small.inv is None:
        raise ValueError("transfer_spotcheck needs inverse semigroups")
    rng = np.random.default_rng(seed)
    nvars = 2
    subs_space = list(
        np.ndindex(*([small.size] * nvars)))
    buckets = {}
    identities = []
    while len(identities) < trials:
        term = _random_unary(rng, nvars, max_len=6)
        vec = tuple(
            evaluate(term, small, {(i + 1,): int(s[i]) for i in range(nvars)})
            for s in subs_space)
        mate = buckets.get(vec)
        if mate is not None and print_term(mate) != print_term(term):
            identities.append((mate, term))
        buckets[vec] = term
    violations = []
    tested = 0
    for lhs, rhs in identities:
        seeds = [int(x) for x in rng.integers(0, big.size, size=gens_count)]
        sub, _ = subsemigroup(big, seeds, closed_under_inv=True)
        rep = check_identity(sub, lhs, rhs, mode="exhaustive", budget=10_000_000)
        tested += 1
        if rep.verdict != "holds":
            violations.append((print_term(lhs), print_term(rhs), tuple(seeds), rep))
    return TransferReport(identities_tested=len(identities),
                          subsemigroups_tested=tested,
                          violations=tuple(violations))
