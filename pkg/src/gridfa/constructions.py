"""Closure constructions, the bottom-accepting normal form and model conversions.

Every function here maps machines to machines; nothing simulates a word.
Correctness of each construction is checked elsewhere against brute-force
language samples.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .grid import BORDER
from .machines import Kind, Machine, Move
from .simulate import ChainAnalysis, bottom_chain_analysis

R, CR = Move.R, Move.RESET


class ConstructionError(ValueError):
    pass


class NotShortBottom(ConstructionError):
    """The input has a post-reset bottom chain longer than two reads.

    Such chains only accept when the word is wide enough; the constructions
    that need a width-independent bottom cannot handle them.
    """


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _need(m: Machine, *kinds: Kind) -> None:
    if m.kind not in kinds:
        allowed = ", ".join(k.value for k in kinds)
        raise ConstructionError(f"expected a machine of kind {allowed}, got {m.kind.value}")


def _same_alphabet(a: Machine, b: Machine) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise ConstructionError(f"alphabet mismatch: {list(a.alphabet)} vs {list(b.alphabet)}")


def _universal_tw(alphabet, note: str) -> Machine:
    rules = [("u", a, "acc", R) for a in alphabet]
    return Machine.build(Kind.TW, ["u", "acc"], alphabet, "u", "acc", rules, notes=[note])


def _empty_tw(alphabet, note: str) -> Machine:
    return Machine.build(Kind.TW, ["q0", "acc"], alphabet, "q0", "acc", [], notes=[note])


# --- bottom-accepting normal form --------------------------------------------


@dataclass(frozen=True)
class Banf:
    """A typewriter machine whose every accepting run ends on the bottom border.

    Accept is entered only by reading ``#`` in an *entry state*, and entry
    states are entered only by resets, so that ``#`` is necessarily the
    bottom border at column 1.  ``descend`` is the state that keeps resetting
    down to the bottom after the original machine would have accepted.
    """

    machine: Machine
    descend: str | None
    short_bottom: bool
    k_max: int
    split: tuple[str, ...] = ()

    @property
    def entry_states(self) -> frozenset[str]:
        m = self.machine
        return frozenset(q for q in m.states if any(t == m.accept for t, _ in m.targets(q, BORDER)))


def to_bottom_accepting(t: Machine) -> Banf:
    """Equivalent machine that only accepts at column 1 of the bottom border.

    Transitions into accept become resets into a descend state ``p`` that
    resets row by row and accepts on ``#``.  States that are reset targets
    with a finite bottom chain accept directly on ``#``; when such a state is
    also entered by a right move (or is initial) it gets a post-reset copy so
    that a right-border ``#`` is not mistaken for the bottom.

    Exact for short-bottom inputs.  For longer chains the result also accepts
    words narrower than the chain; ``short_bottom`` is then False.
    """
    _need(t, Kind.TW)
    ca = bottom_chain_analysis(t)
    acc = t.accept
    taken = set(t.states)
    note = f"bottom-accepting form of {t.initial}..{acc} ({len(t.states)} states)"
    if t.initial == acc:
        u, p = _fresh("u", taken), _fresh("p", taken)
        rules = [(u, a, p, CR) for a in t.alphabet] + [(p, a, p, CR) for a in t.alphabet]
        rules.append((p, BORDER, acc, R))
        m = Machine.build(Kind.TW, [u, p, acc], t.alphabet, u, acc, rules, notes=[note])
        return Banf(m, p, True, 0)

    entry = {q for q in ca.reset_targets if ca.k[q] != math.inf}
    r_targets = {tg for _, _, tg, mv in t.rules() if mv is R}
    split = [q for q in t.states if q in entry and (q in r_targets or q == t.initial)]
    hat = {q: _fresh(f"{q}^", taken) for q in split}
    p = _fresh("p", taken)

    def rewrite(tg, mv):
        if tg == acc:
            return p, CR
        if mv is CR and tg in hat:
            return hat[tg], CR
        return tg, mv

    rules = []
    uses_p = False
    for q, s, tg, mv in t.rules():
        if s == BORDER and q in entry and q not in hat:
            continue  # this read is always the bottom border; replaced below
        tg2, mv2 = rewrite(tg, mv)
        uses_p |= tg2 == p
        rules.append((q, s, tg2, mv2))
        if q in hat and s != BORDER:
            rules.append((hat[q], s, tg2, mv2))
    for q in entry:
        rules.append((hat.get(q, q), BORDER, acc, R))
    states = list(t.states) + [hat[q] for q in split]
    if uses_p:
        states.append(p)
        rules += [(p, a, p, CR) for a in t.alphabet] + [(p, BORDER, acc, R)]
    m = Machine.build(Kind.TW, states, t.alphabet, t.initial, acc, rules, notes=[note])
    return Banf(m, p if uses_p else None, ca.short_bottom, ca.k_max, tuple(split))


def _as_banf(t) -> Banf:
    return t if isinstance(t, Banf) else to_bottom_accepting(t)


# --- union and complement ----------------------------------------------------


def union_tfa(a: Machine, b: Machine) -> Machine:
    """Disjoint copies plus a fresh initial state carrying both initials' moves."""
    _need(a, Kind.TW)
    _need(b, Kind.TW)
    _same_alphabet(a, b)
    if a.initial == a.accept or b.initial == b.accept:
        return _universal_tw(a.alphabet, "union with a universal operand")

    def name(prefix, m, q):
        return "acc" if q == m.accept else f"{prefix}.{q}"

    states = ["u"]
    rules = []
    for prefix, m in (("a", a), ("b", b)):
        states += [name(prefix, m, q) for q in m.states if q != m.accept]
        for q, s, tg, mv in m.rules():
            rules.append((name(prefix, m, q), s, name(prefix, m, tg), mv))
            if q == m.initial:
                rules.append(("u", s, name(prefix, m, tg), mv))
    states.append("acc")
    return Machine.build(Kind.TW, states, a.alphabet, "u", "acc", rules, notes=["union"])


def complement_tdfa(m: Machine) -> Machine:
    """Deterministic complement for short-bottom machines.

    Each state gets a post-reset copy (marked ``^``) so the first read after
    a reset can tell the bottom border apart.  Wherever the input would halt
    without accepting, the complement accepts; where the input accepts, the
    complement has no transition.
    """
    _need(m, Kind.TW)
    if not m.deterministic:
        raise ConstructionError("complement needs a deterministic machine")
    ca = bottom_chain_analysis(m)
    if not ca.short_bottom:
        raise NotShortBottom(
            f"bottom chains up to {ca.k_max} reads; complement needs chains of at most 2 "
            "(a width probe over the first row would be required)"
        )
    acc = m.accept
    if m.initial == acc:
        return _empty_tw(m.alphabet, "complement of a universal machine")
    taken = set(m.states)
    fresh = {q: _fresh(f"{q}^", taken) for q in m.states if q in ca.reset_targets}
    rules = []

    def follow(src, q, s):
        targets = m.targets(q, s)
        if not targets:
            rules.append((src, s, acc, R))
            return
        tg, mv = targets[0]
        if tg == acc:
            return
        if mv is CR:
            rules.append((src, s, fresh[tg], CR))
        elif s == BORDER:
            # a normal-mode state only reads '#' on the right border, where R is infeasible
            rules.append((src, s, acc, R))
        else:
            rules.append((src, s, tg, R))

    for q in m.states:
        if q == acc:
            continue
        for s in m.symbols:
            follow(q, q, s)
        if q in fresh:
            for s in m.alphabet:
                follow(fresh[q], q, s)
            if ca.k[q] == math.inf:
                rules.append((fresh[q], BORDER, acc, R))
    states = [q for q in m.states if q != acc] + [fresh[q] for q in m.states if q in fresh] + [acc]
    return Machine.build(Kind.TW, states, m.alphabet, m.initial, acc, rules, notes=["complement"])


# --- row concatenation -------------------------------------------------------


def row_concat_tfa(a, b: Machine) -> Machine:
    """Machine for ``L(a) ⊖ L(b)`` with at most ``|a| + |b| - 1`` states.

    ``a`` is taken in bottom-accepting form.  Its entry states sit at column 1
    of the row below a's last row; reading a data symbol there they may hand
    off to ``b`` by taking b's initial transitions.  The descend state keeps
    its reset loop, which realises the nondeterministic guess of where the
    second word starts.
    """
    ba = _as_banf(a)
    _need(b, Kind.TW)
    A = ba.machine
    _same_alphabet(A, b)
    if not ba.short_bottom:
        raise NotShortBottom("row concatenation needs a short-bottom first operand")

    def na(q):
        return f"1.{q}"

    def nb(q):
        return f"2.{q}"

    rules = []
    for q, s, tg, mv in A.rules():
        if tg != A.accept:
            rules.append((na(q), s, na(tg), mv))
    for q, s, tg, mv in b.rules():
        rules.append((nb(q), s, nb(tg), mv))
    for x in ba.entry_states:
        for s in A.alphabet:
            if b.initial == b.accept:
                rules.append((na(x), s, nb(b.accept), R))
            for tg, mv in b.targets(b.initial, s):
                rules.append((na(x), s, nb(tg), mv))
    states = [na(q) for q in A.states if q != A.accept] + [nb(q) for q in b.states]
    return Machine.build(Kind.TW, states, A.alphabet, na(A.initial), nb(b.accept), rules, notes=["row concatenation"])


# --- reversal ----------------------------------------------------------------


def row_step_relation(t, row: str) -> frozenset[tuple[str, str]]:
    """Pairs (p, q): from p at column 1 of ``row``, one reset can land in q.

    The row is assumed to have another row (or the bottom border) below it,
    so resets are always feasible.  Runs entering accept inside the row do
    not contribute.
    """
    m = t.machine if isinstance(t, Banf) else t
    _need(m, Kind.TW)
    n = len(row)
    pairs = set()
    for g in m.states:
        if g == m.accept:
            continue
        cur = {g}
        for j in range(n + 1):
            sym = row[j] if j < n else BORDER
            new = set()
            for q in cur:
                for tg, mv in m.targets(q, sym):
                    if tg == m.accept:
                        continue
                    if mv is CR:
                        pairs.add((g, tg))
                    elif mv is R and j < n:
                        new.add(tg)
            cur = new
            if not cur:
                break
    return frozenset(pairs)


def _predecessors(m: Machine) -> dict[str, set[str]]:
    """Over-approximation of row-step predecessors, ignoring row content."""
    live = [q for q in m.states if q != m.accept]
    succ = {q: set() for q in live}
    resets_from = {q: set() for q in live}
    for q, s, tg, mv in m.rules():
        if tg == m.accept:
            continue
        if mv is R and s != BORDER:
            succ[q].add(tg)
        elif mv is CR:
            resets_from[q].add(tg)
    pred = {q: set() for q in live}
    for g in live:
        seen, stack = {g}, [g]
        while stack:
            c = stack.pop()
            for tg in resets_from[c]:
                pred[tg].add(g)
            for d in succ[c] - seen:
                seen.add(d)
                stack.append(d)
    return pred


def trim(m: Machine) -> Machine:
    """Drop states that are unreachable from the initial state or cannot reach accept."""
    fwd: dict[str, set] = {}
    back: dict[str, set] = {}
    for q, _, tg, _ in m.rules():
        fwd.setdefault(q, set()).add(tg)
        back.setdefault(tg, set()).add(q)

    def closure(start, graph):
        seen, stack = {start}, [start]
        while stack:
            for d in graph.get(stack.pop(), ()):
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return seen

    keep = closure(m.initial, fwd) & closure(m.accept, back)
    keep |= {m.initial, m.accept}
    states = [q for q in m.states if q in keep]
    rules = [r for r in m.rules() if r[0] in keep and r[2] in keep]
    return Machine.build(m.kind, states, m.alphabet, m.initial, m.accept, rules, notes=m.notes)


def reverse_tfa(t) -> Machine:
    """Machine for the row reversal of ``L(t)``.

    ``t`` (put in bottom-accepting form) accepts ``w`` iff a chain
    ``initial = s0, s1, ..., sm`` exists with each ``(s(i-1), si)`` in the
    row-step relation of row ``i`` and ``sm`` an entry state.  The result
    reads the reversed word top-down and checks that chain backwards.  Its
    states are triples ``[c,t,g]``: simulated state ``c``, the state ``t``
    this row's reset must land in, and the guessed start ``g`` of this row,
    which becomes the next row's target.  After the row whose start is
    ``t``'s initial state it may reset into ``end``, which accepts on ``#``.

    Only triples reachable from the seed and able to reach accept are kept.
    The result is itself bottom-accepting and short-bottom.
    """
    bt = _as_banf(t)
    if not bt.short_bottom:
        raise NotShortBottom("reversal needs a short-bottom machine")
    M = bt.machine
    acc = M.accept
    if M.initial == acc:
        return _universal_tw(M.alphabet, "reversal of a universal machine")
    pred = _predecessors(M)
    entries = sorted(bt.entry_states, key=M.states.index)

    SEED, END, ACC = ("seed",), ("end",), ("acc",)

    def name(key):
        if key == SEED:
            return "seed"
        if key == END:
            return "end"
        if key == ACC:
            return "acc"
        return f"[{key[0]},{key[1]},{key[2]}]"

    def moves(c, tgt, g):
        for s in M.symbols:
            for c2, mv in M.targets(c, s):
                if c2 == acc:
                    continue
                if mv is R:
                    yield s, (c2, tgt, g), R
                elif mv is CR and c2 == tgt:
                    for g2 in sorted(pred[g], key=M.states.index):
                        yield s, (g2, g, g2), CR
                    if g == M.initial:
                        yield s, END, CR

    rules = []
    seen = {SEED, END, ACC}
    queue: deque = deque()

    def visit(key):
        if key not in seen:
            seen.add(key)
            queue.append(key)

    for e in entries:
        for g in sorted(pred[e], key=M.states.index):
            for s, key, mv in moves(g, e, g):
                rules.append(("seed", s, name(key), mv))
                visit(key)
    rules.append(("end", BORDER, "acc", R))
    while queue:
        key = queue.popleft()
        for s, nxt, mv in moves(*key):
            rules.append((name(key), s, name(nxt), mv))
            visit(nxt)
    states = ["seed"] + sorted(name(k) for k in seen if len(k) == 3) + ["end", "acc"]
    out = Machine.build(Kind.TW, states, M.alphabet, "seed", "acc", rules, notes=["row reversal"])
    return trim(out)


# --- conversions between typewriter and returning automata -------------------


def tfa_to_rfa(t: Machine) -> Machine:
    """Returning automaton scanning every row fully, simulating ``t``.

    A reset inside a row becomes a skip over the rest of the row and its
    ``#``.  Once ``t`` accepts, a sweep state consumes the remaining scan and
    guesses which ``#`` is the last one.  A reset that may be the last one
    (into a state with a finite bottom chain) may likewise accept on the
    final ``#``.  When a bottom chain is longer than two reads, states carry
    the first row's width, capped at the longest chain, to decide whether
    the chain fits on the bottom border.
    """
    _need(t, Kind.TW)
    ca: ChainAnalysis = bottom_chain_analysis(t)
    acc = t.accept
    cap = ca.k_max
    tagged = cap > 2

    def adv(tag, s):
        if tag is None or tag[0] == "w":
            return tag
        if s == BORDER:
            return ("w", tag[1])
        return ("c", min(tag[1] + 1, cap))

    def fits(q, tag, s):
        if ca.k[q] == math.inf:
            return False
        if tag is None:
            return True
        width = tag[1]  # min(n + 1, cap) once the first '#' is being read
        return ca.k[q] <= width

    SWEEP, ACC = ("sweep", None, None), ("acc", None, None)
    taken = {acc}
    names = {ACC: acc}

    def nm(key):
        if key not in names:
            role, q, tag = key
            base = "sweep" if role == "sweep" else q if role == "sim" else f"skip.{q}"
            if tag is not None:
                base += f"@{tag[0]}{tag[1]}"
            names[key] = _fresh(base, taken)
        return names[key]

    def step(key, s):
        role, q, tag = key
        if role == "sweep":
            yield SWEEP
            if s == BORDER:
                yield ACC
            return
        nt = adv(tag, s)
        if role == "skip":
            if s == BORDER:
                yield ("sim", q, nt)
                if fits(q, tag, s):
                    yield ACC
            else:
                yield ("skip", q, nt)
            return
        for q2, mv in t.targets(q, s):
            if q2 == acc:
                yield SWEEP
                if s == BORDER:
                    yield ACC
            elif s != BORDER:
                if mv is R:
                    yield ("sim", q2, nt)
                elif mv is CR:
                    yield ("skip", q2, nt)
            elif mv is CR:
                yield ("sim", q2, nt)
                if fits(q2, tag, s):
                    yield ACC

    start = SWEEP if t.initial == acc else ("sim", t.initial, ("c", 1) if tagged else None)
    order = [start]
    seen = {start, ACC}
    rules = []
    queue = deque([start])
    while queue:
        key = queue.popleft()
        for s in t.symbols:
            for nxt in step(key, s):
                rules.append((nm(key), s, nm(nxt), None))
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
    states = [nm(k) for k in order] + [acc]
    note = f"returning automaton from typewriter machine ({'width-tagged, cap ' + str(cap) if tagged else 'short-bottom'})"
    return Machine.build(Kind.RFA, states, t.alphabet, nm(start), acc, rules, notes=[note])


def rfa_to_tfa(r: Machine) -> Machine:
    """Typewriter machine replaying ``r`` with resets only after a right-border ``#``.

    A rule into accept on ``#`` may be the last scan symbol; it becomes a
    reset into a state that accepts only if the next read is the bottom
    border.
    """
    _need(r, Kind.RFA)
    acc = r.accept
    if r.initial == acc:
        return _empty_tw(r.alphabet, "returning automaton accepting nothing")
    taken = set(r.states)
    pre = _fresh("pre", taken)
    rules = []
    for q, s, tg, _ in r.rules():
        if s != BORDER:
            if tg != acc:
                rules.append((q, s, tg, R))
        elif tg == acc:
            rules.append((q, s, pre, CR))
        else:
            rules.append((q, s, tg, CR))
    rules.append((pre, BORDER, acc, R))
    states = [q for q in r.states if q != acc] + [pre, acc]
    return Machine.build(Kind.TW, states, r.alphabet, r.initial, acc, rules, notes=["typewriter machine from returning automaton"])
