"""Membership, witness traces and bottom-border chain analysis.

Head-moving kinds (tw, 2w, 3w, 4w) start at ``(initial, 1, 1)``.  A transition
whose target is the accept state accepts at once, whatever its move; any other
transition needs a feasible move or the branch dies.  Rule-based kinds (bfa,
rfa) consume a fixed linear scan of the word and accept when the final rule
of a complete scan lands in the accept state.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .grid import BORDER, Word2D, cell_at
from .machines import Kind, Machine, Move


class RejectReason(enum.Enum):
    NO_TRANSITION = "no-transition"
    INFEASIBLE_MOVE = "infeasible-move"
    SCAN_END_NOT_ACCEPTING = "scan-end-not-accepting"
    LOOP_DETECTED = "loop-detected"
    NO_ACCEPTING_RUN = "no-accepting-run"

    def __str__(self):
        return self.value


class Configuration(NamedTuple):
    state: str
    i: int
    j: int


@dataclass
class Trace:
    """Accepting run.  ``steps[k]`` is the (symbol, move) taken out of ``configs[k]``.

    The final configuration holds the accept state at the position where the
    accepting read happened.
    """

    configs: list[Configuration]
    steps: list[tuple[str, Move | None]]

    def render(self) -> str:
        out = []
        for c, (sym, mv) in zip(self.configs, self.steps):
            out.append(f"{c.state} @ ({c.i},{c.j}) --{sym}/{mv if mv is not None else '-'}-->")
        last = self.configs[-1]
        out.append(f"{last.state} @ ({last.i},{last.j})")
        return "\n".join(out)


@dataclass
class RunOutcome:
    accepted: bool
    reason: RejectReason | None = None
    cells_read: int | None = None
    steps: int = 0
    # edges that fail to advance the kind's progress order (tw, 2w only)
    cycle_edges: int = 0

    def __str__(self):
        return "accept" if self.accepted else f"reject {self.reason}"


class AlphabetMismatch(ValueError):
    pass


def _check_word(m: Machine, w: Word2D) -> None:
    extra = w.symbols() - set(m.alphabet)
    if extra:
        raise AlphabetMismatch(f"word symbols {sorted(extra)} not in machine alphabet {list(m.alphabet)}")


def _moved(mv: Move, i: int, j: int, rows: int, cols: int):
    """Head position after ``mv`` from ``(i, j)``, or None when infeasible."""
    if mv is Move.R:
        return (i, j + 1) if j + 1 <= cols + 1 else None
    if mv is Move.RESET:
        return (i + 1, 1) if i <= rows else None
    if mv is Move.D:
        return (i + 1, j) if i + 1 <= rows + 1 else None
    if mv is Move.L:
        return (i, j - 1) if j - 1 >= 0 else None
    if mv is Move.U:
        return (i - 1, j) if i - 1 >= 0 else None
    raise ValueError(f"move {mv} has no head motion")


def _progress_key(kind: Kind, i: int, j: int):
    if kind is Kind.TW:
        return (i, j)
    if kind is Kind.W2:
        return i + j
    return None


# --- configuration-graph engine ----------------------------------------------


@dataclass
class _Search:
    accepted: bool = False
    parents: dict = field(default_factory=dict)
    # configurations from which the accept state was entered
    entries: list = field(default_factory=list)
    expanded: int = 0
    cycle_edges: int = 0


def _explore(m: Machine, w: Word2D, start: str | None = None, exhaustive: bool = False) -> _Search:
    """Breadth-first reachability over configurations with a visited set."""
    res = _Search()
    init = Configuration(start if start is not None else m.initial, 1, 1)
    if init.state == m.accept:
        res.accepted = True
        res.entries.append(None)
        return res
    res.parents[init] = None
    queue = deque([init])
    while queue:
        c = queue.popleft()
        res.expanded += 1
        sym = cell_at(w, c.i, c.j)
        here = _progress_key(m.kind, c.i, c.j)
        for t, mv in m.targets(c.state, sym):
            if t == m.accept:
                res.accepted = True
                res.entries.append(c)
                if not exhaustive:
                    res.parents[Configuration(t, c.i, c.j)] = (c, sym, mv)
                    return res
                continue
            pos = _moved(mv, c.i, c.j, w.m, w.n)
            if pos is None:
                continue
            nc = Configuration(t, *pos)
            if here is not None and not _progress_key(m.kind, *pos) > here:
                res.cycle_edges += 1
            if nc not in res.parents:
                res.parents[nc] = (c, sym, mv)
                queue.append(nc)
    return res


def step_deterministic(m: Machine, w: Word2D) -> RunOutcome:
    """Single-path stepper for deterministic head-moving machines."""
    if not m.deterministic:
        raise ValueError("step_deterministic needs a deterministic machine")
    _check_word(m, w)
    c = Configuration(m.initial, 1, 1)
    if c.state == m.accept:
        return RunOutcome(True)
    seen = {c}
    steps = cycle = 0
    while True:
        sym = cell_at(w, c.i, c.j)
        targets = m.targets(c.state, sym)
        if not targets:
            return RunOutcome(False, RejectReason.NO_TRANSITION, steps=steps, cycle_edges=cycle)
        t, mv = targets[0]
        steps += 1
        if t == m.accept:
            return RunOutcome(True, steps=steps, cycle_edges=cycle)
        pos = _moved(mv, c.i, c.j, w.m, w.n)
        if pos is None:
            return RunOutcome(False, RejectReason.INFEASIBLE_MOVE, steps=steps, cycle_edges=cycle)
        here = _progress_key(m.kind, c.i, c.j)
        if here is not None and not _progress_key(m.kind, *pos) > here:
            cycle += 1
        c = Configuration(t, *pos)
        if c in seen:
            return RunOutcome(False, RejectReason.LOOP_DETECTED, steps=steps, cycle_edges=cycle)
        seen.add(c)


# --- scan engine for bfa / rfa -----------------------------------------------


def scan_order(kind: Kind, w: Word2D) -> list[tuple[int, int]]:
    """Positions read by a rule-based machine, in order.

    Each row traversal ends with one border read on its exit side; the
    bottom border is never read.
    """
    out = []
    for i in range(1, w.m + 1):
        if kind is Kind.BFA and i % 2 == 0:
            out += [(i, j) for j in range(w.n, 0, -1)] + [(i, 0)]
        else:
            out += [(i, j) for j in range(1, w.n + 1)] + [(i, w.n + 1)]
    return out


def _scan(m: Machine, w: Word2D, want_trace: bool = False):
    order = scan_order(m.kind, w)
    last = len(order) - 1
    # layers[k] maps each state alive before reading order[k] to a predecessor
    layers: list[dict] = [{m.initial: None}]
    accepted_from = None
    for k, (i, j) in enumerate(order):
        sym = cell_at(w, i, j)
        nxt: dict[str, str] = {}
        for q in layers[-1]:
            for t, _ in m.targets(q, sym):
                if t == m.accept:
                    if k == last and accepted_from is None:
                        accepted_from = q
                elif k < last:
                    nxt.setdefault(t, q)
        if k == last:
            break
        if not nxt:
            cells = sum(1 for (a, b) in order[:k] if cell_at(w, a, b) != BORDER)
            return RunOutcome(False, RejectReason.NO_TRANSITION, cells_read=cells, steps=k), None
        layers.append(nxt)
    cells = w.m * w.n
    if accepted_from is None:
        return RunOutcome(False, RejectReason.SCAN_END_NOT_ACCEPTING, cells_read=cells, steps=last), None
    outcome = RunOutcome(True, cells_read=cells, steps=len(order))
    if not want_trace:
        return outcome, None
    states = [accepted_from]
    for k in range(last, 0, -1):
        states.append(layers[k][states[-1]])
    states.reverse()
    configs = [Configuration(q, i, j) for q, (i, j) in zip(states, order)]
    configs.append(Configuration(m.accept, *order[-1]))
    steps = [(cell_at(w, i, j), None) for (i, j) in order]
    return outcome, Trace(configs, steps)


# --- public entry points -----------------------------------------------------


def run(m: Machine, w: Word2D) -> RunOutcome:
    """Decide membership with the reference engines and report how it ended."""
    _check_word(m, w)
    if m.kind.rule_based:
        return _scan(m, w)[0]
    if m.deterministic:
        return step_deterministic(m, w)
    res = _explore(m, w)
    if res.accepted:
        return RunOutcome(True, steps=res.expanded, cycle_edges=res.cycle_edges)
    return RunOutcome(False, RejectReason.NO_ACCEPTING_RUN, steps=res.expanded, cycle_edges=res.cycle_edges)


def reachable_accept(m: Machine, w: Word2D, start: str | None = None) -> _Search:
    """Full configuration-graph search, exhaustive over accept entries."""
    _check_word(m, w)
    return _explore(m, w, start=start, exhaustive=True)


def accepting_entries(m: Machine, w: Word2D) -> list[Configuration | None]:
    """Every reachable configuration that enters the accept state.

    ``None`` stands for the initial configuration when the initial state is
    itself accepting.
    """
    return reachable_accept(m, w).entries


def trace(m: Machine, w: Word2D) -> Trace | None:
    _check_word(m, w)
    if m.kind.rule_based:
        return _scan(m, w, want_trace=True)[1]
    res = _explore(m, w)
    if not res.accepted:
        return None
    if res.entries == [None]:
        return Trace([Configuration(m.initial, 1, 1)], [])
    node = next(c for c in res.parents if c.state == m.accept and res.parents[c] is not None)
    configs, steps = [node], []
    while res.parents[node] is not None:
        prev, sym, mv = res.parents[node]
        configs.append(prev)
        steps.append((sym, mv))
        node = prev
    configs.reverse()
    steps.reverse()
    return Trace(configs, steps)


def replay(m: Machine, w: Word2D, tr: Trace) -> bool:
    """Validate a trace step by step against the machine and word."""
    if not tr.configs or tr.configs[0] != Configuration(m.initial, 1, 1) and not m.kind.rule_based:
        return False
    if tr.configs[-1].state != m.accept:
        return False
    if m.kind.rule_based:
        order = scan_order(m.kind, w)
        if [(c.i, c.j) for c in tr.configs[:-1]] != order or tr.configs[0].state != m.initial:
            return False
        for k, (c, (sym, _)) in enumerate(zip(tr.configs, tr.steps)):
            nxt = tr.configs[k + 1].state
            if sym != cell_at(w, c.i, c.j) or (nxt, None) not in m.targets(c.state, sym):
                return False
        return True
    for k, (c, (sym, mv)) in enumerate(zip(tr.configs, tr.steps)):
        nc = tr.configs[k + 1]
        if sym != cell_at(w, c.i, c.j) or (nc.state, mv) not in m.targets(c.state, sym):
            return False
        if nc.state == m.accept:
            return k == len(tr.steps) - 1 and (nc.i, nc.j) == (c.i, c.j)
        if _moved(mv, c.i, c.j, w.m, w.n) != (nc.i, nc.j):
            return False
    return len(tr.steps) == 0 and tr.configs[0].state == m.accept


# --- fast path for typewriter machines ---------------------------------------


def _tw_table(m: Machine):
    table = m.compiled.get("tw")
    if table is None:
        table = {}
        for (q, s), targets in m.transitions.items():
            table[(q, s)] = tuple(targets)
        m.compiled["tw"] = table
        m.compiled["rows"] = {}
        m.compiled["bottom"] = {}
    return table


def row_transfer(m: Machine, states: frozenset, row: str) -> tuple[bool, frozenset]:
    """Process one data row from column 1 for a set of typewriter states.

    Returns whether accept is entered inside the row and the set of states
    arriving at column 1 of the next row via a reset.
    """
    table = _tw_table(m)
    memo = m.compiled["rows"]
    key = (states, row)
    hit = memo.get(key)
    if hit is not None:
        return hit
    acc = m.accept
    n = len(row)
    cur, nxt = set(states), set()
    out = None
    for j in range(n + 1):
        sym = row[j] if j < n else BORDER
        new = set()
        for q in cur:
            for t, mv in table.get((q, sym), ()):
                if t == acc:
                    out = (True, frozenset())
                    break
                if mv is Move.R:
                    if j < n:
                        new.add(t)
                elif mv is Move.RESET:
                    nxt.add(t)
            if out:
                break
        if out or not new:
            break
        cur = new
    if out is None:
        out = (False, frozenset(nxt))
    memo[key] = out
    return out


def bottom_accepts(m: Machine, states: frozenset, n: int) -> bool:
    """Whether some state, placed at column 1 of the bottom border, can accept."""
    _tw_table(m)
    memo = m.compiled["bottom"]
    key = (states, n)
    if key in memo:
        return memo[key]
    table = m.compiled["tw"]
    cur = set(states)
    result = False
    for j in range(n + 1):
        new = set()
        for q in cur:
            for t, mv in table.get((q, BORDER), ()):
                if t == m.accept:
                    result = True
                elif mv is Move.R and j < n:
                    new.add(t)
        if result or not new:
            break
        cur = new
    memo[key] = result
    return result


def accepts(m: Machine, w: Word2D) -> bool:
    """Membership only.  Typewriter machines use memoised row transfer."""
    if m.kind is not Kind.TW:
        return run(m, w).accepted
    if m.initial == m.accept:
        return True
    states = frozenset([m.initial])
    for row in w.rows:
        hit, states = row_transfer(m, states, row)
        if hit:
            return True
        if not states:
            return False
    return bottom_accepts(m, states, w.n)


# --- bottom-border chains ----------------------------------------------------


@dataclass
class ChainAnalysis:
    """Shortest #-chain to accept from a post-reset bottom position.

    ``k[q]`` counts transitions, all reading ``#`` and all but the last moving
    right; ``math.inf`` when accept is out of reach.  The chain fits on an
    ``m x n`` word exactly when ``k[q] <= n + 1``.
    """

    k: dict[str, float]
    cap: int
    reset_targets: frozenset[str]

    @property
    def short_bottom(self) -> bool:
        return all(self.k[q] in (1, 2, math.inf) for q in self.reset_targets)

    @property
    def k_max(self) -> int:
        finite = [int(self.k[q]) for q in self.reset_targets if self.k[q] != math.inf]
        return max(finite, default=0)

    def fits(self, q: str, n: int) -> bool:
        return self.k[q] <= n + 1


def bottom_chain_analysis(m: Machine) -> ChainAnalysis:
    if m.kind is not Kind.TW:
        raise ValueError(f"bottom chain analysis needs a typewriter machine, got {m.kind.value}")
    k = {q: math.inf for q in m.states if q != m.accept}
    for q in k:
        if any(t == m.accept for t, _ in m.targets(q, BORDER)):
            k[q] = 1
    changed = True
    while changed:
        changed = False
        for q in k:
            for t, mv in m.targets(q, BORDER):
                if mv is Move.R and t != m.accept and k[t] + 1 < k[q]:
                    k[q] = k[t] + 1
                    changed = True
    resets = frozenset(t for _, _, t, mv in m.rules() if mv is Move.RESET and t != m.accept)
    return ChainAnalysis(k, len(m.states) + 1, resets)
