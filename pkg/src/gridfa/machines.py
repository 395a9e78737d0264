"""Machine definitions for every supported kind, validation, and the text codec.

All kinds share one shell: a transition table mapping ``(state, symbol)`` to a
tuple of ``(target, move)`` pairs.  Rule-based kinds (``bfa``, ``rfa``) store
``None`` as the move.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .grid import BORDER


class Move(enum.Enum):
    U = "U"
    D = "D"
    L = "L"
    R = "R"
    RESET = "CR"

    def __str__(self):
        return self.value


class Kind(enum.Enum):
    TW = "tw"
    W2 = "2w"
    W3 = "3w"
    W4 = "4w"
    BFA = "bfa"
    RFA = "rfa"

    @property
    def moves(self) -> frozenset[Move]:
        return _KIND_MOVES[self]

    @property
    def rule_based(self) -> bool:
        return self in (Kind.BFA, Kind.RFA)


_KIND_MOVES = {
    Kind.TW: frozenset({Move.R, Move.RESET}),
    Kind.W2: frozenset({Move.D, Move.R}),
    Kind.W3: frozenset({Move.D, Move.L, Move.R}),
    Kind.W4: frozenset({Move.U, Move.D, Move.L, Move.R}),
    Kind.BFA: frozenset(),
    Kind.RFA: frozenset(),
}

_MOVE_ORDER = {mv: k for k, mv in enumerate([None, Move.U, Move.D, Move.L, Move.R, Move.RESET])}

Target = tuple[str, "Move | None"]


class MachineFormatError(ValueError):
    """Machine text that cannot be parsed, or parses into an invalid machine."""


@dataclass(frozen=True)
class Machine:
    kind: Kind
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    accept: str
    transitions: Mapping[tuple[str, str], tuple[Target, ...]]
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def build(cls, kind, states, alphabet, initial, accept, rules, notes=()):
        """Build from an iterable of ``(state, symbol, target, move)`` rules.

        Duplicate rules collapse; each key's targets are stored sorted so that
        structural equality does not depend on insertion order.
        """
        table: dict[tuple[str, str], set] = {}
        for q, s, t, mv in rules:
            table.setdefault((q, s), set()).add((t, mv))
        order = {q: k for k, q in enumerate(states)}
        norm = {
            key: tuple(sorted(v, key=lambda tm: (order.get(tm[0], len(order)), tm[0], _MOVE_ORDER[tm[1]])))
            for key, v in table.items()
        }
        return cls(Kind(kind), tuple(states), tuple(alphabet), initial, accept, norm, tuple(notes))

    def rules(self) -> Iterable[tuple[str, str, str, Move | None]]:
        for (q, s), targets in self.transitions.items():
            for t, mv in targets:
                yield q, s, t, mv

    def targets(self, q: str, s: str) -> tuple[Target, ...]:
        return self.transitions.get((q, s), ())

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.alphabet + (BORDER,)

    @property
    def state_count(self) -> int:
        return len(self.states)

    @property
    def deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self.transitions.values())

    @cached_property
    def compiled(self) -> dict:
        """Scratch cache shared by the simulators; never part of equality."""
        return {}

    def __hash__(self):
        return hash((self.kind, self.states, self.initial, self.accept))

    def __eq__(self, other):
        if not isinstance(other, Machine):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.states == other.states
            and self.alphabet == other.alphabet
            and self.initial == other.initial
            and self.accept == other.accept
            and dict(self.transitions) == dict(other.transitions)
        )


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]
    deterministic: bool
    state_count: int

    def __str__(self):
        head = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        lines = [f"{head}; deterministic={str(self.deterministic).lower()}; states={self.state_count}"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def _fmt_rule(q, s, t, mv) -> str:
    return f"{q} {s} -> {t}" if mv is None else f"{q} {s} -> {mv} {t}"


def validate(m: Machine) -> ValidationReport:
    """Check the structural constraints; violations are returned, not raised."""
    v: list[str] = []
    declared = set(m.states)
    if len(declared) != len(m.states):
        v.append("duplicate state identifiers")
    for a in m.alphabet:
        if a == BORDER:
            v.append(f"alphabet must not contain the border symbol {BORDER!r}")
        elif len(a) != 1 or a.isspace() or a == ";":
            v.append(f"alphabet symbol {a!r} must be a single printable character")
    if len(set(m.alphabet)) != len(m.alphabet):
        v.append("duplicate alphabet symbols")
    if not m.alphabet:
        v.append("alphabet must be nonempty")
    if m.initial not in declared:
        v.append(f"initial state {m.initial!r} not declared")
    if m.accept not in declared:
        v.append(f"accept state {m.accept!r} not declared")
    symbols = set(m.alphabet) | {BORDER}
    for q, s, t, mv in sorted(m.rules(), key=lambda r: (r[0], r[1], r[2], _MOVE_ORDER[r[3]])):
        rule = _fmt_rule(q, s, t, mv)
        if q == m.accept:
            v.append(f"accept state must have no outgoing transitions: {rule}")
        if q not in declared:
            v.append(f"undeclared source state: {rule}")
        if t not in declared:
            v.append(f"undeclared target state: {rule}")
        if s not in symbols:
            v.append(f"symbol not in alphabet: {rule}")
        if m.kind.rule_based:
            if mv is not None:
                v.append(f"rule-based kind {m.kind.value} takes no move: {rule}")
        elif mv is None:
            v.append(f"missing move: {rule}")
        elif mv not in m.kind.moves:
            v.append(f"move not permitted by kind {m.kind.value}: {rule}")
    return ValidationReport(not v, v, m.deterministic, m.state_count)


# --- text codec -------------------------------------------------------------

_HEADERS = ("kind", "alphabet", "states", "initial", "accept")
_MOVE_WORDS = {mv.value: mv for mv in Move}


def parse_machine(text: str, strict: bool = True) -> Machine:
    """Parse the line-oriented machine format.

    With ``strict`` the parsed machine must also pass :func:`validate`; the
    non-strict mode exists so that invalid tables can still be reported.
    """
    header: dict[str, str] = {}
    raw_rules: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split(";", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise MachineFormatError(f"line {lineno}: expected 'field: value'")
        if key == "trans":
            raw_rules.append((lineno, rest.strip()))
        elif key in _HEADERS:
            if key in header:
                raise MachineFormatError(f"line {lineno}: duplicate header field {key!r}")
            header[key] = rest.strip()
        else:
            raise MachineFormatError(f"line {lineno}: unknown field {key!r}")
    missing = [h for h in _HEADERS if h not in header]
    if missing:
        raise MachineFormatError(f"missing header field(s): {', '.join(missing)}")
    try:
        kind = Kind(header["kind"].lower())
    except ValueError:
        raise MachineFormatError(f"unknown kind {header['kind']!r}") from None
    alphabet = tuple(header["alphabet"].split())
    states = tuple(header["states"].split())
    initial, accept = header["initial"], header["accept"]
    for name, value in (("initial", initial), ("accept", accept)):
        if value not in states:
            raise MachineFormatError(f"{name} state {value!r} not declared")

    symbols = set(alphabet) | {BORDER}
    declared = set(states)
    rules = []
    for lineno, body in raw_rules:
        lhs, arrow, rhs = body.partition("->")
        lhs_t, rhs_t = lhs.split(), rhs.split()
        if not arrow or len(lhs_t) != 2:
            raise MachineFormatError(f"line {lineno}: expected 'trans: STATE SYMBOL -> [MOVE] STATE'")
        q, s = lhs_t
        if kind.rule_based:
            if len(rhs_t) != 1:
                raise MachineFormatError(f"line {lineno}: {kind.value} rules take no move")
            mv, t = None, rhs_t[0]
        else:
            if len(rhs_t) != 2:
                raise MachineFormatError(f"line {lineno}: expected a move and a target state")
            if rhs_t[0] not in _MOVE_WORDS:
                raise MachineFormatError(f"line {lineno}: unknown move {rhs_t[0]!r}")
            mv, t = _MOVE_WORDS[rhs_t[0]], rhs_t[1]
            if strict and mv not in kind.moves:
                raise MachineFormatError(f"line {lineno}: move {mv} not permitted by kind {kind.value}")
        if q not in declared or t not in declared:
            raise MachineFormatError(f"line {lineno}: unknown state in {body!r}")
        if s not in symbols:
            raise MachineFormatError(f"line {lineno}: unknown symbol {s!r}")
        if strict and q == accept:
            raise MachineFormatError(f"line {lineno}: transition out of accept state {accept!r}")
        rules.append((q, s, t, mv))

    notes = tuple(ln.strip()[1:].strip() for ln in text.splitlines() if ln.strip().startswith(";"))
    m = Machine.build(kind, states, alphabet, initial, accept, rules, notes=notes)
    if strict:
        report = validate(m)
        if not report.ok:
            raise MachineFormatError("; ".join(report.violations))
    return m


def format_machine(m: Machine) -> str:
    """Canonical text: notes as comments, headers, rules sorted by state, symbol, target."""
    lines = [f"; {note}" for note in m.notes]
    lines += [
        f"kind: {m.kind.value}",
        f"alphabet: {' '.join(m.alphabet)}",
        f"states: {' '.join(m.states)}",
        f"initial: {m.initial}",
        f"accept: {m.accept}",
    ]
    s_order = {q: k for k, q in enumerate(m.states)}
    y_order = {a: k for k, a in enumerate(m.symbols)}
    big = len(s_order) + len(y_order)
    rules = sorted(
        m.rules(),
        key=lambda r: (s_order.get(r[0], big), r[0], y_order.get(r[1], big), r[1],
                       s_order.get(r[2], big), r[2], _MOVE_ORDER[r[3]]),
    )
    lines += [f"trans: {_fmt_rule(*r)}" for r in rules]
    return "\n".join(lines) + "\n"


def load_machine(path, strict: bool = True) -> Machine:
    with open(path, encoding="ascii") as fh:
        return parse_machine(fh.read(), strict=strict)


def save_machine(m: Machine, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_machine(m))
