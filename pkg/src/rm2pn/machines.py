"""Register machines and generalized flow-graph machines.

A register machine is a finite program over nonnegative counters; a flow
graph is the arc-labelled generalization where each arc carries a set of
register conditions and a list of register operations.  Both come with
step/run simulators, a converter from machines to flow graphs, textual
program formats, and the two bundled programs ``u22`` (a strongly universal
22-instruction machine) and ``u7`` (its 7-state compressed flow graph).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional


class MachineError(ValueError):
    """Malformed machine/graph or contract violation during simulation."""


class NondeterminismError(MachineError):
    """More than one arc enabled at a flow-graph configuration."""


class OpKind(Enum):
    INC = "P"        # increment register, go to next
    DEC = "M"        # decrement register (stuck on zero), go to next
    TEST = "Z"       # branch on zero without modifying
    TEST_DEC = "ZM"  # decrement and branch if nonzero, else branch on zero
    STOP = "STOP"


@dataclass(frozen=True)
class Instruction:
    kind: OpKind
    register: Optional[int] = None
    next: Optional[str] = None          # INC / DEC
    next_nonzero: Optional[str] = None  # TEST / TEST_DEC
    next_zero: Optional[str] = None


class RmConfig(NamedTuple):
    state: str
    registers: tuple[int, ...]


class MachineStatus(Enum):
    HALTED = "halted"
    STUCK = "stuck"
    LIMIT_EXCEEDED = "limit-exceeded"


class RmRun(NamedTuple):
    config: RmConfig
    status: MachineStatus
    steps: int


@dataclass(frozen=True)
class RegisterMachine:
    states: tuple[str, ...]
    registers: int
    initial: str
    final: str
    program: dict[str, Instruction]

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise MachineError("duplicate state ids")
        if set(self.program) != set(self.states):
            raise MachineError("program must define exactly one instruction per state")
        if self.initial not in self.states or self.final not in self.states:
            raise MachineError("initial/final state not in state set")
        if self.program[self.final].kind is not OpKind.STOP:
            raise MachineError("final state must carry STOP")
        for state, ins in self.program.items():
            if ins.kind is OpKind.STOP:
                if state != self.final:
                    raise MachineError(f"STOP outside final state {state!r}")
                continue
            if ins.register is None or not 0 <= ins.register < self.registers:
                raise MachineError(f"{state!r}: register out of range")
            if ins.kind in (OpKind.INC, OpKind.DEC):
                if ins.next is None:
                    raise MachineError(f"{state!r}: missing next state")
                if ins.next == state:
                    raise MachineError(f"{state!r}: next state must differ")
                if ins.next not in self.program:
                    raise MachineError(f"{state!r}: unknown next state {ins.next!r}")
            else:
                for target in (ins.next_nonzero, ins.next_zero):
                    if target is None or target not in self.program:
                        raise MachineError(f"{state!r}: bad branch target {target!r}")

    def initial_config(self, inputs: Iterable[int] = ()) -> RmConfig:
        """Configuration at the initial state with inputs in R1, R2, ..."""
        regs = [0] * self.registers
        for i, value in enumerate(inputs, start=1):
            if i >= self.registers:
                raise MachineError("more inputs than registers")
            if value < 0:
                raise MachineError("register values must be nonnegative")
            regs[i] = value
        return RmConfig(self.initial, tuple(regs))


class StuckError(MachineError):
    """DEC instruction attempted on a zero register."""


def step_rm(m: RegisterMachine, c: RmConfig) -> Optional[RmConfig]:
    """Apply the single instruction at ``c.state``.

    Returns None when the machine has halted (STOP).  Raises StuckError on a
    DEC of a zero register, which is distinct from halting.
    """
    if c.state not in m.program:
        raise MachineError(f"unknown state {c.state!r}")
    ins = m.program[c.state]
    if ins.kind is OpKind.STOP:
        return None
    regs = list(c.registers)
    r = ins.register
    if ins.kind is OpKind.INC:
        regs[r] += 1
        return RmConfig(ins.next, tuple(regs))
    if ins.kind is OpKind.DEC:
        if regs[r] == 0:
            raise StuckError(f"{c.state!r}: decrement of zero register R{r}")
        regs[r] -= 1
        return RmConfig(ins.next, tuple(regs))
    if ins.kind is OpKind.TEST:
        return RmConfig(ins.next_nonzero if regs[r] else ins.next_zero, tuple(regs))
    # TEST_DEC
    if regs[r]:
        regs[r] -= 1
        return RmConfig(ins.next_nonzero, tuple(regs))
    return RmConfig(ins.next_zero, tuple(regs))


def run_rm(m: RegisterMachine, c0: RmConfig, step_limit: int) -> RmRun:
    """Iterate step_rm until STOP, a stuck DEC, or the step limit."""
    # Compiled tight loop; equivalent to repeated step_rm.
    sidx = {s: i for i, s in enumerate(m.states)}
    prog = []
    for s in m.states:
        ins = m.program[s]
        if ins.kind is OpKind.STOP:
            prog.append(None)
        elif ins.kind in (OpKind.INC, OpKind.DEC):
            prog.append((ins.kind, ins.register, sidx[ins.next], -1))
        else:
            prog.append((ins.kind, ins.register, sidx[ins.next_nonzero], sidx[ins.next_zero]))
    regs = list(c0.registers)
    if len(regs) != m.registers:
        raise MachineError("register vector arity mismatch")
    st = sidx[c0.state]
    steps = 0
    inc, dec, test = OpKind.INC, OpKind.DEC, OpKind.TEST
    while steps < step_limit:
        entry = prog[st]
        if entry is None:
            return RmRun(RmConfig(m.states[st], tuple(regs)), MachineStatus.HALTED, steps)
        kind, r, nz, z = entry
        if kind is inc:
            regs[r] += 1
            st = nz
        elif kind is dec:
            if regs[r] == 0:
                return RmRun(RmConfig(m.states[st], tuple(regs)), MachineStatus.STUCK, steps)
            regs[r] -= 1
            st = nz
        elif kind is test:
            st = nz if regs[r] else z
        else:
            if regs[r]:
                regs[r] -= 1
                st = nz
            else:
                st = z
        steps += 1
    cfg = RmConfig(m.states[st], tuple(regs))
    if prog[st] is None:
        return RmRun(cfg, MachineStatus.HALTED, steps)
    return RmRun(cfg, MachineStatus.LIMIT_EXCEEDED, steps)


# --- flow graphs ---------------------------------------------------------


class Cond(NamedTuple):
    register: int
    nonzero: bool  # False: register must be zero


class Op(NamedTuple):
    register: int
    delta: int  # +1 or -1


@dataclass(frozen=True)
class Arc:
    src: str
    dst: str
    conds: tuple[Cond, ...]
    ops: tuple[Op, ...]

    def __post_init__(self):
        regs = [c.register for c in self.conds]
        if len(set(regs)) != len(regs):
            raise MachineError(f"arc {self.src}->{self.dst}: duplicate condition register")
        for op in self.ops:
            if op.delta not in (1, -1):
                raise MachineError("operation delta must be +1 or -1")

    def cond_on(self, register: int) -> Optional[Cond]:
        for c in self.conds:
            if c.register == register:
                return c
        return None


class FgConfig(NamedTuple):
    state: str
    registers: tuple[int, ...]


class FgRun(NamedTuple):
    config: FgConfig
    status: MachineStatus
    steps: int


@dataclass(frozen=True)
class FlowGraph:
    states: tuple[str, ...]
    registers: int
    initial: str
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise MachineError("duplicate state ids")
        if self.initial not in self.states:
            raise MachineError("initial state not in state set")
        for a in self.arcs:
            if a.src not in self.states or a.dst not in self.states:
                raise MachineError(f"arc {a.src}->{a.dst}: unknown endpoint")
            for c in a.conds:
                if not 0 <= c.register < self.registers:
                    raise MachineError("condition register out of range")
            for o in a.ops:
                if not 0 <= o.register < self.registers:
                    raise MachineError("operation register out of range")

    @property
    def halting(self) -> frozenset[str]:
        """States with no outgoing arcs."""
        out = {a.src for a in self.arcs}
        return frozenset(s for s in self.states if s not in out)

    def arcs_from(self, state: str) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.src == state)

    def initial_config(self, inputs: Iterable[int] = ()) -> FgConfig:
        regs = [0] * self.registers
        for i, value in enumerate(inputs, start=1):
            if i >= self.registers:
                raise MachineError("more inputs than registers")
            regs[i] = value
        return FgConfig(self.initial, tuple(regs))


def _arc_enabled(arc: Arc, regs) -> bool:
    return all((regs[c.register] > 0) == c.nonzero for c in arc.conds)


def _apply_ops(arc: Arc, regs: list[int]) -> None:
    for r, d in arc.ops:
        regs[r] += d
        if regs[r] < 0:
            raise MachineError(
                f"arc {arc.src}->{arc.dst}: operation drives R{r} below zero"
            )


def step_fg(g: FlowGraph, c: FgConfig) -> Optional[FgConfig]:
    """Fire the unique enabled arc at ``c``; None when no arc is enabled.

    Raises NondeterminismError when two or more arcs are enabled, and
    MachineError when the operation list would drive a register negative.
    """
    if c.state not in g.states:
        raise MachineError(f"unknown state {c.state!r}")
    enabled = [a for a in g.arcs_from(c.state) if _arc_enabled(a, c.registers)]
    if not enabled:
        return None
    if len(enabled) > 1:
        raise NondeterminismError(
            f"{len(enabled)} arcs enabled at {c.state!r}: "
            + ", ".join(f"{a.src}->{a.dst}" for a in enabled)
        )
    arc = enabled[0]
    regs = list(c.registers)
    _apply_ops(arc, regs)
    return FgConfig(arc.dst, tuple(regs))


def run_fg(g: FlowGraph, c0: FgConfig, step_limit: int) -> FgRun:
    """Iterate step_fg until no arc is enabled or the step limit is hit."""
    by_src: dict[str, list[Arc]] = {}
    for a in g.arcs:
        by_src.setdefault(a.src, []).append(a)
    regs = list(c0.registers)
    if len(regs) != g.registers:
        raise MachineError("register vector arity mismatch")
    st = c0.state
    steps = 0
    while steps < step_limit:
        fired = None
        for a in by_src.get(st, ()):
            if _arc_enabled(a, regs):
                if fired is not None:
                    raise NondeterminismError(
                        f"two arcs enabled at {st!r}: {fired.dst!r}, {a.dst!r}"
                    )
                fired = a
        if fired is None:
            return FgRun(FgConfig(st, tuple(regs)), MachineStatus.HALTED, steps)
        _apply_ops(fired, regs)
        st = fired.dst
        steps += 1
    return FgRun(FgConfig(st, tuple(regs)), MachineStatus.LIMIT_EXCEEDED, steps)


def reachable_states(m: RegisterMachine) -> set[str]:
    seen = {m.initial}
    frontier = [m.initial]
    while frontier:
        ins = m.program[frontier.pop()]
        for nxt in (ins.next, ins.next_nonzero, ins.next_zero):
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def rm_to_flowgraph(m: RegisterMachine, prune_unreachable: bool = False) -> FlowGraph:
    """Graph representation: states carry no logic, arcs carry conditions/ops.

    INC becomes a single unconditional arc with one increment; DEC one arc
    with one decrement; TEST two condition-only arcs; TEST_DEC a decrementing
    nonzero arc plus a condition-only zero arc.  The STOP state keeps no
    outgoing arcs and is thereby halting.
    """
    keep = reachable_states(m) if prune_unreachable else set(m.states)
    keep.add(m.final)
    states = tuple(s for s in m.states if s in keep)
    arcs = []
    for s in states:
        ins = m.program[s]
        r = ins.register
        if ins.kind is OpKind.STOP:
            continue
        if ins.kind is OpKind.INC:
            arcs.append(Arc(s, ins.next, (), (Op(r, +1),)))
        elif ins.kind is OpKind.DEC:
            arcs.append(Arc(s, ins.next, (), (Op(r, -1),)))
        elif ins.kind is OpKind.TEST:
            arcs.append(Arc(s, ins.next_nonzero, (Cond(r, True),), ()))
            arcs.append(Arc(s, ins.next_zero, (Cond(r, False),), ()))
        else:
            arcs.append(Arc(s, ins.next_nonzero, (Cond(r, True),), (Op(r, -1),)))
            arcs.append(Arc(s, ins.next_zero, (Cond(r, False),), ()))
    return FlowGraph(states, m.registers, m.initial, tuple(arcs))


# --- bundled programs ----------------------------------------------------

# Strongly universal 22-instruction machine over R0..R7.  The program code of
# the simulated machine is supplied in R1, its input in R2, and the result is
# read from R0 at the halt.  The zero branch of q27 targets q29 (whose R0
# increment accumulates the output); q29 is therefore reachable.
_U22_RULES = [
    ("q1", "ZM", 1, "q3", "q6"),
    ("q3", "P", 7, "q1", None),
    ("q4", "ZM", 5, "q6", "q7"),
    ("q6", "P", 6, "q4", None),
    ("q7", "ZM", 6, "q9", "q4"),
    ("q9", "P", 5, "q10", None),
    ("q10", "ZM", 7, "q12", "q13"),
    ("q12", "P", 1, "q7", None),
    ("q13", "ZM", 6, "q33", "q1"),
    ("q33", "P", 6, "q14", None),
    ("q14", "ZM", 4, "q1", "q16"),
    ("q16", "ZM", 5, "q18", "q23"),
    ("q18", "ZM", 5, "q20", "q27"),
    ("q20", "ZM", 5, "q22", "q30"),
    ("q22", "P", 4, "q16", None),
    ("q23", "ZM", 2, "q32", "q25"),
    ("q25", "ZM", 0, "q1", "q32"),
    ("q27", "ZM", 3, "q32", "q29"),
    ("q29", "P", 0, "q1", None),
    ("q30", "P", 2, "q31", None),
    ("q31", "P", 3, "q32", None),
    ("q32", "ZM", 4, "q1", "qf"),
]


def u22() -> RegisterMachine:
    """The bundled strongly universal 22-instruction machine."""
    program = {}
    states = []
    for state, kind, reg, a, b in _U22_RULES:
        states.append(state)
        if kind == "P":
            program[state] = Instruction(OpKind.INC, reg, next=a)
        else:
            program[state] = Instruction(OpKind.TEST_DEC, reg, next_nonzero=a, next_zero=b)
    states.append("qf")
    program["qf"] = Instruction(OpKind.STOP)
    return RegisterMachine(tuple(states), 8, "q1", "qf", program)


# 7-state compressed flow graph equivalent to u22 (state "7" is halting).
# Transcribed arc-for-arc; start state "3" is the entry equivalent to u22's
# q1 (pinned by co-simulation against u22 over the test grid; see
# PINNED_U7_START and tests).
_U7_ARCS = [
    ("1", "1", ((1, 1),), ((1, -1), (7, +1))),
    ("1", "2", ((1, 0),), ((6, +1), (7, +1))),
    ("2", "2", ((5, 0), (6, 0)), ()),
    ("2", "2", ((5, 1),), ((5, -1), (6, +1))),
    ("2", "3", ((5, 0), (6, 1)), ((5, +1), (6, -1))),
    ("3", "1", ((1, 1), (6, 0), (7, 0)), ((1, -1),)),
    ("3", "1", ((1, 1), (4, 1), (6, 1), (7, 0)), ((1, -1), (4, -1))),
    ("3", "2", ((6, 0), (7, 1)), ((1, +1), (7, -1))),
    ("3", "2", ((1, 0), (4, 1), (6, 1), (7, 0)), ((4, -1), (6, +1))),
    ("3", "2", ((1, 0), (6, 0), (7, 0)), ((6, +1),)),
    ("3", "3", ((6, 1), (7, 1)), ((1, +1), (5, +1), (6, -1), (7, -1))),
    ("3", "4", ((4, 0), (6, 1), (7, 0)), ()),
    ("4", "1", ((0, 1), (1, 1), (2, 0), (5, 0)), ((0, -1), (1, -1))),
    ("4", "1", ((1, 1), (2, 1), (4, 1), (5, 0)), ((1, -1), (2, -1), (4, -1))),
    ("4", "1", ((0, 0), (1, 1), (2, 0), (4, 1), (5, 0)), ((1, -1), (4, -1))),
    ("4", "2", ((0, 1), (1, 0), (2, 0), (5, 0)), ((0, -1), (6, +1))),
    ("4", "2", ((1, 0), (2, 1), (4, 1), (5, 0)), ((2, -1), (4, -1), (6, +1))),
    ("4", "2", ((0, 0), (1, 0), (2, 0), (4, 1), (5, 0)), ((4, -1), (6, +1))),
    ("4", "5", ((5, 1),), ((5, -1),)),
    ("4", "7", ((0, 0), (2, 0), (4, 0), (5, 0)), ()),
    ("4", "7", ((2, 1), (4, 0), (5, 0)), ((2, -1),)),
    ("5", "1", ((1, 1), (3, 0), (5, 0)), ((0, +1), (1, -1))),
    ("5", "1", ((1, 1), (3, 1), (4, 1), (5, 0)), ((1, -1), (3, -1), (4, -1))),
    ("5", "2", ((1, 0), (3, 0), (5, 0)), ((0, +1), (6, +1))),
    ("5", "2", ((1, 0), (3, 1), (4, 1), (5, 0)), ((3, -1), (4, -1), (6, +1))),
    ("5", "6", ((5, 1),), ((5, -1),)),
    ("5", "7", ((3, 1), (4, 0), (5, 0)), ((3, -1),)),
    ("6", "1", ((1, 1), (4, 1), (5, 0)), ((1, -1), (2, +1), (3, +1), (4, -1))),
    ("6", "2", ((1, 0), (4, 1), (5, 0)), ((2, +1), (3, +1), (4, -1), (6, +1))),
    ("6", "4", ((5, 1),), ((4, +1), (5, -1))),
    ("6", "7", ((4, 0), (5, 0)), ((2, +1), (3, +1))),
]

PINNED_U7_START = "3"


def u7(initial: Optional[str] = None) -> FlowGraph:
    """The bundled 7-state flow graph (31 arcs, state "7" halting).

    ``initial`` defaults to the pinned start state "3", the unique start for
    which this graph computes the same function as ``u22`` on the test grid.
    """
    arcs = tuple(
        Arc(src, dst,
            tuple(Cond(r, bool(nz)) for r, nz in conds),
            tuple(Op(r, d) for r, d in ops))
        for src, dst, conds, ops in _U7_ARCS
    )
    return FlowGraph(tuple("1234567"), 8, initial or PINNED_U7_START, arcs)


# --- textual program formats ---------------------------------------------


def format_register_machine(m: RegisterMachine) -> str:
    """One instruction per line: ``q1 R1ZM q3 q6`` / ``q3 R7P q1`` / ``qf STOP``."""
    lines = []
    for s in m.states:
        ins = m.program[s]
        if ins.kind is OpKind.STOP:
            lines.append(f"{s} STOP")
        elif ins.kind in (OpKind.INC, OpKind.DEC):
            lines.append(f"{s} R{ins.register}{ins.kind.value} {ins.next}")
        elif ins.kind is OpKind.TEST:
            lines.append(f"{s} R{ins.register} {ins.next_nonzero} {ins.next_zero}")
        else:
            lines.append(f"{s} R{ins.register}ZM {ins.next_nonzero} {ins.next_zero}")
    return "\n".join(lines) + "\n"


def parse_register_machine(text: str, registers: Optional[int] = None) -> RegisterMachine:
    """Inverse of format_register_machine.

    The first listed state is initial; the STOP state is final.  The register
    count defaults to one past the highest register index used.
    """
    states: list[str] = []
    program: dict[str, Instruction] = {}
    final = None
    max_reg = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        state = tokens[0]
        if state in program:
            raise MachineError(f"line {lineno}: duplicate instruction for {state!r}")
        states.append(state)
        if len(tokens) == 2 and tokens[1] == "STOP":
            program[state] = Instruction(OpKind.STOP)
            if final is not None:
                raise MachineError(f"line {lineno}: second STOP state")
            final = state
            continue
        opcode = tokens[1]
        if not opcode.startswith("R"):
            raise MachineError(f"line {lineno}: bad opcode {opcode!r}")
        if opcode.endswith("ZM"):
            reg_text, kind, arity = opcode[1:-2], OpKind.TEST_DEC, 4
        elif opcode.endswith(("P", "M")):
            reg_text, arity = opcode[1:-1], 3
            kind = OpKind.INC if opcode.endswith("P") else OpKind.DEC
        else:
            reg_text, kind, arity = opcode[1:], OpKind.TEST, 4
        if not reg_text.isdigit():
            raise MachineError(f"line {lineno}: bad register in {opcode!r}")
        if len(tokens) != arity:
            raise MachineError(f"line {lineno}: expected {arity} fields")
        reg = int(reg_text)
        max_reg = max(max_reg, reg)
        if kind in (OpKind.INC, OpKind.DEC):
            program[state] = Instruction(kind, reg, next=tokens[2])
        else:
            program[state] = Instruction(kind, reg, next_nonzero=tokens[2], next_zero=tokens[3])
    if not states:
        raise MachineError("empty program")
    if final is None:
        raise MachineError("no STOP state")
    count = registers if registers is not None else max_reg + 1
    return RegisterMachine(tuple(states), count, states[0], final, program)


def format_flowgraph(g: FlowGraph) -> str:
    """One arc per line: ``1 -> 1 | R1!=0 | R1M R7P``, preceded by header
    lines fixing the state order and the start state."""
    lines = [f"states {' '.join(g.states)}", f"start {g.initial}"]
    for a in g.arcs:
        conds = " ".join(
            f"R{c.register}{'!=0' if c.nonzero else '==0'}" for c in a.conds
        )
        ops = " ".join(f"R{o.register}{'P' if o.delta > 0 else 'M'}" for o in a.ops)
        lines.append(f"{a.src} -> {a.dst} | {conds} | {ops}")
    return "\n".join(lines) + "\n"


def parse_flowgraph(text: str, registers: Optional[int] = None) -> FlowGraph:
    """Inverse of format_flowgraph."""
    arcs: list[Arc] = []
    states: list[str] = []
    seen = set()
    initial = None
    max_reg = -1

    def note(state):
        if state not in seen:
            seen.add(state)
            states.append(state)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("states "):
            for s in line.split()[1:]:
                note(s)
            continue
        if line.startswith("start "):
            initial = line.split(None, 1)[1]
            note(initial)
            continue
        if line.startswith("state "):
            note(line.split(None, 1)[1])
            continue
        head, sep, rest = line.partition("|")
        if not sep:
            raise MachineError(f"line {lineno}: expected '|'-separated fields")
        src, arrow, dst = head.split()
        if arrow != "->":
            raise MachineError(f"line {lineno}: expected 'src -> dst'")
        cond_text, sep, op_text = rest.partition("|")
        if not sep:
            raise MachineError(f"line {lineno}: missing operations field")
        conds = []
        for tok in cond_text.split():
            if tok.endswith("!=0"):
                nonzero, reg_text = True, tok[1:-3]
            elif tok.endswith(("==0", "=0")):
                nonzero, reg_text = False, tok[1:].split("=")[0]
            else:
                raise MachineError(f"line {lineno}: bad condition {tok!r}")
            if not tok.startswith("R") or not reg_text.isdigit():
                raise MachineError(f"line {lineno}: bad condition {tok!r}")
            conds.append(Cond(int(reg_text), nonzero))
            max_reg = max(max_reg, int(reg_text))
        ops = []
        for tok in op_text.split():
            if not tok.startswith("R") or tok[-1] not in "PM" or not tok[1:-1].isdigit():
                raise MachineError(f"line {lineno}: bad operation {tok!r}")
            ops.append(Op(int(tok[1:-1]), +1 if tok[-1] == "P" else -1))
            max_reg = max(max_reg, int(tok[1:-1]))
        note(src)
        note(dst)
        arcs.append(Arc(src, dst, tuple(conds), tuple(ops)))
    if initial is None:
        if not states:
            raise MachineError("empty flow graph")
        initial = states[0]
    count = registers if registers is not None else max_reg + 1
    return FlowGraph(tuple(states), count, initial, tuple(arcs))
