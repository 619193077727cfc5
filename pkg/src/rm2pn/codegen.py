"""Net construction strategies.

Six translations from register machines / flow graphs to PT-nets with
inhibitor arcs:

  direct          one place per state and register, one transition per
                  instruction branch (increment and test-and-decrement
                  gadgets);
  inc-merge       direct, with increment states folded into the producing
                  side of their predecessor transitions;
  compressed      one transition per flow-graph arc (state compression is
                  done on the graph beforehand);
  binary          flow-graph arcs over binary-coded state places;
  checker         one shared zero-test block per register, so each register
                  needs a single inhibitor arc;
  checker-merge   checker with increment states folded into the join
                  transitions.

Halting is deadlock: transitions into a halting state consume the control
token (or all state bits) and produce no state tokens.  The direct-style
translations additionally drop branches into the STOP state that carry no
register effect; the stranded control token deadlocks by itself, which keeps
the transition and inhibitor counts of the reference construction.

Builders return the net together with a ``StateMap`` describing how markings
project back onto machine configurations (used by the co-simulation
harness).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union

from .compression import compress
from .machines import (
    Arc,
    FlowGraph,
    MachineError,
    OpKind,
    RegisterMachine,
    rm_to_flowgraph,
)
from .nets import Net, NetError

INHIBIT = -1

STRATEGIES = ("direct", "inc-merge", "compressed", "binary", "checker", "checker-merge")


@dataclass(frozen=True)
class StateMap:
    """Marking-to-configuration dictionary for one generated net."""

    kind: str  # "one-hot" | "binary" | "checker"
    registers: int
    register_places: dict[str, int]
    state_places: dict[str, str] = field(default_factory=dict)  # place -> state
    bit_places: tuple[str, ...] = ()  # binary: index i is bit i
    codes: dict[str, int] = field(default_factory=dict)  # binary: state -> code
    transient_places: frozenset[str] = frozenset()  # checker blocks + waiting
    step_weights: dict[str, int] = field(default_factory=dict)  # transition -> oracle steps
    final_state: Optional[str] = None


@dataclass(frozen=True)
class BuildResult:
    net: Net
    state_map: StateMap


def place_for_state(state: str) -> str:
    return "Q" + (state[1:] if state.startswith("q") and len(state) > 1 else state)


def _register_places(count: int) -> list[str]:
    return [f"R{i}" for i in range(count)]


def _io_places(places: Sequence[str]):
    inputs = tuple(p for p in ("R1", "R2") if p in places)
    output = "R0" if "R0" in places else None
    return inputs, output


def _check_repertoire(m: RegisterMachine) -> None:
    for state, ins in m.program.items():
        if ins.kind in (OpKind.DEC, OpKind.TEST):
            raise NetError(
                f"{state!r}: {ins.kind.name} not supported by this strategy; "
                "convert via rm_to_flowgraph + the compressed strategy"
            )


# --- direct and increment merging ----------------------------------------


def _fold_targets(m: RegisterMachine) -> dict[str, tuple[str, tuple[int, ...]]]:
    """For each foldable increment state: (resolved target, increments).

    An increment state folds unless it is the initial state or sits on a
    pure-increment cycle; chains fold transitively.
    """
    inc_states = {
        s for s, ins in m.program.items()
        if ins.kind is OpKind.INC and s != m.initial
    }
    resolved: dict[str, tuple[str, tuple[int, ...]]] = {}

    def resolve(s: str, trail: tuple[str, ...]) -> Optional[tuple[str, tuple[int, ...]]]:
        if s in trail:
            return None  # increment cycle; nobody on it folds
        ins = m.program[s]
        if s not in inc_states:
            return (s, ())
        if s in resolved:
            return resolved[s]
        nxt = resolve(ins.next, trail + (s,))
        if nxt is None:
            return None
        target, incs = nxt
        resolved[s] = (target, (ins.register,) + incs)
        return resolved[s]

    for s in sorted(inc_states):
        resolve(s, ())
    return resolved


def _build_machine_net(m: RegisterMachine, merge_increments: bool) -> BuildResult:
    _check_repertoire(m)
    folds = _fold_targets(m) if merge_increments else {}
    folded = set(folds)

    state_places = {
        place_for_state(s): s
        for s in m.states
        if s != m.final and s not in folded
    }
    places = list(state_places) + _register_places(m.registers)
    weight: dict[tuple[str, str], int] = {}
    transitions: list[str] = []
    step_weights: dict[str, int] = {}

    def produce(t: str, place: str, amount: int = 1) -> None:
        weight[(t, place)] = weight.get((t, place), 0) + amount

    def emit_target(t: str, target: str) -> int:
        """Production side for a control move to ``target``; returns the
        number of folded machine steps."""
        extra = 0
        if target in folds:
            target, incs = folds[target]
            for r in incs:
                produce(t, f"R{r}")
            extra = len(incs)
        if target != m.final:
            produce(t, place_for_state(target))
        return extra

    for s in m.states:
        if s == m.final or s in folded:
            continue
        ins = m.program[s]
        qs = place_for_state(s)
        if ins.kind is OpKind.INC:
            t = f"t_{s}"
            transitions.append(t)
            weight[(qs, t)] = 1
            produce(t, f"R{ins.register}")
            step_weights[t] = 1 + emit_target(t, ins.next)
        else:  # TEST_DEC
            t_nz = f"t_{s}_nz"
            transitions.append(t_nz)
            weight[(qs, t_nz)] = 1
            weight[(f"R{ins.register}", t_nz)] = 1
            step_weights[t_nz] = 1 + emit_target(t_nz, ins.next_nonzero)

            # a zero branch straight into STOP has no register effect and is
            # dropped: the stranded control token deadlocks on its own
            z_target = ins.next_zero
            if z_target == m.final or (
                z_target in folds and not folds[z_target][1] and folds[z_target][0] == m.final
            ):
                continue
            t_z = f"t_{s}_z"
            transitions.append(t_z)
            weight[(qs, t_z)] = 1
            weight[(f"R{ins.register}", t_z)] = INHIBIT
            step_weights[t_z] = 1 + emit_target(t_z, z_target)

    inputs, output = _io_places(places)
    net = Net(
        places=places,
        transitions=transitions,
        weight=weight,
        initial_marking={place_for_state(m.initial): 1},
        input_places=inputs,
        output_place=output,
    )
    smap = StateMap(
        kind="one-hot",
        registers=m.registers,
        register_places={f"R{i}": i for i in range(m.registers)},
        state_places=state_places,
        step_weights=step_weights,
        final_state=m.final,
    )
    return BuildResult(net, smap)


def direct(m: RegisterMachine) -> Net:
    """One place per state and register; Fig.-style increment and
    test-and-decrement gadgets, one transition per instruction branch."""
    return _build_machine_net(m, merge_increments=False).net


def inc_merge(m: RegisterMachine) -> Net:
    """Direct translation with increment states folded into the producing
    side of their predecessors (chains fold transitively)."""
    return _build_machine_net(m, merge_increments=True).net


# --- flow-graph translations ----------------------------------------------


def encode_arc(arc: Arc) -> dict[int, tuple[int, int]]:
    """Register cells for one flow-graph arc: register -> (consumed,
    produced), with consumed = -1 denoting an inhibitor arc."""
    registers = sorted(
        {c.register for c in arc.conds} | {o.register for o in arc.ops}
    )
    cells: dict[int, tuple[int, int]] = {}
    for r in registers:
        cond = arc.cond_on(r)
        inc = sum(1 for o in arc.ops if o.register == r and o.delta > 0)
        dec = sum(1 for o in arc.ops if o.register == r and o.delta < 0)
        if cond is not None and not cond.nonzero:
            if dec:
                raise NetError(
                    f"arc {arc.src}->{arc.dst}: decrement of R{r} under a zero guard"
                )
            cells[r] = (INHIBIT, inc)
        elif cond is not None:
            if dec:
                cells[r] = (dec, inc)
            else:
                cells[r] = (1, 1 + inc)  # read loop
        else:
            if dec or inc:
                cells[r] = (dec, inc)
    return cells


def _apply_cells(weight, transition, cells) -> None:
    for r, (consumed, produced) in cells.items():
        if consumed:
            weight[(f"R{r}", transition)] = consumed
        if produced:
            weight[(transition, f"R{r}")] = produced


def _build_from_flowgraph(g: FlowGraph) -> BuildResult:
    halting = g.halting
    state_places = {
        place_for_state(s): s for s in g.states if s not in halting
    }
    places = list(state_places) + _register_places(g.registers)
    weight: dict[tuple[str, str], int] = {}
    transitions = []
    for i, arc in enumerate(g.arcs, start=1):
        t = f"T{i}"
        transitions.append(t)
        weight[(place_for_state(arc.src), t)] = 1
        if arc.dst not in halting:
            key = (t, place_for_state(arc.dst))
            weight[key] = weight.get(key, 0) + 1
        _apply_cells(weight, t, encode_arc(arc))

    inputs, output = _io_places(places)
    net = Net(
        places=places,
        transitions=transitions,
        weight=weight,
        initial_marking={place_for_state(g.initial): 1},
        input_places=inputs,
        output_place=output,
    )
    smap = StateMap(
        kind="one-hot",
        registers=g.registers,
        register_places={f"R{i}": i for i in range(g.registers)},
        state_places=state_places,
        step_weights={t: 1 for t in transitions},
        final_state=next(iter(halting)) if len(halting) == 1 else None,
    )
    return BuildResult(net, smap)


def from_flowgraph(g: FlowGraph) -> Net:
    """One place per live state, one transition per arc; transitions into
    halting states consume the control token and produce no state token."""
    return _build_from_flowgraph(g).net


class StateCode(NamedTuple):
    state: str
    code: int
    bits: int


def assign_codes(g: FlowGraph) -> list[StateCode]:
    """Binary state codes: 0 is reserved for the halt pattern; higher codes
    (fewer zero bits, hence fewer inhibitor arcs) go to states with more
    outgoing arcs; ties break by state id ascending."""
    halting = g.halting
    live = [s for s in g.states if s not in halting]
    bits = max(1, math.ceil(math.log2(len(live) + 1))) if live else 0
    out_degree = {s: 0 for s in live}
    for a in g.arcs:
        out_degree[a.src] += 1

    def sort_key(s):
        digits = "".join(ch for ch in s if ch.isdigit())
        return (-out_degree[s], int(digits) if digits else 0, s)

    ordered = sorted(live, key=sort_key)
    top = (1 << bits) - 1
    return [StateCode(s, top - i, bits) for i, s in enumerate(ordered)]


def _build_binary(g: FlowGraph, codes: Optional[dict[str, int]] = None) -> BuildResult:
    halting = g.halting
    if codes is None:
        assigned = assign_codes(g)
        codes = {sc.state: sc.code for sc in assigned}
        bits = assigned[0].bits if assigned else 0
    else:
        if any(c <= 0 for c in codes.values()):
            raise NetError("state codes must be positive (0 is the halt pattern)")
        if len(set(codes.values())) != len(codes):
            raise NetError("state codes must be unique")
        bits = max(c.bit_length() for c in codes.values())
    bit_places = [f"Q{i}" for i in range(bits)]
    places = bit_places + _register_places(g.registers)
    weight: dict[tuple[str, str], int] = {}
    transitions = []
    for i, arc in enumerate(g.arcs, start=1):
        t = f"T{i}"
        transitions.append(t)
        src_code = codes[arc.src]
        dst_code = 0 if arc.dst in halting else codes[arc.dst]
        for b in range(bits):
            s_bit = (src_code >> b) & 1
            d_bit = (dst_code >> b) & 1
            weight[(bit_places[b], t)] = 1 if s_bit else INHIBIT
            if d_bit:
                weight[(t, bit_places[b])] = 1
        _apply_cells(weight, t, encode_arc(arc))

    initial = {
        bit_places[b]: 1 for b in range(bits) if (codes[g.initial] >> b) & 1
    }
    inputs, output = _io_places(places)
    net = Net(
        places=places,
        transitions=transitions,
        weight=weight,
        initial_marking=initial,
        input_places=inputs,
        output_place=output,
    )
    smap = StateMap(
        kind="binary",
        registers=g.registers,
        register_places={f"R{i}": i for i in range(g.registers)},
        bit_places=tuple(bit_places),
        codes=dict(codes),
        step_weights={t: 1 for t in transitions},
        final_state=next(iter(halting)) if len(halting) == 1 else None,
    )
    return BuildResult(net, smap)


def binary(g: FlowGraph, codes: Optional[dict[str, int]] = None) -> Net:
    """Flow-graph arcs over binary-coded state places: each transition tests
    the source code (token or inhibitor per bit) and produces the target
    code's one-bits; arcs into halting states erase the code entirely."""
    return _build_binary(g, codes).net


# --- checker constructions -------------------------------------------------


def _build_checker(m: RegisterMachine, merge_increments: bool) -> BuildResult:
    _check_repertoire(m)
    folds = _fold_targets(m) if merge_increments else {}
    folded = set(folds)

    tested = sorted(
        {ins.register for ins in m.program.values() if ins.kind is OpKind.TEST_DEC}
    )
    state_places = {
        place_for_state(s): s
        for s in m.states
        if s != m.final and s not in folded
    }
    waiting = {
        s: place_for_state(s) + "'"
        for s, ins in m.program.items()
        if ins.kind is OpKind.TEST_DEC
    }
    checker_places = []
    for r in tested:
        checker_places += [f"C{r}", f"C{r}Z", f"C{r}NZ"]
    places = list(state_places) + list(waiting.values()) + checker_places + _register_places(m.registers)

    weight: dict[tuple[str, str], int] = {}
    transitions: list[str] = []
    step_weights: dict[str, int] = {}

    def produce(t, place, amount=1):
        weight[(t, place)] = weight.get((t, place), 0) + amount

    def emit_target(t, target) -> int:
        extra = 0
        if target in folds:
            target, incs = folds[target]
            for r in incs:
                produce(t, f"R{r}")
            extra = len(incs)
        if target != m.final:
            produce(t, place_for_state(target))
        return extra

    # one shared zero-test block per tested register: its inhibitor is the
    # only one that register ever needs
    for r in tested:
        t_nz = f"t_c{r}_nz"
        transitions.append(t_nz)
        weight[(f"C{r}", t_nz)] = 1
        weight[(f"R{r}", t_nz)] = 1
        produce(t_nz, f"C{r}NZ")
        step_weights[t_nz] = 0
        t_z = f"t_c{r}_z"
        transitions.append(t_z)
        weight[(f"C{r}", t_z)] = 1
        weight[(f"R{r}", t_z)] = INHIBIT
        produce(t_z, f"C{r}Z")
        step_weights[t_z] = 0

    for s in m.states:
        if s == m.final or s in folded:
            continue
        ins = m.program[s]
        qs = place_for_state(s)
        if ins.kind is OpKind.INC:
            t = f"t_{s}"
            transitions.append(t)
            weight[(qs, t)] = 1
            produce(t, f"R{ins.register}")
            step_weights[t] = 1 + emit_target(t, ins.next)
            continue
        r = ins.register
        t_split = f"t_{s}_split"
        transitions.append(t_split)
        weight[(qs, t_split)] = 1
        produce(t_split, waiting[s])
        produce(t_split, f"C{r}")
        step_weights[t_split] = 0

        t_nz = f"t_{s}_nz"
        transitions.append(t_nz)
        weight[(waiting[s], t_nz)] = 1
        weight[(f"C{r}NZ", t_nz)] = 1
        step_weights[t_nz] = 1 + emit_target(t_nz, ins.next_nonzero)

        t_z = f"t_{s}_z"
        transitions.append(t_z)
        weight[(waiting[s], t_z)] = 1
        weight[(f"C{r}Z", t_z)] = 1
        step_weights[t_z] = 1 + emit_target(t_z, ins.next_zero)

    inputs, output = _io_places(places)
    net = Net(
        places=places,
        transitions=transitions,
        weight=weight,
        initial_marking={place_for_state(m.initial): 1},
        input_places=inputs,
        output_place=output,
    )
    smap = StateMap(
        kind="checker",
        registers=m.registers,
        register_places={f"R{i}": i for i in range(m.registers)},
        state_places=state_places,
        transient_places=frozenset(list(waiting.values()) + checker_places),
        step_weights=step_weights,
        final_state=m.final,
    )
    return BuildResult(net, smap)


def checker(m: RegisterMachine) -> Net:
    """Shared zero-test blocks: one inhibitor arc per register, all
    transition degrees at most 3."""
    return _build_checker(m, merge_increments=False).net


def checker_inc_merge(m: RegisterMachine) -> Net:
    """Checker construction with increment states folded into the join
    transitions of their predecessors."""
    return _build_checker(m, merge_increments=True).net


# --- strategy dispatch ------------------------------------------------------


def build(source: Union[RegisterMachine, FlowGraph], strategy: str) -> BuildResult:
    """Build one strategy's net plus its marking-projection map.

    Register-machine strategies (direct, inc-merge, checker, checker-merge)
    require a RegisterMachine.  Graph strategies (compressed, binary) accept
    either; a machine is converted and compressed first, while a flow graph
    is compressed in place (a no-op when it has no compressible states).
    """
    if strategy not in STRATEGIES:
        raise NetError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if strategy in ("direct", "inc-merge", "checker", "checker-merge"):
        if not isinstance(source, RegisterMachine):
            raise NetError(f"strategy {strategy!r} needs a register machine")
        if strategy == "direct":
            return _build_machine_net(source, merge_increments=False)
        if strategy == "inc-merge":
            return _build_machine_net(source, merge_increments=True)
        if strategy == "checker":
            return _build_checker(source, merge_increments=False)
        return _build_checker(source, merge_increments=True)
    graph = source if isinstance(source, FlowGraph) else rm_to_flowgraph(source)
    graph = compress(graph)
    if strategy == "compressed":
        return _build_from_flowgraph(graph)
    return _build_binary(graph)
