"""Place/Transition nets with inhibitor arcs.

A net is a bipartite structure of places and transitions with a weight
function over (place, transition) and (transition, place) pairs; the weight
-1 on a (place, transition) pair marks an inhibitor arc (the transition is
enabled only while the place is empty).  Computation is sequential firing
until deadlock; the run loop also detects nondeterminism (two or more
enabled transitions at a visited marking), which none of the generated nets
should ever exhibit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

Marking = dict[str, int]  # sparse: absent places hold 0 tokens


class NetError(ValueError):
    """Malformed net, marking, or query."""


class Metrics(NamedTuple):
    """Descriptional complexity vector: places, transitions, inhibitor arcs,
    maximal transition degree."""
    p: int
    t: int
    h: int
    d: int


class RunStatus(Enum):
    DEADLOCK = "deadlock"
    STEP_LIMIT_EXCEEDED = "step-limit-exceeded"
    NONDETERMINISM_DETECTED = "nondeterminism-detected"


@dataclass(frozen=True)
class RunResult:
    final_marking: Marking
    steps: int
    status: RunStatus
    trace: Optional[tuple[str, ...]] = None


class Net:
    """Immutable PT-net with inhibitor arcs.

    ``weight`` maps (place, transition) and (transition, place) pairs to
    integers; pairs absent from the map weigh 0.  W(p,t) is -1 for an
    inhibitor arc and otherwise the number of tokens consumed; W(t,p) is the
    number of tokens produced.
    """

    __slots__ = (
        "places", "transitions", "weight", "initial_marking",
        "input_places", "output_place",
        "_place_index", "_trans_index", "_needs", "_inhibs", "_deltas",
    )

    def __init__(
        self,
        places: Sequence[str],
        transitions: Sequence[str],
        weight: Mapping[tuple[str, str], int],
        initial_marking: Optional[Mapping[str, int]] = None,
        input_places: Sequence[str] = (),
        output_place: Optional[str] = None,
    ):
        self.places = tuple(places)
        self.transitions = tuple(transitions)
        place_set = set(self.places)
        trans_set = set(self.transitions)
        if len(place_set) != len(self.places):
            raise NetError("duplicate place identifiers")
        if len(trans_set) != len(self.transitions):
            raise NetError("duplicate transition identifiers")
        if place_set & trans_set:
            raise NetError("place and transition identifiers must be disjoint")

        norm: dict[tuple[str, str], int] = {}
        for (a, b), w in weight.items():
            if w == 0:
                continue
            if a in place_set and b in trans_set:
                if w < -1:
                    raise NetError(f"W({a},{b}) = {w}: place weights are -1 or >= 0")
            elif a in trans_set and b in place_set:
                if w < 0:
                    raise NetError(f"W({a},{b}) = {w}: production weights are >= 0")
            else:
                raise NetError(f"weight pair ({a!r}, {b!r}) joins unknown identifiers")
            norm[(a, b)] = w
        self.weight = norm

        marking = dict(initial_marking or {})
        for p, n in marking.items():
            if p not in place_set:
                raise NetError(f"initial marking references unknown place {p!r}")
            if n < 0:
                raise NetError("token counts must be nonnegative")
        self.initial_marking = {p: n for p, n in marking.items() if n > 0}

        self.input_places = tuple(input_places)
        for p in self.input_places:
            if p not in place_set:
                raise NetError(f"input place {p!r} not in places")
        if output_place is not None and output_place not in place_set:
            raise NetError(f"output place {output_place!r} not in places")
        self.output_place = output_place

        # Compiled firing structures (index-based, used by the run loop).
        self._place_index = {p: i for i, p in enumerate(self.places)}
        self._trans_index = {t: i for i, t in enumerate(self.transitions)}
        needs, inhibs, deltas = [], [], []
        for t in self.transitions:
            need, inhib, delta = [], [], {}
            for p in self.places:
                w_in = norm.get((p, t), 0)
                w_out = norm.get((t, p), 0)
                pi = self._place_index[p]
                if w_in == -1:
                    inhib.append(pi)
                elif w_in > 0:
                    need.append((pi, w_in))
                net_change = w_out - max(w_in, 0)
                if net_change:
                    delta[pi] = net_change
            needs.append(tuple(need))
            inhibs.append(tuple(inhib))
            deltas.append(tuple(delta.items()))
        self._needs = tuple(needs)
        self._inhibs = tuple(inhibs)
        self._deltas = tuple(deltas)

    def __eq__(self, other):
        if not isinstance(other, Net):
            return NotImplemented
        return (
            self.places == other.places
            and self.transitions == other.transitions
            and self.weight == other.weight
            and self.initial_marking == other.initial_marking
            and self.input_places == other.input_places
            and self.output_place == other.output_place
        )

    def __repr__(self):
        return f"Net(|P|={len(self.places)}, |T|={len(self.transitions)})"

    def w(self, a: str, b: str) -> int:
        return self.weight.get((a, b), 0)

    # internal: marking dict <-> dense vector
    def _to_vector(self, m: Mapping[str, int]) -> list[int]:
        vec = [0] * len(self.places)
        for p, n in m.items():
            if p not in self._place_index:
                raise NetError(f"marking references unknown place {p!r}")
            if n < 0:
                raise NetError("token counts must be nonnegative")
            vec[self._place_index[p]] = n
        return vec

    def _to_marking(self, vec: Sequence[int]) -> Marking:
        return {p: n for p, n in zip(self.places, vec) if n}


def enabled(net: Net, m: Mapping[str, int], t: str) -> bool:
    """True iff every consumed place holds enough tokens and every inhibitor
    place is empty."""
    if t not in net._trans_index:
        raise NetError(f"unknown transition {t!r}")
    ti = net._trans_index[t]
    vec = net._to_vector(m)
    return all(vec[pi] >= k for pi, k in net._needs[ti]) and not any(
        vec[pi] for pi in net._inhibs[ti]
    )


def fire(net: Net, m: Mapping[str, int], t: str) -> Marking:
    """Fire an enabled transition: m'(p) = m(p) - max(W(p,t),0) + W(t,p)."""
    if not enabled(net, m, t):
        raise NetError(f"transition {t!r} is not enabled")
    vec = net._to_vector(m)
    for pi, d in net._deltas[net._trans_index[t]]:
        vec[pi] += d
    return net._to_marking(vec)


def enabled_set(net: Net, m: Mapping[str, int]) -> set[str]:
    vec = net._to_vector(m)
    out = set()
    for ti, t in enumerate(net.transitions):
        if all(vec[pi] >= k for pi, k in net._needs[ti]) and not any(
            vec[pi] for pi in net._inhibs[ti]
        ):
            out.add(t)
    return out


def run_to_deadlock(
    net: Net,
    m0: Mapping[str, int],
    step_limit: int,
    collect_trace: bool = False,
) -> RunResult:
    """Fire the unique enabled transition until deadlock.

    Stops with NONDETERMINISM_DETECTED as soon as two transitions are enabled
    at a visited marking, or STEP_LIMIT_EXCEEDED after ``step_limit`` firings.
    """
    vec = net._to_vector(m0)
    needs, inhibs, deltas = net._needs, net._inhibs, net._deltas
    n_trans = len(net.transitions)
    trace: list[str] = []
    steps = 0
    while True:
        fired = -1
        for ti in range(n_trans):
            ok = True
            for pi, k in needs[ti]:
                if vec[pi] < k:
                    ok = False
                    break
            if ok:
                for pi in inhibs[ti]:
                    if vec[pi]:
                        ok = False
                        break
            if ok:
                if fired >= 0:
                    return RunResult(
                        net._to_marking(vec), steps,
                        RunStatus.NONDETERMINISM_DETECTED,
                        tuple(trace) if collect_trace else None,
                    )
                fired = ti
        if fired < 0:
            return RunResult(
                net._to_marking(vec), steps, RunStatus.DEADLOCK,
                tuple(trace) if collect_trace else None,
            )
        if steps >= step_limit:
            return RunResult(
                net._to_marking(vec), steps, RunStatus.STEP_LIMIT_EXCEEDED,
                tuple(trace) if collect_trace else None,
            )
        for pi, d in deltas[fired]:
            vec[pi] += d
        steps += 1
        if collect_trace:
            trace.append(net.transitions[fired])


DEFAULT_STEP_LIMIT = 10_000_000


def compute(
    net: Net,
    inputs: Sequence[int],
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Optional[int]:
    """Run the net on an input vector and read the output place count.

    Adds ``inputs[j]`` tokens to input place j on top of the initial marking,
    runs to deadlock, and returns the final count of the output place; None
    when the run exceeds the step limit or trips the nondeterminism check.
    """
    if len(inputs) != len(net.input_places):
        raise NetError(
            f"expected {len(net.input_places)} inputs, got {len(inputs)}"
        )
    if net.output_place is None:
        raise NetError("net declares no output place")
    m = dict(net.initial_marking)
    for p, n in zip(net.input_places, inputs):
        if n < 0:
            raise NetError("inputs must be nonnegative")
        m[p] = m.get(p, 0) + n
    result = run_to_deadlock(net, m, step_limit)
    if result.status is not RunStatus.DEADLOCK:
        return None
    return result.final_marking.get(net.output_place, 0)


def degree(net: Net, t: str) -> int:
    """Number of arcs incident to ``t``, counting each direction separately:
    a read loop ("1,1" cell) contributes 2, an inhibitor contributes 1."""
    if t not in net._trans_index:
        raise NetError(f"unknown transition {t!r}")
    count = 0
    for p in net.places:
        if net.weight.get((p, t), 0) != 0:
            count += 1
        if net.weight.get((t, p), 0) != 0:
            count += 1
    return count


def metrics(net: Net) -> Metrics:
    h = sum(
        1
        for (a, b), w in net.weight.items()
        if w == -1 and a in net._place_index
    )
    d = max((degree(net, t) for t in net.transitions), default=0)
    return Metrics(len(net.places), len(net.transitions), h, d)
