"""Equivalence certification by step-bounded co-simulation.

A generated net is driven transition by transition while an oracle (the
register machine or flow graph it was compiled from) is advanced by the
number of machine steps each transition completes.  At every stable marking
(one control locus, no in-flight checker tokens) the projected configuration
must equal the oracle configuration: same state, same full register vector.
At the net's deadlock the oracle must halt within a one-instruction window
and agree on the output register.  Nondeterminism (two enabled transitions
anywhere) fails the run.

``sweep`` drives a set of strategies over an input grid and aggregates the
verdicts plus per-net complexity metrics; ``golden_diff`` compares a
generated net against a reference incidence table up to row/column
permutation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .codegen import INHIBIT, BuildResult, StateMap, build
from .machines import (
    FlowGraph,
    MachineStatus,
    RegisterMachine,
    RmConfig,
    StuckError,
    run_rm,
    step_fg,
    step_rm,
    u7,
    u22,
)
from .nets import DEFAULT_STEP_LIMIT, Marking, Net, NetError


class ProjectionError(NetError):
    """Marking does not encode any machine configuration (corrupt control)."""


def _compile_projector(net: Net, smap: StateMap):
    """Marking-vector projector for one net (shared by project_config and the
    co-simulation inner loop)."""
    reg_vec_idx = [
        net._place_index[place]
        for place, _ in sorted(smap.register_places.items(), key=lambda kv: kv[1])
    ]

    if smap.kind == "binary":
        bit_idx = [net._place_index[p] for p in smap.bit_places]
        state_of_code = {c: s for s, c in smap.codes.items()}

        def project(vec):
            code = 0
            for i, vi in enumerate(bit_idx):
                n = vec[vi]
                if n > 1:
                    raise ProjectionError(
                        f"bit place {smap.bit_places[i]} holds {n} tokens"
                    )
                code |= n << i
            if code == 0:
                state = smap.final_state
            else:
                state = state_of_code.get(code)
                if state is None:
                    raise ProjectionError(f"marking encodes unassigned state code {code}")
            return (state, tuple(vec[vi] for vi in reg_vec_idx))

        return project

    state_idx = [(net._place_index[p], s) for p, s in smap.state_places.items()]
    transient_idx = [net._place_index[p] for p in smap.transient_places]

    def project(vec):
        state = None
        for vi, s in state_idx:
            n = vec[vi]
            if n:
                if n > 1 or state is not None:
                    raise ProjectionError("more than one control locus")
                state = s
        in_flight = 0
        for vi in transient_idx:
            n = vec[vi]
            if n:
                if n > 1:
                    raise ProjectionError("overloaded checker/waiting place")
                in_flight += 1
        if in_flight:
            if state is not None or in_flight != 2:
                raise ProjectionError(
                    f"corrupt in-flight marking: locus={state!r}, "
                    f"{in_flight} transient tokens"
                )
            return None  # between split and join
        if state is None:
            state = smap.final_state  # control consumed at halt
        return (state, tuple(vec[vi] for vi in reg_vec_idx))

    return project


def project_config(
    net: Net, m: Marking, smap: StateMap
) -> Optional[tuple[Optional[str], tuple[int, ...]]]:
    """Project a marking onto an oracle configuration.

    Returns (state, registers); state is None for the halted pattern (control
    consumed / code 0) when the oracle's halting state is not unique.  Returns
    None for valid in-flight markings (checker construction between split and
    join).  Raises ProjectionError when the marking can encode no
    configuration at all.
    """
    return _compile_projector(net, smap)(net._to_vector(m))


class _Oracle:
    """Uniform stepper over a register machine or flow graph."""

    def __init__(self, source: Union[RegisterMachine, FlowGraph], inputs: Sequence[int]):
        self.source = source
        self.is_machine = isinstance(source, RegisterMachine)
        config = source.initial_config(inputs)
        self.state = config.state
        self.registers = config.registers
        self.steps = 0
        self.halted = False
        self.stuck = False

    def _step(self) -> bool:
        try:
            if self.is_machine:
                nxt = step_rm(self.source, RmConfig(self.state, self.registers))
            else:
                nxt = step_fg(self.source, RmConfig(self.state, self.registers))
        except StuckError:
            self.stuck = True
            return False
        if nxt is None:
            self.halted = True
            return False
        self.state, self.registers = nxt.state, nxt.registers
        self.steps += 1
        return True

    def advance(self, n: int) -> bool:
        """Take exactly n steps; False when the oracle halts too early."""
        for _ in range(n):
            if self.halted or not self._step():
                return False
        return True

    def run_out(self, window: int) -> bool:
        """Let the oracle finish within a small window; True when it halts."""
        for _ in range(window):
            if self.halted or not self._step():
                return True
        return self.halted


@dataclass(frozen=True)
class Verdict:
    inputs: tuple[int, ...]
    passed: bool
    unverified: bool = False  # oracle exceeded the step budget: nothing asserted
    status_match: bool = True
    output_match: bool = True
    register_match: bool = True
    detail: str = ""
    net_steps: int = 0
    oracle_steps: int = 0
    checkpoints: int = 0
    output: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "inputs": list(self.inputs),
            "passed": self.passed,
            "unverified": self.unverified,
            "status_match": self.status_match,
            "output_match": self.output_match,
            "register_match": self.register_match,
            "detail": self.detail,
            "net_steps": self.net_steps,
            "oracle_steps": self.oracle_steps,
            "checkpoints": self.checkpoints,
            "output": self.output,
        }


def cosimulate(
    oracle_source: Union[RegisterMachine, FlowGraph],
    built: BuildResult,
    inputs: Sequence[int],
    step_limit: int = DEFAULT_STEP_LIMIT,
) -> Verdict:
    """Run net and oracle in lock step and compare at every stable marking."""
    net, smap = built.net, built.state_map
    if len(inputs) != len(net.input_places):
        raise NetError("input arity mismatch")

    vec = net._to_vector(net.initial_marking)
    for place, n in zip(net.input_places, inputs):
        vec[net._place_index[place]] += n
    needs, inhibs, deltas = net._needs, net._inhibs, net._deltas
    n_trans = len(net.transitions)
    weights = [smap.step_weights.get(t, 1) for t in net.transitions]
    window = 1 + max(smap.step_weights.values(), default=1)
    out_idx = net._place_index[net.output_place] if net.output_place else None

    oracle = _Oracle(oracle_source, inputs)
    project = _compile_projector(net, smap)
    inputs = tuple(inputs)
    net_steps = 0
    checkpoints = 0

    def fail(detail, **flags):
        return Verdict(
            inputs, False, detail=detail, net_steps=net_steps,
            oracle_steps=oracle.steps, checkpoints=checkpoints, **flags,
        )

    while True:
        try:
            projected = project(vec)
        except ProjectionError as exc:
            return fail(f"projection: {exc}", register_match=False)
        if projected is not None:
            state, registers = projected
            if registers != oracle.registers:
                return fail(
                    f"registers diverge at net step {net_steps}: "
                    f"net={registers} oracle={oracle.registers}",
                    register_match=False,
                )
            if state is not None and not oracle.halted and state != oracle.state:
                return fail(
                    f"control diverges at net step {net_steps}: "
                    f"net={state!r} oracle={oracle.state!r}",
                    register_match=False,
                )
            checkpoints += 1

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
                    return fail(
                        f"nondeterminism: {net.transitions[fired]} and "
                        f"{net.transitions[ti]} both enabled",
                        status_match=False,
                    )
                fired = ti

        if fired < 0:  # deadlock: the oracle must halt within one instruction
            halted = oracle.run_out(window)
            output = vec[out_idx] if out_idx is not None else None
            if not halted:
                return fail(
                    f"net deadlocked after {net_steps} steps, oracle still live "
                    f"at {oracle.state!r}",
                    status_match=False, output=output,
                )
            output_ok = output is None or output == oracle.registers[0]
            regs_ok = tuple(
                vec[net._place_index[p]] for p in sorted(
                    smap.register_places, key=smap.register_places.get)
            ) == oracle.registers
            if not (output_ok and regs_ok):
                return fail(
                    f"final disagreement: output={output} vs oracle R0="
                    f"{oracle.registers[0]}; registers "
                    f"{'ok' if regs_ok else 'diverged'}",
                    output_match=output_ok, register_match=regs_ok, output=output,
                )
            return Verdict(
                inputs, True, net_steps=net_steps, oracle_steps=oracle.steps,
                checkpoints=checkpoints, output=output,
            )

        if net_steps >= step_limit or oracle.steps >= step_limit:
            return Verdict(
                inputs, True, unverified=True,
                detail="step budget exhausted on both sides",
                net_steps=net_steps, oracle_steps=oracle.steps,
                checkpoints=checkpoints,
            )

        weight = weights[fired]
        if weight and not oracle.advance(weight):
            return fail(
                f"oracle halted mid-transition {net.transitions[fired]}",
                status_match=False,
            )
        for pi, d in deltas[fired]:
            vec[pi] += d
        net_steps += 1


STRATEGY_ORACLES = {
    "direct": "u22",
    "inc-merge": "u22",
    "checker": "u22",
    "checker-merge": "u22",
    "compressed": "u7",
    "binary": "u7",
}


def paper_builds() -> dict[str, tuple[Union[RegisterMachine, FlowGraph], BuildResult]]:
    """The six reference nets with their oracles (u22 for the machine-level
    strategies, u7 for the compressed/binary ones)."""
    machine = u22()
    graph = u7()
    out = {}
    for strategy, oracle_name in STRATEGY_ORACLES.items():
        source = machine if oracle_name == "u22" else graph
        out[strategy] = (source, build(source, strategy))
    return out


@dataclass
class SweepReport:
    grid: list[tuple[int, int]]
    step_limit: int
    strategies: dict[str, dict] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(
            v["passed"]
            for entry in self.strategies.values()
            for v in entry["verdicts"]
        )

    def to_json(self) -> str:
        payload = {
            "grid": [list(g) for g in self.grid],
            "step_limit": self.step_limit,
            "all_passed": self.all_passed,
            "strategies": {
                name: {
                    "metrics": {
                        "p": entry["metrics"][0],
                        "t": entry["metrics"][1],
                        "h": entry["metrics"][2],
                        "d": entry["metrics"][3],
                    },
                    "verdicts": entry["verdicts"],
                }
                for name, entry in sorted(self.strategies.items())
            },
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for name, entry in sorted(self.strategies.items()):
            p, t, h, d = entry["metrics"]
            verdicts = entry["verdicts"]
            verified = [v for v in verdicts if not v["unverified"]]
            failed = [v for v in verified if not v["passed"]]
            lines.append(
                f"{name:14s} p={p} t={t} h={h} d={d}  "
                f"verified {len(verified) - len(failed)}/{len(verified)} passed, "
                f"{len(verdicts) - len(verified)} unverified"
            )
            for v in failed:
                lines.append(f"    FAIL {tuple(v['inputs'])}: {v['detail']}")
        lines.append("RESULT: " + ("PASS" if self.all_passed else "FAIL"))
        return "\n".join(lines)


def sweep(
    strategies: Sequence[str],
    grid: Sequence[tuple[int, int]],
    step_limit: int = DEFAULT_STEP_LIMIT,
    unverified_prefix: int = 20_000,
) -> SweepReport:
    """Certify each strategy over the input grid.

    Inputs are first classified by running the bundled register machine (the
    primal oracle for all six strategies; the bundled flow graph is itself
    certified equivalent to it).  Where it halts within the budget the net is
    co-simulated in full; elsewhere the co-simulation audits a bounded prefix
    and the input is reported as unverified.
    """
    from .nets import metrics

    builds = paper_builds()
    machine = u22()
    probe_cache: dict[tuple[int, ...], bool] = {}

    def halts(inputs) -> bool:
        key = tuple(inputs)
        if key not in probe_cache:
            probe = run_rm(machine, machine.initial_config(key), step_limit)
            probe_cache[key] = probe.status is MachineStatus.HALTED
        return probe_cache[key]

    report = SweepReport(grid=list(grid), step_limit=step_limit)
    for name in strategies:
        if name not in builds:
            raise NetError(f"unknown strategy {name!r}")
        source, built = builds[name]
        verdicts = []
        for inputs in grid:
            if halts(inputs):
                verdict = cosimulate(source, built, inputs, step_limit)
            else:
                verdict = cosimulate(source, built, inputs, unverified_prefix)
                if verdict.passed and not verdict.unverified:
                    verdict = Verdict(
                        tuple(inputs), False,
                        detail="net halted although the oracle exceeds the budget",
                        net_steps=verdict.net_steps, oracle_steps=verdict.oracle_steps,
                    )
            verdicts.append(verdict.as_dict())
        report.strategies[name] = {
            "metrics": tuple(metrics(built.net)),
            "verdicts": verdicts,
        }
    return report


# --- golden comparison ------------------------------------------------------


@dataclass
class DiffReport:
    place_mapping: dict[str, str]
    missing: list[dict]  # rows only in the golden net
    extra: list[dict]    # rows only in the generated net
    cell_diffs: list[dict]
    note: str = ""

    @property
    def empty(self) -> bool:
        return not (self.missing or self.extra or self.cell_diffs or self.note)

    def to_text(self) -> str:
        if self.empty:
            return "nets identical up to row/column permutation"
        lines = []
        if self.note:
            lines.append(self.note)
        for pair in self.cell_diffs:
            lines.append(
                f"cell mismatch {pair['generated']} vs {pair['golden']}: "
                + "; ".join(
                    f"{place}: {a} != {b}" for place, a, b in pair["cells"]
                )
            )
        for row in self.missing:
            lines.append(f"only in golden: {row['name']} {row['cells']}")
        for row in self.extra:
            lines.append(f"only in generated: {row['name']} {row['cells']}")
        return "\n".join(lines)


def _row_cells(net: Net, t: str, rename: dict[str, str]) -> tuple:
    cells = []
    for p in net.places:
        a = net.w(p, t)
        b = net.w(t, p)
        if a or b:
            cells.append((rename.get(p, p), a, b))
    return tuple(sorted(cells))


def _match_places(generated: Net, golden: Net) -> Optional[dict[str, str]]:
    """Map generated place names onto golden ones.

    Identity when the name sets agree; otherwise register places map by name
    and state-like places by (consumers, producers, inhibitor count)
    signature, which must match uniquely.
    """
    if set(generated.places) == set(golden.places):
        return {p: p for p in generated.places}

    def split(net):
        regs = {p for p in net.places if p.startswith("R") and p[1:].isdigit()}
        return regs, [p for p in net.places if p not in regs]

    gen_regs, gen_states = split(generated)
    gold_regs, gold_states = split(golden)
    if gen_regs != gold_regs or len(gen_states) != len(gold_states):
        return None

    def signature(net, p):
        consumers = sum(1 for t in net.transitions if net.w(p, t) > 0)
        producers = sum(1 for t in net.transitions if net.w(t, p) > 0)
        inhibited = sum(1 for t in net.transitions if net.w(p, t) == INHIBIT)
        return (consumers, producers, inhibited)

    mapping = {p: p for p in gen_regs}
    gold_by_sig: dict[tuple, list[str]] = {}
    for p in gold_states:
        gold_by_sig.setdefault(signature(golden, p), []).append(p)
    for p in gen_states:
        sig = signature(generated, p)
        candidates = gold_by_sig.get(sig, [])
        if len(candidates) != 1:
            return None
        mapping[p] = candidates[0]
    return mapping


def golden_diff(generated: Net, golden: Net) -> DiffReport:
    """Cell-by-cell comparison up to row/column permutation."""
    mapping = _match_places(generated, golden)
    if mapping is None:
        return DiffReport(
            {}, [], [], [],
            note="place sets cannot be aligned (structure mismatch)",
        )
    gen_rows = {t: _row_cells(generated, t, mapping) for t in generated.transitions}
    gold_rows = {t: _row_cells(golden, t, {}) for t in golden.transitions}

    unmatched_gold = dict(gold_rows)
    unmatched_gen = {}
    for t, row in gen_rows.items():
        hit = next((gt for gt, grow in unmatched_gold.items() if grow == row), None)
        if hit is None:
            unmatched_gen[t] = row
        else:
            del unmatched_gold[hit]

    cell_diffs = []
    missing = []
    extra = []
    remaining_gold = dict(unmatched_gold)
    for t, row in unmatched_gen.items():
        best, best_overlap = None, -1
        row_set = set(row)
        for gt, grow in remaining_gold.items():
            overlap = len(row_set & set(grow))
            if overlap > best_overlap:
                best, best_overlap = gt, overlap
        if best is None:
            extra.append({"name": t, "cells": list(row)})
            continue
        grow = remaining_gold.pop(best)
        diffs = []
        by_place_gen = {c[0]: c for c in row}
        by_place_gold = {c[0]: c for c in grow}
        for place in sorted(set(by_place_gen) | set(by_place_gold)):
            a = by_place_gen.get(place, (place, 0, 0))[1:]
            b = by_place_gold.get(place, (place, 0, 0))[1:]
            if a != b:
                diffs.append((place, a, b))
        cell_diffs.append({"generated": t, "golden": best, "cells": diffs})
    for gt, grow in remaining_gold.items():
        missing.append({"name": gt, "cells": list(grow)})
    return DiffReport(mapping, missing, extra, cell_diffs)
