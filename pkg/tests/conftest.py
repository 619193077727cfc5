from importlib import resources
from pathlib import Path

import pytest

from rm2pn.compression import BLOCKED, INFEASIBLE, MERGED, merge_arcs
from rm2pn.incidence import load_net
from rm2pn.machines import Arc, Cond, Op

GOLDEN_DIR = Path(str(resources.files("rm2pn") / "goldens"))
GOLDEN_NAMES = ("n1", "n2", "n3", "nw1", "nw2", "nw3")


@pytest.fixture(scope="session")
def goldens():
    return {name: load_net(GOLDEN_DIR / f"{name}.tsv") for name in GOLDEN_NAMES}


@pytest.fixture(scope="session")
def builds():
    from rm2pn.harness import paper_builds

    return paper_builds()


# --- brute-force oracle for arc merging (shared by module and acceptance
# tests): a merged arc must behave exactly like its two-step path on every
# register valuation in [0, 3] ---------------------------------------------

def traverse_arcs(regs, arcs):
    regs = list(regs)
    for arc in arcs:
        if not all((regs[c.register] > 0) == c.nonzero for c in arc.conds):
            return None
        for op in arc.ops:
            regs[op.register] += op.delta
            if regs[op.register] < 0:
                return None
    return tuple(regs)


def random_arc(rng, src, dst, n_regs=3):
    conds = []
    for r in range(n_regs):
        sense = rng.choice((None, True, False, None))
        if sense is not None:
            conds.append(Cond(r, sense))
    ops = [
        Op(rng.randrange(n_regs), rng.choice((1, -1)))
        for _ in range(rng.randrange(4))
    ]
    return Arc(src, dst, tuple(conds), tuple(ops))


def check_merge_against_oracle(rng, n_regs=3):
    """One random case; raises AssertionError on any rule violation."""
    a_in = random_arc(rng, "p", "q", n_regs)
    a_out = random_arc(rng, "q", "s", n_regs)
    tested = {c.register for c in a_out.conds}
    decremented = {op.register for op in a_in.ops if op.delta < 0}
    outcome = merge_arcs(a_in, a_out)
    if tested & decremented:
        assert outcome.result == BLOCKED
        return
    assert outcome.result in (MERGED, INFEASIBLE)
    if outcome.result == MERGED:
        senses = {}
        for c in outcome.arc.conds:
            assert senses.setdefault(c.register, c.nonzero) == c.nonzero
    space = [()]
    for _ in range(n_regs):
        space = [v + (x,) for v in space for x in range(4)]
    for values in space:
        two_step = traverse_arcs(values, (a_in, a_out))
        if outcome.result == INFEASIBLE:
            assert two_step is None, (a_in, a_out, values)
        else:
            merged = traverse_arcs(values, (outcome.arc,))
            assert merged == two_step, (a_in, a_out, outcome.arc, values)
