"""Register machines to small Petri nets with inhibitor arcs.

Compile register machines / flow graphs into PT-nets via six construction
strategies, measure the (places, transitions, inhibitor arcs, max degree)
complexity vector, and certify behavioral equivalence against the machine
oracles by step-bounded co-simulation.
"""

from .machines import (
    Arc,
    Cond,
    FgConfig,
    FlowGraph,
    Instruction,
    MachineError,
    MachineStatus,
    NondeterminismError,
    Op,
    OpKind,
    RegisterMachine,
    RmConfig,
    StuckError,
    format_flowgraph,
    format_register_machine,
    parse_flowgraph,
    parse_register_machine,
    rm_to_flowgraph,
    run_fg,
    run_rm,
    step_fg,
    step_rm,
    u7,
    u22,
)
from .nets import (
    DEFAULT_STEP_LIMIT,
    Marking,
    Metrics,
    Net,
    NetError,
    RunResult,
    RunStatus,
    compute,
    degree,
    enabled,
    enabled_set,
    fire,
    metrics,
    run_to_deadlock,
)
from .incidence import (
    export_incidence,
    import_incidence,
    load_net,
    save_net,
)
from .compression import (
    MergeOutcome,
    compress,
    compress_state,
    is_compressible,
    merge_arcs,
)
from .codegen import (
    BuildResult,
    StateCode,
    StateMap,
    assign_codes,
    binary,
    build,
    checker,
    checker_inc_merge,
    direct,
    encode_arc,
    from_flowgraph,
    inc_merge,
)
from .harness import (
    DiffReport,
    Verdict,
    cosimulate,
    golden_diff,
    paper_builds,
    project_config,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
