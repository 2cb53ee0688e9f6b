"""Exact solvers for Max-Cut above the Edwards-Erdos bound."""

from .cliqueforest import (
    EliminationPlan,
    EliminationStep,
    PlanStep,
    WeightedInstance,
    build_elimination_plan,
    clique_block_extension,
    reconstruct,
    run_elimination,
    solve_mcwwv,
)
from .dimacs import format_graph, parse_graph
from .errors import GraphFormatError, InvariantViolation, StaleApplicationError
from .generate import gen_clique_forest, gen_connected
from .graph import (
    Assignment,
    BlockDecomposition,
    Graph,
    QuarterTarget,
    blocks,
    bollobas_scott_bound,
    components_excluding,
    connected_excluding,
    cut_value,
    edwards_erdos_quarters,
    is_clique_forest,
    is_complete_set,
    is_connected,
    threshold_quarters,
)
from .kernel import (
    Kernel,
    KernelOutcome,
    KernelReason,
    KernelRule,
    KernelRuleApplication,
    apply_kernel_rule,
    find_kernel_rule,
    format_kernel,
    kernel_size_bound,
    kernelize,
    threshold_decide,
)
from .kernel import DecidedNo as KernelDecidedNo, DecidedYes as KernelDecidedYes
from .oracle import oracle_max_cut, oracle_mcwwv
from .reduction import (
    DecidedYes,
    FindSResult,
    ReductionTrace,
    Rule,
    RuleApplication,
    SeparatorFound,
    apply_rule,
    extend_assignment,
    find_S,
    find_next_rule,
    reduce_exhaustively,
    trace_log_lines,
)
from .solver import (
    ColoringBranch,
    ParamConversion,
    SolveOutcome,
    build_branch,
    convert_maxcut_param,
    solve_aee,
    solve_aee_whole,
)

__all__ = [
    "Assignment",
    "BlockDecomposition",
    "ColoringBranch",
    "DecidedYes",
    "EliminationPlan",
    "EliminationStep",
    "FindSResult",
    "Graph",
    "GraphFormatError",
    "InvariantViolation",
    "Kernel",
    "KernelDecidedNo",
    "KernelDecidedYes",
    "KernelOutcome",
    "KernelReason",
    "KernelRule",
    "KernelRuleApplication",
    "ParamConversion",
    "PlanStep",
    "QuarterTarget",
    "ReductionTrace",
    "Rule",
    "RuleApplication",
    "SeparatorFound",
    "SolveOutcome",
    "StaleApplicationError",
    "WeightedInstance",
    "apply_kernel_rule",
    "apply_rule",
    "blocks",
    "bollobas_scott_bound",
    "build_branch",
    "build_elimination_plan",
    "clique_block_extension",
    "components_excluding",
    "connected_excluding",
    "convert_maxcut_param",
    "cut_value",
    "edwards_erdos_quarters",
    "extend_assignment",
    "find_S",
    "find_kernel_rule",
    "find_next_rule",
    "format_graph",
    "format_kernel",
    "gen_clique_forest",
    "gen_connected",
    "is_clique_forest",
    "is_complete_set",
    "is_connected",
    "kernel_size_bound",
    "kernelize",
    "oracle_max_cut",
    "oracle_mcwwv",
    "parse_graph",
    "reconstruct",
    "reduce_exhaustively",
    "run_elimination",
    "solve_aee",
    "solve_aee_whole",
    "solve_mcwwv",
    "threshold_decide",
    "threshold_quarters",
    "trace_log_lines",
]
