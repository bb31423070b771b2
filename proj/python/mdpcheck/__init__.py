"""Exact and sound solvers for Markov decision processes."""

from ._core import (
    MdpError,
    Model,
    ParseError,
    classify,
    gen_hard_mn,
    gen_pi_trap,
    gen_random_mdp,
    hard_mn_index,
    load_model,
    parse_model,
    prob0,
    prob1,
    run_suite,
    save_model,
    solve,
)

__all__ = [
    "MdpError",
    "Model",
    "ParseError",
    "classify",
    "gen_hard_mn",
    "gen_pi_trap",
    "gen_random_mdp",
    "hard_mn_index",
    "load_model",
    "parse_model",
    "prob0",
    "prob1",
    "run_suite",
    "save_model",
    "solve",
]
