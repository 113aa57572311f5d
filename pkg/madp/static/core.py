"""Core numeric defaults and lookup tables.

Every algorithm in madp takes these as keyword defaults, so a caller can
override any of them per call without touching global state.
"""

TOLERANCE = 1e-9
"""Absolute tolerance for value comparisons and argmin tie detection"""

PROBABILITY_TOLERANCE = 1e-12
"""Allowed deviation of a probability row sum from 1"""

LINEAR_SOLVE_LIMIT = 2000
"""Largest state count evaluated by a direct linear solve"""

EVALUATION_TOLERANCE = 1e-10
"""Sup-norm residual that stops iterative policy evaluation"""

EVALUATION_ITERATION_CAP = 10**6
VALUE_ITERATION_CAP = 10**6
PI_ITERATION_CAP = 10**5

GRID_MOVES = {
    "up": (-1, 0),
    "down": (1, 0),
    "left": (0, -1),
    "right": (0, 1),
    "stay": (0, 0),
}
"""Grid spider moves in tie-breaking preference order"""

LINE_MOVES = {
    "left": -1,
    "right": 1,
}
"""Line spider moves in stored control order"""

REPORT_COLUMNS = ("method", "state", "value", "q_evals", "iterations", "seed")
"""Stable CSV column order for experiment reports"""
