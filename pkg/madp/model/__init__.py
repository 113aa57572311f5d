"""Problem models: finite-horizon and discounted, plus the one-agent-at-a-time reformulation.

# Classes

- [madp.model.FiniteHorizonModel](./model/finite.html#FiniteHorizonModel)
- [madp.model.DiscountedMDP](./model/discounted.html#DiscountedMDP)
"""

from madp.model.discounted import DiscountedMDP, StateBlock
from madp.model.finite import FiniteHorizonModel, TabularFiniteModel, joint_controls
from madp.model.reformulate import (
    ExpandedFiniteModel,
    ExpandedMDP,
    embed_policy,
    reformulate_one_at_a_time,
)
from madp.model.validate import require_valid, validate_model

__all__ = (
    "DiscountedMDP",
    "ExpandedFiniteModel",
    "ExpandedMDP",
    "FiniteHorizonModel",
    "StateBlock",
    "TabularFiniteModel",
    "embed_policy",
    "joint_controls",
    "reformulate_one_at_a_time",
    "require_valid",
    "validate_model",
)
