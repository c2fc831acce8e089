from ris_css.byzantine.attack_profile import (
    AssignmentMode,
    AttackKind,
    AttackProfile,
    NamedAttack,
)
from ris_css.byzantine.attacker import (
    apply_attack,
    assign_compromised,
    compromised_mask,
    is_blinding,
    optimal_attack,
)

__all__ = [
    "AssignmentMode",
    "AttackKind",
    "AttackProfile",
    "NamedAttack",
    "apply_attack",
    "assign_compromised",
    "compromised_mask",
    "is_blinding",
    "optimal_attack",
]
