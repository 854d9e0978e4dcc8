"""Ground contact model."""

from .ground import (
    ContactEvaluation,
    ContactMap,
    ContactPoint,
    contact_wrench,
    evaluate_contact,
    normal_force,
    reaction_force,
)

__all__ = [
    "ContactEvaluation",
    "ContactMap",
    "ContactPoint",
    "contact_wrench",
    "evaluate_contact",
    "normal_force",
    "reaction_force",
]
