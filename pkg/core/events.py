"""
core/events.py — Property name constants (avoids typos)

Used for verdict labels, generator certificates and report keys.
"""

# Structure
COMMUTATIVE = "commutative"

# Quasinormality hierarchy
MATRICIAL = "matricial"
JOINT = "joint"
SPHERICAL = "spherical"
SPHERICAL_MOMENTS = "spherical_by_moments"
SPHERICAL_ISOMETRY = "spherical_isometry"
COORDINATEWISE_HYPONORMAL = "coordinatewise_hyponormal"

# Aluthge transforms
TORAL_FIXED = "toral_fixed"
SPHERICAL_FIXED = "spherical_fixed"
TRANSFORMS_AGREE = "transforms_agree"
TORAL_COMMUTES = "toral_transform_commutes"

# One-variable shifts
ONEVAR_QUASINORMAL = "onevar_quasinormal"
ONEVAR_HYPONORMAL = "onevar_hyponormal"
