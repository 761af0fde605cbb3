"""Simulation of digital reconfigurable intelligent surfaces for optical links."""

from .codes import (
    CodeGrid,
    DrisSpec,
    ElementType,
    StcFrame,
    decode_sequence,
    default_types,
    distinct_types,
    encode_frame,
    encode_grid,
    stc_schedule,
    word_to_type,
)
from .exceptions import (
    DecodeError,
    DomainError,
    DrisError,
    EvanescentError,
    ScheduleError,
    SizeCapError,
    TotalInternalReflectionError,
)
from .materials import (
    LcCell,
    LcMaterial,
    birefringence,
    index_at_tilt,
    load_materials,
    retardation,
    tilt_angle,
)
from .optics import (
    GratingSpec,
    InterfaceConfig,
    LayerStack,
    blazed_reflection_angle,
    deflected_angle,
    generalized_snell,
    grating_orders,
    stack_matrix,
    stack_reflectance,
)
from .panel import (
    Beam,
    BeamSet,
    aggregate_beams,
    element_response,
    reference_spec,
    pattern_sample,
    power_dbm,
)
from .steering import SteeringProblem, exhaustive_steer, greedy_steer, objective

__version__ = "0.1.0"
