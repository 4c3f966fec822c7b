"""
Spin models, time evolution and phase bookkeeping.
"""
from src.physics.model import EigenSystem, FieldConfig, TwoQubitConfig
from src.physics.schedule import PulseSchedule, PulseSegment

__all__ = ["EigenSystem", "FieldConfig", "TwoQubitConfig", "PulseSchedule", "PulseSegment"]
