from .base_experiment import BaseExperiment, ExperimentResult
from .duality import DualityExperiment, run_duality
from .invariance import InvarianceExperiment, run_invariance
from .bound import BoundExperiment, run_bound_and_sharpness
from .sandwich import SandwichExperiment, run_sandwich
from .continuity import ContinuityExperiment, run_continuity

SUITES = {
    'duality': DualityExperiment,
    'invariance': InvarianceExperiment,
    'bound': BoundExperiment,
    'sandwich': SandwichExperiment,
    'continuity': ContinuityExperiment
}

__all__ = [
    'BaseExperiment',
    'ExperimentResult',
    'DualityExperiment',
    'InvarianceExperiment',
    'BoundExperiment',
    'SandwichExperiment',
    'ContinuityExperiment',
    'SUITES',
    'run_duality',
    'run_invariance',
    'run_bound_and_sharpness',
    'run_sandwich',
    'run_continuity'
]
