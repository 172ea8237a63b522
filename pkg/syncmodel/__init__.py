__version__ = '0.1.0'

from .core import FrequencySpec, PhaseState, SpinConfiguration, OrderParameter, Trajectory, order_parameter
from .dynamics import ModelParams, IntegratorConfig, IntegratorMethod, Representation, integrate
from .analysis import coupling_bounds, solve_self_consistent_J, classify, SyncState
from .exp_simulate import SimulateExperiment
from .exp_sweep import SweepExperiment
from .exp_kink import KinkExperiment
from .exp_verify import VerifyExperiment
from .exp_gaudin import GaudinExperiment
