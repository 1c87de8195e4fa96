"""Simulation engine for a driven atom-cavity system in which spatially
varying light shifts push excited atoms into regions of strong cavity
coupling, producing laser gain without an incoherent pump.

Layers: analytic dressed states and forces (`dressed`), a full Lindblad
solver with semiclassical motion for small atom numbers (`quantum`), a
second-order moment solver for ensembles (`cumulant`), and the cavity
output spectrum with motional sidebands (`spectrum`).  The `cli` module
exposes the `superlaser` command with presets for the standard scenarios.
"""

from .params import AtomPhase, PhysParams
from .dressed import (DressedPoint, RegimeReport, dressed_eigenvalues,
                      light_shift_profile, mixing_angle, regime_check)
from .ode import (IntegrationError, NonFiniteRhsError, OdeProblem, SolverStats,
                  StepSizeUnderflowError, Trajectory, integrate)
from .hilbert import DimensionBudgetError, HilbertSpace, build_space
from .quantum import (Observables, PositivityError, force, hamiltonian,
                      init_ensemble, lindblad_rhs, simulate_full)
from .cumulant import (CumulantNanError, CumulantState, Multiplicity, cumulant_rhs,
                       memory_and_count, reconstruct_cross, simulate_cumulant)
from .results import ObservableTrajectory
from .spectrum import (CorrelationResult, Peak, SpectrumResult, average_g1,
                       correlation_evolve, find_peaks, sideband_frequencies,
                       stationary_momentum, wiener_khinchin)

__version__ = "0.1.0"
