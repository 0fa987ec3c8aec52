"""Deformed Tracy-Widom laws ``F_{beta,w}`` by tridiagonal Monte Carlo, the
Riccati diffusion, a parabolic PDE and Painleve II formulas."""
from .airy import airy_ai
from .edge import (EdgeMap, hermite_edge_map, hermite_shift_for_w, laguerre_edge_map,
                   laguerre_spike_for_w)
from .eig import SymTridiagonal, extreme_eigenvalues, sturm_count, top_eigenvalues
from .ensembles import (AiryDiscretization, HermiteSpec, LaguerreSpec, LowerBidiagonal,
                        dense_wishart_oracle, discretized_airy, gram_tridiagonal,
                        sample_chi, sample_hermite_tridiagonal, sample_laguerre_bidiagonal)
from .painleve import (HMSolution, LaxState, eval_F2, eval_F4, lax_check_x, lax_propagate,
                       solve_hastings_mcleod)
from .pde import CdfSurface, PdeGrid, dirichlet_slice, solve_higher, solve_level0
from .riccati import (DiffusionConfig, PathOutcome, estimate_cdf, higher_cdf, run_path,
                      sample_eigenvalues)
from .stats import ecdf, ks_distance
from .tables import ComparisonReport, DistributionTable

__version__ = "0.1.0"
