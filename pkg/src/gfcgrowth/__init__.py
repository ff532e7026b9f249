"""Growth equation D_(k) u = lam u, u(0) = 1, for general fractional
derivatives with complete Bernstein symbols: kernels, growth rate,
contour inversion, subordination, Mittag-Leffler reference values and a
direct time stepper."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BracketError,
    ConvergenceError,
    DomainError,
    GFCError,
    InadmissibleKernelError,
    InputError,
    NonFiniteError,
    RefusalError,
    SpecParseError,
    StepSizeError,
)
from .invert import ContourSpec, GrowthSolution, remainder_ratio, solve_growth, solve_relaxation  # noqa: E402
from .kernel import (  # noqa: E402
    AdmissibilityReport,
    DistributedOrder,
    FromMeasure,
    KernelSymbol,
    Logarithmic,
    Mixture,
    PowerLaw,
    StieltjesMeasure,
    builtin_kernels,
    check_admissibility,
    cumulative_kernel,
    kernel_k,
    laplace_K,
    phi,
    phi_prime,
    sector_bounds,
)
from .kernelspec import load_kernel, parse_kernel_spec  # noqa: E402
from .mlf import MLParams, mittag_leffler  # noqa: E402
from .rootfind import RootResult, asymptotic_amplitude, p0_of_lambda, superadditivity_check  # noqa: E402
from .subordination import (  # noqa: E402
    SubordinationSlice,
    g_hat,
    growth_via_subordination,
    subordination_kernel,
)
from .timestep import MeshSpec, StepSolution, solve_growth_direct, solve_relaxation_direct  # noqa: E402
