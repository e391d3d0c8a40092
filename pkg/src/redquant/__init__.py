"""redquant: numerics for constrained systems, from symplectic reduction to
Rieffel induction.

Subpackages cover a shared numerical substrate (quadrature, special functions
of imaginary order, 2D Fourier analysis, null-space arithmetic), finite-group
Plancherel theory, group-averaged induction for compact groups, the classical
and quantum treatment of the constraints H_kappa = (p_x^2 + kappa e^{4x} -
p_y^2)/2, and Mackey induction on finite homogeneous spaces.

All public objects are immutable after construction and all operations are
pure functions; everything is safe to call concurrently.
"""

__version__ = "0.1.0"
