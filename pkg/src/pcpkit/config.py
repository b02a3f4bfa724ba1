"""Central numeric tolerances.

Every tolerance used by the solvers, classifiers, and degree routines lives in
one frozen record so tests and callers can override them coherently instead of
chasing scattered module constants.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances shared across the package.

    feasibility / complementarity: acceptance thresholds for verified
        solutions of a complementarity problem.
    jacobian_fd: allowed deviation between analytic Jacobians and central
        finite differences on unit-ball points.
    root: residual threshold below which a polished point counts as a root.
    dedupe: infinity-norm distance under which two solutions are merged.
    tie_margin: minimum slack between the two branches of the min map
        required for a preimage to count as regular.
    zero_on_circle: norm below which a sample on the winding circle is
        treated as a zero of the map (degenerate input).
    dual_strict: strictness margin for dual-cone interior tests.
    singular_det: absolute determinant below which a square system is
        treated as singular.
    """

    feasibility: float = 1e-8
    complementarity: float = 1e-8
    jacobian_fd: float = 1e-5
    root: float = 1e-10
    dedupe: float = 1e-6
    tie_margin: float = 1e-6
    zero_on_circle: float = 1e-9
    dual_strict: float = 1e-6
    singular_det: float = 1e-12

    def override(self, **kwargs) -> "Tolerances":
        """Return a copy with the given fields replaced."""
        return replace(self, **kwargs)


DEFAULT_TOLERANCES = Tolerances()
