"""Local topological degree of the min map at the origin.

For a homogeneous map F with SOL(F, 0) = {0}, the natural map
g(x) = min{x, F(x)} has an isolated zero at the origin and its local degree
there is computed two independent ways:

* regular-value counting: pick a small random p; on each branch pattern
  solve the piecewise-smooth system {x_i = p_i (x side), F_i(x) = p_i
  (F side)}, keep roots whose inactive branch clears the tie margin, and sum
  the signs of the piece Jacobian determinants. The preimage search radius
  doubles until the preimage set stops changing.
* winding number (dim 2 only): the angle swept by g around a circle, with
  adaptive bisection until every step turns less than pi/2.

Both are exact for regular data and raise DegenerateInputError rather than
return a doubtful value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DegenerateInputError, InvalidInputError, PcpKitError
from .solver import SolveConfig, _newton_batch, check_sol_infty_zero, enumerate_solutions
from .tensor_core import MapLike, PcpInstance, PolynomialMap, Tensor, as_map, leading_term

__all__ = [
    "DegreeEstimate",
    "HomotopyReport",
    "StabilityReport",
    "local_degree_min_map",
    "tensor_degree",
    "winding_degree_2d",
    "homotopy_invariance_check",
    "stability_radius_probe",
]

_MAX_DEGREE_DIM = 4
_P_RETRIES = 20
_BALL_CAP = 64.0


@dataclass
class DegreeEstimate:
    value: int
    method: str  # regular-value | winding | regular-value+winding
    regular_value: np.ndarray | None
    preimages: list  # [(x, sign)]
    tie_margin: float | None  # smallest branch slack observed; None if no preimages
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "value": int(self.value),
            "method": self.method,
            "regular_value": None
            if self.regular_value is None
            else [float(v) for v in self.regular_value],
            "preimages": [
                {"x": [float(v) for v in x], "sign": int(s)} for x, s in self.preimages
            ],
            "tie_margin": None if self.tie_margin is None else float(self.tie_margin),
            "diagnostics": self.diagnostics,
        }


class _Retry(Exception):
    """Current regular-value draw hit a tie or singular piece; redraw p."""


def _pattern_root_candidates(F, p: np.ndarray, alpha: tuple, radius: float,
                             tols: Tolerances, per_axis: int) -> list[np.ndarray]:
    """Newton roots of one pattern system inside the sup-norm ball.

    alpha = indices pinned to the x branch (x_i = p_i); the complement
    solves F_i(x) = p_i. No branch filtering here; candidates from all
    patterns are classified together afterwards.
    """
    n = F.dim
    beta = np.array([i for i in range(n) if i not in alpha], dtype=int)
    if beta.size == 0:
        return [p.copy()] if float(np.abs(p).max()) <= radius else []

    def embed(U):
        X = np.repeat(p[None, :], U.shape[0], axis=0)
        X[:, beta] = U
        return X

    def ev(U):
        return F.eval_batch(embed(U))[:, beta] - p[beta]

    def jc(U):
        J = F.jacobian_batch(embed(U))
        return J[:, beta[:, None], beta[None, :]]

    nodes = np.linspace(-radius / 8.0, radius, per_axis)
    starts = np.array(list(itertools.product(nodes, repeat=beta.size)))
    U, converged, rn, _ = _newton_batch(
        ev, jc, starts, tol=1e-13, max_iters=80,
        armijo_factor=0.5, max_halvings=30, box_cap=max(64.0, 4 * radius),
    )
    out: list[np.ndarray] = []
    for b in np.nonzero(converged & (rn <= tols.root))[0]:
        x = embed(U[b][None, :])[0]
        if float(np.abs(x).max()) > radius * (1 + 1e-9):
            continue
        if any(np.abs(x - prev).max() <= 1e-8 * (1 + radius) for prev in out):
            continue
        out.append(x)
    return out


def _classify_preimage(F, p: np.ndarray, x: np.ndarray, tols: Tolerances):
    """(sign, min_inactive_slack) of a candidate, or None if x is not a
    preimage of p.

    Per index the active branch is the one at the minimum; an index where
    both branches sit within the tie margin is resolved by checking that
    every branch completion gives the same Jacobian determinant sign
    (min{x_i, F_i} with F_i = x_i locally is smooth despite the formal tie).
    Ambiguous slacks in (active, margin] force a redraw of p.
    """
    n = F.dim
    margin = tols.tie_margin
    active_tol = 1e-8
    a = x - p
    b = F.eval(x) - p
    rows = []  # per index: list of allowed branches, 'x' and/or 'F'
    slacks = []
    for i in range(n):
        ax, bf = abs(a[i]) <= active_tol, abs(b[i]) <= active_tol
        if ax and bf:
            rows.append(("x", "F"))
        elif ax:
            if b[i] < -margin:
                return None  # the F branch dips below p_i: min differs from p_i
            if b[i] <= margin:
                raise _Retry("near-tie between branches at a preimage")
            rows.append(("x",))
            slacks.append(float(b[i]))
        elif bf:
            if a[i] < -margin:
                return None
            if a[i] <= margin:
                raise _Retry("near-tie between branches at a preimage")
            rows.append(("F",))
            slacks.append(float(a[i]))
        else:
            return None  # neither branch attains p_i: not a preimage
    J = F.jacobian_batch(x[None, :])[0]
    scale = max(1.0, float(np.abs(J).max()) ** n)
    sign = 0
    for combo in itertools.product(*rows):
        M = np.array(J)
        for i, branch in enumerate(combo):
            if branch == "x":
                M[i, :] = 0.0
                M[i, i] = 1.0
        det = float(np.linalg.det(M))
        if abs(det) <= tols.singular_det * scale:
            raise _Retry("singular piece Jacobian at a preimage")
        s = 1 if det > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            raise _Retry("tied branches disagree on orientation")
    return sign, (min(slacks) if slacks else float("inf"))


def _preimage_set(F, p: np.ndarray, radius: float, tols: Tolerances,
                  per_axis: int = 7):
    n = F.dim
    candidates: list[np.ndarray] = []
    for size in range(n + 1):
        for alpha in itertools.combinations(range(n), size):
            candidates.extend(
                _pattern_root_candidates(F, p, alpha, radius, tols, per_axis)
            )
    found = []
    for x in sorted(candidates, key=lambda v: tuple(v)):
        if any(
            np.abs(x - y).max() <= 1e-7 * (1 + float(np.abs(x).max()))
            for y, _, _ in found
        ):
            continue
        hit = _classify_preimage(F, p, x, tols)
        if hit is not None:
            found.append((x, hit[0], hit[1]))
    return found


def _sets_match(a, b, tol=1e-7) -> bool:
    if len(a) != len(b):
        return False
    return all(
        np.abs(x - y).max() <= tol * (1 + np.abs(x).max()) and sx == sy
        for (x, sx, _), (y, sy, _) in zip(a, b)
    )


def _draw_p(rng, n: int) -> np.ndarray:
    d = rng.uniform(-1.0, 1.0, size=n)
    d /= max(1e-12, float(np.abs(d).max()))
    return d * rng.uniform(1e-3, 1e-2)


def _regular_value_degree(
    F: PolynomialMap,
    rng,
    tols: Tolerances,
    fixed_radius: float | None = None,
    boundary_samples: np.ndarray | None = None,
) -> tuple:
    """(degree, p, preimages, diagnostics). Retries the draw of p up to
    _P_RETRIES times on ties/singularities; with fixed_radius set, computes
    over that ball only and insists preimages stay off the boundary."""
    n = F.dim
    last = "no attempts"
    for _ in range(_P_RETRIES):
        p = _draw_p(rng, n)
        try:
            if fixed_radius is not None:
                if boundary_samples is not None:
                    gb = np.abs(
                        np.minimum(boundary_samples, F.eval_batch(boundary_samples))
                    ).max(axis=1)
                    if float(gb.min()) < 10.0 * float(np.abs(p).max()):
                        raise _Retry("map too small on the region boundary")
                pre = _preimage_set(F, p, fixed_radius, tols)
                if any(np.abs(x).max() > 0.9 * fixed_radius for x, _, _ in pre):
                    raise _Retry("preimage near the region boundary")
                diag = {"radius": fixed_radius, "stabilized": True}
            else:
                radius = 1.0
                pre = _preimage_set(F, p, radius, tols)
                stabilized = False
                while radius < _BALL_CAP:
                    bigger = _preimage_set(F, p, 2 * radius, tols)
                    if _sets_match(pre, bigger):
                        stabilized = True
                        break
                    pre, radius = bigger, 2 * radius
                if not stabilized:
                    raise DegenerateInputError(
                        "preimage set kept changing up to the radius cap; "
                        "the map may have zeros at infinity"
                    )
                diag = {"radius": radius, "stabilized": True}
            deg = sum(s for _, s, _ in pre)
            return deg, p, pre, diag
        except _Retry as e:
            last = str(e)
            continue
    raise DegenerateInputError(
        f"no regular value found in {_P_RETRIES} draws (last: {last})"
    )


def winding_degree_2d(
    F: MapLike,
    radius: float = 1.0,
    samples: int = 4096,
    tols: Tolerances = DEFAULT_TOLERANCES,
) -> int:
    """Winding number of min{x, F(x)} around a circle of the given radius.

    Adaptive: bisects any arc whose angle step reaches pi/2, so the winding
    count is unambiguous. Raises DegenerateInputError when the map (nearly)
    vanishes on the circle or refinement fails to settle.
    """
    Fm = as_map(F)
    if Fm.dim != 2:
        raise InvalidInputError("winding numbers are for dim 2 only")
    if radius <= 0 or samples < 16:
        raise InvalidInputError("radius must be positive and samples >= 16")

    def angles_of(th):
        X = radius * np.stack([np.cos(th), np.sin(th)], axis=1)
        G = np.minimum(X, Fm.eval_batch(X))
        norms = np.hypot(G[:, 0], G[:, 1])
        floor = tols.zero_on_circle * max(1.0, float(norms.max()))
        if float(norms.min()) < floor:
            raise DegenerateInputError("min map vanishes on the circle")
        return np.arctan2(G[:, 1], G[:, 0])

    th = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    phi = angles_of(th)
    for _ in range(32):
        dphi = np.diff(np.append(phi, phi[0]))
        dphi = (dphi + np.pi) % (2 * np.pi) - np.pi
        bad = np.abs(dphi) >= np.pi / 2
        if not bad.any():
            break
        if th.size > (1 << 17):
            raise DegenerateInputError("winding refinement exceeded the sample cap")
        nxt = np.append(th[1:], th[0] + 2 * np.pi)
        mids = ((th + nxt) / 2.0)[bad]
        th = np.sort(np.concatenate([th, mids % (2 * np.pi)]))
        phi = angles_of(th)
    else:
        raise DegenerateInputError("winding refinement did not settle")
    total = float(dphi.sum()) / (2 * np.pi)
    w = round(total)
    if abs(total - w) > 1e-2:
        raise DegenerateInputError(f"non-integer winding estimate {total}")
    return int(w)


def local_degree_min_map(F: MapLike, seed: int = 0, cfg: SolveConfig = SolveConfig()) -> DegreeEstimate:
    """Regular-value degree of min{x, F(x)} at the origin for a homogeneous
    map F with SOL(F, 0) = {0}.

    The zero-only precondition is a sampling certificate and is recorded in
    the diagnostics as an assumption, not a proof.
    """
    F = as_map(F)
    if not F.is_homogeneous():
        raise InvalidInputError("local degree at the origin needs a homogeneous map")
    if F.dim > _MAX_DEGREE_DIM:
        raise InvalidInputError(f"degree computation capped at dim {_MAX_DEGREE_DIM}")
    tols = cfg.tolerances
    zero = check_sol_infty_zero(F, seed=seed, cfg=cfg)
    if not zero.zero_only:
        raise InvalidInputError(
            "degree at the origin needs SOL(f_inf,0)={0}; "
            f"found nonzero solution {zero.witness}"
        )
    rng = np.random.default_rng(seed)
    deg, p, pre, diag = _regular_value_degree(F, rng, tols)
    diag["assumptions"] = {"zero_only_samples": zero.samples, "one_sided": True}
    margins = [m for _, _, m in pre if np.isfinite(m)]
    return DegreeEstimate(
        value=deg,
        method="regular-value",
        regular_value=p,
        preimages=[(x, s) for x, s, _ in pre],
        tie_margin=min(margins) if margins else None,
        diagnostics=diag,
    )


def tensor_degree(A: MapLike, seed: int = 0, cfg: SolveConfig = SolveConfig()) -> DegreeEstimate:
    """Degree of min{x, f_inf(x)} at the origin (requires SOL(f_inf,0)={0}).

    Regular-value counting; in dim 2 the winding number is computed as well
    and the two must agree.
    """
    est = local_degree_min_map(leading_term(as_map(A)), seed=seed, cfg=cfg)
    F = leading_term(as_map(A))
    if F.dim == 2:
        w = winding_degree_2d(F, radius=1.0, tols=cfg.tolerances)
        est.diagnostics["winding"] = w
        est.diagnostics["methods_agree"] = w == est.value
        if w != est.value:
            raise PcpKitError(
                f"degree cross-check failed: regular-value {est.value} vs winding {w}"
            )
    return est


# --- homotopy checks --------------------------------------------------------


@dataclass
class HomotopyReport:
    mode: str
    status: str  # verified | precondition-failed | inconclusive
    degree_start: int | None
    degree_end: int | None
    omega_radius: float | None
    t_grid: list
    max_root_norms: list
    witness: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "mode": self.mode,
            "status": self.status,
            "degree_start": self.degree_start,
            "degree_end": self.degree_end,
            "omega_radius": self.omega_radius,
            "t_grid": [float(t) for t in self.t_grid],
            "max_root_norms": [float(v) for v in self.max_root_norms],
            "witness": None if self.witness is None else [float(v) for v in self.witness],
            "diagnostics": self.diagnostics,
        }


def _scaled_map(lead: Tensor, lower: list[Tensor], t: float) -> PolynomialMap:
    terms = [lead]
    if t != 0.0:
        terms += [Tensor(t * T.coeffs) for T in lower if not T.is_zero()]
    return PolynomialMap(terms)


def _box_boundary_samples(n: int, radius: float, rng, count: int = 512) -> np.ndarray:
    if n == 2:
        th = np.linspace(0, 2 * np.pi, 256, endpoint=False)
        pts = np.stack([np.cos(th), np.sin(th)], axis=1)
        pts /= np.abs(pts).max(axis=1, keepdims=True)
        return radius * pts
    pts = rng.uniform(-1.0, 1.0, size=(count, n))
    face = rng.integers(0, n, size=count)
    sign = rng.choice([-1.0, 1.0], size=count)
    pts[np.arange(count), face] = sign
    return radius * pts


def _roots_at_t(fmap: PolynomialMap, q: np.ndarray, cfg: SolveConfig):
    rep = enumerate_solutions(PcpInstance(fmap, q), cfg)
    norms = [float(np.abs(x).max()) for x in rep.solutions]
    return rep, max(norms, default=0.0)


def homotopy_invariance_check(
    f: MapLike,
    mode: str,
    q=None,
    d=None,
    interpolate: str = "full",
    seed: int = 0,
    cfg: SolveConfig = SolveConfig(),
) -> HomotopyReport:
    """Track min-map roots along a homotopy and compare endpoint degrees.

    mode "to-leading-term": deform (f, q) to (f_inf, 0) via f_inf + t*lower,
    t*q. mode "karamardian": deform f_inf to g + d where d > 0 and g is the
    full map (interpolate="full") or f_inf itself ("leading"); requires
    SOL(g, d) = {0} first and asserts the endpoint degree is 1.

    Roots are tracked on an 11-point t grid; if any root crowds the search
    boundary the sweep re-runs with a doubled radius, and the report comes
    back inconclusive when that still fails. Endpoint degrees are computed
    over a fixed region containing every tracked root.
    """
    fm = as_map(f)
    n = fm.dim
    lead = fm.leading
    lower = [T for o, T in fm.terms.items() if o != fm.order]
    tols = cfg.tolerances
    rng = np.random.default_rng(seed)
    t_grid = np.linspace(0.0, 1.0, 11)

    if mode == "to-leading-term":
        if q is None:
            raise InvalidInputError("to-leading-term mode needs q")
        q = np.asarray(q, dtype=np.float64)

        def stage(t):
            return _scaled_map(lead, lower, t), t * q

    elif mode == "karamardian":
        if d is None:
            raise InvalidInputError("karamardian mode needs a positive vector d")
        d = np.asarray(d, dtype=np.float64)
        if d.min() <= 0:
            raise InvalidInputError("d must be strictly positive")
        if interpolate not in ("full", "leading"):
            raise InvalidInputError("interpolate must be 'full' or 'leading'")
        use_lower = lower if interpolate == "full" else []

        def stage(t):
            return _scaled_map(lead, use_lower, t), t * d

        end_map, end_q = stage(1.0)
        pre = enumerate_solutions(PcpInstance(end_map, end_q), cfg)
        nonzero = [x for x in pre.solutions if np.abs(x).max() > tols.dedupe]
        if nonzero or not pre.solutions:
            return HomotopyReport(
                mode=mode,
                status="precondition-failed",
                degree_start=None,
                degree_end=None,
                omega_radius=None,
                t_grid=list(t_grid),
                max_root_norms=[],
                witness=nonzero[0] if nonzero else None,
                diagnostics={"note": "SOL(g, d) != {0}"},
            )
    else:
        raise InvalidInputError(f"unknown homotopy mode {mode!r}")

    sweep_cfg = cfg
    for _grow in range(3):
        max_norms = []
        boundary = False
        for t in t_grid:
            fmap_t, q_t = stage(float(t))
            _, mx = _roots_at_t(fmap_t, q_t, sweep_cfg)
            max_norms.append(mx)
            if mx > 0.9 * sweep_cfg.search_radius:
                boundary = True
                break
        if not boundary:
            break
        sweep_cfg = sweep_cfg.with_radius(sweep_cfg.search_radius * 2)
    else:
        return HomotopyReport(
            mode=mode,
            status="inconclusive",
            degree_start=None,
            degree_end=None,
            omega_radius=None,
            t_grid=list(t_grid),
            max_root_norms=max_norms,
            diagnostics={"note": "roots kept crowding the search boundary"},
        )

    omega = 2.0 * (max(max_norms) + 0.5)
    bsamp = _box_boundary_samples(n, omega, rng)
    start_map, start_q = stage(0.0)
    end_map, end_q = stage(1.0)

    def region_degree(fmap_t, q_t):
        # absorb the constant shift: the tracked map is min{x, f_t(x) + q_t}
        class _Shifted:
            dim = n

            @staticmethod
            def eval_batch(X):
                return fmap_t.eval_batch(X) + q_t

            @staticmethod
            def eval(x):
                return fmap_t.eval(x) + q_t

            @staticmethod
            def jacobian_batch(X):
                return fmap_t.jacobian_batch(X)

        deg, _, _, _ = _regular_value_degree(
            _Shifted, rng, tols, fixed_radius=omega, boundary_samples=bsamp
        )
        return deg

    try:
        deg0 = region_degree(start_map, start_q)
        deg1 = region_degree(end_map, end_q)
    except DegenerateInputError as e:
        return HomotopyReport(
            mode=mode,
            status="inconclusive",
            degree_start=None,
            degree_end=None,
            omega_radius=omega,
            t_grid=list(t_grid),
            max_root_norms=max_norms,
            diagnostics={"note": str(e)},
        )
    ok = deg0 == deg1 and (mode != "karamardian" or deg1 == 1)
    return HomotopyReport(
        mode=mode,
        status="verified" if ok else "inconclusive",
        degree_start=deg0,
        degree_end=deg1,
        omega_radius=omega,
        t_grid=list(t_grid),
        max_root_norms=max_norms,
        diagnostics={"search_radius": sweep_cfg.search_radius},
    )


@dataclass
class StabilityReport:
    base_degree: int
    per_scale: list
    largest_stable_scale: float | None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "base_degree": int(self.base_degree),
            "per_scale": self.per_scale,
            "largest_stable_scale": self.largest_stable_scale,
            "diagnostics": self.diagnostics,
        }


def stability_radius_probe(
    f: MapLike,
    scales=(1e-4, 1e-3, 1e-2),
    seed: int = 0,
    cfg: SolveConfig = SolveConfig(),
) -> StabilityReport:
    """Perturb the leading coefficients at growing scales and watch the
    invariants: zero solution cone and degree must survive. Requires the
    unperturbed map to have SOL(f_inf,0)={0} and nonzero degree."""
    fm = as_map(f)
    base = tensor_degree(fm, seed=seed, cfg=cfg)
    if base.value == 0:
        raise InvalidInputError("stability probe needs a nonzero base degree")
    lead = fm.leading
    lower = [T for o, T in fm.terms.items() if o != fm.order]
    rng = np.random.default_rng(seed)
    per_scale = []
    largest = None
    for s in sorted(scales):
        noise = rng.uniform(-1.0, 1.0, size=lead.coeffs.shape)
        pert = PolynomialMap([Tensor(lead.coeffs + s * noise)] + lower)
        zero = check_sol_infty_zero(pert, seed=seed, cfg=cfg)
        entry = {"scale": float(s), "zero_only": zero.zero_only, "degree": None,
                 "unchanged": False}
        if zero.zero_only:
            try:
                dd = tensor_degree(pert, seed=seed, cfg=cfg)
                entry["degree"] = dd.value
                entry["unchanged"] = dd.value == base.value
            except (DegenerateInputError, InvalidInputError) as e:
                entry["note"] = str(e)
        per_scale.append(entry)
        if entry["unchanged"]:
            largest = float(s)
    return StabilityReport(
        base_degree=base.value,
        per_scale=per_scale,
        largest_stable_scale=largest,
        diagnostics={"method": base.method},
    )
