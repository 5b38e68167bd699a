"""Numeric dynamics: orbits, bounded-orbit sampling, and degree counting.

The bounded-orbit sets of the induced morphisms are images of cosine
grids through the catalogue parametrizations; sampling them and pushing
them through the maps is embarrassingly parallel, so the heavy paths run
on numpy arrays built from compiled term lists.  Nothing here asserts
mathematical membership: a point that survives the horizon is labelled
bounded_horizon, no more.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .branch import branch_triangular_solution, half_branch_polys, plane_eliminant
from .elimination import squarefree_part
from .invariants import induced_morphism
from .polynomials import MultiPoly, PolyMap
from .reporting import Check
from .roots import aberth_roots, cluster_points
from .varieties import catalogue, space_degree2_composition_form

__all__ = [
    "OrbitRecord",
    "NumericMap",
    "iterate_orbit",
    "sample_k_set",
    "survival_fraction",
    "shadow_survival",
    "jordan_curve_data",
    "jacobian_partition_data",
    "count_generic_preimages",
    "classify_special_points",
    "IllConditioned",
]

DEFAULT_ESCAPE_RADIUS = 1e6
DEFAULT_MAX_ITER = 64


class IllConditioned(RuntimeError):
    """Root clustering prevented a confident preimage count."""


@dataclass(frozen=True)
class OrbitRecord:
    start: tuple[complex, ...]
    iterates: tuple[tuple[complex, ...], ...]
    status: str  # "bounded_horizon" | "escaped"
    escape_index: int | None = None
    nonfinite: bool = False


class NumericMap:
    """A polynomial map compiled to flat term lists for fast evaluation."""

    def __init__(self, pmap: PolyMap):
        self.source_vars = pmap.source_vars
        self.compiled = []
        for comp in pmap.components:
            terms = [(c.to_complex(), exps) for exps, c in comp.terms.items()]
            self.compiled.append(terms)

    def eval_point(self, point):
        out = []
        for terms in self.compiled:
            acc = 0j
            for coeff, exps in terms:
                val = coeff
                for x, e in zip(point, exps):
                    if e:
                        val *= x**e
                acc += val
            out.append(acc)
        return tuple(out)

    def eval_arrays(self, columns: list[np.ndarray]) -> list[np.ndarray]:
        out = []
        for terms in self.compiled:
            acc = np.zeros_like(columns[0], dtype=complex)
            for coeff, exps in terms:
                val = np.full_like(columns[0], coeff, dtype=complex)
                for col, e in zip(columns, exps):
                    if e:
                        val = val * col**e
                acc = acc + val
            out.append(acc)
        return out


def iterate_orbit(
    pmap: PolyMap,
    start,
    max_iter: int = DEFAULT_MAX_ITER,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
) -> OrbitRecord:
    """Forward orbit; deterministic, stops at escape or the horizon."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if escape_radius <= 0:
        raise ValueError("escape_radius must be positive")
    numeric = NumericMap(pmap)
    point = tuple(complex(x) for x in start)
    iterates = []
    for k in range(max_iter):
        try:
            point = numeric.eval_point(point)
        except OverflowError:
            return OrbitRecord(tuple(start), tuple(iterates), "escaped", k, nonfinite=True)
        iterates.append(point)
        if any(not (math.isfinite(x.real) and math.isfinite(x.imag)) for x in point):
            return OrbitRecord(tuple(start), tuple(iterates), "escaped", k, nonfinite=True)
        if max(abs(x) for x in point) > escape_radius:
            return OrbitRecord(tuple(start), tuple(iterates), "escaped", k)
    return OrbitRecord(tuple(start), tuple(iterates), "bounded_horizon")


# -- bounded-orbit sampling ------------------------------------------------------

def _angle_grids(entry_name: str, resolution: int):
    """Parameter columns (2cos of angle combinations) for a K-set grid."""
    two_pi = 2 * np.pi
    if entry_name == "plane":
        alpha, beta = np.meshgrid(
            np.arange(resolution) * (two_pi / resolution),
            np.arange(resolution) * (two_pi / resolution),
            indexing="ij",
        )
        return [2 * np.cos(3 * alpha.ravel()), 2 * np.cos(beta.ravel())]
    if entry_name == "axis_surface":
        alpha, beta = np.meshgrid(
            np.arange(resolution) * (two_pi / resolution),
            np.arange(resolution) * (two_pi / resolution),
            indexing="ij",
        )
        # catalogue parameter order is (t, w): t = 2cos(beta), w = 2cos(alpha)
        return [2 * np.cos(beta.ravel()), 2 * np.cos(alpha.ravel())]
    if entry_name == "astroid_surface":
        alpha, beta = np.meshgrid(
            np.arange(resolution) * (two_pi / resolution),
            np.arange(resolution) * (two_pi / resolution),
            indexing="ij",
        )
        return [2 * np.cos(2 * alpha.ravel()), 2 * np.cos((alpha + beta).ravel())]
    if entry_name == "quadric":
        alpha, beta, gamma = np.meshgrid(
            np.arange(resolution) * (two_pi / resolution),
            np.arange(resolution) * (two_pi / resolution),
            np.arange(resolution) * (two_pi / resolution),
            indexing="ij",
        )
        return [
            2 * np.cos(2 * alpha.ravel()),
            2 * np.cos((alpha + beta).ravel()),
            2 * np.cos(gamma.ravel()),
        ]
    raise ValueError(f"no angle rule for entry {entry_name!r}")


def sample_k_set(entry_name: str, resolution: int) -> dict:
    """Real point cloud of the bounded-orbit set of a catalogue entry.

    Evaluates the parametrization on the 2cos angle grid, asserts the
    imaginary residue is below 1e-9, and tags every point with the
    residuals of the defining sign inequalities.
    """
    entry = catalogue()[entry_name]
    if not entry.inequalities and entry_name != "axis_surface":
        raise ValueError(f"entry {entry_name!r} has no sampling rule")
    columns = _angle_grids(entry_name, resolution)
    numeric = NumericMap(entry.param)
    coords = numeric.eval_arrays(columns)
    max_imag = max(float(np.max(np.abs(c.imag))) for c in coords)
    points = np.stack([c.real for c in coords], axis=1)
    inequalities = entry.inequalities or catalogue()["quadric"].inequalities
    ineq_map = PolyMap(entry.ambient, list(inequalities))
    ineq_vals = NumericMap(ineq_map).eval_arrays([points[:, i].astype(complex) for i in range(points.shape[1])])
    residuals = np.stack([v.real for v in ineq_vals], axis=1)
    return {
        "entry": entry_name,
        "points": points,
        "inequality_residuals": residuals,
        "max_imag": max_imag,
    }


def survival_fraction(
    entry_name: str,
    points: np.ndarray,
    d: int = 2,
    max_iter: int = DEFAULT_MAX_ITER,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
) -> float:
    """Fraction of sampled points whose binary64 orbit stays within the radius.

    Bounded-orbit sets of these maps are repelling invariant sets (the
    space ones have measure zero in the real slice), so plain double
    precision sheds points: roundoff transverse to the set grows by a
    factor ~10..50 per step.  Use shadow_survival for the faithful
    bounded-orbit verification; this fast path exists for exploratory
    plots and escape statistics.
    """
    entry = catalogue()[entry_name]
    numeric = NumericMap(induced_morphism(entry.n, d).map)
    cols = [points[:, i].astype(complex) for i in range(points.shape[1])]
    alive = np.ones(points.shape[0], dtype=bool)
    for _ in range(max_iter):
        nxt = numeric.eval_arrays([np.where(alive, c, 0) for c in cols])
        with np.errstate(over="ignore", invalid="ignore"):
            norm = np.max(np.abs(np.stack(nxt, axis=0)), axis=0)
        escaped = ~np.isfinite(norm) | (norm > escape_radius)
        alive &= ~escaped
        cols = [np.where(alive, c, 0) for c in nxt]
    return float(np.count_nonzero(alive)) / points.shape[0]


class _MpfrMap:
    """Polynomial map compiled to integer term lists for mpfr evaluation."""

    def __init__(self, pmap: PolyMap):
        self.nvars = len(pmap.source_vars)
        self.compiled = []
        self.max_exp = [0] * self.nvars
        for comp in pmap.components:
            terms = []
            for exps, c in comp.terms.items():
                frac = c.to_fraction()
                terms.append((frac.numerator, frac.denominator, exps))
                for i, e in enumerate(exps):
                    self.max_exp[i] = max(self.max_exp[i], e)
            self.compiled.append(terms)

    def eval_point(self, point):
        powers = []
        for i, x in enumerate(point):
            tab = [1, x]
            for _ in range(self.max_exp[i] - 1):
                tab.append(tab[-1] * x)
            powers.append(tab)
        out = []
        for terms in self.compiled:
            acc = 0
            for num, den, exps in terms:
                val = num
                for i, e in enumerate(exps):
                    if e:
                        val = val * powers[i][e]
                acc += val / den if den != 1 else val
            out.append(acc)
        return tuple(out)


def shadow_survival(
    entry_name: str,
    resolution: int,
    d: int = 2,
    max_iter: int = DEFAULT_MAX_ITER,
    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
    precision_bits: int = 1536,
) -> dict:
    """Bounded-orbit verification by shadowing the true orbits.

    Starting points are rebuilt from their angle parameters directly in
    precision_bits-bit arithmetic, so they sit on the bounded-orbit set
    up to ~2^-precision_bits.  Transverse error grows per step by at most
    the Jacobian norm on the bounded region (~4e3 for the space maps), so
    the default budget of ~10^7 per step over 64 steps keeps the computed
    orbit glued to the true one; every true orbit stays within the escape
    radius and the check certifies exactly that.  1024 bits is the
    empirical threshold for the space surfaces; the default keeps a wide
    margin.
    """
    import gmpy2

    entry = catalogue()[entry_name]
    with gmpy2.context(precision=precision_bits):
        two_pi = 2 * gmpy2.const_pi()
        cols = _mpfr_param_columns(entry_name, resolution, two_pi)
        param_map = _MpfrMap(entry.param)
        gmap = _MpfrMap(induced_morphism(entry.n, d).map)
        escaped = 0
        max_norm = gmpy2.mpfr(0)
        total = len(cols[0])
        for idx in range(total):
            point = param_map.eval_point(tuple(col[idx] for col in cols))
            alive = True
            for _ in range(max_iter):
                point = gmap.eval_point(point)
                norm = max(abs(x) for x in point)
                if norm > escape_radius:
                    alive = False
                    break
                if norm > max_norm:
                    max_norm = norm
            if not alive:
                escaped += 1
        return {
            "entry": entry_name,
            "points": total,
            "escaped": escaped,
            "fraction": (total - escaped) / total,
            "max_norm": float(max_norm),
            "precision_bits": precision_bits,
        }


def _mpfr_param_columns(entry_name: str, resolution: int, two_pi):
    """Parameter columns as exact-precision cosines, mirroring _angle_grids."""
    import gmpy2

    def cosgrid(indices_and_scale):
        return [2 * gmpy2.cos(two_pi * k / resolution * s) for k, s in indices_and_scale]

    idx = range(resolution)
    if entry_name == "plane":
        pairs = [(i, j) for i in idx for j in idx]
        return [
            cosgrid([(i, 3) for i, _ in pairs]),
            cosgrid([(j, 1) for _, j in pairs]),
        ]
    if entry_name == "axis_surface":
        pairs = [(i, j) for i in idx for j in idx]
        return [
            cosgrid([(j, 1) for _, j in pairs]),
            cosgrid([(i, 1) for i, _ in pairs]),
        ]
    if entry_name == "astroid_surface":
        pairs = [(i, j) for i in idx for j in idx]
        u = cosgrid([(i, 2) for i, _ in pairs])
        v = [2 * gmpy2.cos(two_pi * (i + j) / resolution) for i, j in pairs]
        return [u, v]
    if entry_name == "quadric":
        triples = [(i, j, k) for i in idx for j in idx for k in idx]
        u = cosgrid([(i, 2) for i, _, _ in triples])
        v = [2 * gmpy2.cos(two_pi * (i + j) / resolution) for i, j, _ in triples]
        w = cosgrid([(k, 1) for _, _, k in triples])
        return [u, v, w]
    raise ValueError(f"no angle rule for entry {entry_name!r}")


# -- figure data -----------------------------------------------------------------

def jordan_curve_data(samples_per_arc: int = 256) -> list[tuple]:
    """Ordered closed polyline through the two bounded branch arcs.

    Arc 1 runs the cuspidal cubic from (9, 27) to (1, -1); arc 2 returns
    along the parabola.  Rows are (arc_id, angle, p, q).
    """
    if samples_per_arc < 2:
        raise ValueError("need at least two samples per arc")
    rows = []
    for i in range(samples_per_arc + 1):
        theta = math.pi * i / samples_per_arc
        base = 1 + 2 * math.cos(theta)
        rows.append((1, theta, base**2, base**3))
    for i in range(samples_per_arc + 1):
        alpha = math.pi * (1 - i / samples_per_arc)
        c = math.cos(alpha)
        rows.append((2, alpha, 5 + 4 * c, 11 + 14 * c + 2 * c * c))
    return rows


def jacobian_partition_data(grid: int = 101) -> dict:
    """Sign field of the parametrization Jacobian on the [-2, 2] square.

    Verifies symbolically that det d(p,q)/d(u,v) = -(u - v)(u + 3v - v^3)
    before emitting the grid labels and the two zero curves.
    """
    plane = catalogue()["plane"].param
    jac = [
        [comp.derivative(v) for v in ("u", "v")]
        for comp in plane.components
    ]
    det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]
    u, v = MultiPoly.variable("u"), MultiPoly.variable("v")
    expected = -(u - v) * (u + 3 * v - v**3)
    symbolic_ok = det == expected
    axis = np.linspace(-2.0, 2.0, grid)
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    values = -(uu - vv) * (uu + 3 * vv - vv**3)
    curve_v = np.linspace(-2.0, 2.0, grid)
    # the same partition in angle coordinates (a', b) with u = 2cos a',
    # v = 2cos b: u = v becomes a' = +-b, u = v^3 - 3v becomes a' = +-3b
    angle = np.linspace(-np.pi, 0.0, grid)
    angle_curves = {}
    for label, slope in (("diagonal", 1.0), ("anti_diagonal", -1.0)):
        angle_curves[label] = np.stack([slope * angle, angle], axis=1)
    for label, slope in (("triple", 3.0), ("anti_triple", -3.0)):
        a_vals = np.mod(slope * angle + np.pi, 2 * np.pi) - np.pi
        angle_curves[label] = np.stack([np.where(a_vals > 0, a_vals - 2 * np.pi, a_vals)
                                        if False else a_vals, angle], axis=1)
    return {
        "symbolic_ok": symbolic_ok,
        "axis": axis,
        "det": values,
        "signs": np.sign(values).astype(int),
        "zero_curves": {
            "diagonal": np.stack([curve_v, curve_v], axis=1),
            "cubic": np.stack([curve_v**3 - 3 * curve_v, curve_v], axis=1),
        },
        "angle_zero_curves": angle_curves,
    }


# -- preimage counting -----------------------------------------------------------

def _poly_to_coeff_list(p: MultiPoly, var: str, env: dict[str, complex]) -> list[complex]:
    """Numeric univariate coefficients, highest degree first."""
    coeffs = []
    for c in p.coefficients_in(var):
        coeffs.append(c.evaluate(env))
    return list(reversed(coeffs))


def _plane_preimages(d: int, target: tuple[complex, complex], rel_tol: float = 1e-6):
    """All distinct solutions of g_d(p, q) = target via the p-eliminant."""
    a0, b0 = target
    P, Q = induced_morphism(2, d).map.components
    elim = plane_eliminant(d, "q")
    coeffs = _poly_to_coeff_list(elim, "p", {"a": a0, "b": b0})
    p_roots = aberth_roots(coeffs)
    # P is linear in q for both degrees; fall back to the second equation
    # when the linear coefficient degenerates.
    p_coeffs_q = P.coefficients_in("q")
    q_coeffs_q = Q.coefficients_in("q")
    sols = []
    for p0 in p_roots:
        candidates = []
        lin = p_coeffs_q[1].evaluate({"p": p0}) if len(p_coeffs_q) > 1 else 0
        if abs(lin) > 1e-8:
            candidates.append((a0 - p_coeffs_q[0].evaluate({"p": p0})) / lin)
        tail = [c.evaluate({"p": p0}) for c in q_coeffs_q]
        tail[0] -= b0
        if any(abs(c) > 1e-12 for c in tail[1:]):
            candidates.extend(aberth_roots(list(reversed(tail))))
        for q0 in candidates:
            scale = max(1.0, abs(a0), abs(b0), abs(p0) ** d, abs(q0))
            ra = abs(P.evaluate({"p": p0, "q": q0}) - a0)
            rb = abs(Q.evaluate({"p": p0, "q": q0}) - b0)
            if max(ra, rb) < 1e-5 * scale**2:
                sols.append((p0, q0))
    return cluster_points(sols, rel_tol)


def _space_preimages(target: tuple[complex, ...], rel_tol: float = 1e-6):
    """Distinct g_2-preimages of a point on the space quadric.

    Resolves the square-root branches of the target's (b, d) slots and
    reads p off the half-branch quartic for each sign, completing q, r, s
    by the triangular relations.
    """
    a0, b0, c0, d0 = target
    u0 = np.sqrt(complex(b0))
    v0 = c0 / u0 if abs(u0) > 1e-12 else np.sqrt(complex(d0))
    h_plus, _ = half_branch_polys()
    gmap = space_degree2_composition_form()
    numeric_g = NumericMap(gmap)
    sols = []
    for sign in (1, -1):
        su, sv = sign * u0, sign * v0
        coeffs = _poly_to_coeff_list(h_plus, "p", {"a": a0, "u": su, "v": sv})
        for p0 in aberth_roots(coeffs):
            q0, r0, s0 = branch_triangular_solution(a0, su, sv, p0)
            image = numeric_g.eval_point((p0, q0, r0, s0))
            scale = max(1.0, max(abs(x) for x in target), max(abs(x) for x in image))
            err = max(abs(x - y) for x, y in zip(image, target))
            if err < 1e-5 * scale:
                sols.append((p0, q0, r0, s0))
    return cluster_points(sols, rel_tol)


def count_generic_preimages(n: int, d: int, trials: int = 20, seed: int = 0) -> dict:
    """Modal number of distinct preimages of random generic targets.

    Trials whose eliminant roots cluster closer than 1e-4 are discarded
    as ill-conditioned rather than miscounted.
    """
    if (n, d) not in ((2, 2), (2, 3), (3, 2)):
        raise ValueError("degree counting is wired for (2,2), (2,3), (3,2)")
    rng = random.Random(seed)
    counts: list[int] = []
    attempts = 0
    while len(counts) < trials and attempts < trials * 20:
        attempts += 1
        if n == 2:
            target = (
                complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
            )
            try:
                sols = _plane_preimages(d, target)
            except Exception:
                continue
        else:
            params = [complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)) for _ in range(3)]
            target = catalogue()["quadric"].param.evaluate(params)
            try:
                sols = _space_preimages(target)
            except Exception:
                continue
        flat = [x for sol in sols for x in sol]
        gap = min(
            (
                max(abs(p - q) for p, q in zip(s1, s2))
                for i, s1 in enumerate(sols)
                for s2 in sols[i + 1:]
            ),
            default=1.0,
        )
        if gap < 1e-4:
            continue  # ill-conditioned trial
        counts.append(len(sols))
    if not counts:
        raise IllConditioned("no well-conditioned trials")
    modal = max(set(counts), key=counts.count)
    return {
        "n": n,
        "d": d,
        "counts": counts,
        "modal": modal,
        "agreement": counts.count(modal) / len(counts),
    }


_SPECIAL_POINTS = ((Fraction(0), Fraction(0)), (Fraction(9), Fraction(27)), (Fraction(1), Fraction(-1)))
_EXPECTED_SPECIAL = {2: (2, 2, 2), 3: (3, 3, 4)}


def classify_special_points(d: int) -> dict:
    """Distinct preimage counts at the three distinguished plane points.

    The eliminant is specialized exactly, stripped to its squarefree part
    (the special points are precisely where roots collide), and only then
    solved numerically.
    """
    if d not in (2, 3):
        raise ValueError("special-point classification is for degrees 2 and 3")
    P, Q = induced_morphism(2, d).map.components
    elim = plane_eliminant(d, "q")
    results = []
    for a0, b0 in _SPECIAL_POINTS:
        special = elim.substitute({"a": a0, "b": b0})
        reduced = squarefree_part(special, "p")
        coeffs = [
            c.constant_value().to_complex() for c in reversed(reduced.coefficients_in("p"))
        ]
        p_roots = aberth_roots(coeffs)
        target = (complex(a0), complex(b0))
        sols = []
        p_coeffs_q = P.coefficients_in("q")
        q_coeffs_q = Q.coefficients_in("q")
        for p0 in p_roots:
            candidates = []
            lin = p_coeffs_q[1].evaluate({"p": p0}) if len(p_coeffs_q) > 1 else 0
            if abs(lin) > 1e-8:
                candidates.append((target[0] - p_coeffs_q[0].evaluate({"p": p0})) / lin)
            tail = [c.evaluate({"p": p0}) for c in q_coeffs_q]
            tail[0] -= target[1]
            if any(abs(c) > 1e-12 for c in tail[1:]):
                candidates.extend(aberth_roots(list(reversed(tail))))
            for q0 in candidates:
                ra = abs(P.evaluate({"p": p0, "q": q0}) - target[0])
                rb = abs(Q.evaluate({"p": p0, "q": q0}) - target[1])
                if max(ra, rb) < 1e-6 * max(1.0, abs(p0), abs(q0)) ** 2:
                    sols.append((p0, q0))
        results.append(len(cluster_points(sols, 1e-6)))
    return {
        "d": d,
        "counts": tuple(results),
        "expected": _EXPECTED_SPECIAL[d],
        "points": tuple((float(a), float(b)) for a, b in _SPECIAL_POINTS),
    }
