"""Two-dimensional layout: minimize the similarity-weighted sum of squared
distances subject to a unit mean pairwise distance.

The constrained problem is solved through the scale-invariant ratio

    R(x) = V(x) / D(x)^2,
    V(x) = sum_{i<j} s_ij ||x_i - x_j||^2,
    D(x) = mean_{i<j} ||x_i - x_j||,

which has the same minimizers (V is degree-2 and D degree-1 homogeneous), so
a single closed-form rescale at the end satisfies the constraint exactly.

Descent step.  At a normalized iterate (D = 1) consider the surrogate

    S(x) = V(x) - 2 R(x0) (D(x0) + grad D(x0) . (x - x0)).

D is convex, so S overestimates V - 2 R(x0) D everywhere and touches it at
x0; a short calculation shows that *any* decrease of S strictly decreases R
(the key inequality is 2D - 1 <= D^2).  Because V is an exact quadratic
along any direction, the line minimum of S along the steepest direction has
the closed form alpha = ||g||^2 / (2 V(g)) with g = grad S(x0) = grad R(x0).
The iteration is therefore monotone by construction and entirely branch
free, which buys two guarantees a backtracking search cannot give: the
descent assertion can never fire, and a global rescaling of the
similarities cancels out of the step exactly (alpha scales as 1/lambda,
g as lambda), so the trajectory is invariant to it.

Determinism: initial coordinates are drawn per term from a splitmix64
stream seeded by hash64(term) XOR seed XOR restart index, and all internal
computation happens in a canonical alphabetical term order, so relabeling
the input rows permutes the output rows bit-exactly.

Restarts are independent and embarrassingly parallel in principle; this
implementation runs them sequentially because determinism of the reduction
order dominates any speedup.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .cooccur import SimilarityMatrix
from .rng import SplitMix64, fnv1a64

#: Gap between bounding boxes of disconnected components, in pre-rescale units.
COMPONENT_GAP = 0.5

#: Ring radius for isolated terms, relative to the connected cloud radius.
ISOLATED_RING_FACTOR = 1.2


@dataclass
class LayoutParams:
    seed: int = 42
    restarts: int = 10
    max_iters: int = 1000
    tol: float = 1e-7
    step_policy: str = "exact-surrogate"

    def validate(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")


@dataclass
class Positions:
    coords: np.ndarray  # (n, 2) float64
    objective: float
    constraint_residual: float
    iterations_used: int
    converged: bool
    isolated: np.ndarray  # (n,) bool


def vos_objective(coords: np.ndarray, sim: SimilarityMatrix) -> float:
    """V = sum over pairs of s_ij * squared distance."""
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape != (sim.n, 2):
        raise ValueError(f"coords must have shape ({sim.n}, 2), got {coords.shape}")
    diff = coords[sim.i_idx] - coords[sim.j_idx]
    return float(np.sum(sim.values * np.einsum("ij,ij->i", diff, diff)))


def mean_pairwise_distance(coords: np.ndarray) -> float:
    coords = np.asarray(coords, dtype=np.float64)
    if len(coords) < 2:
        raise ValueError("need at least two points")
    return float(np.mean(pdist(coords)))


def _quadform(coords: np.ndarray, ii: np.ndarray, jj: np.ndarray, ss: np.ndarray) -> float:
    diff = coords[ii] - coords[jj]
    return float(np.sum(ss * np.einsum("ij,ij->i", diff, diff)))


def _laplacian_apply(
    coords: np.ndarray, ii: np.ndarray, jj: np.ndarray, ss: np.ndarray, rowsum: np.ndarray
) -> np.ndarray:
    """(L x)_i = rowsum_i x_i - sum_j s_ij x_j, via deterministic bincounts."""
    n = len(coords)
    sx = np.empty_like(coords)
    for c in range(2):
        sx[:, c] = np.bincount(ii, weights=ss * coords[jj, c], minlength=n) + np.bincount(
            jj, weights=ss * coords[ii, c], minlength=n
        )
    return rowsum[:, None] * coords - sx


def _initial_coords(terms: tuple[str, ...], seed: int, restart: int) -> np.ndarray:
    coords = np.empty((len(terms), 2), dtype=np.float64)
    for row, term in enumerate(terms):
        rng = SplitMix64(fnv1a64(term) ^ (seed & (2**64 - 1)) ^ restart)
        coords[row, 0] = rng.next_float() - 0.5
        coords[row, 1] = rng.next_float() - 0.5
    return coords


def _descend(
    terms: tuple[str, ...],
    ii: np.ndarray,
    jj: np.ndarray,
    ss: np.ndarray,
    seed: int,
    restart: int,
    max_iters: int,
    tol: float,
) -> tuple[np.ndarray, float, int, bool]:
    """One restart; returns (coords with D=1, final ratio, iterations, converged)."""
    n = len(terms)
    m = n * (n - 1) // 2
    rowsum = np.bincount(ii, weights=ss, minlength=n) + np.bincount(jj, weights=ss, minlength=n)

    offset = 0
    while True:
        coords = _initial_coords(terms, seed, restart + offset)
        dists = pdist(coords)
        d_mean = float(np.sum(dists)) / m
        if d_mean > 0:
            break
        offset += 1000  # all points coincident: redraw (probability ~0, but defined)
        if offset > 10_000:
            raise RuntimeError("could not draw non-coincident initial positions")
    coords /= d_mean
    dists = dists / d_mean

    ratio = _quadform(coords, ii, jj, ss)  # D = 1, so R = V
    converged = False
    iters = 0
    for iters in range(1, max_iters + 1):
        # gradient of R at the normalized iterate: 2 L x - 2 R grad D
        lx = _laplacian_apply(coords, ii, jj, ss, rowsum)
        wmat = squareform(dists)
        with np.errstate(divide="ignore"):
            winv = np.where(wmat > 0.0, 1.0 / wmat, 0.0)
        np.fill_diagonal(winv, 0.0)
        grad_d = (coords * winv.sum(axis=1)[:, None] - winv @ coords) / m
        grad = 2.0 * lx - 2.0 * ratio * grad_d

        grad_sq = float(np.sum(grad * grad))
        v_grad = _quadform(grad, ii, jj, ss)
        if grad_sq == 0.0 or v_grad <= 0.0:
            converged = True
            break
        alpha = grad_sq / (2.0 * v_grad)
        new_coords = coords - alpha * grad
        new_dists = pdist(new_coords)
        new_mean = float(np.sum(new_dists)) / m
        if new_mean == 0.0:
            converged = True
            break
        new_coords /= new_mean
        new_dists = new_dists / new_mean
        new_ratio = _quadform(new_coords, ii, jj, ss)

        if new_ratio > ratio * (1.0 + 1e-9):
            raise RuntimeError(
                f"descent step increased the objective ({ratio} -> {new_ratio}); "
                "step policy bug"
            )
        if new_ratio >= ratio:
            converged = True  # floating-point floor: no representable decrease left
            break
        decrease = (ratio - new_ratio) / ratio
        coords, dists, ratio = new_coords, new_dists, new_ratio
        if decrease < tol:
            converged = True
            break
    return coords, ratio, iters, converged


def _components(n: int, ii: np.ndarray, jj: np.ndarray) -> list[list[int]]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in zip(ii.tolist(), jj.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for node in range(n):
        groups.setdefault(find(node), []).append(node)
    return [sorted(members) for _, members in sorted(groups.items())]


def optimize_layout(sim: SimilarityMatrix, params: LayoutParams) -> Positions:
    """Best-of-``restarts`` layout; the winner is rescaled to mean distance 1.

    Connected components of at least two terms are laid out independently and
    arranged left to right by descending size; zero-degree terms are flagged
    as isolated and left at the origin for ``place_isolated`` to position.
    The constraint residual and the convergence flag refer to the connected
    terms.
    """
    params.validate()
    n = sim.n
    if n < 2:
        raise ValueError(f"layout needs at least 2 terms, got {n}")
    positive = sim.values > 0.0
    if not bool(np.any(positive)):
        raise ValueError("all similarities are zero; nothing to lay out")

    # Canonical internal order (alphabetical) makes every reduction order a
    # pure function of the term set, not of the caller's row order.
    order = sorted(range(n), key=lambda r: sim.terms[r])
    rank = np.empty(n, dtype=np.int64)
    rank[np.array(order, dtype=np.int64)] = np.arange(n, dtype=np.int64)
    canon_terms = tuple(sim.terms[r] for r in order)
    ci = rank[sim.i_idx[positive]]
    cj = rank[sim.j_idx[positive]]
    cs = sim.values[positive]
    swap = ci > cj
    ci2 = np.where(swap, cj, ci)
    cj2 = np.where(swap, ci, cj)
    tri_order = np.lexsort((cj2, ci2))
    ci, cj, cs = ci2[tri_order], cj2[tri_order], cs[tri_order]

    comps = _components(n, ci, cj)
    multi = sorted((c for c in comps if len(c) >= 2), key=lambda c: (-len(c), c[0]))
    isolated_canon = sorted(idx for c in comps if len(c) == 1 for idx in c)

    canon_coords = np.zeros((n, 2), dtype=np.float64)
    total_iters = 0
    all_converged = True
    placed: list[tuple[list[int], np.ndarray]] = []
    for comp in multi:
        comp_arr = np.array(comp, dtype=np.int64)
        local = np.full(n, -1, dtype=np.int64)
        local[comp_arr] = np.arange(len(comp), dtype=np.int64)
        mask = local[ci] >= 0
        lii = local[ci[mask]]
        ljj = local[cj[mask]]
        lss = cs[mask]
        lterms = tuple(canon_terms[node] for node in comp)
        best: tuple[float, np.ndarray, bool] | None = None
        for restart in range(params.restarts):
            coords, ratio, iters, converged = _descend(
                lterms, lii, ljj, lss, params.seed, restart, params.max_iters, params.tol
            )
            total_iters += iters
            if best is None or ratio < best[0]:
                best = (ratio, coords, converged)
        assert best is not None
        all_converged = all_converged and best[2]
        placed.append((comp, best[1]))

    # Arrange components left to right (descending size) with fixed gaps.
    x_cursor = 0.0
    for k, (comp, coords) in enumerate(placed):
        coords = coords - coords.mean(axis=0)
        if k > 0:
            x_cursor += COMPONENT_GAP - coords[:, 0].min()
        coords[:, 0] += x_cursor
        x_cursor = coords[:, 0].max()
        canon_coords[comp] = coords

    connected = np.array(
        sorted(idx for comp, _ in placed for idx in comp), dtype=np.int64
    )
    center = canon_coords[connected].mean(axis=0)
    canon_coords[connected] -= center
    d_all = mean_pairwise_distance(canon_coords[connected])
    canon_coords[connected] /= d_all

    coords_out = canon_coords[rank]
    isolated_flags = np.zeros(n, dtype=bool)
    for canon_idx in isolated_canon:
        isolated_flags[order[canon_idx]] = True

    residual = abs(mean_pairwise_distance(coords_out[~isolated_flags]) - 1.0)
    return Positions(
        coords=coords_out,
        objective=vos_objective(coords_out, sim),
        constraint_residual=residual,
        iterations_used=total_iters,
        converged=all_converged,
        isolated=isolated_flags,
    )


def layout_to_artifact(
    positions: Positions, terms: tuple[str, ...], params: LayoutParams
) -> dict:
    """Layout dump payload; rows follow ``terms`` (alphabetical in the
    standard pipeline).  Coordinates survive the 17-digit JSON round trip
    exactly."""
    return {
        "terms": [
            {
                "term": term,
                "x": float(positions.coords[row, 0]),
                "y": float(positions.coords[row, 1]),
                "isolated": bool(positions.isolated[row]),
            }
            for row, term in enumerate(terms)
        ],
        "objective": positions.objective,
        "constraint_residual": positions.constraint_residual,
        "seed": params.seed,
        "restarts": params.restarts,
        "iterations_used": positions.iterations_used,
        "converged": positions.converged,
    }


def layout_from_artifact(payload: dict) -> tuple[Positions, tuple[str, ...]]:
    rows = payload["terms"]
    coords = np.array([[r["x"], r["y"]] for r in rows], dtype=np.float64)
    isolated = np.array([r["isolated"] for r in rows], dtype=bool)
    positions = Positions(
        coords=coords,
        objective=payload["objective"],
        constraint_residual=payload["constraint_residual"],
        iterations_used=payload.get("iterations_used", 0),
        converged=payload.get("converged", True),
        isolated=isolated,
    )
    return positions, tuple(r["term"] for r in rows)


def place_isolated(positions: Positions, isolated: set[int]) -> Positions:
    """Put isolated terms on a ring around the connected cloud.

    Ring radius is 1.2x the connected cloud's maximum centroid distance;
    terms are placed in ascending index order (alphabetical for canonical
    pipelines), equally spaced starting at angle zero.
    """
    if not isolated:
        return positions
    coords = positions.coords.copy()
    mask = np.ones(len(coords), dtype=bool)
    idxs = sorted(isolated)
    mask[idxs] = False
    connected = coords[mask]
    if len(connected) == 0:
        raise ValueError("cannot place isolated terms: no connected terms remain")
    center = connected.mean(axis=0)
    radius = ISOLATED_RING_FACTOR * float(
        np.max(np.linalg.norm(connected - center, axis=1))
    )
    for k, idx in enumerate(idxs):
        angle = 2.0 * np.pi * k / len(idxs)
        coords[idx] = center + radius * np.array([np.cos(angle), np.sin(angle)])
    flags = positions.isolated.copy()
    flags[idxs] = True
    return replace(positions, coords=coords, isolated=flags)


def canonicalize(positions: Positions, occ: np.ndarray) -> Positions:
    """Deterministic orientation; all inter-point distances are preserved.

    Centroid to origin, first principal axis horizontal, then reflections:
    the highest-occurrence term gets x >= 0 and the first lower-ranked term
    that is neither on the x-axis nor collinear through the origin with the
    top term gets y >= 0.  Exact-zero coordinates stay in the positive
    half-plane (no flip).  An isotropic cloud (no principal axis) falls back
    to rotating the top term onto the positive x-axis.
    """
    coords = np.asarray(positions.coords, dtype=np.float64)
    n = len(coords)
    if n < 2:
        raise ValueError("canonicalize needs at least 2 points")
    occ = np.asarray(occ, dtype=np.int64)
    if occ.shape != (n,):
        raise ValueError(f"occ must have shape ({n},), got {occ.shape}")

    centered = coords - coords.mean(axis=0)
    scale = float(np.sqrt(np.mean(np.sum(centered**2, axis=1))))
    if scale == 0.0:
        raise ValueError("degenerate cloud: all points coincident")
    tol = 1e-12 * scale

    rank = sorted(range(n), key=lambda i: (-int(occ[i]), i))
    cov = (centered.T @ centered) / n
    aniso_a = 2.0 * cov[0, 1]
    aniso_b = cov[0, 0] - cov[1, 1]
    if max(abs(aniso_a), abs(aniso_b)) > 1e-12 * scale * scale:
        theta = 0.5 * np.arctan2(aniso_a, aniso_b)
    else:
        # isotropic cloud: pin the rotation with the top term's direction
        theta = 0.0
        for idx in rank:
            if float(np.linalg.norm(centered[idx])) > tol:
                theta = float(np.arctan2(centered[idx, 1], centered[idx, 0]))
                break
    c, s = np.cos(theta), np.sin(theta)
    rotated = centered @ np.array([[c, -s], [s, c]])

    top = rank[0]
    if rotated[top, 0] < -tol:
        rotated[:, 0] = -rotated[:, 0]
    top_vec = rotated[top]
    for idx in rank[1:]:
        if abs(rotated[idx, 1]) <= tol:
            continue  # on the x-axis: cannot pin the reflection
        cross = top_vec[0] * rotated[idx, 1] - top_vec[1] * rotated[idx, 0]
        if float(np.linalg.norm(top_vec)) > tol and abs(cross) <= tol * scale:
            continue  # collinear through the origin with the top term
        if rotated[idx, 1] < 0:
            rotated[:, 1] = -rotated[:, 1]
        break
    return replace(positions, coords=rotated)
