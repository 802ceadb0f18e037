"""Constructions that break retrieval properties with arbitrarily small energy.

Two explicit perturbations and one empirical sweep:

* ``break_phase_retrieval`` keeps a deficient head block fixed and projects
  the tail away from one head direction, producing a frame at arbitrarily
  small L2(mu) distance that admits an equal-magnitude witness pair.
* ``break_norm_retrieval`` tilts the rows of one subset toward the
  complement's null direction, making two complementary null spaces
  non-orthogonal while moving the frame by at most ``epsilon``.
* ``stability_sweep`` probes the positive side: below a sup-norm radius,
  random perturbations of a phase retrieval frame stay phase retrieval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._linalg import (
    DEFAULT_ENUM_CAP,
    DEFAULT_MATCH_TOL,
    DEFAULT_ORTHO_TOL,
    DEFAULT_RANK_TOL,
    annihilator,
    inner,
    numerical_rank,
)
from .errors import FramelabError
from .frames import Frame, FrameBounds, frame_bounds, magnitudes
from .retrieval import (
    FAILS,
    HOLDS,
    norm_retrieval_certify,
    phase_retrieval_certify,
)

__all__ = [
    "PerturbationResult",
    "SweepPoint",
    "break_phase_retrieval",
    "break_norm_retrieval",
    "stability_sweep",
]


@dataclass(frozen=True, eq=False)
class PerturbationResult:
    """A perturbed frame plus the witness vectors and bookkeeping that certify it."""

    perturbed: Frame
    witness_f: np.ndarray
    witness_g: np.ndarray
    l2_distance: float
    new_bounds: FrameBounds


@dataclass(frozen=True)
class SweepPoint:
    lam: float
    all_preserved: bool
    failures: int


def _validate_subset(ids: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    subset = tuple(sorted(set(int(i) for i in ids)))
    if not subset:
        raise ValueError(f"{name} must contain at least one atom id")
    if subset[0] < 0 or subset[-1] >= n:
        raise ValueError(f"{name} contains atom ids outside 0..{n - 1}")
    return subset


def break_phase_retrieval(
    frame: Frame,
    head: Sequence[int],
    epsilon: float,
    rank_tol: float = DEFAULT_RANK_TOL,
    match_tol: float = DEFAULT_MATCH_TOL,
) -> PerturbationResult:
    """Destroy phase retrieval while moving the frame by less than ``epsilon``.

    The head atoms are left untouched; every tail vector loses its component
    along ``e1``, the normalized first nonzero head vector.  Because the head
    does not span the space there is a unit ``e2`` orthogonal to it, and the
    pair ``e1 +- 2 e2`` has equal coefficient magnitudes on the perturbed
    frame without being collinear.  The squared L2(mu) distance equals the
    tail energy ``sum_tail w_i |<e1, F(x_i)>|^2``, which must be below
    ``epsilon`` for the construction to apply.
    """
    n, d = frame.n_atoms, frame.dim
    head_ids = _validate_subset(head, n, "head")
    tail_ids = [i for i in range(n) if i not in set(head_ids)]
    v = frame.vectors

    anchor = next((i for i in head_ids if np.linalg.norm(v[i]) > 0.0), None)
    if anchor is None:
        raise ValueError("every head vector is zero; no direction to anchor the construction")
    e1 = v[anchor] / np.linalg.norm(v[anchor])

    head_null = annihilator(v[list(head_ids)], d, rank_tol)
    if head_null.shape[1] == 0:
        raise ValueError("head vectors span the whole space; no orthogonal direction exists")
    e2 = head_null[:, 0]

    tail_coeff = np.conj(v[tail_ids]) @ e1  # <e1, F(x_i)> for tail atoms
    tail_energy = float(np.sum(frame.weights[tail_ids] * np.abs(tail_coeff) ** 2))
    if not tail_energy < epsilon:
        raise ValueError(
            f"tail energy {tail_energy} is not below epsilon {epsilon}; "
            "enlarge epsilon or choose a head whose direction carries less tail mass"
        )

    new_rows = np.array(v)
    new_rows[tail_ids] = v[tail_ids] - np.outer(np.conj(tail_coeff), e1)
    perturbed = frame.with_vectors(new_rows)

    wf = e1 + 2.0 * e2
    wg = e1 - 2.0 * e2
    mf = magnitudes(perturbed, wf).values
    mg = magnitudes(perturbed, wg).values
    scale = 1.0 + float(max(mf.max(), mg.max()))
    if np.max(np.abs(mf - mg)) > match_tol * scale:
        raise FramelabError("construction error: witness magnitudes differ beyond tolerance")
    if abs(inner(wf, wg)) >= np.linalg.norm(wf) * np.linalg.norm(wg) - 1e-9:
        raise FramelabError("construction error: witness vectors are collinear")

    new_bounds = frame_bounds(perturbed)
    if epsilon < frame_bounds(frame).lower and not new_bounds.is_frame:
        raise FramelabError("construction error: perturbed family lost the frame property")

    return PerturbationResult(
        perturbed=perturbed,
        witness_f=wf,
        witness_g=wg,
        l2_distance=tail_energy,
        new_bounds=new_bounds,
    )


def break_norm_retrieval(
    frame: Frame,
    subset: Sequence[int],
    epsilon: float,
    ortho_tol: float = DEFAULT_ORTHO_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
    cap: int = DEFAULT_ENUM_CAP,
) -> PerturbationResult:
    """Destroy norm retrieval by an epsilon-perturbation supported on ``subset``.

    Requires a real frame that does norm retrieval but not phase retrieval:
    the subset and its complement must both have nontrivial null spaces,
    with unit null directions ``f`` and ``g`` that are orthogonal.  Each row
    in the subset is shifted by ``epsilon * <F(x), g> f / (2 sqrt(B))``.
    Afterwards ``w1 = 2 sqrt(B) f + epsilon g`` annihilates the perturbed
    subset rows, ``w2 = g`` annihilates the untouched complement rows, and
    ``<w1, w2> = epsilon > 0`` breaks the null-space orthogonality that norm
    retrieval demands.  Requires ``0 <= epsilon < 2 sqrt(A)`` so the result
    is still a frame.
    """
    if frame.field != "real":
        raise ValueError("the norm retrieval perturbation is only defined over the real field")
    n, d = frame.n_atoms, frame.dim
    subset_ids = _validate_subset(subset, n, "subset")
    comp_ids = [i for i in range(n) if i not in set(subset_ids)]
    if not comp_ids:
        raise ValueError("subset must leave at least one atom in the complement")

    bounds = frame_bounds(frame)
    if not bounds.is_frame:
        raise ValueError("input family is not a frame")
    root_b = float(np.sqrt(bounds.upper))
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    if not epsilon < 2.0 * np.sqrt(bounds.lower):
        raise ValueError(
            f"epsilon must stay below 2*sqrt(lower bound) = {2.0 * np.sqrt(bounds.lower)}"
        )

    v = frame.vectors
    f_dirs = annihilator(v[list(subset_ids)], d, rank_tol)
    g_dirs = annihilator(v[comp_ids], d, rank_tol)
    if f_dirs.shape[1] == 0 or g_dirs.shape[1] == 0:
        raise ValueError(
            "no qualifying subset: both the subset and its complement must have "
            "rank-deficient rows (a phase retrieval frame admits none)"
        )
    if norm_retrieval_certify(frame, ortho_tol, rank_tol, cap).verdict != HOLDS:
        raise ValueError("input frame must do norm retrieval before breaking it")
    f = f_dirs[:, 0]
    g = g_dirs[:, 0]
    # Norm retrieval of the input forces these null directions to be orthogonal.
    if abs(inner(f, g)) > ortho_tol:
        raise FramelabError("construction error: null directions are not orthogonal")

    delta = np.zeros_like(v)
    sub = list(subset_ids)
    coeff = v[sub] @ g  # <F(x), g> on the subset, real field
    delta[sub] = np.outer(coeff, f) / (2.0 * root_b)
    norms = np.linalg.norm(delta[sub], axis=1)
    if not np.all(norms < 1.0):
        raise FramelabError("construction error: a perturbation direction reached unit norm")

    # The perturbation acts on measurements as an operator of norm at most
    # epsilon/2: its weighted energy on any h is bounded by (epsilon^2/4)||h||^2.
    probe_rng = np.random.default_rng(0)
    for _ in range(8):
        h = probe_rng.standard_normal(d)
        probe = epsilon * (delta[sub] @ h)
        energy = float(np.sum(frame.weights[sub] * probe**2))
        ceiling = (epsilon**2 / 4.0) * float(h @ h)
        if energy > ceiling + 1e-9 * (1.0 + ceiling):
            raise FramelabError("construction error: perturbation energy exceeds its operator bound")

    perturbed = frame.with_vectors(v - epsilon * delta)
    w1 = 2.0 * root_b * f + epsilon * g
    w2 = g

    if np.max(np.abs(np.conj(perturbed.vectors[sub]) @ w1)) > 1e-8 * (1.0 + np.abs(w1).max()):
        raise FramelabError("construction error: w1 fails to annihilate the perturbed subset rows")
    if np.max(np.abs(np.conj(perturbed.vectors[comp_ids]) @ w2)) > 1e-8:
        raise FramelabError("construction error: w2 fails to annihilate the complement rows")
    if abs(float(inner(w1, w2)) - epsilon) > 1e-9 * (1.0 + epsilon):
        raise FramelabError("construction error: <w1, w2> != epsilon")

    new_bounds = frame_bounds(perturbed)
    if not new_bounds.is_frame:
        raise FramelabError("construction error: perturbed family lost the frame property")
    if epsilon > 0.0 and norm_retrieval_certify(perturbed, ortho_tol, rank_tol, cap).verdict != FAILS:
        raise FramelabError("construction error: perturbed frame still does norm retrieval")

    l2_distance = float(epsilon**2 * np.sum(frame.weights[sub] * norms**2))
    return PerturbationResult(
        perturbed=perturbed,
        witness_f=w1,
        witness_g=w2,
        l2_distance=l2_distance,
        new_bounds=new_bounds,
    )


def stability_sweep(
    frame: Frame,
    lambdas: Sequence[float],
    trials: int,
    seed: int = 0,
    tol: float = DEFAULT_RANK_TOL,
    cap: int = DEFAULT_ENUM_CAP,
) -> list[SweepPoint]:
    """Re-certify phase retrieval under random perturbations of growing radius.

    For each radius ``lam``, draws ``trials`` perturbations uniform on the
    per-atom Euclidean ball of radius ``lam`` (so the sup over atoms of the
    perturbation norm stays below ``lam``) and counts how many perturbed
    frames lose phase retrieval.  Trial ``t`` reuses the seed pair
    ``(seed, t)`` across radii, so the sweep scales one fixed direction
    field per trial.
    """
    _requires = phase_retrieval_certify(frame, tol, cap)
    if _requires.verdict != HOLDS:
        raise ValueError("stability sweep needs a phase retrieval frame to start from")
    lams = [float(l) for l in lambdas]
    if any(l < 0 for l in lams) or any(b < a for a, b in zip(lams, lams[1:])):
        raise ValueError("lambdas must be nonnegative and ascending")
    if trials < 0:
        raise ValueError("trials must be nonnegative")

    n, d = frame.n_atoms, frame.dim
    points: list[SweepPoint] = []
    for lam in lams:
        failures = 0
        for t in range(trials):
            rng = np.random.default_rng((seed, t))
            directions = rng.standard_normal((n, d))
            directions /= np.linalg.norm(directions, axis=1, keepdims=True)
            radii = rng.uniform(0.0, 1.0, size=n) ** (1.0 / d)
            bump = lam * directions * radii[:, None]
            cert = phase_retrieval_certify(frame.with_vectors(frame.vectors + bump), tol, cap)
            if cert.verdict != HOLDS:
                failures += 1
        points.append(SweepPoint(lam=lam, all_preserved=failures == 0, failures=failures))
    return points
