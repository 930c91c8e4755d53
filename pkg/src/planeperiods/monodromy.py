"""Sheet permutations of the x-projection around each branch point.

Each loop of the comb is tracked with the fiber-continuation machinery
and matched back to the base fiber, giving one permutation per branch
point.  A big clockwise rectangle around everything is tracked as
well: composing the loop permutations in the rotation order of the
comb must reproduce it, which pins down both the permutations and the
ordering convention at run time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import PlaneCurve
from .paths import BranchPointSet, branch_points, loop_pieces, rectangle_pieces, sample_points
from .tracking import CurveNumeric, TrackingError, continue_fiber, match_to_fiber


class MonodromyError(RuntimeError):
    pass


@dataclass
class MonodromyRep:
    curve: PlaneCurve
    branch: BranchPointSet
    base_fiber: np.ndarray
    perms: list[np.ndarray]  # sigma_k as index maps, branch order = comb order
    sigma_box: np.ndarray  # clockwise rectangle around all branch points
    rotation_order: list[int]  # loop order matching the vertex rotations
    n_sheets: int
    total_branching: int
    rh_genus: int

    def cycles(self, k: int) -> list[tuple[int, ...]]:
        return perm_cycles(self.perms[k])


def perm_cycles(p: np.ndarray) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = int(p[i])
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = int(p[j])
        out.append(tuple(cyc))
    return out


def cycles_str(p: np.ndarray) -> str:
    parts = []
    for c in perm_cycles(p):
        if len(c) > 1:
            parts.append("(" + " ".join(str(i) for i in c) + ")")
    return "".join(parts) if parts else "()"


def compose(first: np.ndarray, then: np.ndarray) -> np.ndarray:
    """Permutation 'first followed by then' as index maps."""
    return then[first]


def _track_pieces(cn: CurveNumeric, pieces, fiber, tol):
    """Walk pieces with coarse sampling; continue_fiber bisects on its
    own wherever the sheets move too fast."""
    y = fiber
    for piece in pieces:
        step = piece.length() / 3 if piece.kind == "line" else 0.6 * piece.radius
        ts = sample_points(piece, step)
        prev = piece.at(ts[0])
        for t in ts[1:]:
            nxt = piece.at(t)
            y = continue_fiber(cn, prev, y, nxt, tol=tol)
            prev = nxt
    return y


def _loop_permutation(cn, bset, k, base_fiber, tol):
    out, circle, inbound = loop_pieces(bset, k)
    bottom = _track_pieces(cn, out, base_fiber, tol)
    after = _track_pieces(cn, [circle], bottom, tol)
    p = match_to_fiber(bottom, after)
    back = _track_pieces(cn, inbound, after, tol)
    q = match_to_fiber(base_fiber, back)
    if not np.array_equal(q, p):
        raise MonodromyError(
            f"loop {k}: permutation changed on the return leg ({p} vs {q})"
        )
    return p


def monodromy(curve: PlaneCurve, tracking_tol: float = 1e-12) -> MonodromyRep:
    bset = branch_points(curve)
    cn = CurveNumeric(curve)
    m = cn.n_sheets
    base_fiber = cn.fiber_at(bset.basepoint)
    perms = []
    for k in range(bset.n):
        try:
            perms.append(_loop_permutation(cn, bset, k, base_fiber, tracking_tol))
        except TrackingError as exc:
            raise MonodromyError(f"tracking failed on loop {k}: {exc}") from exc
    rect = rectangle_pieces(bset)
    around = _track_pieces(cn, rect, base_fiber, tracking_tol)
    sigma_box = match_to_fiber(base_fiber, around)

    # rotation order at the basepoint: branch points right to left
    rotation_order = list(range(bset.n - 1, -1, -1))
    acc = np.arange(m)
    for k in rotation_order:
        acc = compose(acc, perms[k])
    if not np.array_equal(acc, sigma_box):
        # diagnose: try the reversed order before giving up
        alt = np.arange(m)
        for k in reversed(rotation_order):
            alt = compose(alt, perms[k])
        raise MonodromyError(
            "composed loop permutations do not match the boundary rectangle: "
            f"rotation-order product {cycles_str(acc)}, reversed "
            f"{cycles_str(alt)}, rectangle {cycles_str(sigma_box)}"
        )

    # transitivity = irreducibility of the covering
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for p in perms:
            j = int(p[i])
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    if len(seen) != m:
        raise MonodromyError("monodromy group is not transitive on the sheets")

    branching = sum(m - len(perm_cycles(p)) for p in perms)
    branching += m - len(perm_cycles(sigma_box))
    if branching % 2:
        raise MonodromyError(f"odd total branching {branching}")
    rh_genus = (branching - 2 * m + 2) // 2
    return MonodromyRep(
        curve=curve,
        branch=bset,
        base_fiber=base_fiber,
        perms=perms,
        sigma_box=sigma_box,
        rotation_order=rotation_order,
        n_sheets=m,
        total_branching=branching,
        rh_genus=rh_genus,
    )
