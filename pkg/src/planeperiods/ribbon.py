"""Ribbon (fat) graphs: faces, contraction, and chord intersection.

The covering surface deformation-retracts onto the lifted loop system:
one vertex per sheet over the basepoint and one edge per (branch
point, sheet) lift.  Equipping each vertex with the counterclockwise
order of edge ends seen in the plane makes this a ribbon graph whose
face-traced closed surface is the curve itself, so Euler counts,
boundaries and intersection numbers can all be read off
combinatorially.

Contracting a spanning tree leaves a one-vertex ribbon graph where
every 1-cycle is a chord through the vertex disk; two classes cross
exactly when their chords interleave, with the sign given by the
orientation of the chord directions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field


# a slot is (edge_id, end) with end 0 = tail attachment, 1 = head
# a dart is (edge_id, dir) with dir +1 = tail->head, -1 = head->tail


@dataclass
class RibbonGraph:
    n_vertices: int
    edges: list[tuple[int, int]]  # edge_id -> (tail, head)
    rot: dict[int, list[tuple[int, int]]]  # vertex -> CCW slot list

    def copy(self) -> "RibbonGraph":
        return RibbonGraph(
            self.n_vertices,
            list(self.edges),
            {v: list(slots) for v, slots in self.rot.items()},
        )

    def check(self) -> None:
        seen = set()
        for v, slots in self.rot.items():
            for s in slots:
                assert s not in seen, f"slot {s} attached twice"
                seen.add(s)
                e, end = s
                assert self.edges[e][end] == v, f"slot {s} at wrong vertex {v}"
        for e, (t, h) in enumerate(self.edges):
            if t is None:
                continue
            assert (e, 0) in seen and (e, 1) in seen, f"edge {e} missing a slot"

    def live_edges(self) -> list[int]:
        return [e for e, (t, _) in enumerate(self.edges) if t is not None]

    def faces(self) -> list[list[tuple[int, int]]]:
        """Orbits of the face map; each face is a dart list."""
        slot_pos: dict[tuple[int, int], tuple[int, int]] = {}
        for v, slots in self.rot.items():
            for i, s in enumerate(slots):
                slot_pos[s] = (v, i)
        out = []
        visited: set[tuple[int, int]] = set()
        for e in self.live_edges():
            for direction in (1, -1):
                start = (e, direction)
                if start in visited:
                    continue
                face = []
                dart = start
                while True:
                    face.append(dart)
                    visited.add(dart)
                    de, dd = dart
                    arrive = (de, 1 if dd == 1 else 0)
                    v, i = slot_pos[arrive]
                    slots = self.rot[v]
                    ne, nend = slots[(i + 1) % len(slots)]
                    dart = (ne, 1 if nend == 0 else -1)
                    if dart == start:
                        break
                out.append(face)
        return out

    def euler_characteristic(self) -> int:
        V = len(self.rot)
        E = len(self.live_edges())
        F = len(self.faces()) if E else 1
        return V - E + F

    def contract_edge(self, e: int) -> None:
        """Contract a non-loop edge, splicing the two rotations."""
        t, h = self.edges[e]
        assert t is not None and t != h, "can only contract a non-loop edge"
        rt = self.rot[t]
        rh = self.rot[h]
        it = rt.index((e, 0))
        ih = rh.index((e, 1))
        merged = rt[it + 1 :] + rt[:it] + rh[ih + 1 :] + rh[:ih]
        self.rot[t] = merged
        del self.rot[h]
        # re-home every edge endpoint that lived at h
        for k, (tail, head) in enumerate(self.edges):
            if tail is None:
                continue
            new_tail = t if tail == h else tail
            new_head = t if head == h else head
            self.edges[k] = (new_tail, new_head)
        self.edges[e] = (None, None)

    def contract_tree(self, tree_edges: list[int]) -> None:
        remaining = list(tree_edges)
        guard = 0
        while remaining:
            guard += 1
            assert guard < 10 * (len(tree_edges) + 1), "contraction stalled"
            e = next(
                (x for x in remaining if self.edges[x][0] != self.edges[x][1]),
                None,
            )
            assert e is not None, "tree edge became a loop; not a tree"
            self.contract_edge(e)
            remaining.remove(e)


def chord_pairing(rotation: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Intersection numbers of the loop edges of a one-vertex ribbon
    graph.  rotation is the CCW slot list at the single vertex; the
    chord of edge e runs from its head slot (arrival) to its tail slot
    (departure).  Crossing sign is the orientation of the two chord
    directions, matching the CCW rotation order."""
    N = len(rotation)
    pos: dict[tuple[int, int], int] = {s: i for i, s in enumerate(rotation)}
    edges = sorted({e for e, _ in rotation})
    out: dict[tuple[int, int], int] = {}

    def point(i: int) -> complex:
        return cmath.exp(2j * math.pi * i / N)

    for a in edges:
        a_in, a_out = pos[(a, 1)], pos[(a, 0)]
        for b in edges:
            if b <= a:
                continue
            b_in, b_out = pos[(b, 1)], pos[(b, 0)]
            x = (a_out - a_in) % N
            p = (b_in - a_in) % N
            q = (b_out - a_in) % N
            inter = (p < x) != (q < x)
            if not inter:
                continue
            da = point(a_out) - point(a_in)
            db = point(b_out) - point(b_in)
            cross = (da.conjugate() * db).imag
            s = 1 if cross > 0 else -1
            out[(a, b)] = s
            out[(b, a)] = -s
    return out
