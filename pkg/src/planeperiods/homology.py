"""First homology of the covering surface and a canonical symplectic basis.

raw_cycles builds the fundamental cycles of the lifted loop graph (one
per non-tree edge); intersection_pairing computes their intersection
matrix through the one-vertex chord model; symplectic_reduce brings
that matrix to the standard form J + 0 by a unimodular congruence and
reads off the alpha/beta cycles.

Internal cross-checks at every stage: the ribbon Euler characteristic
must equal 2 - 2g for the genus inferred from branching data, every
face boundary must pair to zero with everything, and the reduced form
is verified exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .monodromy import MonodromyRep, perm_cycles
from .ribbon import RibbonGraph, chord_pairing


class HomologyError(RuntimeError):
    pass


@dataclass(frozen=True)
class CycleWord:
    """Closed path over the loop system.

    Each step (branch_index, sheet, sign) traverses the lift of loop
    branch_index starting on the given sheet, forwards (+1, ending on
    sigma_k(sheet)) or backwards (-1, from sigma_k(sheet) down to
    sheet).  The chain field is the underlying integer combination of
    lifted loops, which is what integration consumes."""

    steps: tuple[tuple[int, int, int], ...]
    chain: tuple[tuple[tuple[int, int], int], ...] = ()

    def chain_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.chain)

    def __len__(self) -> int:
        return len(self.steps)


class RawCycleSystem(list):
    """List of fundamental CycleWords plus the surface context."""

    def __init__(self, items, context):
        super().__init__(items)
        self.context = context


@dataclass
class SurfaceContext:
    mono: MonodromyRep
    graph: RibbonGraph  # contracted, one vertex
    edge_ids: dict[tuple[int, int], int]  # (branch k, sheet i) -> edge id
    tree_edges: list[int]
    nontree: list[tuple[int, int]]  # (k, i) per fundamental cycle, in order
    tree_parent: dict[int, tuple[int, tuple[int, int], int] | None]
    n_faces: int
    genus: int


@dataclass
class CanonicalHomology:
    alpha: list[CycleWord]
    beta: list[CycleWord]
    change_of_basis: np.ndarray  # unimodular transform rows: alphas, betas, radical
    pairing: np.ndarray  # pairing of the canonical basis (2g x 2g)
    genus: int
    context: SurfaceContext = field(repr=False, default=None)

    def cycle_chains(self) -> list[dict[tuple[int, int], int]]:
        return [c.chain_dict() for c in self.alpha + self.beta]


def validate_word(word: CycleWord, mono: MonodromyRep) -> None:
    if not word.steps:
        raise HomologyError("cycle word is empty")
    first = None
    cur = None
    for (k, i, sgn) in word.steps:
        start = i if sgn == 1 else int(mono.perms[k][i])
        end = int(mono.perms[k][i]) if sgn == 1 else i
        if first is None:
            first = start
            cur = start
        if cur != start:
            raise HomologyError(f"cycle word breaks at step ({k},{i},{sgn})")
        cur = end
    if cur != first:
        raise HomologyError("cycle word does not close")


def _build_graph(mono: MonodromyRep) -> tuple[RibbonGraph, dict]:
    m = mono.n_sheets
    edges = []
    ids = {}
    for k in range(len(mono.perms)):
        for i in range(m):
            ids[(k, i)] = len(edges)
            edges.append((i, int(mono.perms[k][i])))
    rot = {}
    for v in range(m):
        slots = []
        for k in mono.rotation_order:
            inv = int(np.argwhere(mono.perms[k] == v)[0][0])
            slots.append((ids[(k, inv)], 1))  # arriving strand
            slots.append((ids[(k, v)], 0))  # departing strand
        rot[v] = slots
    g = RibbonGraph(m, edges, rot)
    g.check()
    return g, ids


def _spanning_tree(mono: MonodromyRep, ids: dict):
    """BFS tree over sheets; parent[v] = (parent vertex, (k,i), dir).

    dir +1 means the tree edge (k, i) was crossed forwards (parent is
    the tail i), -1 backwards (parent is the head sigma_k(i))."""
    m = mono.n_sheets
    parent: dict[int, tuple[int, tuple[int, int], int] | None] = {0: None}
    frontier = [0]
    while frontier:
        v = frontier.pop(0)
        for k in range(len(mono.perms)):
            fwd = int(mono.perms[k][v])
            if fwd not in parent:
                parent[fwd] = (v, (k, v), 1)
                frontier.append(fwd)
            back = int(np.argwhere(mono.perms[k] == v)[0][0])
            if back not in parent:
                parent[back] = (v, (k, back), -1)
                frontier.append(back)
    if len(parent) != m:
        raise HomologyError("sheet graph is not connected")
    tree_keys = {parent[v][1] for v in parent if parent[v] is not None}
    tree_edges = [ids[key] for key in tree_keys]
    return parent, tree_keys, tree_edges


def _path_to_root(v: int, parent) -> list[tuple[int, int, int]]:
    """Steps walking from v up to the root along the tree."""
    steps = []
    while parent[v] is not None:
        pv, (k, i), direction = parent[v]
        # tree edge goes i -> sigma_k(i); we walk from v toward pv
        if direction == 1:
            # edge was discovered tail pv=i, head v
            steps.append((k, i, -1))
        else:
            steps.append((k, i, 1))
        v = pv
    return steps


def _reverse_steps(steps):
    return [(k, i, -s) for (k, i, s) in reversed(steps)]


def raw_cycles(mono: MonodromyRep) -> RawCycleSystem:
    """Fundamental cycles of the lifted loop graph, rank 2g in homology."""
    m = mono.n_sheets
    if m == 1:
        return RawCycleSystem([], None)
    graph, ids = _build_graph(mono)

    chi = graph.euler_characteristic()
    expected_chi = 2 - 2 * mono.rh_genus
    if chi != expected_chi:
        raise HomologyError(
            f"surface Euler characteristic {chi} != {expected_chi}; "
            "the rotation system contradicts the branching data"
        )
    n_faces = len(graph.faces())

    parent, tree_keys, tree_edges = _spanning_tree(mono, ids)
    nontree = sorted(k_i for k_i in ids if k_i not in tree_keys)

    words = []
    for (k, i) in nontree:
        up = _reverse_steps(_path_to_root(i, parent))  # root -> i
        down = _path_to_root(int(mono.perms[k][i]), parent)  # sigma(i) -> root
        steps = tuple(up + [(k, i, 1)] + down)
        chain: dict[tuple[int, int], int] = {}
        for (bk, bi, s) in steps:
            chain[(bk, bi)] = chain.get((bk, bi), 0) + s
        word = CycleWord(
            steps=steps,
            chain=tuple(sorted((key, c) for key, c in chain.items() if c)),
        )
        validate_word(word, mono)
        words.append(word)

    contracted = graph.copy()
    contracted.contract_tree(tree_edges)
    if len(contracted.rot) != 1:
        raise HomologyError("tree contraction did not reach a single vertex")
    if len(contracted.faces()) != n_faces:
        raise HomologyError("contraction changed the face count")

    ctx = SurfaceContext(
        mono=mono,
        graph=contracted,
        edge_ids=ids,
        tree_edges=tree_edges,
        nontree=nontree,
        tree_parent=parent,
        n_faces=n_faces,
        genus=mono.rh_genus,
    )
    return RawCycleSystem(words, ctx)


def intersection_pairing(cycles: RawCycleSystem) -> np.ndarray:
    """Intersection matrix of the fundamental cycles (skew, rank 2g)."""
    ctx = getattr(cycles, "context", None)
    if ctx is None:
        if len(cycles) == 0:
            return np.zeros((0, 0), dtype=int)
        raise HomologyError("cycles lost their surface context")
    rotation = ctx.graph.rot[next(iter(ctx.graph.rot))]
    pair = chord_pairing(rotation)
    ids = ctx.edge_ids
    n = len(ctx.nontree)
    K = np.zeros((n, n), dtype=int)
    for a in range(n):
        ea = ids[ctx.nontree[a]]
        for b in range(n):
            eb = ids[ctx.nontree[b]]
            K[a, b] = pair.get((ea, eb), 0)
    if np.any(K + K.T != 0):
        raise HomologyError("intersection matrix is not skew-symmetric")
    # every face boundary must pair trivially with everything
    col_of_edge = {ids[key]: idx for idx, key in enumerate(ctx.nontree)}
    for face in ctx.graph.faces():
        bound = np.zeros(n, dtype=int)
        for (e, direction) in face:
            bound[col_of_edge[e]] += direction
        if np.any(K @ bound != 0):
            raise HomologyError(
                "face boundary has nonzero pairing; orientation bug"
            )
    rank = np.linalg.matrix_rank(K.astype(float))
    if rank != 2 * ctx.genus:
        raise HomologyError(
            f"pairing rank {rank} != 2g = {2 * ctx.genus}"
        )
    return K


def symplectic_transform(K: np.ndarray):
    """Unimodular S with S K S^T = J + 0, J the standard block
    [[0, I], [-I, 0]].  Raises on non-unit symplectic divisors."""
    K = np.array(K, dtype=object)
    n = K.shape[0]
    if K.shape != (n, n) or np.any(K + K.T != 0):
        raise ValueError("need a skew-symmetric integer matrix")
    S = np.eye(n, dtype=object)
    active = list(range(n))
    pairs: list[tuple[int, int]] = []

    def add_multiple(dst: int, src: int, q: int):
        if q == 0:
            return
        K[dst, :] += q * K[src, :]
        K[:, dst] += q * K[:, src]
        S[dst, :] += q * S[src, :]

    while True:
        best = None
        for r in active:
            for c in active:
                v = K[r, c]
                if v > 0 and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            break
        m, r, c = best
        if m > 1:
            reduced = False
            for t in active:
                if t in (r, c):
                    continue
                if K[r, t] % m != 0:
                    add_multiple(t, c, -(K[r, t] // m))
                    reduced = True
                    break
                if K[t, c] % m != 0:
                    add_multiple(t, r, -(K[t, c] // m))
                    reduced = True
                    break
            if reduced:
                continue
            raise HomologyError(
                f"symplectic reduction hit a non-unit divisor {m}; "
                "the pairing is not unimodular on its rank"
            )
        for t in list(active):
            if t in (r, c):
                continue
            b = K[t, c]
            a = K[t, r]
            add_multiple(t, r, -b)  # clears K[t, c] since K[r, c] = 1
            add_multiple(t, c, a)  # clears K[t, r] since K[c, r] = -1
        pairs.append((r, c))
        active.remove(r)
        active.remove(c)
    g = len(pairs)
    order = [r for r, _ in pairs] + [c for _, c in pairs] + active
    P = np.zeros((n, n), dtype=object)
    for row, src in enumerate(order):
        P[row, src] = 1
    S = P @ S
    K2 = P @ K @ P.T
    J = np.zeros((n, n), dtype=object)
    for i in range(g):
        J[i, g + i] = 1
        J[g + i, i] = -1
    if np.any(K2 != J):
        raise HomologyError("reduction did not reach the standard form")
    return S, g


def _steps_for_chain(chain: dict, mono: MonodromyRep, parent) -> tuple:
    """One closed word representing an integer chain of lifted loops.

    The chain decomposes into closed circuits; circuits based at
    different sheets are joined with tree detours that cancel in
    homology, so the word is a genuine closed path with the same class.
    """
    darts: dict[int, list] = {}
    for (k, i), c in sorted(chain.items()):
        for _ in range(abs(c)):
            sgn = 1 if c > 0 else -1
            start = i if sgn == 1 else int(mono.perms[k][i])
            darts.setdefault(start, []).append((k, i, sgn))
    for lst in darts.values():
        lst.sort()

    def step_end(step):
        k, i, sgn = step
        return int(mono.perms[k][i]) if sgn == 1 else i

    circuits = []
    while any(darts.values()):
        base = min(v for v, lst in darts.items() if lst)
        stack = [base]
        edge_stack: list = []
        circuit: list = []
        while stack:
            v = stack[-1]
            if darts.get(v):
                step = darts[v].pop(0)
                edge_stack.append(step)
                stack.append(step_end(step))
            else:
                stack.pop()
                if edge_stack and stack:
                    circuit.append(edge_stack.pop())
        if edge_stack:
            raise HomologyError("chain is not balanced; cannot close a word")
        circuit.reverse()
        if circuit:
            circuits.append((base, circuit))

    if not circuits:
        raise HomologyError("empty chain cannot be represented as a word")
    base0, word = circuits[0]
    for base, circ in circuits[1:]:
        # connector: base0 -> root -> base, then back
        to_root = _path_to_root(base0, parent)
        from_root = _reverse_steps(_path_to_root(base, parent))
        connector = to_root + from_root
        word = word + connector + circ + _reverse_steps(connector)
    return tuple(word)


def symplectic_reduce(K: np.ndarray, cycles: RawCycleSystem) -> CanonicalHomology:
    """Canonical symplectic basis from the raw cycles and their pairing."""
    ctx = getattr(cycles, "context", None)
    S, g = symplectic_transform(K)
    if ctx is not None and g != ctx.genus:
        raise HomologyError(f"reduced rank {2 * g} != 2g = {2 * ctx.genus}")
    mono = ctx.mono if ctx is not None else None
    alphas: list[CycleWord] = []
    betas: list[CycleWord] = []
    if mono is not None:
        chains = [c.chain_dict() for c in cycles]
        for row in range(2 * g):
            combo: dict = {}
            for j, coeff in enumerate(S[row, :]):
                if coeff == 0:
                    continue
                for key, val in chains[j].items():
                    combo[key] = combo.get(key, 0) + int(coeff) * val
            combo = {k: v for k, v in combo.items() if v}
            steps = _steps_for_chain(combo, mono, ctx.tree_parent)
            word = CycleWord(
                steps=steps, chain=tuple(sorted(combo.items()))
            )
            validate_word(word, mono)
            (alphas if row < g else betas).append(word)
    J = np.zeros((2 * g, 2 * g), dtype=int)
    for i in range(g):
        J[i, g + i] = 1
        J[g + i, i] = -1
    return CanonicalHomology(
        alpha=alphas,
        beta=betas,
        change_of_basis=np.array(S, dtype=object),
        pairing=J,
        genus=g,
        context=ctx,
    )


def canonical_homology(mono: MonodromyRep) -> CanonicalHomology:
    cycles = raw_cycles(mono)
    K = intersection_pairing(cycles)
    return symplectic_reduce(K, cycles)
