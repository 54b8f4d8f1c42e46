"""Deterministic growth of the Sierpinski network N(t).

N(0) is a triangle on the major nodes A, B, C. Each step inserts an
inverted triangle into every eligible face; a new node is joined to the two
corners it is not opposite, never to the opposite corner.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import StepMismatch, TooLarge, TooSmall
from .graph_core import A, B, C, Face, GsnGraph

MAX_T = 9


@dataclass
class Subdivision:
    """One fractal-operation: ``new[i]`` is the node opposite ``corners[i]``."""

    step: int
    corners: tuple[int, int, int]
    new: tuple[int, int, int]

    def opposite(self, corner: int) -> int:
        return self.new[self.corners.index(corner)]


@dataclass
class GrowthHistory:
    """Node-id boundaries and subdivided faces of every step.

    ``boundaries[s]`` is n_v(s): nodes with birth <= s are exactly the ids
    below it. ``eligible_faces[s]`` lists the faces of N(s) that were
    subdivided to produce N(s + 1).
    """

    boundaries: list[int] = field(default_factory=list)
    eligible_faces: list[list[Face]] = field(default_factory=list)
    subdivisions: dict[frozenset, Subdivision] = field(default_factory=dict)

    @property
    def t(self) -> int:
        return len(self.boundaries) - 1

    def nodes_up_to(self, s: int) -> range:
        return range(self.boundaries[s])


def new_initial() -> GsnGraph:
    g = GsnGraph()
    for _ in range(3):
        g.add_node(0)
    g.add_edge(A, B)
    g.add_edge(B, C)
    g.add_edge(A, C)
    g.add_face(A, B, C)
    g.outer = (A, B, C)
    return g


def eligible_faces(g: GsnGraph, step: int) -> list[Face]:
    """Faces of N(step - 1) that the fractal-operation at ``step`` subdivides."""
    if step == 1:
        return sorted(g.faces)
    birth = g.birth
    out = [f for f in g.faces
           if not (birth[f[0]] == birth[f[1]] == birth[f[2]])]
    out.sort()
    return out


def fractal_step(g: GsnGraph, step: int, history: GrowthHistory | None = None) -> list[Face]:
    """Apply one growth step in place and return the faces that were subdivided."""
    if step < 1 or max(g.birth) != step - 1:
        raise StepMismatch(f"graph is not N({step - 1})")
    if history is not None and history.t != step - 1:
        raise StepMismatch(f"history ends at step {history.t}, expected {step - 1}")
    targets = eligible_faces(g, step)
    for face in targets:
        corners = tuple(sorted(face))
        new = tuple(g.add_node(step) for _ in corners)
        u, v, w = corners
        nu, nv, nw = new
        g.add_edge(nu, nv)
        g.add_edge(nv, nw)
        g.add_edge(nw, nu)
        for x, opp in zip(corners, new):
            for y in corners:
                if y != x:
                    g.add_edge(opp, y)
        g.remove_face(face)
        g.add_face(nu, nv, nw)
        g.add_face(u, nv, nw)
        g.add_face(v, nu, nw)
        g.add_face(w, nu, nv)
        g.add_face(u, v, nw)
        g.add_face(v, w, nu)
        g.add_face(w, u, nv)
        if history is not None:
            history.subdivisions[frozenset(corners)] = Subdivision(step, corners, new)
    if step == 1:
        g.submajors = (3, 4, 5)
    if history is not None:
        history.eligible_faces.append(targets)
        history.boundaries.append(g.n_nodes)
    return targets


def grow(t: int, max_t: int = MAX_T) -> tuple[GsnGraph, GrowthHistory]:
    """Build N(t) together with its growth history."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t > max_t:
        raise TooLarge(f"t={t} exceeds the configured bound {max_t}")
    g = new_initial()
    history = GrowthHistory(boundaries=[g.n_nodes])
    for step in range(1, t + 1):
        fractal_step(g, step, history)
    return g, history


def node_count_formula(t: int) -> int:
    return (3 * 6**t + 12) // 5


def edge_count_formula(t: int) -> int:
    return (9 * 6**t + 6) // 5


def inner_triangle_count_formula(t: int) -> int:
    return edge_count_formula(t) - node_count_formula(t) + 1


def degree_spectrum_formula(t: int) -> dict[int, int]:
    """Degree -> node count for t >= 2."""
    if t < 2:
        raise TooSmall("closed-form degree spectrum needs t >= 2")
    spectrum = {1 + 3**k: 3 * 6 ** (t - k) for k in range(1, t)}
    spectrum[1 + 3**t] = 6
    return spectrum
