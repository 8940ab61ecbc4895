"""Checkerboard colorings, orientations, natural orientations of
odd-multiplicity diagrams, and the Type A test for triple crossings.

An orientation stores, for every edge, which of its two darts is the
head (the arrival end).  Strand consistency means each passage of each
crossing has exactly one inbound and one outbound dart.

A natural orientation directs every edge so that its black face lies on
the left; one black/white choice bit per connected piece gives the 2^j
piecewise natural orientations.  The handedness convention (black on
the left rather than the right) is fixed project-wide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Dart, Diagram, loop_face_ids


@dataclass(frozen=True)
class Orientation:
    heads: dict[str, Dart]          # edge id -> arrival dart
    loop_dirs: dict[str, bool] = field(default_factory=dict)

    def is_inbound(self, d: Diagram, dart: Dart) -> bool:
        eid, _other = d.dart_edge()[dart]
        return self.heads[eid] == dart

    def head(self, eid: str) -> Dart:
        return self.heads[eid]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Orientation)
                and self.heads == other.heads
                and self.loop_dirs == other.loop_dirs)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.heads.items())),
                     tuple(sorted(self.loop_dirs.items()))))


def reverse_orientation(d: Diagram, o: Orientation) -> Orientation:
    heads = {}
    for eid, head in o.heads.items():
        a, b = d.edges[eid]
        heads[eid] = a if head == b else b
    return Orientation(heads, {lid: not v for lid, v in o.loop_dirs.items()})


def reverse_pieces(d: Diagram, o: Orientation, pieces: set[str]) -> Orientation:
    """Reverse the orientation on the subdiagrams and loops whose piece id
    (root crossing id or loop id) is listed."""
    roots = {}
    for sub in d.subdiagrams():
        for cid in sub:
            roots[cid] = min(sub)
    heads = {}
    for eid, head in o.heads.items():
        a, b = d.edges[eid]
        if roots[a.crossing] in pieces:
            heads[eid] = a if head == b else b
        else:
            heads[eid] = head
    dirs = {lid: (not v if lid in pieces else v)
            for lid, v in o.loop_dirs.items()}
    return Orientation(heads, dirs)


def validate_orientation(d: Diagram, o: Orientation) -> list[str]:
    out = []
    for eid in d.edges:
        if eid not in o.heads:
            out.append(f"edge {eid}: no direction")
        elif o.heads[eid] not in d.edges[eid]:
            out.append(f"edge {eid}: head {o.heads[eid]} not an endpoint")
    if out:
        return out
    for c in d.crossings.values():
        for j in range(c.multiplicity):
            d1, d2 = Dart(c.id, j), Dart(c.id, j + c.multiplicity)
            ins = int(o.is_inbound(d, d1)) + int(o.is_inbound(d, d2))
            if ins != 1:
                out.append(f"crossing {c.id} passage {j}: inconsistent flow")
    for lid in d.loops:
        if lid not in o.loop_dirs:
            out.append(f"loop {lid}: no direction")
    return out


def orientation_from_components(d: Diagram, signs: dict[int, int] | None = None,
                                loop_signs: dict[str, int] | None = None
                                ) -> Orientation:
    """Orient every link component along its canonical strand cycle;
    ``signs[i] = -1`` reverses component i (indexing per link_components)."""
    signs = signs or {}
    loop_signs = loop_signs or {}
    heads: dict[str, Dart] = {}
    for i, cyc in enumerate(d.link_components()):
        flip = signs.get(i, 1) < 0
        for dep in cyc:
            eid, far = d.dart_edge()[dep]
            heads[eid] = dep if flip else far
    dirs = {lid: loop_signs.get(lid, 1) < 0 for lid in d.loops}
    return Orientation(heads, dirs)


# -- checkerboard ---------------------------------------------------------


@dataclass(frozen=True)
class Checkerboard:
    """Proper 2-coloring of the faces of each connected piece; 0/1 are
    color classes, 'black' is decided per piece by a choice bit."""
    colors: dict[str, int]

    def color(self, face_id: str) -> int:
        return self.colors[face_id]


def checkerboard(d: Diagram) -> Checkerboard:
    """The canonical face 2-coloring: in each subdiagram the face with the
    smallest id gets color 0; loop insides get 0."""
    d.check()
    colors: dict[str, int] = {}
    adjacency: dict[str, set[str]] = {f.id: set() for f in d.faces()}
    for eid, (a, b) in d.edges.items():
        fa, fb = d.face_of_dart(a), d.face_of_dart(b)
        adjacency[fa].add(fb)
        adjacency[fb].add(fa)
    for sub in d.subdiagrams():
        sub_faces = sorted(f.id for f in d.faces()
                           if d.root_of(f.darts[0].crossing) == min(sub))
        start = sub_faces[0]
        colors[start] = 0
        queue = [start]
        while queue:
            f = queue.pop()
            for g in adjacency[f]:
                if g not in colors:
                    colors[g] = 1 - colors[f]
                    queue.append(g)
                elif colors[g] == colors[f]:
                    raise ValueError(f"faces {f},{g}: no proper 2-coloring")
    for lid in d.loops:
        inside, outside = loop_face_ids(lid)
        colors[inside] = 0
        colors[outside] = 1
    return Checkerboard(colors)


def natural_orientation(d: Diagram, choice: dict[str, int] | None = None
                        ) -> Orientation:
    """The (piecewise) natural orientation selected by ``choice``.

    ``choice`` maps piece ids (subdiagram root or loop id) to a bit;
    bit 1 swaps which color class of that piece counts as black.  Every
    edge is directed with its black face on the left.  Requires all
    crossing multiplicities odd.
    """
    for c in d.crossings.values():
        if c.multiplicity % 2 == 0:
            raise ValueError(f"crossing {c.id} has even multiplicity "
                             f"{c.multiplicity}; no natural orientation")
    choice = choice or {}
    board = checkerboard(d)
    roots = {}
    for sub in d.subdiagrams():
        for cid in sub:
            roots[cid] = min(sub)
    heads: dict[str, Dart] = {}
    for eid, (a, b) in d.edges.items():
        bit = choice.get(roots[a.crossing], 0)
        # head = b makes the face right of b's outward dart, i.e. the left
        # face of travel a->b, equal to orbit(b)
        black_b = board.color(d.face_of_dart(b)) ^ bit
        heads[eid] = b if black_b == 0 else a
    dirs = {}
    for lid in d.loops:
        bit = choice.get(lid, 0)
        dirs[lid] = bool(bit)
    o = Orientation(heads, dirs)
    problems = validate_orientation(d, o)
    if problems:
        raise AssertionError(f"natural orientation inconsistent: {problems}")
    return o


def natural_orientations(d: Diagram) -> list[Orientation]:
    """Both natural orientations of a connected diagram."""
    return [natural_orientation(d, {}),
            natural_orientation(d, {p: 1 for p in d.piece_ids()})]


def classify_crossing(d: Diagram, o: Orientation, crossing_id: str) -> str:
    """'TypeA' if the six strand ends alternate in/out around the triple
    crossing, else 'other'."""
    c = d.crossings[crossing_id]
    if c.multiplicity != 3:
        raise ValueError(f"{crossing_id}: Type A is defined for triple "
                         f"crossings, not multiplicity {c.multiplicity}")
    flags = [o.is_inbound(d, Dart(crossing_id, s)) for s in range(6)]
    alternating = all(flags[s] != flags[(s + 1) % 6] for s in range(6))
    return "TypeA" if alternating else "other"


def all_type_a(d: Diagram, o: Orientation) -> bool:
    return all(classify_crossing(d, o, cid) == "TypeA"
               for cid in d.crossings)
