"""State markers on classical projections and the even-state calculus.

A marker at a double point picks one pair of opposite corner regions:
diagonal "even" dots corners 0 and 2, diagonal "odd" dots corners 1 and
3.  A state marks every crossing; it is even when every face contains an
even number of dots.

The marker induced by an orientation dots the corner lying between the
two inbound strand ends (and its opposite, between the two outbound
ends); equivalently it selects the smoothing compatible with the
orientation.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from .coloring import Orientation, orientation_from_components, validate_orientation
from .diagram import Dart, Diagram, DiagramBuilder, Face, face_witnesses

EVEN, ODD = "even", "odd"

#: A state maps crossing id -> diagonal ("even" or "odd").
State = dict


def _require_classical(d: Diagram):
    if not d.is_classical():
        raise ValueError("states are defined on classical diagrams only")


def marker_dots(diagonal: str) -> tuple[int, int]:
    return (0, 2) if diagonal == EVEN else (1, 3)


def dot_count(d: Diagram, state: State, face: Face) -> int:
    """Number of dotted corners of the face under the given state."""
    _require_classical(d)
    count = 0
    for corner in face.corners:
        diag = state.get(corner.crossing)
        if diag is not None and corner.index % 2 == (0 if diag == EVEN else 1):
            count += 1
    return count


def is_even(d: Diagram, state: State) -> bool:
    _require_classical(d)
    return all(dot_count(d, state, f) % 2 == 0 for f in d.faces())


def smooth(d: Diagram, crossing_id: str, diagonal: str) -> Diagram:
    """Remove the crossing by the reconnection that merges the two dotted
    corner regions of the marker."""
    _require_classical(d)
    if crossing_id not in d.crossings:
        raise KeyError(crossing_id)
    b = DiagramBuilder(d)
    # merging corners {0,2} reconnects slots (1-2) and (3-0); merging
    # {1,3} reconnects (0-1) and (2-3)
    if diagonal == EVEN:
        pairs = [(1, 2), (3, 0)]
    elif diagonal == ODD:
        pairs = [(0, 1), (2, 3)]
    else:
        raise ValueError(f"bad diagonal {diagonal!r}")
    witness = face_witnesses(d, {crossing_id})
    for s1, s2 in pairs:
        b.splice(Dart(crossing_id, s1), Dart(crossing_id, s2))
    b.remove_crossing(crossing_id)
    out = b.finalize(witness)
    out.check()
    return out


def orientation_induced_marker(d: Diagram, o: Orientation, crossing_id: str
                               ) -> str:
    """The diagonal of the corner between the two inbound darts."""
    inbound = [s for s in range(4) if o.is_inbound(d, Dart(crossing_id, s))]
    if len(inbound) != 2:
        raise ValueError(f"orientation inconsistent at {crossing_id}")
    i, j = inbound
    if (i + 1) % 4 == j:
        corner = i
    elif (j + 1) % 4 == i:
        corner = j
    else:
        raise ValueError(f"orientation inconsistent at {crossing_id}")
    return EVEN if corner % 2 == 0 else ODD


def orientation_induced_state(d: Diagram, o: Orientation) -> State:
    _require_classical(d)
    problems = validate_orientation(d, o)
    if problems:
        raise ValueError("; ".join(problems))
    return {cid: orientation_induced_marker(d, o, cid) for cid in d.crossings}


def fission_marker(d: Diagram, crossing_id: str) -> Optional[str]:
    """At a self-crossing, the diagonal whose smoothing splits the
    component in two; None at a crossing between distinct components."""
    _require_classical(d)
    comp = d.component_of_edge()
    eid0 = d.dart_edge()[Dart(crossing_id, 0)][0]
    eid1 = d.dart_edge()[Dart(crossing_id, 1)][0]
    if comp[eid0] != comp[eid1]:
        return None
    before = d.component_count()
    for diag in (EVEN, ODD):
        if smooth(d, crossing_id, diag).component_count() == before + 1:
            return diag
    raise AssertionError("no fission smoothing found at a self-crossing")


def enumerate_even_states(d: Diagram) -> list[State]:
    """All even states of a connected classical diagram, via orientations."""
    _require_classical(d)
    if not d.is_connected():
        raise ValueError("even-state enumeration requires a connected diagram")
    comps = d.link_components()
    states: list[State] = []
    seen = set()
    for signs in product((1, -1), repeat=len(comps)):
        o = orientation_from_components(d, dict(enumerate(signs)))
        s = orientation_induced_state(d, o)
        key = tuple(sorted(s.items()))
        if key not in seen:
            seen.add(key)
            states.append(s)
    return states


def inducing_orientations(d: Diagram, state: State) -> list[Orientation]:
    """All orientations inducing the given even state (exactly two for a
    connected diagram, mutual reverses)."""
    _require_classical(d)
    if not d.is_connected():
        raise ValueError("requires a connected diagram")
    if not is_even(d, state):
        raise ValueError("state is not even; it is induced by no orientation")
    comps = d.link_components()
    out = []
    for signs in product((1, -1), repeat=len(comps)):
        o = orientation_from_components(d, dict(enumerate(signs)))
        if orientation_induced_state(d, o) == state:
            out.append(o)
    if not out:
        raise AssertionError("even state with no inducing orientation")
    return out
