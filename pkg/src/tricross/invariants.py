"""The verification oracle: Kauffman bracket state sum, component count,
and linking data on resolved classical diagrams.

Conventions, fixed project-wide: <unknot> = 1 and closed-loop factor
delta = -A^2 - A^(-2).  The bracket is computed by contracting crossings
one at a time against a frontier of open strand ends, so desk-scale
diagrams (default bound 20 crossings) evaluate quickly; the number of
partial states is governed by the frontier width, not 2^c.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .builders import resolve_oriented, resolve_to_classical
from .coloring import Orientation, orientation_from_components
from .diagram import Dart, Diagram
from .laurent import DELTA, Laurent, kink_normalized

DEFAULT_BRACKET_BOUND = 20


class BracketBoundExceeded(ValueError):
    pass


def _divexact(p: Laurent, q: Laurent) -> Laurent:
    out = Laurent.zero()
    qe = q.max_exponent()
    qc = q.coefficient(qe)
    floor = None if p.is_zero() else p.min_exponent() - qe
    while not p.is_zero():
        pe = p.max_exponent()
        pc = p.coefficient(pe)
        if pc % qc or pe - qe < floor:
            raise ArithmeticError("inexact division")
        term = Laurent.monomial(pe - qe, pc // qc)
        out = out + term
        p = p - term * q
    return out


def _contraction_order(d: Diagram) -> list[str]:
    """Greedy order keeping the open frontier small."""
    remaining = set(d.crossings)
    frontier: set[str] = set()  # edge ids with exactly one processed end
    order = []
    adj: dict[str, list[str]] = {cid: [] for cid in d.crossings}
    for eid, (a, b) in d.edges.items():
        adj[a.crossing].append(eid)
        adj[b.crossing].append(eid)
    while remaining:
        def gain(cid: str) -> tuple[int, str]:
            closes = sum(1 for e in adj[cid] if e in frontier)
            return (-closes, cid)
        best = min(remaining, key=gain)
        order.append(best)
        remaining.remove(best)
        for e in adj[best]:
            if e in frontier:
                frontier.remove(e)
            else:
                a, b = d.edges[e]
                if a.crossing in remaining or b.crossing in remaining:
                    frontier.add(e)
    return order


def kauffman_bracket(d: Diagram, bound: int = DEFAULT_BRACKET_BOUND) -> Laurent:
    """Bracket polynomial of a classical diagram.

    Raises BracketBoundExceeded past the configured crossing bound.  The
    empty diagram evaluates to 1 by convention.
    """
    if not d.is_classical():
        raise ValueError("bracket is computed on classical diagrams; "
                         "resolve multicrossings first")
    c = d.crossing_count()
    if c > bound:
        raise BracketBoundExceeded(f"{c} crossings > bound {bound}")
    loops = len(d.loops)
    if c == 0:
        return DELTA ** (loops - 1) if loops else Laurent.one()

    order = _contraction_order(d)
    processed: set[str] = set()
    # states: canonical pairing of open darts -> accumulated coefficient;
    # an open dart is an unprocessed-side dart whose edge's far end is
    # already swallowed.
    states: dict[tuple, Laurent] = {(): Laurent.one()}
    for cid in order:
        cx = d.crossings[cid]
        over = cx.heights.index(1)  # passage on top
        # A-smoothing merges the corners swept counterclockwise off the
        # over strand: arcs (j+1,j+2),(j+3,j) for over passage j
        j = over
        smoothings = (
            (Laurent.monomial(1), ((j + 1) % 4, (j + 2) % 4, (j + 3) % 4, j)),
            (Laurent.monomial(-1), (j, (j + 1) % 4, (j + 2) % 4, (j + 3) % 4)),
        )
        ports = [Dart(cid, s) for s in range(4)]
        new_states: dict[tuple, Laurent] = {}
        for pairing, coeff in states.items():
            conn = dict(pairing)
            conn.update({b: a for a, b in pairing})
            for factor, (p1, p2, p3, p4) in smoothings:
                arc = {ports[p1]: ports[p2], ports[p2]: ports[p1],
                       ports[p3]: ports[p4], ports[p4]: ports[p3]}
                # each port: one arc link plus one exit (edge or frontier)
                local = dict(conn)
                delta_count = 0
                chains: dict[Dart, Dart] = {}
                consumed: set[Dart] = set()

                def exit_of(y: Dart):
                    # leaving the tangle along y's edge
                    far = d.alpha(y)
                    if y in local:  # edge dives into the processed region
                        return local[y]
                    return far

                for u in ports:
                    if u in consumed:
                        continue
                    # u starts a walk only if nothing re-enters through it;
                    # walk from u's arc and see where both ends land
                    start = u
                    end1 = None
                    x = u
                    path = [u]
                    closed = False
                    while True:
                        y = arc[x]
                        path.append(y)
                        z = exit_of(y)
                        if z.crossing == cid:
                            if z == start:
                                closed = True
                                break
                            x = z
                            path.append(z)
                            continue
                        end1 = z
                        break
                    if closed:
                        for p in path:
                            consumed.add(p)
                        delta_count += 1
                        continue
                    # walk the other way from start
                    x = start
                    end2 = None
                    while True:
                        z = exit_of(x)
                        if z.crossing == cid:
                            y = arc[z]
                            path.append(z)
                            path.append(y)
                            x = y
                            continue
                        end2 = z
                        break
                    for p in path:
                        consumed.add(p)
                    if end1 == end2:
                        # chain closes through a single outside connection
                        raise AssertionError("degenerate chain")
                    chains[end1] = end2

                new_pairs = {}
                for a, b in pairing:
                    if a.crossing != cid and b.crossing != cid:
                        new_pairs[a] = b
                for a, b in chains.items():
                    if a.crossing in processed or b.crossing in processed:
                        raise AssertionError("chain end in processed region")
                    new_pairs[a] = b
                # chains may link two old pairs via this tangle; ends listed
                # in chains are open (unprocessed side) by construction
                key = tuple(sorted((min(a, b), max(a, b))
                                   for a, b in new_pairs.items()))
                val = coeff * factor * (DELTA ** delta_count)
                if key in new_states:
                    new_states[key] = new_states[key] + val
                else:
                    new_states[key] = val
        processed.add(cid)
        states = new_states
    assert list(states) == [()], "open strands left after contraction"
    total = states[()]
    total = total * (DELTA ** loops)
    return _divexact(total, DELTA)


def crossing_sign(d: Diagram, o: Orientation, crossing_id: str) -> int:
    """Sign of an oriented double point: +1 when rotating the over strand's
    direction counterclockwise by a quarter turn aligns it with the under
    strand's direction."""
    cx = d.crossings[crossing_id]
    over = cx.heights.index(1)
    under = 1 - over
    over_out = next(s for s in (over, over + 2)
                    if not o.is_inbound(d, Dart(crossing_id, s)))
    under_out = next(s for s in (under, under + 2)
                     if not o.is_inbound(d, Dart(crossing_id, s)))
    return 1 if under_out == (over_out + 1) % 4 else -1


def linking_matrix(d: Diagram, o: Orientation) -> tuple[tuple[int, ...], ...]:
    """Symmetric linking-number matrix over all components (free loops
    included, with zero rows); diagonal is zero."""
    if not d.is_classical():
        raise ValueError("linking matrix needs a classical diagram")
    k = d.component_count()
    comp = d.component_of_edge()
    acc = [[0] * k for _ in range(k)]
    for cid in d.crossings:
        e0 = d.dart_edge()[Dart(cid, 0)][0]
        e1 = d.dart_edge()[Dart(cid, 1)][0]
        i, j = comp[e0], comp[e1]
        if i != j:
            s = crossing_sign(d, o, cid)
            acc[i][j] += s
            acc[j][i] += s
    for i in range(k):
        for j in range(k):
            assert acc[i][j] % 2 == 0, "odd crossing parity between components"
            acc[i][j] //= 2
    return tuple(tuple(row) for row in acc)


@dataclass(frozen=True)
class OracleReport:
    bracket: Optional[Laurent]
    bracket_skipped: bool
    components: int
    linking: Optional[tuple[tuple[int, ...], ...]]
    connected: bool

    def lines(self) -> list[str]:
        out = [f"components={self.components}",
               f"connected={'true' if self.connected else 'false'}"]
        if self.bracket_skipped:
            out.append("bracket=skipped(bound)")
        else:
            pairs = " ".join(f"{e}:{c}" for e, c in self.bracket.items())
            out.append(f"bracket={pairs if pairs else '0'}")
        if self.linking is not None:
            rows = ";".join(",".join(str(v) for v in row)
                            for row in self.linking)
            out.append(f"linking={rows}")
        return out


def oracle(d: Diagram, o: Orientation | None = None,
           bound: int = DEFAULT_BRACKET_BOUND) -> OracleReport:
    """Invariant report of any multicrossing diagram, computed on its
    classical resolution."""
    d.check()
    if o is not None:
        rd, ro = resolve_oriented(d, o)
    else:
        rd, ro = resolve_to_classical(d), None
    try:
        br: Optional[Laurent] = kauffman_bracket(rd, bound)
        skipped = False
    except BracketBoundExceeded:
        br, skipped = None, True
    lk = linking_matrix(rd, ro) if ro is not None else None
    return OracleReport(br, skipped, rd.component_count(), lk,
                        rd.is_connected())


def _abs_linking_multiset(d: Diagram) -> tuple[int, ...]:
    o = orientation_from_components(d)
    lk = linking_matrix(d, o)
    k = len(lk)
    return tuple(sorted(abs(lk[i][j]) for i in range(k)
                        for j in range(i + 1, k)))


def same_link_evidence(d1: Diagram, d2: Diagram,
                       bound: int = DEFAULT_BRACKET_BOUND
                       ) -> tuple[str, Optional[str]]:
    """Compare link invariants of two diagrams.

    Returns ("distinguished", witness) when some invariant differs: a
    sound certificate that the underlying links differ.  Returns
    ("consistent", None) otherwise, which is evidence, not proof, of
    equivalence.  Brackets are compared modulo (-A^3)^k so that curl
    (Reidemeister I) differences are ignored.
    """
    r1, r2 = resolve_to_classical(d1), resolve_to_classical(d2)
    if r1.component_count() != r2.component_count():
        return ("distinguished",
                f"components {r1.component_count()} != {r2.component_count()}")
    b1 = kink_normalized(kauffman_bracket(r1, bound))
    b2 = kink_normalized(kauffman_bracket(r2, bound))
    if b1 != b2:
        return ("distinguished", f"bracket {b1} != {b2}")
    l1, l2 = _abs_linking_multiset(r1), _abs_linking_multiset(r2)
    if l1 != l2:
        return ("distinguished", f"|linking| {l1} != {l2}")
    return ("consistent", None)
