"""Diagram constructors: braid closures, multicrossing resolution, and
seeded random generators used by the test suites and the CLI.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .diagram import Crossing, Dart, Diagram, DiagramBuilder


def braid_closure(word: list[int], strands: int) -> Diagram:
    """Trace closure of a braid word.

    ``word`` lists signed generator indices: +i crosses strand positions
    i and i+1 with the strand arriving from position i passing over, -i
    with it passing under.  Positions never touched by the word close up
    into free loops.

    Crossing slots, with the braid running downward: 0 = up-right,
    1 = up-left, 2 = down-left, 3 = down-right; passage {1,3} carries the
    strand entering from the upper left.
    """
    if strands < 2:
        raise ValueError("strands must be >= 2")
    for g in word:
        if g == 0 or abs(g) >= strands:
            raise ValueError(f"generator index {g} out of range for "
                             f"{strands} strands")
    width = max(2, len(str(max(1, len(word) - 1))))
    b = DiagramBuilder()
    open_dart: dict[int, Dart | None] = {p: None for p in range(1, strands + 1)}
    top_dart: dict[int, Dart | None] = {p: None for p in range(1, strands + 1)}
    for t, g in enumerate(word):
        i = abs(g)
        heights = (2, 1) if g > 0 else (1, 2)
        cid = b.new_crossing(2, list(heights), f"c{t:0{width}d}")
        ul, ur, dl, dr = Dart(cid, 1), Dart(cid, 0), Dart(cid, 2), Dart(cid, 3)
        for pos, up in ((i, ul), (i + 1, ur)):
            if open_dart[pos] is None:
                top_dart[pos] = up
            else:
                b.add_edge(open_dart[pos], up)
        open_dart[i], open_dart[i + 1] = dl, dr
    for p in range(1, strands + 1):
        if open_dart[p] is None:
            b.add_loop(None)
        else:
            b.add_edge(open_dart[p], top_dart[p])
    return b.finalize()


# -- resolution of multicrossings to classical diagrams ------------------


def _line_directions(n: int) -> list[tuple[int, int]]:
    # integer vectors with strictly increasing angles in [0, pi/2]
    return [(n - j, j) for j in range(n)]


def _intersect(c1, v1, c2, v2):
    # solve c1 + t*v1 = c2 + s*v2 for t; returns (t, point) or None
    det = v1[0] * (-v2[1]) - (-v2[0]) * v1[1]
    if det == 0:
        return None
    rx, ry = c2[0] - c1[0], c2[1] - c1[1]
    t = Fraction(rx * (-v2[1]) - (-v2[0]) * ry, det)
    pt = (c1[0] + t * v1[0], c1[1] + t * v1[1])
    return t, pt


def resolve_to_classical(d: Diagram) -> Diagram:
    """Perturb every n-crossing (n > 2) into n(n-1)/2 double points.

    Each multicrossing is modelled as n lines through a point, one per
    strand passage, directed so that passage j exits toward slot j; the
    lines are translated apart by distinct rational offsets, and the
    resulting simple arrangement supplies the crossings, rotations and
    over/under data (a passage with smaller height rank stays on top).
    The underlying link is unchanged.
    """
    return _resolve_with_info(d)[0]


def _resolve_with_info(d: Diagram):
    d.check()
    info = {"boundary": {}, "internal": []}
    b = DiagramBuilder(d)
    for cid in sorted(d.crossings):
        cx = d.crossings[cid]
        n = cx.multiplicity
        if n == 2:
            continue
        dirs = _line_directions(n)
        perps = [(-vy, vx) for vx, vy in dirs]
        bump = 0
        while True:
            offsets = [Fraction(j) + Fraction(bump * j * j, 997)
                       for j in range(n)]
            centers = [(offsets[j] * perps[j][0], offsets[j] * perps[j][1])
                       for j in range(n)]
            points = {}
            ok = True
            for i in range(n):
                for j in range(i + 1, n):
                    r = _intersect(centers[i], dirs[i], centers[j], dirs[j])
                    if r is None:
                        ok = False
                        break
                    points[(i, j)] = r[1]
                if not ok:
                    break
            if ok and len(set(points.values())) == len(points):
                break
            bump += 1
            if bump > 50:
                raise RuntimeError("could not find a simple arrangement")

        # one classical crossing per line pair
        sub_id = {}
        for i in range(n):
            for j in range(i + 1, n):
                xid = f"{cid}r{i}_{j}"
                hi, hj = cx.heights[i], cx.heights[j]
                heights = [1, 2] if hi < hj else [2, 1]
                b.new_crossing(2, heights, xid)
                sub_id[(i, j)] = xid

        def outward_dart(i: int, j: int, line: int, forward: bool) -> Dart:
            # dart of crossing (i,j) pointing along +line (forward) or -line
            xid = sub_id[(i, j)]
            if line == i:
                return Dart(xid, 0 if forward else 2)
            return Dart(xid, 1 if forward else 3)

        # chain crossings along each line, connect cluster boundary
        boundary: dict[int, Dart] = {}
        for line in range(n):
            hits = []
            for other in range(n):
                if other == line:
                    continue
                key = (min(line, other), max(line, other))
                t, _pt = _intersect(centers[line], dirs[line],
                                    centers[other], dirs[other])
                hits.append((t, key))
            hits.sort()
            for (_t1, k1), (_t2, k2) in zip(hits, hits[1:]):
                fwd = outward_dart(*k1, line, True)
                bwd = outward_dart(*k2, line, False)
                eid = b.add_edge(fwd, bwd)
                info["internal"].append((eid, cid, line, bwd, fwd))
            boundary[line] = outward_dart(*hits[-1][1], line, True)
            boundary[line + n] = outward_dart(*hits[0][1], line, False)

        # rewire the original external edges onto the cluster boundary
        for s in range(2 * n):
            old = Dart(cid, s)
            eid = b.edge_at(old)
            pair = b.edges[eid]
            pair[pair.index(old)] = boundary[s]
            del b._dart_edge[old]
            b._dart_edge[boundary[s]] = eid
        info["boundary"][cid] = dict(boundary)
        b.remove_crossing(cid)
    out = b.finalize()
    out.check()
    return out, info


def resolve_oriented(d: Diagram, o):
    """Resolve multicrossings and carry the orientation along; returns
    (classical diagram, transferred orientation)."""
    from .coloring import Orientation, validate_orientation
    d2, info = _resolve_with_info(d)
    heads = {}
    for eid in d2.edges:
        if eid in d.edges:
            h = o.heads[eid]
            if h.crossing in info["boundary"]:
                heads[eid] = info["boundary"][h.crossing][h.slot]
            else:
                heads[eid] = h
    for eid, cid, line, head_fwd, head_bwd in info["internal"]:
        # flow runs toward slot `line` iff the old dart there was outbound
        old_exit = Dart(cid, line)
        exit_eid, _far = d.dart_edge()[old_exit]
        outbound = o.heads[exit_eid] != old_exit
        heads[eid] = head_fwd if outbound else head_bwd
    o2 = Orientation(heads, dict(o.loop_dirs))
    problems = validate_orientation(d2, o2)
    if problems:
        raise AssertionError(f"resolved orientation inconsistent: {problems}")
    return d2, o2


# -- seeded random generation ---------------------------------------------


def random_braid_word(rng: random.Random, strands: int, length: int,
                      connected: bool = True) -> list[int]:
    """A random braid word; with ``connected`` every generator index
    appears, so the closure is a connected diagram."""
    gens = list(range(1, strands))
    while True:
        word = [rng.choice(gens) * rng.choice((1, -1)) for _ in range(length)]
        if not connected or length < len(gens):
            return word
        if {abs(g) for g in word} == set(gens):
            return word


def random_connected_classical(rng: random.Random, crossings: int) -> Diagram:
    """A connected classical diagram with exactly ``crossings`` crossings,
    built as a braid closure."""
    strands = rng.randint(2, max(2, min(4, crossings)))
    word = random_braid_word(rng, strands, crossings)
    d = braid_closure(word, strands)
    assert len(d.subdiagrams()) == 1 and not d.loops
    return d
