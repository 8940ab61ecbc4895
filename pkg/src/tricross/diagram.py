"""Planar multicrossing link diagrams as rotation systems.

A diagram is a set of crossings, each of multiplicity n >= 2 with 2n
darts in counterclockwise cyclic order (slots 0..2n-1), together with a
perfect matching of all darts into edges, a set of crossing-free closed
curves (free loops), and a containment forest placing each connected
piece into a face of another piece or onto the sphere's base face.

Strand passage j of an n-crossing occupies the antipodal slots j and
j+n; ``heights[j]`` ranks it from 1 (topmost) to n (bottommost).

Faces are traced combinatorially: with sigma the counterclockwise
rotation at a crossing and alpha the edge involution, the faces are the
orbits of sigma o alpha.  A face walk keeps its face on the right; when
it leaves a crossing through slot j it has just swept corner j-1 (the
corner between slots j-1 and j).  Corner k of a crossing therefore lies
in the face whose orbit contains the dart at slot k+1.

Everything here is immutable after construction; all operations build
new diagrams (see DiagramBuilder).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional


class Dart(NamedTuple):
    crossing: str
    slot: int

    def __str__(self) -> str:
        return f"{self.crossing}.{self.slot}"


class Corner(NamedTuple):
    crossing: str
    index: int

    def __str__(self) -> str:
        return f"{self.crossing}:{self.index}"


@dataclass(frozen=True)
class Crossing:
    id: str
    multiplicity: int
    heights: tuple[int, ...]  # heights[j] = rank of passage j, 1 = topmost

    def __post_init__(self):
        n = self.multiplicity
        if n < 2:
            raise ValueError(f"crossing {self.id}: multiplicity must be >= 2")
        if len(self.heights) != n:
            raise ValueError(f"crossing {self.id}: {n} passages need {n} heights")

    @property
    def degree(self) -> int:
        return 2 * self.multiplicity

    def passage_of(self, slot: int) -> int:
        return slot % self.multiplicity

    def partner_slot(self, slot: int) -> int:
        """The antipodal slot: the strand entering at ``slot`` leaves here."""
        return (slot + self.multiplicity) % (2 * self.multiplicity)

    def height_at(self, slot: int) -> int:
        return self.heights[self.passage_of(slot)]

    def darts(self) -> list[Dart]:
        return [Dart(self.id, s) for s in range(self.degree)]


@dataclass(frozen=True)
class Face:
    id: str
    darts: tuple[Dart, ...]    # walk order, starting at the minimal dart
    corners: tuple[Corner, ...]  # corners[i] is swept when leaving via darts[i]

    @property
    def degree(self) -> int:
        return len(self.darts)


def loop_face_ids(loop_id: str) -> tuple[str, str]:
    """The two complementary faces of a crossing-free closed curve."""
    return (f"{loop_id}.in", f"{loop_id}.out")


class InvalidDiagram(ValueError):
    pass


class Diagram:
    """An immutable multicrossing diagram.

    Parameters
    ----------
    crossings : iterable of Crossing
    edges : mapping edge id -> (Dart, Dart), a perfect matching on darts
    loops : mapping loop id -> host face id (None = sphere base face)
    placements : mapping subdiagram root crossing id -> host face id
        (None or missing = sphere base face); the root of a connected
        subdiagram is its minimal crossing id.
    """

    def __init__(self, crossings: Iterable[Crossing] = (),
                 edges: dict[str, tuple[Dart, Dart]] | None = None,
                 loops: dict[str, Optional[str]] | None = None,
                 placements: dict[str, Optional[str]] | None = None):
        self.crossings: dict[str, Crossing] = {c.id: c for c in crossings}
        self.edges: dict[str, tuple[Dart, Dart]] = dict(edges or {})
        self.loops: dict[str, Optional[str]] = dict(loops or {})
        self.placements: dict[str, Optional[str]] = {
            k: v for k, v in (placements or {}).items() if v is not None}
        self._dart_edge: dict[Dart, tuple[str, Dart]] | None = None
        self._faces: list[Face] | None = None
        self._face_of_dart: dict[Dart, str] | None = None
        self._subdiagrams: list[frozenset[str]] | None = None

    # -- basic queries -------------------------------------------------

    def all_darts(self) -> list[Dart]:
        out = []
        for c in self.crossings.values():
            out.extend(c.darts())
        return out

    def dart_edge(self) -> dict[Dart, tuple[str, Dart]]:
        """Map dart -> (edge id, partner dart)."""
        if self._dart_edge is None:
            m: dict[Dart, tuple[str, Dart]] = {}
            for eid, (a, b) in self.edges.items():
                m[a] = (eid, b)
                m[b] = (eid, a)
            self._dart_edge = m
        return self._dart_edge

    def alpha(self, d: Dart) -> Dart:
        return self.dart_edge()[d][1]

    def sigma(self, d: Dart) -> Dart:
        deg = self.crossings[d.crossing].degree
        return Dart(d.crossing, (d.slot + 1) % deg)

    def phi(self, d: Dart) -> Dart:
        """Next dart along the face walk (face kept on the right)."""
        return self.sigma(self.alpha(d))

    def crossing_count(self) -> int:
        return len(self.crossings)

    def multiplicities(self) -> set[int]:
        return {c.multiplicity for c in self.crossings.values()}

    def is_classical(self) -> bool:
        return all(c.multiplicity == 2 for c in self.crossings.values())

    # -- faces ---------------------------------------------------------

    def faces(self) -> list[Face]:
        if self._faces is None:
            self._trace_faces()
        return self._faces

    def _trace_faces(self):
        seen: set[Dart] = set()
        faces: list[Face] = []
        face_of: dict[Dart, str] = {}
        for start in sorted(self.all_darts()):
            if start in seen:
                continue
            walk = [start]
            seen.add(start)
            d = self.phi(start)
            while d != start:
                walk.append(d)
                seen.add(d)
                d = self.phi(d)
            base = min(range(len(walk)), key=lambda i: walk[i])
            walk = walk[base:] + walk[:base]
            corners = tuple(
                Corner(d.crossing,
                       (d.slot - 1) % self.crossings[d.crossing].degree)
                for d in walk)
            fid = str(walk[0])
            faces.append(Face(fid, tuple(walk), corners))
            for d in walk:
                face_of[d] = fid
        faces.sort(key=lambda f: f.id)
        self._faces = faces
        self._face_of_dart = face_of

    def face_of_dart(self, d: Dart) -> str:
        """Face on the right of the outward dart d (= the orbit of d)."""
        if self._face_of_dart is None:
            self._trace_faces()
        return self._face_of_dart[d]

    def face_of_corner(self, corner: Corner) -> str:
        deg = self.crossings[corner.crossing].degree
        return self.face_of_dart(Dart(corner.crossing, (corner.index + 1) % deg))

    def face_by_id(self, fid: str) -> Face:
        for f in self.faces():
            if f.id == fid:
                return f
        raise KeyError(fid)

    def face_ids(self) -> set[str]:
        ids = {f.id for f in self.faces()}
        for lid in self.loops:
            ids.update(loop_face_ids(lid))
        return ids

    def left_face_of(self, tail: Dart) -> str:
        """Face on the left of an edge traversed away from ``tail``."""
        return self.face_of_dart(self.alpha(tail))

    # -- connectivity ----------------------------------------------------

    def subdiagrams(self) -> list[frozenset[str]]:
        """Connected components of the crossing graph, sorted by root id."""
        if self._subdiagrams is None:
            parent: dict[str, str] = {cid: cid for cid in self.crossings}

            def find(x: str) -> str:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in self.edges.values():
                ra, rb = find(a.crossing), find(b.crossing)
                if ra != rb:
                    parent[ra] = rb
            groups: dict[str, set[str]] = {}
            for cid in self.crossings:
                groups.setdefault(find(cid), set()).add(cid)
            self._subdiagrams = sorted(
                (frozenset(g) for g in groups.values()), key=min)
        return self._subdiagrams

    def piece_ids(self) -> list[str]:
        """Roots of subdiagrams plus loop ids: the units of containment."""
        return sorted([min(s) for s in self.subdiagrams()] + list(self.loops))

    def root_of(self, crossing_id: str) -> str:
        for s in self.subdiagrams():
            if crossing_id in s:
                return min(s)
        raise KeyError(crossing_id)

    def piece_of_face(self, fid: str) -> str:
        """The piece id owning a face id."""
        for lid in self.loops:
            if fid in loop_face_ids(lid):
                return lid
        cid = fid.split(".")[0]
        return self.root_of(cid)

    def is_connected(self) -> bool:
        return len(self.subdiagrams()) <= 1 and (
            not self.loops or (not self.crossings and len(self.loops) == 1))

    def strand_next(self, d: Dart) -> Dart:
        """Follow the strand: cross the edge at d, pass through the crossing."""
        arrive = self.alpha(d)
        c = self.crossings[arrive.crossing]
        return Dart(arrive.crossing, c.partner_slot(arrive.slot))

    def strand_cycles(self) -> list[tuple[Dart, ...]]:
        """Orbits of strand_next; each closed strand yields two (one per
        travel direction)."""
        seen: set[Dart] = set()
        cycles = []
        for start in sorted(self.all_darts()):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            d = self.strand_next(start)
            while d != start:
                cyc.append(d)
                seen.add(d)
                d = self.strand_next(d)
            cycles.append(tuple(cyc))
        return cycles

    def link_components(self) -> list[tuple[Dart, ...]]:
        """One representative dart cycle per closed strand (free loops not
        included; they count separately)."""
        out = []
        used: set[Dart] = set()
        for cyc in self.strand_cycles():
            if cyc[0] in used:
                continue
            out.append(cyc)
            for d in cyc:
                used.add(d)
                used.add(self.alpha(d))
        return out

    def component_count(self) -> int:
        return len(self.link_components()) + len(self.loops)

    def component_of_edge(self) -> dict[str, int]:
        """Map edge id -> index of its link component (loops excluded)."""
        comp: dict[str, int] = {}
        for i, cyc in enumerate(self.link_components()):
            for d in cyc:
                comp[self.dart_edge()[d][0]] = i
        return comp

    # -- validation ------------------------------------------------------

    def validate(self) -> list[str]:
        """Return one diagnostic per invariant violation (empty = valid)."""
        out: list[str] = []
        for c in self.crossings.values():
            if c.multiplicity < 2:
                out.append(f"crossing {c.id}: multiplicity {c.multiplicity} < 2")
            if sorted(c.heights) != list(range(1, c.multiplicity + 1)):
                out.append(f"crossing {c.id}: heights {c.heights} not a "
                           f"permutation of 1..{c.multiplicity}")
        seen: dict[Dart, str] = {}
        for eid, (a, b) in self.edges.items():
            if a == b:
                out.append(f"edge {eid}: pairs dart {a} with itself")
                continue
            for d in (a, b):
                if d.crossing not in self.crossings:
                    out.append(f"edge {eid}: unknown crossing {d.crossing}")
                elif not 0 <= d.slot < self.crossings[d.crossing].degree:
                    out.append(f"edge {eid}: slot {d} out of range")
                elif d in seen:
                    out.append(f"dart {d}: in edges {seen[d]} and {eid}")
                else:
                    seen[d] = eid
        if out:
            return out
        for c in self.crossings.values():
            for d in c.darts():
                if d not in seen:
                    out.append(f"dart {d}: not matched by any edge")
        if out:
            return out
        # planarity, per subdiagram: v - e + f = 2
        face_count: dict[str, int] = {}
        for f in self.faces():
            root = self.root_of(f.darts[0].crossing)
            face_count[root] = face_count.get(root, 0) + 1
        edge_count: dict[str, int] = {}
        for a, _b in self.edges.values():
            edge_count.setdefault(self.root_of(a.crossing), 0)
            edge_count[self.root_of(a.crossing)] += 1
        for sub in self.subdiagrams():
            root = min(sub)
            v = len(sub)
            e = edge_count.get(root, 0)
            f = face_count.get(root, 0)
            if v - e + f != 2:
                out.append(f"subdiagram {root}: v-e+f = {v}-{e}+{f} != 2 "
                           f"(not a planar rotation system)")
        # containment forest
        valid_faces = self.face_ids()
        roots = {min(s) for s in self.subdiagrams()}
        for pid, host in list(self.placements.items()) + list(self.loops.items()):
            if pid not in roots and pid not in self.loops:
                out.append(f"containment: unknown piece {pid}")
            if host is not None and host not in valid_faces:
                out.append(f"containment: piece {pid} hosted in unknown "
                           f"face {host}")
        if not out:
            # acyclicity of piece -> host piece
            hosts = {}
            for pid, host in list(self.placements.items()) + list(self.loops.items()):
                if host is not None:
                    hosts[pid] = self.piece_of_face(host)
            for pid in hosts:
                slow = pid
                path = set()
                while slow in hosts:
                    if slow in path:
                        out.append(f"containment: cycle through piece {pid}")
                        break
                    path.add(slow)
                    slow = hosts[slow]
        return out

    def check(self) -> "Diagram":
        problems = self.validate()
        if problems:
            raise InvalidDiagram("; ".join(problems))
        return self

    def __repr__(self) -> str:
        return (f"Diagram({len(self.crossings)} crossings, "
                f"{len(self.edges)} edges, {len(self.loops)} loops)")


def components(d: Diagram) -> tuple[list[frozenset[str]], int]:
    """Subdiagram partition and the number k of link components."""
    return d.subdiagrams(), d.component_count()


def face_witnesses(d: Diagram, removed: set[str]) -> dict[str, Dart]:
    """For every face of d, a boundary dart avoiding the crossings about
    to be removed.  Used to repair containment hosts after surgery: a
    piece hosted in a face whose id disappears is re-hosted in the new
    face containing the witness dart."""
    out = {}
    for f in d.faces():
        for dart in f.darts:
            if dart.crossing not in removed:
                out[f.id] = dart
                break
    return out


class DiagramBuilder:
    """Mutable scratch space for diagram surgery.

    All public operations keep edge endpoints consistent; ``finalize``
    produces a fresh Diagram and repairs containment hosts that the
    surgery invalidated.
    """

    def __init__(self, base: Diagram | None = None):
        self.multiplicity: dict[str, int] = {}
        self.heights: dict[str, list[int]] = {}
        self.edges: dict[str, list[Dart]] = {}
        self.loops: dict[str, Optional[str]] = {}
        self.placements: dict[str, Optional[str]] = {}
        self._dart_edge: dict[Dart, str] = {}
        self._counter = 0
        if base is not None:
            for c in base.crossings.values():
                self.multiplicity[c.id] = c.multiplicity
                self.heights[c.id] = list(c.heights)
            for eid, (a, b) in base.edges.items():
                self.edges[eid] = [a, b]
                self._dart_edge[a] = eid
                self._dart_edge[b] = eid
            self.loops = dict(base.loops)
            self.placements = dict(base.placements)

    # -- ids -------------------------------------------------------------

    def fresh_id(self, prefix: str) -> str:
        while True:
            cand = f"{prefix}{self._counter}"
            self._counter += 1
            if (cand not in self.multiplicity and cand not in self.edges
                    and cand not in self.loops):
                return cand

    # -- crossings ---------------------------------------------------------

    def new_crossing(self, multiplicity: int, heights: list[int],
                     cid: str | None = None) -> str:
        cid = cid or self.fresh_id("x")
        self.multiplicity[cid] = multiplicity
        self.heights[cid] = list(heights)
        return cid

    def remove_crossing(self, cid: str):
        for s in range(2 * self.multiplicity[cid]):
            if Dart(cid, s) in self._dart_edge:
                raise ValueError(f"crossing {cid} still has attached edges")
        del self.multiplicity[cid]
        del self.heights[cid]

    # -- edges -------------------------------------------------------------

    def add_edge(self, a: Dart, b: Dart, eid: str | None = None) -> str:
        if a in self._dart_edge or b in self._dart_edge:
            raise ValueError(f"dart already attached: {a} or {b}")
        eid = eid or self.fresh_id("e")
        self.edges[eid] = [a, b]
        self._dart_edge[a] = eid
        self._dart_edge[b] = eid
        return eid

    def remove_edge(self, eid: str) -> tuple[Dart, Dart]:
        a, b = self.edges.pop(eid)
        del self._dart_edge[a]
        del self._dart_edge[b]
        return a, b

    def edge_at(self, d: Dart) -> str:
        return self._dart_edge[d]

    def partner(self, d: Dart) -> Dart:
        a, b = self.edges[self._dart_edge[d]]
        return b if a == d else a

    def add_loop(self, host: Optional[str], lid: str | None = None) -> str:
        lid = lid or self.fresh_id("o")
        self.loops[lid] = host
        return lid

    def splice(self, da: Dart, db: Dart, loop_host: Optional[str] = None
               ) -> Optional[str]:
        """Remove the edges at darts da and db and join their far ends.

        Used when a strand passes straight through a spot being deleted:
        da and db are the two doomed attachment darts.  If the two edges
        were one and the same, the strand closes up: a free loop is
        created (hosted in ``loop_host``) and its id returned.
        """
        ea = self._dart_edge[da]
        eb = self._dart_edge[db]
        if ea == eb:
            self.remove_edge(ea)
            return self.add_loop(loop_host)
        xa = self.partner(da)
        xb = self.partner(db)
        self.remove_edge(ea)
        self.remove_edge(eb)
        self.add_edge(xa, xb)
        return None

    # -- slot surgery ------------------------------------------------------

    def renumber_slots(self, cid: str, mapping: dict[int, int],
                       new_multiplicity: int, new_heights: list[int]):
        """Apply an old-slot -> new-slot mapping to a crossing, rewriting
        every edge endpoint.  Darts not in the mapping must be detached."""
        moves = []
        for old, new in mapping.items():
            d = Dart(cid, old)
            if d in self._dart_edge:
                moves.append((d, Dart(cid, new), self._dart_edge[d]))
        for d, _nd, eid in moves:
            pair = self.edges[eid]
            pair[pair.index(d)] = Dart(cid, -1 - d.slot)  # park, avoid clashes
            del self._dart_edge[d]
        for d, nd, eid in moves:
            pair = self.edges[eid]
            pair[pair.index(Dart(cid, -1 - d.slot))] = nd
            self._dart_edge[nd] = eid
        self.multiplicity[cid] = new_multiplicity
        self.heights[cid] = list(new_heights)

    def remove_passage(self, cid: str, passage: int) -> None:
        """Delete passage ``passage`` (both its darts must be detached);
        remaining heights keep their relative order, ranks renormalized."""
        n = self.multiplicity[cid]
        mapping = {}
        new = 0
        for s in range(2 * n):
            if s == passage or s == passage + n:
                continue
            mapping[s] = new
            new += 1
        old_heights = self.heights[cid]
        gone_rank = old_heights[passage]
        inv = {v: k for k, v in mapping.items()}
        new_heights = []
        for j in range(n - 1):
            q = inv[j] % n
            h = old_heights[q]
            new_heights.append(h - (1 if h > gone_rank else 0))
        self.renumber_slots(cid, mapping, n - 1, new_heights)

    def insert_passage(self, cid: str, corner: int, rank: int
                       ) -> tuple[Dart, Dart]:
        """Insert a new strand passage through the crossing point, entering
        at corner ``corner`` and leaving at the opposite corner.

        ``rank`` is the new passage's height (1 = on top of everything,
        n+1 = beneath everything).  Returns the two new darts, the one in
        ``corner`` first.
        """
        n = self.multiplicity[cid]
        k = corner % (2 * n)
        lo = k if k < n else k - n
        hi = lo + n
        mapping = {}
        for s in range(2 * n):
            mapping[s] = s + (1 if s > lo else 0) + (1 if s > hi else 0)
        d_lo, d_hi = lo + 1, hi + 2  # antipodal in the (n+1)-crossing
        old_heights = self.heights[cid]
        inv = {v: s for s, v in mapping.items()}
        new_heights = []
        for j in range(n + 1):
            if j == d_lo:
                new_heights.append(rank)
            else:
                h = old_heights[inv[j] % n]
                new_heights.append(h + (1 if h >= rank else 0))
        self.renumber_slots(cid, mapping, n + 1, new_heights)
        a, b = Dart(cid, d_lo), Dart(cid, d_hi)
        return (a, b) if lo == k else (b, a)

    def dissolve_binary(self, cid: str, loop_host: Optional[str] = None
                        ) -> Optional[str]:
        """Remove a multiplicity-1 leftover: its single strand passes
        straight through, so splice the two attached edges."""
        if self.multiplicity[cid] != 1:
            raise ValueError(f"{cid}: not multiplicity 1")
        out = self.splice(Dart(cid, 0), Dart(cid, 1), loop_host)
        del self.multiplicity[cid]
        del self.heights[cid]
        return out

    # -- finalize ----------------------------------------------------------

    def finalize(self, witnesses: dict[str, Dart] | None = None) -> Diagram:
        """Build the Diagram, re-keying and repairing containment entries.

        ``witnesses`` maps a piece id (or old host face id) to a dart of
        the new diagram whose face should host pieces whose recorded host
        face disappeared.
        """
        crossings = [Crossing(cid, self.multiplicity[cid],
                              tuple(self.heights[cid]))
                     for cid in self.multiplicity]
        edges = {eid: (a, b) for eid, (a, b) in self.edges.items()}
        d = Diagram(crossings, edges, dict(self.loops), {})
        valid = d.face_ids()
        witnesses = witnesses or {}

        def repaired(pid: str, host: Optional[str]) -> Optional[str]:
            if host is None or host in valid:
                return host
            for key in (pid, host):
                w = witnesses.get(key)
                if w is not None and w.crossing in d.crossings:
                    return d.face_of_dart(w)
            return None

        placements: dict[str, Optional[str]] = {}
        for sub in d.subdiagrams():
            root = min(sub)
            host = None
            for cid in sorted(sub):
                if cid in self.placements:
                    host = self.placements[cid]
                    break
            host = repaired(root, host)
            if host is not None and d.piece_of_face(host) in sub:
                host = None  # a piece cannot live inside its own face
            if host is not None:
                placements[root] = host
        loops = {}
        for lid, host in self.loops.items():
            loops[lid] = repaired(lid, host)
        d.loops = loops
        d.placements = placements
        return d
