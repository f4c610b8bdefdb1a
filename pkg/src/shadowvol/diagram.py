"""Oriented planar diagrams given as PD codes.

Each crossing lists its four edges counterclockwise, starting at the
incoming under-edge, so positions 0 and 2 carry the under strand and
positions 1 and 3 the over strand.  ``over_incoming`` says which of the
two over positions points into the crossing.

Indices in this module are 0-based: crossing ``i`` is ``crossings[i]``,
region ``k`` is ``faces[k]`` and carries the variable ``w[k]``, arc ``j``
is ``arcs[j]``.  Human-facing output adds one.

A corner ``(c, i)`` of crossing ``c`` is the quadrant between positions
``i`` and ``i + 1`` (mod 4).  For an edge entering a crossing at position
``i``, corner ``i`` lies on its right and corner ``i - 1`` on its left.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import DiagramError

SLOT_NAMES = ("a", "b", "c", "d")

_LINE = re.compile(
    r"^X\s*\[?\s*(\d+)\s*[,\s]\s*(\d+)\s*[,\s]\s*(\d+)\s*[,\s]\s*(\d+)\s*\]?\s+over\s*=\s*(\d+)$"
)


@dataclass(frozen=True)
class CrossingPD:
    id: int
    edges: tuple
    over_incoming: int

    @property
    def over_in_pos(self) -> int:
        if self.edges[1] == self.edges[3]:
            raise DiagramError(f"crossing {self.id + 1}: over strand closes on itself")
        if self.over_incoming == self.edges[1]:
            return 1
        if self.over_incoming == self.edges[3]:
            return 3
        raise DiagramError(
            f"crossing {self.id + 1}: over={self.over_incoming} is not an over-strand edge "
            f"(positions 2 and 4 of {list(self.edges)})"
        )

    @property
    def sign(self) -> int:
        # over strand entering from position 3 runs left-to-right across an
        # upward under strand: the right-handed crossing.
        return 1 if self.over_in_pos == 3 else -1

    def is_incoming(self, pos: int) -> bool:
        return pos == 0 or pos == self.over_in_pos


@dataclass(frozen=True)
class Arc:
    id: int
    edges: tuple
    tail: int  # crossing where the arc emerges from under-passing
    head: int  # crossing where the arc dives under


@dataclass(frozen=True)
class Region:
    id: int
    corners: tuple  # cyclic sequence of (crossing, corner) pairs

    @property
    def crossings(self):
        return sorted({c for c, _ in self.corners})


@dataclass(frozen=True)
class EdgeSides:
    edge: int
    arc: int
    right: int
    left: int


@dataclass(frozen=True)
class CrossingData:
    """Per-crossing combinatorics in the both-strands-downward frame."""

    sign: int
    quadrants: tuple  # region indices for slots (a, b, c, d)
    over_arc: int
    under_in_arc: int
    under_out_arc: int

    @property
    def right_under_arc(self) -> int:
        """Under arc on the right of the over arc (the one whose color gets acted on)."""
        return self.under_in_arc if self.sign > 0 else self.under_out_arc

    @property
    def left_under_arc(self) -> int:
        return self.under_out_arc if self.sign > 0 else self.under_in_arc


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    faces: tuple
    arcs: tuple
    components: tuple  # each a tuple of edge ids in strand order
    edge_sides: dict = field(repr=False)
    data: tuple = field(repr=False)
    n_split: int = 1

    @property
    def n_regions(self) -> int:
        return len(self.faces)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def signs(self) -> dict:
        return {i: d.sign for i, d in enumerate(self.data)}

    @property
    def quadrants(self) -> dict:
        return {i: d.quadrants for i, d in enumerate(self.data)}

    def summary(self) -> dict:
        return {
            "crossings": self.n_crossings,
            "regions": self.n_regions,
            "arcs": self.n_arcs,
            "components": len(self.components),
            "signs": [d.sign for d in self.data],
            "quadrants": [
                {s: q + 1 for s, q in zip(SLOT_NAMES, d.quadrants)} for d in self.data
            ],
            "arc_edges": [list(a.edges) for a in self.arcs],
            "region_crossings": [[c + 1 for c in f.crossings] for f in self.faces],
        }


def crossing_sign(diagram: LinkDiagram, crossing: int) -> int:
    return _data(diagram, crossing).sign


def quadrant_regions(diagram: LinkDiagram, crossing: int) -> tuple:
    """Region indices in slot order (a, b, c, d) = (bottom, right, top, left)."""
    return _data(diagram, crossing).quadrants


def _data(diagram, crossing):
    if not 0 <= crossing < diagram.n_crossings:
        raise DiagramError(f"no crossing with index {crossing}")
    return diagram.data[crossing]


def parse_pd_text(text: str) -> list:
    """Parse the line-oriented PD grammar into ``CrossingPD`` records."""
    crossings = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise DiagramError(f"line {lineno}: cannot parse {raw.strip()!r}")
        *edges, over = (int(g) for g in m.groups())
        if min(edges) <= 0:
            raise DiagramError(f"line {lineno}: edge ids must be positive integers")
        crossings.append(CrossingPD(len(crossings), tuple(edges), over))
    return crossings


def parse_diagram(text, arc_labels=None, region_labels=None) -> LinkDiagram:
    """Build a ``LinkDiagram`` from PD text or from a list of crossing records.

    A list entry may be a ``CrossingPD``, a mapping ``{"edges": [...], "over": e}``
    or a 5-sequence ``[e1, e2, e3, e4, over]``.

    By default arcs and regions are numbered by their lowest edge id.  To
    follow an external numbering instead, pass ``arc_labels`` (one edge id
    lying on each arc, in the desired order) and/or ``region_labels`` (one
    ``(crossing, slot)`` pair per region, crossing 0-based and slot one of
    ``"a"``..``"d"``).
    """
    if isinstance(text, str):
        crossings = parse_pd_text(text)
    else:
        crossings = [_coerce_crossing(i, x) for i, x in enumerate(text)]
    return build_diagram(crossings, arc_labels, region_labels)


def _coerce_crossing(i, x):
    if isinstance(x, CrossingPD):
        return CrossingPD(i, tuple(x.edges), x.over_incoming)
    try:
        if isinstance(x, dict):
            edges, over = x["edges"], x["over"]
        else:
            *edges, over = x
        edges = tuple(int(e) for e in edges)
        if len(edges) != 4:
            raise ValueError
        return CrossingPD(i, edges, int(over))
    except (KeyError, TypeError, ValueError):
        raise DiagramError(f"crossing {i + 1}: malformed entry {x!r}") from None


def build_diagram(crossings: list, arc_labels=None, region_labels=None) -> LinkDiagram:
    if not crossings:
        raise DiagramError(
            "diagram has no crossings; a crossingless unknot component is not allowed "
            "(add a kink or a Reidemeister II pair)"
        )
    occ = defaultdict(list)
    for c in crossings:
        c.over_in_pos  # validates over=
        for pos, e in enumerate(c.edges):
            occ[e].append((c.id, pos))
    for e, places in occ.items():
        if len(places) != 2:
            raise DiagramError(f"edge {e} appears {len(places)} times; every edge must appear exactly twice")
    head, tail = {}, {}
    for e, places in occ.items():
        ins = [p for p in places if crossings[p[0]].is_incoming(p[1])]
        if len(ins) != 1:
            raise DiagramError(f"edge {e} is inconsistently oriented (incoming at {len(ins)} ends)")
        head[e] = ins[0]
        tail[e] = next(p for p in places if p != ins[0])

    def other(c, pos):
        e = crossings[c].edges[pos]
        a, b = occ[e]
        return b if a == (c, pos) else a

    faces = _trace_faces(crossings, other)
    components = _trace_components(crossings, head)
    _check_trivial_components(crossings, components, head, tail)
    n_split = _count_split(crossings, occ)
    expected = len(crossings) + 1 + n_split
    if len(faces) != expected:
        raise DiagramError(
            f"PD code is not planar: {len(faces)} faces traced, expected {expected}"
        )

    # lowest incident edge first; faces sharing it are told apart by the next edge
    face_keys = [
        sorted({crossings[c].edges[j % 4] for c, i in f for j in (i, i + 1)}) for f in faces
    ]
    order = sorted(range(len(faces)), key=lambda k: face_keys[k])
    faces = [faces[k] for k in order]
    corner_face = {}
    for k, f in enumerate(faces):
        for corner in f:
            corner_face[corner] = k
    if region_labels is not None:
        order = [corner_face[_slot_corner(crossings, c, slot)] for c, slot in region_labels]
        _check_permutation(order, len(faces), "region_labels")
        faces = [faces[k] for k in order]
        corner_face = {corner: k for k, f in enumerate(faces) for corner in f}

    arcs = _trace_arcs(crossings, head, tail)
    edge_arc = {e: j for j, a in enumerate(arcs) for e in a.edges}
    if arc_labels is not None:
        try:
            order = [edge_arc[e] for e in arc_labels]
        except KeyError as ex:
            raise DiagramError(f"arc_labels: unknown edge {ex.args[0]}") from None
        _check_permutation(order, len(arcs), "arc_labels")
        arcs = [Arc(j, arcs[k].edges, arcs[k].tail, arcs[k].head) for j, k in enumerate(order)]
        edge_arc = {e: j for j, a in enumerate(arcs) for e in a.edges}

    edge_sides = {}
    for e, (c, pos) in head.items():
        edge_sides[e] = EdgeSides(
            e, edge_arc[e], right=corner_face[(c, pos)], left=corner_face[(c, (pos - 1) % 4)]
        )

    data = []
    for c in crossings:
        top, left, bottom, right = (corner_face[_slot_corner(crossings, c.id, s)] for s in "cdab")
        over_in_edge = c.edges[c.over_in_pos]
        data.append(
            CrossingData(
                sign=c.sign,
                quadrants=(bottom, right, top, left),
                over_arc=edge_arc[over_in_edge],
                under_in_arc=edge_arc[c.edges[0]],
                under_out_arc=edge_arc[c.edges[2]],
            )
        )

    return LinkDiagram(
        crossings=tuple(crossings),
        faces=tuple(Region(k, tuple(f)) for k, f in enumerate(faces)),
        arcs=tuple(arcs),
        components=tuple(components),
        edge_sides=edge_sides,
        data=tuple(data),
        n_split=n_split,
    )


def _slot_corner(crossings, c, slot):
    if not 0 <= c < len(crossings) or slot not in SLOT_NAMES:
        raise DiagramError(f"region_labels: bad corner ({c + 1}, {slot!r})")
    k = 3 if crossings[c].sign > 0 else 0
    # slots c, d, a, b follow counterclockwise from the corner between the incoming edges
    return (c, (k + "cdab".index(slot)) % 4)


def _check_permutation(order, n, what):
    if sorted(order) != list(range(n)):
        raise DiagramError(f"{what} must name each of the {n} items exactly once")


def _trace_faces(crossings, other):
    seen = set()
    faces = []
    for c in crossings:
        for i in range(4):
            if (c.id, i) in seen:
                continue
            face = []
            cur = (c.id, i)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                x, j = cur
                cur = other(x, (j + 1) % 4)
            if cur != (c.id, i):
                raise DiagramError("face tracing did not close; PD code is inconsistent")
            faces.append(face)
    return faces


def _trace_components(crossings, head):
    next_edge = {}
    for e, (c, pos) in head.items():
        next_edge[e] = crossings[c].edges[(pos + 2) % 4]
    seen = set()
    comps = []
    for e in sorted(next_edge):
        if e in seen:
            continue
        comp = []
        while e not in seen:
            seen.add(e)
            comp.append(e)
            e = next_edge[e]
        comps.append(tuple(comp))
    return comps


def _check_trivial_components(crossings, components, head, tail):
    arcs = None
    for n, comp in enumerate(components):
        unders = sum(1 for e in comp if head[e][1] == 0)
        overs = len(comp) - unders
        if unders == 0 or overs == 0:
            if arcs is None:
                arcs = _trace_arcs(crossings, head, tail)
            ids = [a.id + 1 for a in arcs if set(a.edges) & set(comp)]
            where = f"arcs {ids}" if ids else "a closed loop with no under-pass"
            kind = "only over-crossings" if unders == 0 else "only under-crossings"
            raise DiagramError(
                f"component {n + 1} ({where}; edges {list(comp)}) has {kind}; "
                "modify the diagram with a kink or a Reidemeister II move"
            )


def _count_split(crossings, occ):
    parent = list(range(len(crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (c1, _), (c2, _) in occ.values():
        parent[find(c1)] = find(c2)
    return len({find(i) for i in range(len(crossings))})


def _trace_arcs(crossings, head, tail):
    arcs = []
    for c in crossings:
        e = c.edges[2]
        edges = [e]
        while True:
            hc, hpos = head[e]
            if hpos == 0:
                break
            e = crossings[hc].edges[(hpos + 2) % 4]
            edges.append(e)
        arcs.append((min(edges), tuple(edges), c.id, hc))
    arcs.sort()
    return [Arc(j, edges, t, h) for j, (_, edges, t, h) in enumerate(arcs)]


def format_pd(diagram_or_crossings) -> str:
    crossings = getattr(diagram_or_crossings, "crossings", diagram_or_crossings)
    return "\n".join(
        "X {} {} {} {} over={}".format(*c.edges, c.over_incoming) for c in crossings
    )
