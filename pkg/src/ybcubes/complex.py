"""One-vertex square/cube complexes, links and structure checks."""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

from .presentation import Presentation, PresentationError, Square, dihedral_forms, equivalent_forms

__all__ = [
    "LinkGraph",
    "OneVertexComplex",
    "Report",
    "build_complex",
    "check_cube_condition",
    "check_vh",
    "link",
]


@dataclass
class Report:
    check: str
    passed: bool
    witnesses: list = field(default_factory=list)
    checked: int = 0

    def to_json(self) -> dict:
        return {"check": self.check, "pass": self.passed, "checked": self.checked,
                "witnesses": [str(w) for w in self.witnesses]}

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class OneVertexComplex:
    pres: Presentation
    squares: tuple[Square, ...]
    partition: tuple[tuple[int, ...], ...]

    @property
    def valency_vector(self) -> tuple[int, ...]:
        return tuple(len(part) for part in self.partition)

    @property
    def n(self) -> int:
        return len(self.partition)

    @property
    def inv(self) -> list[int]:
        return self.pres.inv

    @property
    def colors(self) -> list[int]:
        return self.pres.colors

    def name(self, x: int) -> str:
        return self.pres.labels[x].name

    def corners(self) -> dict[tuple[int, int], list[Square]]:
        """Map each corner ``(e1, e2)`` to the readings of squares starting there."""
        out: dict[tuple[int, int], list[Square]] = {}
        for sq in self.squares:
            for form in dihedral_forms(sq, self.inv):
                out.setdefault(form[:2], []).append(form)
        return out


def build_complex(pres: Presentation) -> OneVertexComplex:
    if pres.kind != "group":
        raise PresentationError("complexes are built from group presentations")
    for lab in pres.labels:
        if lab.inverse is None:
            raise PresentationError(f"label {lab.name} has no inverse label")
    colors = pres.colors
    for sq in pres.squares:
        c = [colors[e] for e in sq]
        if c[0] == c[1] or c[0] != c[2] or c[1] != c[3]:
            raise PresentationError(f"relator {pres.word_name(sq)} does not alternate two colors")
    partition = tuple(
        tuple(lab.id for lab in pres.labels if lab.color == color) for color in range(pres.n_colors)
    )
    return OneVertexComplex(pres, tuple(pres.canonical().squares), partition)


@dataclass
class LinkGraph:
    """Bipartite multigraph of corners between two color classes."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: Counter

    @property
    def n_edges(self) -> int:
        return sum(self.edges.values())

    def is_complete(self) -> bool:
        return all(self.edges.get((a, b), 0) == 1 for a in self.left for b in self.right) and \
            self.n_edges == len(self.left) * len(self.right)

    def missing(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.left for b in self.right if (a, b) not in self.edges]

    def repeated(self) -> list[tuple[int, int]]:
        return [e for e, k in self.edges.items() if k > 1]

    def to_dot(self, names) -> str:
        lines = ["graph link {"]
        for a in self.left:
            lines.append(f'  "{names[a]}" [shape=box];')
        for b in self.right:
            lines.append(f'  "{names[b]}" [shape=ellipse];')
        for (a, b), k in sorted(self.edges.items()):
            for _ in range(k):
                lines.append(f'  "{names[a]}" -- "{names[b]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def link(cx: OneVertexComplex, colors: tuple[int, int]) -> LinkGraph:
    """Corners between colors ``i`` and ``j`` (``i`` first)."""
    i, j = colors
    if i == j:
        raise ValueError("link needs two distinct colors")
    col, inv = cx.colors, cx.inv
    edges: Counter = Counter()
    for sq in cx.squares:
        if {col[sq[0]], col[sq[1]]} != {i, j}:
            continue
        start = sq if col[sq[0]] == i else sq[1:] + sq[:1]
        forms = equivalent_forms(start, inv)
        if cx.pres.allow_self_inverse:
            # readings through a self-inverse edge coincide; each corner counts once
            forms = set(forms)
        for form in forms:
            edges[form[:2]] += 1
    return LinkGraph(cx.partition[i], cx.partition[j], edges)


def check_vh(cx: OneVertexComplex) -> Report:
    """Fixed-point-free involutions, complete bipartite links, distinct corners."""
    rep = Report("vh", True)
    inv = cx.inv
    for lab in cx.pres.labels:
        if lab.inverse == lab.id and not cx.pres.allow_self_inverse:
            rep.witnesses.append(f"involution fixes {lab.name}")
    for sq in cx.squares:
        if cx.pres.allow_self_inverse and any(inv[e] == e for e in sq):
            continue
        forms = equivalent_forms(sq, inv)
        if len(set(forms)) != 4:
            rep.witnesses.append(f"square {cx.pres.word_name(sq)} has coinciding corner tuples (2-torsion)")
    for i, j in itertools.combinations(range(cx.n), 2):
        lk = link(cx, (i, j))
        rep.checked += len(lk.left) * len(lk.right)
        for a, b in lk.missing():
            rep.witnesses.append(f"missing corner ({cx.name(a)}, {cx.name(b)})")
        for a, b in lk.repeated():
            rep.witnesses.append(f"corner ({cx.name(a)}, {cx.name(b)}) covered {lk.edges[a, b]} times")
    if cx.n == 0 or any(len(part) == 0 for part in cx.partition):
        rep.witnesses.append("empty color class")
    rep.passed = not rep.witnesses
    return rep


def check_cube_condition(cx: OneVertexComplex) -> Report:
    """Every tri-colored path ``x y z`` bounds a cube whose faces close up.

    Starting from the path, the far side can be reached by pushing across
    faces in the order (12)(23)(12) or (23)(12)(23).  Both must end at the
    same antipodal path.
    """
    rep = Report("cube", True)
    opposite: dict[tuple[int, int], tuple[int, int]] = {}
    conflicts = []
    inv = cx.inv
    for sq in cx.squares:
        for e1, e2, e3, e4 in dihedral_forms(sq, inv):
            across = (inv[e4], inv[e3])
            if opposite.setdefault((e1, e2), across) != across:
                conflicts.append((e1, e2))
    for a, b in conflicts:
        rep.witnesses.append(f"corner ({cx.name(a)}, {cx.name(b)}) lies on two squares")

    def face(u, v):
        return opposite.get((u, v))

    for ci, cj, ck in itertools.permutations(range(cx.n), 3):
        for x in cx.partition[ci]:
            for y in cx.partition[cj]:
                for z in cx.partition[ck]:
                    rep.checked += 1
                    ends = []
                    for order in ((0, 1, 0), (1, 0, 1)):
                        path = [x, y, z]
                        for s in order:
                            f = face(path[s], path[s + 1])
                            if f is None:
                                break
                            path[s], path[s + 1] = f
                        else:
                            ends.append(tuple(path))
                            continue
                        ends.append(None)
                    if ends[0] is None or ends[0] != ends[1]:
                        shown = ["".join(cx.name(e) for e in end) if end else "open face" for end in ends]
                        names = "".join(cx.name(e) for e in (x, y, z))
                        rep.witnesses.append(f"path {names} does not close: {shown[0]} vs {shown[1]}")
                        if len(rep.witnesses) >= 20:
                            rep.passed = False
                            return rep
    rep.passed = not rep.witnesses
    return rep


def report_json(reports: list[Report]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True)
