"""Presentations of cube-complex groups, structure groups and semigroups.

A presentation carries a list of labels (generators with a color and an
inverse partner) and a set of length-4 relators ``e1 e2 e3 e4 = 1``.  The
relator of ``a b = b' a'`` is stored as ``(a, b, a'^-1, b'^-1)``.

Structure presentations built from a map ``R`` use ``relations`` instead:
pairs ``((x, y), (t, z))`` meaning ``x y = t z``.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .field import FieldError, ZechTable, kl_pair

__all__ = [
    "Label",
    "Presentation",
    "PresentationError",
    "Square",
    "build_gamma",
    "canonical_square",
    "color_letter",
    "equivalent_forms",
    "dihedral_forms",
    "extend_with_commuting_factor",
    "group_relations_by_square",
    "parse_word",
    "relations_hold_in",
    "structure_presentation",
]

Square = tuple[int, int, int, int]


class PresentationError(ValueError):
    pass


def color_letter(color: int) -> str:
    letters = string.ascii_lowercase
    return letters[color] if color < len(letters) else f"x{color}_"


@dataclass(frozen=True)
class Label:
    id: int
    name: str
    color: int
    # None: formal inverse that is not itself a label (structure groups)
    inverse: int | None


def dihedral_forms(sq: Sequence[int], inv: Sequence[int]) -> list[Square]:
    """All eight readings of the boundary of a square.

    Four cyclic shifts of ``(e1, e2, e3, e4)`` and four of the reversed
    boundary ``(e4^-1, e3^-1, e2^-1, e1^-1)``.
    """
    e1, e2, e3, e4 = sq
    rev = (inv[e4], inv[e3], inv[e2], inv[e1])
    out = []
    for t in (tuple(sq), rev):
        for s in range(4):
            out.append(t[s:] + t[:s])
    return out


def equivalent_forms(sq: Sequence[int], inv: Sequence[int]) -> list[Square]:
    """The four tuples equivalent to the relator ``(a, b, a'^-1, b'^-1)``.

    These are the readings that start at a corner of the same color as ``e1``.
    """
    e1, e2, e3, e4 = sq
    return [
        (e1, e2, e3, e4),
        (inv[e3], inv[e2], inv[e1], inv[e4]),
        (inv[e1], inv[e4], inv[e3], inv[e2]),
        (e3, e4, e1, e2),
    ]


def canonical_square(sq: Sequence[int], inv: Sequence[int], colors: Sequence[int]) -> Square:
    """Lexicographically least reading starting with the smaller color.

    For an alternating relator this is the least of the four equivalent
    tuples of whichever reading begins with the smaller color, so two
    relators define the same square iff their canonical forms agree.
    """
    sq = tuple(sq)
    c = min(colors[e] for e in sq)
    start = sq if colors[sq[0]] == c else sq[1:] + sq[:1]
    return min(equivalent_forms(start, inv))


_LETTER = re.compile(r"([a-z])(\d+)")


def parse_word(word: str, lookup: dict[str, int]) -> list[int]:
    """Turn ``"a1b2a17b22"`` into label ids using ``lookup`` (name -> id)."""
    tokens = _LETTER.findall(word)
    if "".join(l + n for l, n in tokens) != word.replace(" ", ""):
        raise PresentationError(f"cannot parse word {word!r}")
    try:
        return [lookup[l + n] for l, n in tokens]
    except KeyError as exc:
        raise PresentationError(f"unknown generator {exc.args[0]} in {word!r}") from None


@dataclass(frozen=True)
class Presentation:
    labels: tuple[Label, ...]
    squares: tuple[Square, ...] = ()
    relations: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    kind: str = "group"
    name: str = ""
    # q even: a_i^2 = 1 makes labels self-inverse
    allow_self_inverse: bool = False

    def __post_init__(self):
        if self.kind not in ("group", "semigroup"):
            raise PresentationError(f"unknown kind {self.kind!r}")
        ids = [lab.id for lab in self.labels]
        if ids != list(range(len(ids))):
            raise PresentationError("label ids must be 0..n-1 in order")
        n = len(ids)
        for lab in self.labels:
            if lab.inverse is None:
                continue
            if not 0 <= lab.inverse < n:
                raise PresentationError(f"{lab.name}: inverse {lab.inverse} does not exist")
            partner = self.labels[lab.inverse]
            if partner.inverse != lab.id:
                raise PresentationError(f"inverse pairing of {lab.name} is not an involution")
            if partner.color != lab.color:
                raise PresentationError(f"{lab.name} and its inverse have different colors")
        for sq in self.squares:
            if len(sq) != 4 or not all(0 <= e < n for e in sq):
                raise PresentationError(f"relator {sq} references unknown labels")
        for (x, y), (t, z) in self.relations:
            if not all(0 <= e < n for e in (x, y, t, z)):
                raise PresentationError("relation references unknown labels")

    # -- views -----------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def inv(self) -> list[int]:
        return [lab.inverse if lab.inverse is not None else lab.id for lab in self.labels]

    @property
    def colors(self) -> list[int]:
        return [lab.color for lab in self.labels]

    @property
    def names(self) -> list[str]:
        return [lab.name for lab in self.labels]

    @property
    def n_colors(self) -> int:
        return max(self.colors) + 1 if self.labels else 0

    def lookup(self) -> dict[str, int]:
        return {lab.name: lab.id for lab in self.labels}

    @property
    def involution_relations(self) -> list[tuple[int, int]]:
        if self.kind == "semigroup":
            return []
        return [
            (lab.id, lab.inverse)
            for lab in self.labels
            if lab.inverse is not None and lab.id <= lab.inverse
        ]

    @property
    def valency_vector(self) -> tuple[int, ...]:
        counts = [0] * self.n_colors
        for lab in self.labels:
            counts[lab.color] += 1
        return tuple(counts)

    def word_name(self, word: Iterable[int]) -> str:
        return "".join(self.labels[e].name for e in word)

    def square_names(self) -> list[str]:
        return [self.word_name(sq) for sq in self.squares]

    # -- construction helpers --------------------------------------------

    @classmethod
    def from_squares(cls, labels: Sequence[Label], squares: Iterable[Sequence[int]], **kw) -> "Presentation":
        """Build a presentation, canonicalising and de-duplicating relators."""
        labels = tuple(labels)
        inv = [lab.inverse if lab.inverse is not None else lab.id for lab in labels]
        colors = [lab.color for lab in labels]
        canon = {canonical_square(sq, inv, colors) for sq in squares}
        return cls(labels, tuple(sorted(canon)), **kw)

    def without_square(self, index: int) -> "Presentation":
        sq = list(self.squares)
        del sq[index]
        return replace(self, squares=tuple(sq))

    def with_squares(self, squares: Iterable[Sequence[int]]) -> "Presentation":
        return replace(self, squares=tuple(tuple(s) for s in squares))

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "labels": [
                {"id": lab.id, "name": lab.name, "color": lab.color, "inverse": lab.inverse}
                for lab in self.labels
            ],
            "squares": [list(sq) for sq in self.squares],
        }
        if self.relations:
            out["relations"] = [[x, y, t, z] for (x, y), (t, z) in self.relations]
        if self.allow_self_inverse:
            out["allow_self_inverse"] = True
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        labels = tuple(
            Label(int(d["id"]), str(d["name"]), int(d["color"]),
                  None if d.get("inverse") is None else int(d["inverse"]))
            for d in sorted(data["labels"], key=lambda d: d["id"])
        )
        return cls(
            labels,
            tuple(tuple(int(e) for e in sq) for sq in data.get("squares", [])),
            tuple(((r[0], r[1]), (r[2], r[3])) for r in data.get("relations", [])),
            kind=data.get("kind", "group"),
            name=data.get("name", ""),
            allow_self_inverse=bool(data.get("allow_self_inverse", False)),
        )

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        return cls.from_json(json.loads(text))

    def canonical(self) -> "Presentation":
        return Presentation.from_squares(
            self.labels, self.squares, relations=self.relations, kind=self.kind,
            name=self.name, allow_self_inverse=self.allow_self_inverse,
        )

    def same_squares(self, other: "Presentation") -> bool:
        """Equality of relator sets by label name, up to canonical form."""
        if sorted(self.names) != sorted(other.names):
            return False
        mine = {self.word_name(sq) for sq in self.canonical().squares}
        # re-express other's relators on our ids before canonicalising
        lookup = self.lookup()
        theirs = set()
        for sq in other.squares:
            ids = [lookup[other.labels[e].name] for e in sq]
            theirs.add(self.word_name(canonical_square(ids, self.inv, self.colors)))
        return mine == theirs


def build_gamma(
    table: ZechTable,
    cosets: Sequence[int],
    allow_even: bool = False,
) -> Presentation:
    """The group generated by ``a_i`` (i in M) acting on a product of trees.

    ``cosets`` lists residues mod ``q-1``; M is their union inside
    ``Z/(q^2-1)``.  Generators of the c-th listed residue get color c.
    """
    q, n = table.q, table.n
    if q % 2 == 0 and not allow_even:
        raise PresentationError("q even gives self-inverse generators; pass allow_even=True")
    residues = [r % (q - 1) for r in cosets]
    if len(set(residues)) != len(residues):
        raise PresentationError(f"cosets {list(cosets)} repeat a residue mod {q - 1}")
    if len(residues) < 2:
        raise PresentationError("need at least two cosets")

    members = []
    for color, r in enumerate(residues):
        members.extend((color, i) for i in range(n) if i % (q - 1) == r)
    index = {i: k for k, (_, i) in enumerate(members)}

    labels = []
    for k, (color, i) in enumerate(members):
        partner = i if q % 2 == 0 else (i + n // 2) % n
        labels.append(Label(k, f"{color_letter(color)}{i}", color, index[partner]))

    relators = []
    for i in index:
        for j in index:
            if (i - j) % (q - 1) == 0:
                continue
            kk, ll = kl_pair(table, i, j)
            if kk not in index or ll not in index:  # pragma: no cover - k=j, l=i mod q-1
                raise FieldError("k(i,j), l(i,j) left M")
            a_i, a_j, a_k, a_l = index[i], index[j], index[kk], index[ll]
            relators.append((a_i, a_j, labels[a_l].inverse, labels[a_k].inverse))

    name = f"Gamma(q={q}, M={list(residues)}, delta_exp={table.spec.delta_exponent})"
    return Presentation.from_squares(labels, relators, name=name, allow_self_inverse=q % 2 == 0)


def extend_with_commuting_factor(base: Presentation, k: int) -> Presentation:
    """Add a new color of ``2k`` labels commuting with every old label.

    New labels are named ``<letter>1 .. <letter>2k`` with ``c_i^-1 = c_{i+k}``.
    """
    if k < 1:
        raise PresentationError("k must be >= 1")
    if base.kind != "group":
        raise PresentationError("only group presentations can be extended")
    color = base.n_colors
    letter = color_letter(color)
    start = base.size
    labels = list(base.labels)
    for i in range(2 * k):
        labels.append(Label(start + i, f"{letter}{i + 1}", color, start + (i + k) % (2 * k)))
    inv = [lab.inverse for lab in labels]
    squares = list(base.squares)
    for x in range(start):
        for c in range(start, start + 2 * k):
            squares.append((x, c, inv[x], inv[c]))
    return Presentation.from_squares(
        labels, squares, name=f"{base.name}+{letter}^{2 * k}",
        allow_self_inverse=base.allow_self_inverse,
    )


def structure_presentation(R, kind: str = "semigroup") -> Presentation:
    """Structure group/semigroup of a map ``R : X^2 -> X^2``.

    One relation ``x y = t z`` for each non-fixed ``R(x, y) = (t, z)``;
    the mirrored relation from ``R(t, z) = (x, y)`` is the same equation and
    is emitted once.  Generators of the group have formal inverses only.
    """
    if kind not in ("group", "semigroup"):
        raise PresentationError(f"unknown kind {kind!r}")
    D = R.size
    labels = tuple(Label(x, R.names[x], R.colors[x], None) for x in range(D))
    seen = set()
    relations = []
    for x in range(D):
        for y in range(D):
            t, z = R(x, y)
            if (t, z) == (x, y):
                continue
            key = frozenset([(x, y), (t, z)])
            if key in seen:
                continue
            seen.add(key)
            relations.append(((x, y), (t, z)))
    return Presentation(labels, (), tuple(relations), kind=kind, name=f"structure {kind} of {R.name}")


def relations_hold_in(struct: Presentation, cube: Presentation) -> list[tuple]:
    """Relations ``xy = tz`` of ``struct`` that are *not* cube-group relators.

    Labels are matched by name.  An empty result witnesses that the cube
    group is a quotient of the structure group.
    """
    lookup = cube.lookup()
    inv, colors = cube.inv, cube.colors
    squares = set(cube.canonical().squares)
    missing = []
    for (x, y), (t, z) in struct.relations:
        x, y, t, z = (lookup[struct.labels[e].name] for e in (x, y, t, z))
        if canonical_square((x, y, inv[z], inv[t]), inv, colors) not in squares:
            missing.append(((x, y), (t, z)))
    return missing


def group_relations_by_square(struct: Presentation, cube: Presentation) -> dict[Square, list]:
    """Bucket structure relations by the geometric square they come from."""
    lookup = cube.lookup()
    inv, colors = cube.inv, cube.colors
    buckets: dict[Square, list] = {}
    for rel in struct.relations:
        (x, y), (t, z) = rel
        x, y, t, z = (lookup[struct.labels[e].name] for e in (x, y, t, z))
        sq = canonical_square((x, y, inv[z], inv[t]), inv, colors)
        buckets.setdefault(sq, []).append(rel)
    return buckets
