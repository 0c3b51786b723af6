"""Set-theoretic Yang-Baxter maps induced by one-vertex cube complexes."""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.io
import scipy.sparse

from .complex import OneVertexComplex, Report
from .field import ZechTable, kl_pair
from .homology import first_homology
from .presentation import Presentation, color_letter, dihedral_forms, structure_presentation

__all__ = [
    "IsoResult",
    "PermutationMatrix",
    "YBSolution",
    "derive_R",
    "explicit_R",
    "flip_map",
    "identity_map",
    "iso_test",
    "relabel",
    "to_matrix",
    "verify_qybe",
    "verify_ybe",
]


class ConflictError(ValueError):
    pass


@dataclass(frozen=True)
class YBSolution:
    """A map ``X^2 -> X^2`` stored densely.

    ``table[x * D + y] == u * D + v`` encodes ``R(x, y) = (u, v)``.
    """

    names: tuple[str, ...]
    colors: tuple[int, ...]
    table: tuple[int, ...]
    name: str = ""
    source: Presentation | None = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.names)

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return divmod(self.table[x * self.size + y], self.size)

    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def is_bijection(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def fixed_points(self) -> int:
        return sum(1 for s, t in enumerate(self.table) if s == t)

    def invariant_violations(self) -> list[str]:
        """Bijectivity and the color rules of maps coming from complexes."""
        out = []
        if not self.is_bijection():
            out.append("not a bijection of X^2")
        D, col = self.size, self.colors
        for x in range(D):
            for y in range(D):
                u, v = self(x, y)
                if col[x] == col[y] and (u, v) != (x, y):
                    out.append(f"same-color pair ({self.names[x]}, {self.names[y]}) moved")
                elif (col[u], col[v]) != (col[y], col[x]):
                    out.append(f"R({self.names[x]}, {self.names[y]}) does not swap colors")
        return out

    def compose_flip(self) -> "YBSolution":
        """``Q = P o R`` with ``P(x, y) = (y, x)``."""
        D = self.size
        table = tuple((t % D) * D + t // D for t in self.table)
        return YBSolution(self.names, self.colors, table, f"P∘{self.name}", self.source)

    def to_json(self) -> dict:
        D = self.size
        return {
            "name": self.name,
            "X": list(self.names),
            "colors": list(self.colors),
            "map": [[x, y, *self(x, y)] for x in range(D) for y in range(D)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "YBSolution":
        names = tuple(data["X"])
        D = len(names)
        table = [0] * (D * D)
        for x, y, u, v in data["map"]:
            table[x * D + y] = u * D + v
        colors = tuple(data.get("colors", [0] * D))
        return cls(names, colors, tuple(table), data.get("name", ""))


def _from_pairs(names, colors, pairs: dict, name, source=None) -> YBSolution:
    D = len(names)
    table = list(range(D * D))
    for (x, y), (u, v) in pairs.items():
        table[x * D + y] = u * D + v
    return YBSolution(tuple(names), tuple(colors), tuple(table), name, source)


def derive_R(cx: OneVertexComplex) -> YBSolution:
    """``R(e1, e2) = (e4^-1, e3^-1)`` for every reading of every square."""
    inv = cx.inv
    pairs: dict[tuple[int, int], tuple[int, int]] = {}
    for sq in cx.squares:
        for e1, e2, e3, e4 in dihedral_forms(sq, inv):
            target = (inv[e4], inv[e3])
            if pairs.setdefault((e1, e2), target) != target:
                raise ConflictError(
                    f"corner ({cx.name(e1)}, {cx.name(e2)}) is claimed by two squares"
                )
    pres = cx.pres
    return _from_pairs(pres.names, pres.colors, pairs, f"R[{pres.name}]", pres)


def explicit_R(table: ZechTable, cosets: Sequence[int], source: Presentation | None = None) -> YBSolution:
    """``R(a_i, a_j) = (a_k(i,j), a_l(i,j))`` straight from the Zech table.

    Labels are ordered as in :func:`~ybcubes.presentation.build_gamma`.
    """
    q, n = table.q, table.n
    residues = [r % (q - 1) for r in cosets]
    members = [(c, i) for c, r in enumerate(residues) for i in range(n) if i % (q - 1) == r]
    index = {i: k for k, (_, i) in enumerate(members)}
    pairs = {}
    for i in index:
        for j in index:
            if (i - j) % (q - 1):
                k, l = kl_pair(table, i, j)
                pairs[index[i], index[j]] = (index[k], index[l])
    names = [f"{color_letter(c)}{i}" for c, i in members]
    colors = [c for c, _ in members]
    return _from_pairs(names, colors, pairs, "R[explicit]", source)


def identity_map(names: Sequence[str], colors: Sequence[int] | None = None) -> YBSolution:
    D = len(names)
    return YBSolution(tuple(names), tuple(colors or [0] * D), tuple(range(D * D)), "id")


def flip_map(names: Sequence[str], colors: Sequence[int] | None = None) -> YBSolution:
    D = len(names)
    table = tuple(y * D + x for x in range(D) for y in range(D))
    return YBSolution(tuple(names), tuple(colors or [0] * D), table, "P")


def relabel(R: YBSolution, nu: Sequence[int]) -> YBSolution:
    """The solution ``R'`` with ``R'(nu x, nu y) = (nu u, nu v)``."""
    D = R.size
    table = [0] * (D * D)
    names = [None] * D
    colors = [0] * D
    for x in range(D):
        names[nu[x]] = R.names[x]
        colors[nu[x]] = R.colors[x]
        for y in range(D):
            u, v = R(x, y)
            table[nu[x] * D + nu[y]] = nu[u] * D + nu[v]
    # the underlying cube group is unchanged up to renaming
    return YBSolution(tuple(names), tuple(colors), tuple(table), f"relabel({R.name})", R.source)


# -- verification ------------------------------------------------------------

def _apply(tab: np.ndarray, D: int, a: np.ndarray, b: np.ndarray):
    out = tab[a * D + b]
    return out // D, out % D


def _triples(D: int):
    idx = np.arange(D ** 3, dtype=np.int64)
    return idx // (D * D), (idx // D) % D, idx % D


def _first_mismatch(R: YBSolution, check: str, lhs, rhs, x, y, z) -> Report:
    bad = np.flatnonzero((lhs[0] != rhs[0]) | (lhs[1] != rhs[1]) | (lhs[2] != rhs[2]))
    rep = Report(check, bad.size == 0, checked=int(x.size))
    if bad.size:
        k = int(bad[0])
        nm = R.names
        rep.witnesses.append(
            f"({nm[x[k]]}, {nm[y[k]]}, {nm[z[k]]}): "
            f"{tuple(nm[int(t[k])] for t in lhs)} != {tuple(nm[int(t[k])] for t in rhs)}"
        )
        rep.witnesses.append(f"{bad.size} failing triples")
    return rep


def verify_ybe(R: YBSolution) -> Report:
    """Exhaustive check of ``R12 R23 R12 = R23 R12 R23`` on ``X^3``."""
    D, tab = R.size, R.array()
    x, y, z = _triples(D)

    def r12(a, b, c):
        a, b = _apply(tab, D, a, b)
        return a, b, c

    def r23(a, b, c):
        b, c = _apply(tab, D, b, c)
        return a, b, c

    lhs = r12(*r23(*r12(x, y, z)))
    rhs = r23(*r12(*r23(x, y, z)))
    return _first_mismatch(R, "ybe", lhs, rhs, x, y, z)


def verify_qybe(R: YBSolution) -> Report:
    """Exhaustive check of ``Q12 Q13 Q23 = Q23 Q13 Q12`` for ``Q = P o R``."""
    Q = R.compose_flip()
    D, tab = Q.size, Q.array()
    x, y, z = _triples(D)

    def q12(a, b, c):
        a, b = _apply(tab, D, a, b)
        return a, b, c

    def q13(a, b, c):
        a, c = _apply(tab, D, a, c)
        return a, b, c

    def q23(a, b, c):
        b, c = _apply(tab, D, b, c)
        return a, b, c

    # operators act right to left
    lhs = q12(*q13(*q23(x, y, z)))
    rhs = q23(*q13(*q12(x, y, z)))
    return _first_mismatch(R, "qybe", lhs, rhs, x, y, z)


def verify_ybe_tricolored(R: YBSolution) -> Report:
    """The braid check restricted to triples of three distinct colors."""
    D, tab = R.size, R.array()
    x, y, z = _triples(D)
    col = np.asarray(R.colors)
    keep = (col[x] != col[y]) & (col[y] != col[z]) & (col[x] != col[z])
    x, y, z = x[keep], y[keep], z[keep]
    a, b = _apply(tab, D, x, y)
    b, c = _apply(tab, D, b, z)
    a, b = _apply(tab, D, a, b)
    lhs = (a, b, c)
    b2, c2 = _apply(tab, D, y, z)
    a2, b2 = _apply(tab, D, x, b2)
    b2, c2 = _apply(tab, D, b2, c2)
    return _first_mismatch(R, "ybe-tricolored", lhs, (a2, b2, c2), x, y, z)


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class PermutationMatrix:
    """Permutation of the basis ``e_x (x) e_y`` indexed by ``x * D + y``.

    ``perm[s]`` is the row holding the unit entry of column ``s``.
    """

    perm: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.perm)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dimension, self.dimension)

    def to_sparse(self) -> scipy.sparse.coo_matrix:
        n = self.dimension
        cols = np.arange(n)
        return scipy.sparse.coo_matrix(
            (np.ones(n, dtype=np.int64), (np.asarray(self.perm), cols)), shape=(n, n)
        )

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def matrix_market(self) -> str:
        buf = io.BytesIO()
        scipy.io.mmwrite(buf, self.to_sparse(), field="integer", symmetry="general")
        return buf.getvalue().decode("ascii")

    def csv(self) -> str:
        lines = ["source_index,target_index"]
        lines += [f"{s},{t}" for s, t in enumerate(self.perm)]
        return "\n".join(lines) + "\n"


def to_matrix(R: YBSolution) -> PermutationMatrix:
    return PermutationMatrix(tuple(R.table))


# -- isomorphism -------------------------------------------------------------

@dataclass
class IsoResult:
    verdict: str  # "isomorphic" | "non-isomorphic" | "inconclusive"
    reason: str
    nu: list[int] | None = None
    nodes: int = 0
    distinguished_by: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason, "nu": self.nu,
                "nodes": self.nodes, "distinguished_by": self.distinguished_by}


def _point_signature(R: YBSolution) -> list[tuple]:
    """Per-element data preserved by every isomorphism."""
    D = R.size
    sig = []
    for x in range(D):
        fixed_right = sum(1 for y in range(D) if R(x, y) == (x, y))
        fixed_left = sum(1 for y in range(D) if R(y, x) == (y, x))
        diag = R(x, x) == (x, x)
        sig.append((fixed_right, fixed_left, diag))
    return sig


def _cycle_type(R: YBSolution) -> tuple:
    seen = bytearray(len(R.table))
    lengths = []
    for s in range(len(R.table)):
        if seen[s]:
            continue
        n, t = 0, s
        while not seen[t]:
            seen[t] = 1
            t = R.table[t]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths))


class _Budget(Exception):
    pass


def _search(R1: YBSolution, R2: YBSolution, domains: list[list[int]], budget: int) -> tuple[list[int] | None, int]:
    """Backtracking over ``nu`` with forced-image propagation.

    Once ``nu`` is known on ``u`` and ``v``, ``R1(u, v) = (t1, t2)`` forces
    ``(nu t1, nu t2) = R2(nu u, nu v)``.  Returns ``(nu, nodes)``, with
    ``nodes = -1`` if the budget ran out.
    """
    D = R1.size
    dom = [set(d) for d in domains]
    nu = [-1] * D
    used = [False] * D
    trail: list[int] = []
    nodes = 0

    def assign(x, y) -> bool:
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if nu[a] >= 0:
                if nu[a] != b:
                    return False
                continue
            if used[b] or b not in dom[a]:
                return False
            nu[a] = b
            used[b] = True
            trail.append(a)
            for s in trail:
                for u, v in ((a, s), (s, a)):
                    t1, t2 = R1(u, v)
                    w1, w2 = R2(nu[u], nu[v])
                    stack.append((t1, w1))
                    stack.append((t2, w2))
        return True

    def rollback(mark):
        while len(trail) > mark:
            a = trail.pop()
            used[nu[a]] = False
            nu[a] = -1

    def rec() -> bool:
        nonlocal nodes
        free = [x for x in range(D) if nu[x] < 0]
        if not free:
            return True
        x = min(free, key=lambda a: len(dom[a]))
        for y in sorted(dom[x]):
            if used[y]:
                continue
            nodes += 1
            if nodes > budget:
                raise _Budget
            mark = len(trail)
            if assign(x, y) and rec():
                return True
            rollback(mark)
        return False

    try:
        found = rec()
    except _Budget:
        return None, -1
    return (nu if found else None), nodes


def solution_invariants(R: YBSolution, use_homology: bool = True) -> dict:
    """Isomorphism invariants, cheapest first."""
    inv = {
        "size": R.size,
        "color_classes": tuple(sorted(Counter(R.colors).values())),
        "fixed_pairs": R.fixed_points(),
        "cycle_type": _cycle_type(R),
        "point_signatures": tuple(sorted(_point_signature(R))),
    }
    if use_homology:
        if R.source is not None:
            inv["H1_cube_group"] = first_homology(R.source)
        inv["H1_structure_group"] = first_homology(structure_presentation(R, "group"))
    return inv


def iso_test(R1: YBSolution, R2: YBSolution, budget: int = 200_000, use_homology: bool = True) -> IsoResult:
    """Decide whether a bijection ``nu`` carries ``R1`` to ``R2``.

    All invariants are compared first and every disagreement is reported.
    Otherwise a backtracking search runs, color-preserving maps first.
    Running out of ``budget`` nodes gives ``"inconclusive"``.
    """
    i1, i2 = solution_invariants(R1, use_homology), solution_invariants(R2, use_homology)
    differ = [k for k in i1 if k in i2 and i1[k] != i2[k]]
    if differ:
        detail = "; ".join(
            f"{k}: {i1[k]} vs {i2[k]}" if k.startswith("H1") or k in ("size", "fixed_pairs", "color_classes")
            else k
            for k in differ
        )
        return IsoResult("non-isomorphic", f"invariants differ ({detail})", distinguished_by=differ)
    s1, s2 = _point_signature(R1), _point_signature(R2)

    D = R1.size
    total = 0
    # color-preserving first, then any bijection respecting the signatures
    phases = [
        ("color-preserving", [[y for y in range(D) if s2[y] == s1[x] and R2.colors[y] == R1.colors[x]]
                              for x in range(D)]),
        ("unrestricted", [[y for y in range(D) if s2[y] == s1[x]] for x in range(D)]),
    ]
    for label, domains in phases:
        nu, nodes = _search(R1, R2, domains, budget - total)
        if nodes < 0:
            return IsoResult("inconclusive", f"node budget {budget} exhausted in {label} search", nodes=budget)
        total += nodes
        if nu is not None:
            return IsoResult("isomorphic", f"{label} search found nu", nu, total)
    return IsoResult("non-isomorphic", "exhaustive search found no bijection", nodes=total)
