"""First homology of finitely presented groups via integer Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation

__all__ = ["AbelianGroup", "IntegerMatrix", "abelianize", "first_homology", "smith_normal_form"]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[tuple[int, ...], ...]
    columns: tuple[str, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        return cls(rows, tuple(f"g{k}" for k in range(n)))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank x Z/d1 x ... x Z/dk`` with ``d1 | d2 | ... | dk`` and each ``d > 1``."""

    rank: int
    factors: tuple[int, ...]

    def __post_init__(self):
        f = self.factors
        if any(d <= 1 for d in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"{f} is not an invariant-factor chain")

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.factors]
        return " x ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "factors": list(self.factors)}


def abelianize(pres: Presentation, convention: str = "paired") -> IntegerMatrix:
    """Relation matrix whose integer cokernel is H1 of ``pres``.

    ``paired`` uses one column per inverse pair, an inverse letter counting
    -1.  ``split`` uses one column per label together with the rows
    ``x + x^-1 = 0``.
    """
    if convention not in ("paired", "split"):
        raise ValueError(f"unknown convention {convention!r}")
    labels = pres.labels
    col_of: list[int] = []
    sign: list[int] = []
    columns: list[str] = []
    extra: list[dict[int, int]] = []

    if convention == "paired":
        rep_col: dict[int, int] = {}
        for lab in labels:
            if lab.inverse is None or lab.inverse >= lab.id:
                rep_col[lab.id] = len(columns)
                columns.append(lab.name)
                col_of.append(rep_col[lab.id])
                sign.append(1)
                if lab.inverse == lab.id:
                    extra.append({rep_col[lab.id]: 2})
            else:
                col_of.append(rep_col[lab.inverse])
                sign.append(-1)
    else:
        for lab in labels:
            col_of.append(len(columns))
            sign.append(1)
            columns.append(lab.name)
        if pres.kind == "group":
            for lab in labels:
                if lab.inverse is not None and lab.inverse >= lab.id:
                    row: dict[int, int] = {}
                    for e in (lab.id, lab.inverse):
                        row[col_of[e]] = row.get(col_of[e], 0) + 1
                    extra.append(row)

    rows = []
    for sq in pres.squares:
        row = [0] * len(columns)
        for e in sq:
            row[col_of[e]] += sign[e]
        rows.append(tuple(row))
    for (x, y), (t, z) in pres.relations:
        row = [0] * len(columns)
        for e, s in ((x, 1), (y, 1), (t, -1), (z, -1)):
            row[col_of[e]] += s * sign[e]
        rows.append(tuple(row))
    for d in extra:
        row = [0] * len(columns)
        for c, v in d.items():
            row[c] += v
        rows.append(tuple(row))
    return IntegerMatrix(tuple(rows), tuple(columns))


def smith_normal_form(m: IntegerMatrix) -> AbelianGroup:
    """Invariant factors and free rank of the cokernel of ``m``.

    Elimination always pivots on a nonzero entry of least absolute value
    in the remaining block; exact Python integers throughout.
    """
    nrows, ncols = m.shape
    A = [list(r) for r in m.rows]
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        pivot = _min_entry(A, t, nrows, ncols)
        if pivot is None:
            break
        _move_to(A, pivot, t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    qt = A[i][t] // p
                    if qt:
                        Ai, At = A[i], A[t]
                        for j in range(t, ncols):
                            Ai[j] -= qt * At[j]
                    dirty |= A[i][t] != 0
            for j in range(t + 1, ncols):
                if A[t][j]:
                    qt = A[t][j] // p
                    if qt:
                        for i in range(t, nrows):
                            A[i][j] -= qt * A[i][t]
                    dirty |= A[t][j] != 0
            if dirty:
                # a smaller remainder is left in row/column t
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, nrows) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, ncols) if A[t][j]]
                _, i, j = min(cand)
                _move_to(A, (i, j), t)
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            At, Ab = A[t], A[bad]
            for j in range(t, ncols):
                At[j] += Ab[j]
        diag.append(abs(A[t][t]))
        t += 1
    factors = tuple(d for d in diag if d > 1)
    return AbelianGroup(ncols - len(diag), factors)


def _min_entry(A, t, nrows, ncols):
    best = None
    for i in range(t, nrows):
        row = A[i]
        for j in range(t, ncols):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1:]
    return best[1:] if best else None


def _move_to(A, pos, t):
    i, j = pos
    if i != t:
        A[t], A[i] = A[i], A[t]
    if j != t:
        for row in A:
            row[t], row[j] = row[j], row[t]


def first_homology(pres: Presentation, convention: str = "paired") -> AbelianGroup:
    return smith_normal_form(abelianize(pres, convention))
