"""Weighted bigraded vector spaces, sparse maps and exact homology.

Ranks are computed by sparse row reduction: straightforward pivoting over
F_p and fraction-free (content-reduced integer) elimination over Q.  A naive
dense elimination is kept as an independent oracle.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

from .scalar import Field, PrimeField, Rationals


class GradingError(ValueError):
    """A map does not respect the grading it was declared with."""


class BoundaryError(ArithmeticError):
    """Composite of consecutive differentials is nonzero."""

    def __init__(self, weight, t, length, witness=None):
        self.weight, self.t, self.length, self.witness = weight, t, length, witness
        super().__init__(
            f"d∘d != 0 at weight={weight}, t={t}, word length={length}"
            + (f" (source {witness})" if witness is not None else "")
        )


@dataclass(frozen=True, order=True)
class Bidegree:
    weight: int
    internal_degree: int
    word_length: int

    @property
    def s(self) -> int:
        return self.word_length - 1

    @property
    def t(self) -> int:
        return self.internal_degree - self.s

    @property
    def total(self) -> int:
        return self.s + self.t


class BasedSpace:
    """Finite-dimensional space with an ordered basis of hashable labels."""

    def __init__(self, labels: Iterable[Hashable], degrees: Mapping[Hashable, Bidegree]):
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("basis labels must be unique")
        missing = [lab for lab in self.labels if lab not in degrees]
        if missing:
            raise ValueError(f"no degree for labels {missing[:3]}")
        self.degrees = {lab: degrees[lab] for lab in self.labels}

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.index

    def __repr__(self):
        return f"BasedSpace(dim={len(self)})"


class SparseMap:
    """Linear map stored column-wise: ``columns[src] = {dst: coeff}``.

    ``shift`` is the declared grading contract as (dweight, ddegree, dlength);
    every entry is checked against it at construction.
    """

    def __init__(
        self,
        domain: BasedSpace,
        codomain: BasedSpace,
        entries: Iterable[tuple[Hashable, Hashable, object]] | Mapping[Hashable, Mapping[Hashable, object]],
        shift: tuple[int, int, int] | None = None,
    ):
        self.domain = domain
        self.codomain = codomain
        self.shift = shift
        columns: dict[Hashable, dict[Hashable, object]] = {}
        if isinstance(entries, Mapping):
            triples = ((r, c, v) for c, col in entries.items() for r, v in col.items())
        else:
            triples = entries
        for row, col, val in triples:
            if col not in domain:
                raise ValueError(f"column label {col!r} not in domain")
            if row not in codomain:
                raise ValueError(f"row label {row!r} not in codomain")
            if val == 0:
                continue
            bucket = columns.setdefault(col, {})
            if row in bucket:
                raise ValueError(f"duplicate entry ({row!r}, {col!r})")
            bucket[row] = val
            if shift is not None:
                a, b = domain.degrees[col], codomain.degrees[row]
                got = (b.weight - a.weight, b.internal_degree - a.internal_degree, b.word_length - a.word_length)
                if got != tuple(shift):
                    raise GradingError(f"entry {col!r} -> {row!r} has shift {got}, expected {tuple(shift)}")
        self.columns = columns

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def entries(self):
        for col, bucket in self.columns.items():
            for row, val in bucket.items():
                yield row, col, val

    def nnz(self) -> int:
        return sum(len(b) for b in self.columns.values())

    def to_dense(self, field: Field) -> list[list]:
        mat = [[field.zero() for _ in range(len(self.domain))] for _ in range(len(self.codomain))]
        for row, col, val in self.entries():
            mat[self.codomain.index[row]][self.domain.index[col]] = field.element(val)
        return mat

    def __repr__(self):
        return f"SparseMap({len(self.domain)} -> {len(self.codomain)}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# elimination kernels


def _rank_rows_mod_p(rows: Iterable[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[lead]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()}


def _rank_rows_rational(rows: Iterable[dict[int, object]]) -> int:
    """Fraction-free elimination: rows are scaled to primitive integer vectors
    and combined as ``a*row - b*pivot`` followed by content removal."""
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        den = 1
        for v in raw.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        row = {k: int(v * den) for k, v in raw.items() if v != 0}
        row = _primitive(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {}
            for k in row.keys() | piv.keys():
                nv = a * row.get(k, 0) - b * piv.get(k, 0)
                if nv:
                    new[k] = nv
            row = _primitive(new) if new else new
    return len(pivots)


def rank_of_rows(rows: Sequence[Mapping[int, object]], field: Field) -> int:
    if isinstance(field, PrimeField):
        return _rank_rows_mod_p(({k: field.element(v) for k, v in r.items()} for r in rows), field.p)
    if isinstance(field, Rationals):
        return _rank_rows_rational(({k: Fraction(v) for k, v in r.items()} for r in rows))
    raise TypeError(f"unsupported field {field!r}")


def _map_rows(m: SparseMap, cols: Iterable[Hashable] | None = None) -> list[dict[int, object]]:
    # rows of the transpose, keyed by codomain position so pivots follow label order
    idx = m.codomain.index
    src = m.columns if cols is None else {c: m.columns[c] for c in cols if c in m.columns}
    return [{idx[r]: v for r, v in src[c].items()} for c in m.domain.labels if c in src]


def rank(m: SparseMap, field: Field) -> int:
    """Exact rank of ``m`` over ``field``."""
    return rank_of_rows(_map_rows(m), field)


def reduced_echelon(rows: Iterable[Mapping[int, object]], field: Field) -> dict[int, dict[int, object]]:
    """Fully reduced row echelon form of sparse rows, keyed by pivot column.

    Pivots are the smallest column index of each row; every pivot row has
    leading coefficient 1 and no other pivot column appears in it.
    """
    pivots: dict[int, dict[int, object]] = {}
    for raw in rows:
        row = {k: field.element(v) for k, v in raw.items()}
        row = {k: v for k, v in row.items() if not field.is_zero(v)}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                for k in [k for k in row if k != lead and k in pivots]:
                    if k in row:
                        _axpy(row, field.negate(row[k]), pivots[k], field)
                inv = field.invert(row[lead])
                row = {k: field.multiply(v, inv) for k, v in row.items()}
                for other in pivots.values():
                    f = other.get(lead)
                    if f is not None:
                        _axpy(other, field.negate(f), row, field)
                pivots[lead] = row
                break
            _axpy(row, field.negate(row[lead]), piv, field)
    return pivots


def _axpy(target: dict, a, src: Mapping, field: Field) -> None:
    for k, v in src.items():
        nv = field.add(target.get(k, field.zero()), field.multiply(a, v))
        if field.is_zero(nv):
            target.pop(k, None)
        else:
            target[k] = nv


def dense_rank(matrix: Sequence[Sequence], field: Field) -> int:
    """Schoolbook Gaussian elimination on a dense matrix; test oracle only."""
    a = [[field.element(x) for x in row] for row in matrix]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not field.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.invert(a[r][c])
        a[r] = [field.multiply(inv, x) for x in a[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [field.sub(x, field.multiply(f, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


# ---------------------------------------------------------------------------
# dimension tables


@dataclass
class DimensionTable:
    """Dimensions keyed by (weight, total degree), optionally refined by (s, t).

    Absent keys mean 0; only positive dimensions are stored.
    """

    totals: dict[tuple[int, int], int] = field(default_factory=dict)
    bidegrees: dict[tuple[int, int, int], int] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def add(self, weight: int, s: int, t: int, dim: int) -> None:
        if dim < 0:
            raise ValueError("negative dimension")
        if dim == 0:
            return
        key = (weight, s, t)
        self.bidegrees[key] = self.bidegrees.get(key, 0) + dim
        tk = (weight, s + t)
        self.totals[tk] = self.totals.get(tk, 0) + dim

    def get(self, weight: int, degree: int) -> int:
        return self.totals.get((weight, degree), 0)

    def at(self, weight: int, s: int, t: int) -> int:
        return self.bidegrees.get((weight, s, t), 0)

    def weights(self) -> list[int]:
        return sorted({w for w, _ in self.totals} | set(self.metadata.get("weights", ())))

    def by_degree(self, weight: int) -> dict[int, int]:
        return {d: n for (w, d), n in sorted(self.totals.items()) if w == weight}

    def dims_list(self, weight: int, start: int = 0) -> list[int]:
        """Dimensions in degrees ``start, start+1, ...`` up to the top nonzero one."""
        degs = self.by_degree(weight)
        if not degs:
            return []
        return [degs.get(d, 0) for d in range(start, max(degs) + 1)]

    def total_dim(self, weight: int) -> int:
        return sum(self.by_degree(weight).values())

    def bidegree_rows(self, weight: int) -> list[dict]:
        return [
            {"s": s, "t": t, "dim": n}
            for (w, s, t), n in sorted(self.bidegrees.items())
            if w == weight
        ]

    def merge(self, other: DimensionTable) -> DimensionTable:
        out = DimensionTable(dict(self.totals), dict(self.bidegrees), dict(self.metadata))
        for (w, s, t), n in other.bidegrees.items():
            out.add(w, s, t, n)
        # totals without a bidegree refinement
        for (w, d), n in other.totals.items():
            refined = sum(m for (w2, s, t), m in other.bidegrees.items() if w2 == w and s + t == d)
            if n > refined:
                out.totals[(w, d)] = out.totals.get((w, d), 0) + n - refined
        ws = set(self.metadata.get("weights", ())) | set(other.metadata.get("weights", ()))
        if ws:
            out.metadata["weights"] = sorted(ws)
        return out

    def to_json(self) -> dict:
        return {
            "totals": [{"weight": w, "degree": d, "dim": n} for (w, d), n in sorted(self.totals.items())],
            "bidegrees": [
                {"weight": w, "s": s, "t": t, "dim": n} for (w, s, t), n in sorted(self.bidegrees.items())
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> DimensionTable:
        tab = cls(metadata=dict(data.get("metadata", {})))
        for row in data.get("bidegrees", []):
            tab.bidegrees[(row["weight"], row["s"], row["t"])] = row["dim"]
        for row in data.get("totals", []):
            tab.totals[(row["weight"], row["degree"])] = row["dim"]
        return tab

    def same_dims(self, other: DimensionTable) -> bool:
        return self.totals == other.totals and self.bidegrees == other.bidegrees


# ---------------------------------------------------------------------------
# homology of graded complexes


def compose(f: SparseMap, g: SparseMap, field: Field) -> dict[Hashable, dict[Hashable, object]]:
    """Columns of ``f ∘ g`` (apply g first), dropping zeros."""
    out = {}
    for col, bucket in g.columns.items():
        acc: dict = {}
        for mid, a in bucket.items():
            for row, b in f.columns.get(mid, {}).items():
                acc[row] = field.add(acc.get(row, field.zero()), field.multiply(field.element(a), field.element(b)))
        acc = {r: v for r, v in acc.items() if not field.is_zero(v)}
        if acc:
            out[col] = acc
    return out


def check_square_zero(maps: Sequence[SparseMap], field: Field) -> None:
    """Raise :class:`BoundaryError` at the first block where d∘d != 0."""
    by_domain = {id(m.domain): m for m in maps}
    failures = []
    for m in maps:
        nxt = by_domain.get(id(m.codomain))
        if nxt is None:
            continue
        for col, acc in compose(nxt, m, field).items():
            d = m.domain.degrees[col]
            failures.append((d.weight, d.t, d.word_length, col))
    if failures:
        w, t, ell, col = min(failures, key=lambda f: f[:3])
        raise BoundaryError(w, t, ell, col)


def chain_dims(maps: Sequence[SparseMap]) -> dict[tuple[int, int, int], int]:
    """Chain-group dimensions keyed by (weight, t, word length)."""
    seen: dict[int, BasedSpace] = {}
    for m in maps:
        seen[id(m.domain)] = m.domain
        seen[id(m.codomain)] = m.codomain
    out: dict[tuple[int, int, int], int] = defaultdict(int)
    for sp in seen.values():
        for lab in sp:
            d = sp.degrees[lab]
            out[(d.weight, d.t, d.word_length)] += 1
    return dict(out)


def block_ranks(maps: Sequence[SparseMap], field: Field) -> dict[tuple[int, int, int], int]:
    """rank of each differential restricted to a (weight, t) block, keyed by
    (weight, t, source word length)."""
    out: dict[tuple[int, int, int], int] = {}
    for m in maps:
        groups: dict[tuple[int, int, int], list] = defaultdict(list)
        for col in m.columns:
            d = m.domain.degrees[col]
            groups[(d.weight, d.t, d.word_length)].append(col)
        for key, cols in groups.items():
            out[key] = out.get(key, 0) + rank_of_rows(_map_rows(m, cols), field)
    return out


def homology_dims(maps: Sequence[SparseMap], field: Field, check: bool = True) -> DimensionTable:
    """Homology of a complex given by its differentials ``C_l -> C_(l-1)``.

    Every chain space must appear as the domain or codomain of some map (use an
    empty codomain for the bottom differential).  Dimensions are grouped per
    (weight, t) and reported at total degree ``s + t`` with ``s = l - 1``.
    """
    if check:
        check_square_zero(maps, field)
    dims = chain_dims(maps)
    ranks = block_ranks(maps, field)
    table = DimensionTable(metadata={"field": field.name})
    weights = set()
    for (w, t, ell), n in sorted(dims.items()):
        weights.add(w)
        h = n - ranks.get((w, t, ell), 0) - ranks.get((w, t, ell + 1), 0)
        if h < 0:
            raise ArithmeticError(f"negative homology at weight={w}, t={t}, l={ell}")
        table.add(w, ell - 1, t, h)
    table.metadata["weights"] = sorted(weights)
    return table


def dense_homology_dims(maps: Sequence[SparseMap], field: Field) -> DimensionTable:
    """Independent oracle for :func:`homology_dims`.

    Builds, for every (weight, t) column, the full dense matrix of each
    differential and runs :func:`dense_rank` on it.  Shares no elimination or
    blocking code with the sparse path.
    """
    table = DimensionTable(metadata={"field": field.name})
    cells: dict[tuple[int, int], dict[int, list]] = {}
    all_spaces = {id(m.domain): m.domain for m in maps} | {id(m.codomain): m.codomain for m in maps}
    for sp in all_spaces.values():
        for lab in sp.labels:
            d = sp.degrees[lab]
            cells.setdefault((d.weight, d.t), {}).setdefault(d.word_length, []).append(lab)
    maps_by_len = {}
    for m in maps:
        if m.domain.labels:
            maps_by_len[m.domain.degrees[m.domain.labels[0]].word_length] = m
    ranks: dict[tuple[int, int, int], int] = {}
    for (w, t), levels in cells.items():
        for ell, cols in levels.items():
            m = maps_by_len.get(ell)
            rows = levels.get(ell - 1, [])
            if m is None or not cols or not rows:
                ranks[(w, t, ell)] = 0
                continue
            mat = []
            for r in rows:
                mat.append([m.columns.get(c, {}).get(r, 0) for c in cols])
            ranks[(w, t, ell)] = dense_rank(mat, field)
    weights = set()
    for (w, t), levels in sorted(cells.items()):
        weights.add(w)
        for ell, labs in sorted(levels.items()):
            h = len(labs) - ranks.get((w, t, ell), 0) - ranks.get((w, t, ell + 1), 0)
            table.add(w, ell - 1, t, h)
    table.metadata["weights"] = sorted(weights)
    return table
