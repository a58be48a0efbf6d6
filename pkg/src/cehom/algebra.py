"""Graded-commutative coefficient algebras and the tensor Lie algebra A ⊗ L.

The surface algebras are the (reduced) cohomology rings used as
coefficients: for a closed genus-g surface the basis is d (degree 0, the
unit), a_i, b_i (degree 1) and c (degree 2) with a_i b_i = c; the
punctured-and-compactified variant drops d and is non-unital.

In the tensor algebra a cohomology class counts negatively:
``|y ⊗ x| = |x| - deg(y)``, and the bracket carries the Koszul sign of
moving x past y':

    [y ⊗ x, y' ⊗ x'] = (-1)^{|x| deg(y')} (y y') ⊗ [x, x']
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Mapping

from .scalar import Field, QQ
from .shifted_lie import BracketWord, LieBasis

KOSZUL_SIGN_TAG = "(-1)^{|x|*deg(y')}"


class AlgebraError(ValueError):
    """Invalid algebra presentation."""


class SurfaceVariant(enum.Enum):
    CLOSED = "closed"
    PUNCTURED = "punctured"


class GradedCommutativeAlgebra:
    """Finite graded-commutative algebra given by a multiplication table.

    ``products[(l, r)]`` maps basis names to integer or rational
    coefficients; missing pairs multiply to zero.
    """

    def __init__(self, basis, products, unit=None, field: Field = QQ, name: str = "custom"):
        self.names = [n for n, _ in basis]
        self.degree = dict(basis)
        if len(self.degree) != len(self.names):
            raise AlgebraError("basis names must be unique")
        self.unit = unit
        self.field = field
        self.name = name
        table: dict[tuple[str, str], dict[str, object]] = {}
        for (l, r), res in products.items():
            for n in (l, r, *res):
                if n not in self.degree:
                    raise AlgebraError(f"unknown basis element {n!r}")
            res = {n: c for n, c in res.items() if c != 0}
            for n in res:
                if self.degree[n] != self.degree[l] + self.degree[r]:
                    raise AlgebraError(f"{l}*{r} -> {n} is not degree-homogeneous")
            if res:
                table[(l, r)] = res
        if unit is not None:
            if unit not in self.degree or self.degree[unit] != 0:
                raise AlgebraError("unit must be a degree-0 basis element")
            for n in self.names:
                for key in ((unit, n), (n, unit)):
                    if table.setdefault(key, {n: 1}) != {n: 1}:
                        raise AlgebraError(f"{key[0]}*{key[1]} contradicts the unit")
        # complete with the graded-commuted products
        for (l, r), res in list(table.items()):
            s = -1 if self.degree[l] * self.degree[r] % 2 else 1
            mirrored = {n: s * c for n, c in res.items()}
            existing = table.get((r, l))
            if existing is None:
                table[(r, l)] = mirrored
            elif existing != mirrored:
                raise AlgebraError(f"{l}*{r} and {r}*{l} violate graded commutativity")
        self.table = table
        self._check_associative()

    def multiply(self, l: str, r: str) -> dict[str, object]:
        return self.table.get((l, r), {})

    def _mul_combo(self, combo: Mapping[str, object], r: str, right: bool = True):
        out: dict[str, object] = {}
        for n, c in combo.items():
            res = self.multiply(n, r) if right else self.multiply(r, n)
            for m, e in res.items():
                out[m] = out.get(m, 0) + c * e
        return {m: c for m, c in out.items() if c != 0}

    def _check_associative(self):
        for a, b, c in product(self.names, repeat=3):
            left = self._mul_combo(self.multiply(a, b), c)
            right = self._mul_combo(self.multiply(b, c), a, right=False)
            if left != right:
                raise AlgebraError(f"({a}{b}){c} != {a}({b}{c})")

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"GradedCommutativeAlgebra({self.name}, basis={self.names})"

    # -- JSON presentation -------------------------------------------------

    def to_json(self) -> dict:
        prods = []
        for (l, r), res in sorted(self.table.items()):
            if self.unit in (l, r):
                continue
            prods.append(
                {"left": l, "right": r, "result": [{"name": n, "coeff": _json_num(c)} for n, c in res.items()]}
            )
        data = {
            "basis": [{"name": n, "degree": self.degree[n]} for n in self.names],
            "products": prods,
        }
        if self.unit is not None:
            data["unit"] = self.unit
        return data

    @classmethod
    def from_json(cls, data, field: Field = QQ, name: str = "custom") -> GradedCommutativeAlgebra:
        if isinstance(data, (str, Path)):
            try:
                data = json.loads(Path(data).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise AlgebraError(f"cannot read algebra file: {exc}") from exc
        if not isinstance(data, dict) or not isinstance(data.get("basis"), list):
            raise AlgebraError("algebra JSON needs a 'basis' list")
        try:
            basis = [(str(b["name"]), _as_int(b["degree"])) for b in data["basis"]]
            products = {}
            for p in data.get("products", []):
                res = {}
                for term in p["result"]:
                    res[str(term["name"])] = _as_coeff(term.get("coeff", 1))
                products[(str(p["left"]), str(p["right"]))] = res
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed algebra JSON: {exc!r}") from exc
        return cls(basis, products, unit=data.get("unit"), field=field, name=name)


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise AlgebraError(f"expected an integer, got {v!r}")
    return v


def _as_coeff(v):
    if isinstance(v, bool):
        raise AlgebraError("boolean coefficient")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            pass
    raise AlgebraError(f"coefficient must be an integer or a fraction string, got {v!r}")


def _json_num(c):
    if isinstance(c, int):
        return c
    return int(c) if c.denominator == 1 else str(c)


def surface_cohomology(genus: int, variant: SurfaceVariant = SurfaceVariant.CLOSED, field: Field = QQ):
    """Cohomology ring of a closed surface, or of the one-point
    compactification of a once-punctured surface (reduced, non-unital)."""
    if genus < 0:
        raise AlgebraError("genus must be non-negative")
    variant = SurfaceVariant(variant)
    basis = []
    if variant is SurfaceVariant.CLOSED:
        basis.append(("d", 0))
    for i in range(1, genus + 1):
        basis += [(f"a{i}", 1), (f"b{i}", 1)]
    basis.append(("c", 2))
    products = {(f"a{i}", f"b{i}"): {"c": 1} for i in range(1, genus + 1)}
    unit = "d" if variant is SurfaceVariant.CLOSED else None
    label = f"{variant.value}(g={genus})"
    return GradedCommutativeAlgebra(basis, products, unit=unit, field=field, name=label)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorElement:
    coeff: str
    word: BracketWord
    degree: int = field(compare=False)
    weight: int = field(compare=False)

    def __str__(self):
        return f"{self.coeff}⊗{self.word}"


class TensorLieAlgebra:
    """A ⊗ L with basis {y ⊗ x} and the Koszul-signed bracket."""

    def __init__(self, algebra: GradedCommutativeAlgebra, lie: LieBasis):
        if algebra.field != lie.field:
            raise AlgebraError(f"field mismatch: algebra over {algebra.field}, Lie basis over {lie.field}")
        self.algebra = algebra
        self.lie = lie
        self.field = lie.field
        self.w_max = lie.w_max
        elems = []
        for x in lie.elements():
            for y in algebra.names:
                elems.append(TensorElement(y, x, x.degree - algebra.degree[y], x.weight))
        elems.sort(key=lambda e: (e.weight, lie.index[e.word], algebra.names.index(e.coeff)))
        self.basis = elems
        self.index = {e: i for i, e in enumerate(elems)}
        self._lookup = {(e.coeff, e.word): e for e in elems}
        self._table: dict[tuple[int, int], dict[int, object]] = {}

    def element(self, coeff: str, word: BracketWord) -> TensorElement:
        return self._lookup[(coeff, word)]

    def by_label(self, label: str) -> TensorElement:
        for e in self.basis:
            if str(e) == label:
                return e
        raise KeyError(label)

    def bracket_index(self, i: int, j: int) -> dict[int, object]:
        """[e_i, e_j] as {index: coefficient}; cached."""
        key = (i, j)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        F = self.field
        u, v = self.basis[i], self.basis[j]
        out: dict[int, object] = {}
        if u.weight + v.weight <= self.w_max:
            prod_ = self.algebra.multiply(u.coeff, v.coeff)
            if prod_:
                sign = -1 if u.word.degree * self.algebra.degree[v.coeff] % 2 else 1
                lie = self.lie.bracket(u.word, v.word)
                for y, a in prod_.items():
                    for x, b in lie.items():
                        k = self.index[self._lookup[(y, x)]]
                        val = F.add(out.get(k, F.zero()), F.multiply(F.element(sign * a), b))
                        if F.is_zero(val):
                            out.pop(k, None)
                        else:
                            out[k] = val
        self._table[key] = out
        return out

    def bracket(self, u: TensorElement, v: TensorElement) -> dict[TensorElement, object]:
        return {self.basis[k]: c for k, c in self.bracket_index(self.index[u], self.index[v]).items()}

    def dims(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for e in self.basis:
            out[(e.weight, e.degree)] = out.get((e.weight, e.degree), 0) + 1
        return out

    def axiom_violations(self, max_weight: int | None = None) -> list[str]:
        """Graded symmetry and Jacobi checked on all basis pairs/triples."""
        F = self.field
        wmax = self.w_max if max_weight is None else max_weight
        n = len(self.basis)
        bad = []

        def combo_bracket(i, combo, left=True):
            acc: dict[int, object] = {}
            for k, c in combo.items():
                res = self.bracket_index(i, k) if left else self.bracket_index(k, i)
                for m, e in res.items():
                    acc[m] = F.add(acc.get(m, F.zero()), F.multiply(c, e))
            return {m: c for m, c in acc.items() if not F.is_zero(c)}

        deg = [e.degree for e in self.basis]
        wt = [e.weight for e in self.basis]
        for i in range(n):
            for j in range(n):
                if wt[i] + wt[j] > wmax:
                    continue
                s = F.from_integer(-1 if deg[i] * deg[j] % 2 else 1)
                lhs = self.bracket_index(i, j)
                rhs = {k: F.multiply(s, c) for k, c in self.bracket_index(j, i).items()}
                if lhs != rhs:
                    bad.append(f"symmetry fails for ({self.basis[i]}, {self.basis[j]})")
        for i, j, k in product(range(n), repeat=3):
            if wt[i] + wt[j] + wt[k] > wmax:
                continue
            acc: dict[int, object] = {}
            for a, (b, c), e in ((i, (j, k), deg[i] * deg[k]), (j, (k, i), deg[j] * deg[i]), (k, (i, j), deg[k] * deg[j])):
                s = F.from_integer(-1 if e % 2 else 1)
                for m, v in combo_bracket(a, self.bracket_index(b, c)).items():
                    acc[m] = F.add(acc.get(m, F.zero()), F.multiply(s, v))
            if any(not F.is_zero(v) for v in acc.values()):
                bad.append(f"Jacobi fails for ({self.basis[i]}, {self.basis[j]}, {self.basis[k]})")
        return bad

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"TensorLieAlgebra({self.algebra.name} ⊗ Lie, {self.field}, dim={len(self)})"


def tensor_lie(algebra: GradedCommutativeAlgebra, lie: LieBasis) -> TensorLieAlgebra:
    return TensorLieAlgebra(algebra, lie)
