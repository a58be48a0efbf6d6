"""Free shifted graded Lie algebras on weighted graded generators.

The bracket has degree -1 and satisfies

    [x, y] = (-1)^{|x||y|} [y, x]
    (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0

and, in characteristic 3 (standard mode), [[x,x],x] = 0.

A basis is built weight by weight: all brackets of lower-weight normal forms
span the next weight, the relation instances are written in that span, and
the quotient is read off from a reduced echelon form of the relations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Union

from .linalg import reduced_echelon
from .scalar import Field, QQ


class WeightOverflowError(ValueError):
    """A bracket or word exceeds the weight truncation of a basis."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    weight: int = 1

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError("generator weight must be positive")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Bracket:
    left: "BracketWord"
    right: "BracketWord"
    degree: int = field(init=False, compare=False)
    weight: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degree", self.left.degree + self.right.degree - 1)
        object.__setattr__(self, "weight", self.left.weight + self.right.weight)

    def __str__(self):
        return f"[{self.left},{self.right}]"


BracketWord = Union[Generator, Bracket]


def bracket(u: BracketWord, v: BracketWord) -> Bracket:
    return Bracket(u, v)


class CharMode(enum.Enum):
    STANDARD = "standard"
    OPERADIC_CHAR3 = "operadic-char3"


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _pair_key(u: BracketWord, v: BracketWord):
    # smaller keys are kept as normal forms; prefer wt(left) <= wt(right)
    return (0 if u.weight <= v.weight else 1, str(Bracket(u, v)))


class LieBasis:
    """Basis of the free shifted Lie algebra up to weight ``w_max``.

    ``bracket_table[(u, v)]`` holds the normal-form expansion of [u, v] for
    every ordered pair of normal forms with ``wt(u) + wt(v) <= w_max``.
    """

    def __init__(self, generators, w_max: int, field: Field = QQ, mode: CharMode = CharMode.STANDARD):
        if w_max < 1:
            raise ValueError("w_max must be at least 1")
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if mode is CharMode.OPERADIC_CHAR3 and field.characteristic != 3:
            raise ValueError("operadic char-3 mode requires coefficients in F_3")
        self.generators = tuple(generators)
        self.w_max = w_max
        self.field = field
        self.mode = mode
        self.by_weight: dict[int, list[BracketWord]] = {}
        self.bracket_table: dict[tuple[BracketWord, BracketWord], dict[BracketWord, object]] = {}
        self._build()
        self.index = {u: i for i, u in enumerate(self.elements())}

    # -- construction ----------------------------------------------------

    def _build(self):
        F = self.field
        self.by_weight[1] = sorted(
            (g for g in self.generators if g.weight == 1), key=lambda g: (g.degree, g.name)
        )
        for w in range(2, self.w_max + 1):
            trees = []
            for w1 in range(1, w):
                for u, v in product(self.by_weight.get(w1, []), self.by_weight.get(w - w1, [])):
                    trees.append((u, v))
            trees.sort(key=lambda uv: _pair_key(*uv), reverse=True)
            col = {uv: i for i, uv in enumerate(trees)}
            rows = list(self._relations(w, col))
            pivots = reduced_echelon(rows, F)

            free = sorted(
                (uv for uv in trees if col[uv] not in pivots),
                key=lambda uv: _pair_key(*uv),
            )
            nf_of = {uv: Bracket(*uv) for uv in free}
            for uv in trees:
                i = col[uv]
                if i in pivots:
                    expansion = {
                        nf_of[trees[k]]: F.negate(c) for k, c in pivots[i].items() if k != i
                    }
                else:
                    expansion = {nf_of[uv]: F.one()}
                self.bracket_table[uv] = expansion
            gens_w = [g for g in self.generators if g.weight == w]
            self.by_weight[w] = sorted(
                list(nf_of.values()) + gens_w, key=lambda b: (b.degree, str(b))
            )

    def _relations(self, w: int, col):
        F = self.field
        nf = self.by_weight

        def tree(u, v, coeff, acc):
            k = col[(u, v)]
            acc[k] = F.add(acc.get(k, F.zero()), coeff)

        # graded symmetry
        for (u, v), k in col.items():
            row: dict[int, object] = {}
            tree(u, v, F.one(), row)
            tree(v, u, F.from_integer(-_sign(u.degree * v.degree)), row)
            yield row

        # graded Jacobi on ordered triples of normal forms
        for wa in range(1, w - 1):
            for wb in range(1, w - wa):
                wc = w - wa - wb
                for a, b, c in product(nf.get(wa, []), nf.get(wb, []), nf.get(wc, [])):
                    row = {}
                    for x, (y, z), e in (
                        (a, (b, c), a.degree * c.degree),
                        (b, (c, a), b.degree * a.degree),
                        (c, (a, b), c.degree * b.degree),
                    ):
                        s = F.from_integer(_sign(e))
                        for n, coeff in self.bracket_table[(y, z)].items():
                            tree(x, n, F.multiply(s, coeff), row)
                    yield row

        if F.characteristic == 3 and self.mode is CharMode.STANDARD and w % 3 == 0:
            for a in nf.get(w // 3, []):
                if a.degree % 2:
                    continue
                row = {}
                for n, coeff in self.bracket_table[(a, a)].items():
                    tree(n, a, coeff, row)
                yield row

    # -- queries -----------------------------------------------------------

    def elements(self) -> list[BracketWord]:
        return [u for w in sorted(self.by_weight) for u in self.by_weight[w]]

    def basis(self, weight: int, degree: int | None = None) -> list[BracketWord]:
        if weight > self.w_max:
            raise WeightOverflowError(f"weight {weight} exceeds w_max={self.w_max}")
        out = self.by_weight.get(weight, [])
        return [u for u in out if degree is None or u.degree == degree]

    def dim(self, weight: int, degree: int | None = None) -> int:
        return len(self.basis(weight, degree))

    def dims(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for u in self.elements():
            out[(u.weight, u.degree)] = out.get((u.weight, u.degree), 0) + 1
        return out

    def bracket(self, u: BracketWord, v: BracketWord) -> dict[BracketWord, object]:
        """[u, v] of two normal forms, as a normal-form combination."""
        if u.weight + v.weight > self.w_max:
            raise WeightOverflowError(f"[{u},{v}] has weight {u.weight + v.weight} > {self.w_max}")
        return self.bracket_table[(u, v)]

    def normalize(self, word: BracketWord) -> dict[BracketWord, object]:
        """Expand an arbitrary bracket word in normal forms."""
        if word.weight > self.w_max:
            raise WeightOverflowError(f"{word} has weight {word.weight} > {self.w_max}")
        if isinstance(word, Generator):
            if word not in self.generators:
                raise ValueError(f"unknown generator {word}")
            return {word: self.field.one()}
        return self.combine_brackets(self.normalize(word.left), self.normalize(word.right))

    def combine_brackets(self, left: dict, right: dict) -> dict:
        """Bilinear extension of :meth:`bracket` to normal-form combinations."""
        F = self.field
        out: dict = {}
        for u, a in left.items():
            for v, b in right.items():
                ab = F.multiply(a, b)
                for n, c in self.bracket(u, v).items():
                    val = F.add(out.get(n, F.zero()), F.multiply(ab, c))
                    if F.is_zero(val):
                        out.pop(n, None)
                    else:
                        out[n] = val
        return out

    def normalize_combination(self, combo: dict) -> dict:
        F = self.field
        out: dict = {}
        for word, a in combo.items():
            for n, c in self.normalize(word).items():
                val = F.add(out.get(n, F.zero()), F.multiply(F.element(a), c))
                if F.is_zero(val):
                    out.pop(n, None)
                else:
                    out[n] = val
        return out

    def __repr__(self):
        return f"LieBasis({self.field}, w_max={self.w_max}, dims={self.dims()})"


def free_lie_basis(generators, w_max: int, field: Field = QQ, mode: CharMode = CharMode.STANDARD) -> LieBasis:
    return LieBasis(generators, w_max, field, mode)


X2 = Generator("x2", 2, 1)
