"""Weight-truncated Chevalley–Eilenberg complexes of tensor Lie algebras.

A monomial is ``γ_{k_1}(x_1)…γ_{k_m}(x_m)⟨y_1,…,y_n⟩`` with the x's even and
the y's odd basis elements of 𝔤.  Word length ``l = Σk_i + n``, internal
degree ``d = Σk_i|x_i| + Σ|y_j|``; the bar bidegree is ``s = l - 1`` and
``t = d - s`` so the total degree ``s + t`` is the internal degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    KOSZUL_SIGN_TAG,
    GradedCommutativeAlgebra,
    SurfaceVariant,
    TensorLieAlgebra,
    surface_cohomology,
    tensor_lie,
)
from .linalg import (
    BasedSpace,
    Bidegree,
    DimensionTable,
    SparseMap,
    check_square_zero,
    dense_homology_dims,
    homology_dims,
)
from .scalar import Field, QQ, field_create
from .shifted_lie import X2, CharMode, LieBasis

BIDEGREE_TAG = "s=len-1,t=deg-s"
FAULTS = ("sign-flip",)


@dataclass(frozen=True, order=True)
class CEMonomial:
    """Indices refer to the basis of the ambient tensor Lie algebra."""

    even: tuple[tuple[int, int], ...]
    odd: tuple[int, ...]

    @property
    def length(self) -> int:
        return sum(k for _, k in self.even) + len(self.odd)

    def render(self, g: TensorLieAlgebra) -> str:
        parts = [f"γ{k}({g.basis[i]})" for i, k in self.even]
        if self.odd or not parts:
            parts.append("⟨" + ", ".join(str(g.basis[i]) for i in self.odd) + "⟩")
        return "".join(parts)


def monomial_bidegree(m: CEMonomial, g: TensorLieAlgebra) -> Bidegree:
    B = g.basis
    w = sum(k * B[i].weight for i, k in m.even) + sum(B[j].weight for j in m.odd)
    d = sum(k * B[i].degree for i, k in m.even) + sum(B[j].degree for j in m.odd)
    return Bidegree(w, d, m.length)


def ce_basis(g: TensorLieAlgebra, weight: int) -> list[CEMonomial]:
    """All CE monomials of total weight exactly ``weight``, sorted."""
    if weight < 1:
        return []
    if weight > g.w_max:
        raise ValueError(f"weight {weight} exceeds the Lie truncation w_max={g.w_max}")
    elems = [(i, e.weight, e.degree % 2 == 0) for i, e in enumerate(g.basis) if e.weight <= weight]
    out: list[CEMonomial] = []

    def rec(pos: int, left: int, even: list, odd: list):
        if left == 0:
            out.append(CEMonomial(tuple(even), tuple(odd)))
            return
        if pos == len(elems):
            return
        i, w, is_even = elems[pos]
        rec(pos + 1, left, even, odd)
        if is_even:
            k = 1
            while k * w <= left:
                even.append((i, k))
                rec(pos + 1, left - k * w, even, odd)
                even.pop()
                k += 1
        elif w <= left:
            odd.append(i)
            rec(pos + 1, left - w, even, odd)
            odd.pop()

    rec(0, weight, [], [])
    out.sort()
    return out


def _insert_odd(odd: tuple[int, ...], k: int):
    """Put k in front of ``odd`` and sort; returns (sign, tuple) or None."""
    if k in odd:
        return None
    pos = sum(1 for j in odd if j < k)
    new = odd[:pos] + (k,) + odd[pos:]
    return (-1 if pos % 2 else 1), new


def _insert_odd_unsigned(odd, k):
    ins = _insert_odd(odd, k)
    return None if ins is None else (1, ins[1])


class _Accumulator:
    def __init__(self, field: Field):
        self.F = field
        self.terms: dict[CEMonomial, object] = {}

    def add(self, mono: CEMonomial, coeff):
        F = self.F
        val = F.add(self.terms.get(mono, F.zero()), coeff)
        if F.is_zero(val):
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = val


def ce_differential(m: CEMonomial, g: TensorLieAlgebra, fault: str | None = None) -> dict[CEMonomial, object]:
    """The four-term CE differential of a monomial, in canonical form.

    ``fault="sign-flip"`` drops the reordering sign when a bracket is sorted
    into the exterior part; it exists only to test that d∘d != 0 is caught.
    """
    F = g.field
    insert = _insert_odd if fault is None else _insert_odd_unsigned
    acc = _Accumulator(F)
    even = dict(m.even)
    odd = m.odd
    xs = [i for i, _ in m.even]
    half = F.invert(F.from_integer(2))

    def even_minus(*drops: tuple[int, int]) -> dict[int, int] | None:
        e = dict(even)
        for i, by in drops:
            e[i] -= by
            if e[i] < 0:
                return None
            if e[i] == 0:
                del e[i]
        return e

    def emit(e: dict[int, int], new_odd: tuple[int, ...], coeff):
        acc.add(CEMonomial(tuple(sorted(e.items())), new_odd), coeff)

    # even-even pairs
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            i, j = xs[a], xs[b]
            e = even_minus((i, 1), (j, 1))
            for k, c in g.bracket_index(i, j).items():
                ins = insert(odd, k)
                if ins is not None:
                    emit(e, ins[1], F.multiply(F.from_integer(ins[0]), c))

    # odd-odd pairs, positions are 1-based in the printed sign
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            sign = -1 if (a + 1 + b + 1 - 1) % 2 else 1
            rest = odd[:a] + odd[a + 1 : b] + odd[b + 1 :]
            for k, c in g.bracket_index(odd[a], odd[b]).items():
                ins = insert(rest, k)
                if ins is not None:
                    emit(even, ins[1], F.multiply(F.from_integer(sign * ins[0]), c))

    # self-brackets with the 1/2
    for i in xs:
        if even[i] < 2:
            continue
        e = even_minus((i, 2))
        for k, c in g.bracket_index(i, i).items():
            ins = _insert_odd(odd, k)
            if ins is not None:
                emit(e, ins[1], F.multiply(F.multiply(half, F.from_integer(ins[0])), c))

    # mixed even-odd brackets, landing in the divided-power part
    for i in xs:
        for b, y in enumerate(odd):
            sign = -1 if b % 2 else 1
            rest = odd[:b] + odd[b + 1 :]
            base = even_minus((i, 1))
            for k, c in g.bracket_index(i, y).items():
                e = dict(base)
                have = e.get(k, 0)
                e[k] = have + 1
                # γ_1(u)γ_h(u) = (h+1) γ_{h+1}(u)
                coeff = F.multiply(F.from_integer(sign * (have + 1)), c)
                emit(e, rest, coeff)
    return acc.terms


class CEComplex:
    """Weight-``k`` part of CE(𝔤), split by word length."""

    def __init__(self, g: TensorLieAlgebra, weight: int, fault: str | None = None):
        if fault is not None and fault not in FAULTS:
            raise ValueError(f"unknown fault {fault!r}")
        self.g = g
        self.field = g.field
        self.weight = weight
        self.fault = fault
        monos = ce_basis(g, weight)
        self.degrees = {m: monomial_bidegree(m, g) for m in monos}
        by_len: dict[int, list[CEMonomial]] = {}
        for m in monos:
            by_len.setdefault(m.length, []).append(m)
        self.max_length = max(by_len, default=0)
        self.spaces = {
            ell: BasedSpace(by_len.get(ell, []), self.degrees) for ell in range(0, self.max_length + 1)
        }
        self.differentials: list[SparseMap] = []
        for ell in range(1, self.max_length + 1):
            cols = {m: ce_differential(m, g, fault) for m in self.spaces[ell]}
            self.differentials.append(SparseMap(self.spaces[ell], self.spaces[ell - 1], cols, shift=(0, -1, -1)))

    def monomials(self) -> list[CEMonomial]:
        return [m for ell in sorted(self.spaces) for m in self.spaces[ell]]

    def __len__(self):
        return len(self.degrees)

    def chain_counts(self) -> dict[tuple[int, int], int]:
        """Number of monomials per (word length, internal degree)."""
        out: dict[tuple[int, int], int] = {}
        for d in self.degrees.values():
            out[(d.word_length, d.internal_degree)] = out.get((d.word_length, d.internal_degree), 0) + 1
        return out

    def check(self) -> None:
        check_square_zero(self.differentials, self.field)

    def homology(self, check: bool = True, oracle: bool = False) -> DimensionTable:
        if oracle:
            if check:
                self.check()
            tab = dense_homology_dims(self.differentials, self.field)
        else:
            tab = homology_dims(self.differentials, self.field, check=check)
        tab.metadata.update(conventions())
        tab.metadata["weights"] = [self.weight]
        return tab


def conventions() -> dict:
    return {"koszul_sign": KOSZUL_SIGN_TAG, "bidegree": BIDEGREE_TAG}


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class Surface:
    """Which coefficient algebra to use: closed or punctured genus-g surface,
    or a custom algebra presentation (JSON-compatible dict, frozen as text)."""

    kind: str = "closed"
    genus: int = 1
    algebra_json: str | None = None

    def __post_init__(self):
        if self.kind not in ("closed", "punctured", "custom"):
            raise ValueError(f"unknown surface kind {self.kind!r}")
        if self.kind == "custom" and self.algebra_json is None:
            raise ValueError("custom surface needs an algebra presentation")
        if self.kind != "custom" and self.genus < 0:
            raise ValueError("genus must be non-negative")

    @classmethod
    def torus(cls) -> Surface:
        return cls("closed", 1)

    @classmethod
    def punctured(cls, genus: int) -> Surface:
        return cls("punctured", genus)

    @property
    def label(self) -> str:
        if self.kind == "custom":
            return "custom"
        if self.kind == "closed" and self.genus == 1:
            return "torus"
        return f"{self.kind}(g={self.genus})"

    @property
    def covered_by_theorems(self) -> bool:
        """Torus and punctured surfaces of positive genus."""
        if self.kind == "closed":
            return self.genus == 1
        return self.kind == "punctured" and self.genus >= 1

    def warnings(self) -> list[str]:
        if self.covered_by_theorems:
            return []
        if self.kind == "closed" and self.genus == 0:
            return ["closed genus-0 surface is outside the mod-p theorems"]
        if self.kind == "closed":
            return ["mod-p comparison theorem covers the torus only among closed surfaces"]
        return [f"{self.label} is outside the mod-p theorems"]

    def algebra(self, field: Field) -> GradedCommutativeAlgebra:
        if self.kind == "custom":
            import json

            return GradedCommutativeAlgebra.from_json(json.loads(self.algebra_json), field=field)
        return surface_cohomology(self.genus, SurfaceVariant(self.kind), field)


@lru_cache(maxsize=None)
def lie_for(field: Field, w_max: int, mode: CharMode = CharMode.STANDARD) -> LieBasis:
    return LieBasis([X2], w_max, field, mode)


@lru_cache(maxsize=64)
def tensor_for(surface: Surface, field: Field, w_max: int) -> TensorLieAlgebra:
    return tensor_lie(surface.algebra(field), lie_for(field, w_max))


@lru_cache(maxsize=256)
def build_complex(surface: Surface, weight: int, field: Field, fault: str | None = None) -> CEComplex:
    return CEComplex(tensor_for(surface, field, max(weight, 1)), weight, fault)


def ce_homology(surface: Surface, weight: int, field=QQ, oracle: bool = False, check: bool = True) -> DimensionTable:
    """Bigraded homology of wt_k CE(𝔤; field)."""
    field = field_create(field)
    if weight < 1:
        tab = DimensionTable(metadata={"field": field.name, **conventions()})
        return tab
    tab = build_complex(surface, weight, field).homology(check=check, oracle=oracle)
    tab.metadata["surface"] = surface.label
    return tab


def betti_table(surface: Surface, k_max: int, oracle: bool = False) -> DimensionTable:
    """Rational CE homology for weights 1..k_max; these are the Betti numbers of B_k(M)."""
    out = DimensionTable(metadata={"field": "Q", "surface": surface.label, **conventions()})
    for k in range(1, k_max + 1):
        out = out.merge(ce_homology(surface, k, QQ, oracle=oracle))
    out.metadata["weights"] = list(range(1, k_max + 1))
    out.metadata["kind"] = "betti"
    return out


def euler_characteristics(cx: CEComplex, tab: DimensionTable) -> list[tuple[int, int, int, int]]:
    """(weight, t, chain Euler char, homology Euler char) per t-column."""
    chain: dict[int, int] = {}
    for d in cx.degrees.values():
        chain[d.t] = chain.get(d.t, 0) + (-1) ** d.word_length
    hom: dict[int, int] = {}
    for (w, s, t), n in tab.bidegrees.items():
        if w == cx.weight:
            hom[t] = hom.get(t, 0) + (-1) ** (s + 1) * n
    return [(cx.weight, t, chain.get(t, 0), hom.get(t, 0)) for t in sorted(set(chain) | set(hom))]
