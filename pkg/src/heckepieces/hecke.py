"""Iwahori-Hecke algebras over Z[v, v^-1], in two normalizations.

``HeckeAlgebra(W, "geometric")`` has standard basis {T_w} with
T_s^2 = (v^2 - 1) T_s + v^2, the convolution normalization (q = v^2).

``HeckeAlgebra(W, "weighted", weight=L)`` takes a weight function L on the
generators (constant on conjugation-related pairs) and has basis {T_w} with
T_s^2 = (v^L(s) - v^-L(s)) T_s + 1.  For L ≡ 1 this is the split
normalization whose canonical basis coefficients recover the classical
Kazhdan-Lusztig polynomials via p(y, w) = v^(l(y)-l(w)) P_{y,w}(v^2).

Both satisfy T_s T_x = T_sx when lengths add, so a product is computed by
folding generator multiplications along a reduced word.  The bar involution
is the semilinear ring map with bar(v) = v^-1 and bar(T_w) = (T_{w^-1})^-1.

Kazhdan-Lusztig polynomials are computed by the classical column recursion
(in the variable q = v^2, stored as Laurent polynomials in v with even
exponents), inverse KL polynomials by forward substitution against a
downward-closed support, and weighted canonical bases by iterated
bar-symmetric correction, which works for arbitrary nonnegative weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coxeter import CoxeterGroup, Element
from .laurent import Laurent, ONE, ZERO, bar_symmetric_head, v_power

Q = v_power(2)


class WeightFunction:
    """A nonnegative integer weight on generators with L(s) = L(t) whenever
    s and t are conjugate (equivalently whenever m(s,t) is odd), extended to
    the group by summing over any reduced word.

    >>> from .coxeter import coxeter_group
    >>> W = coxeter_group("B2")
    >>> L = WeightFunction(W, {1: 1, 2: 3})
    >>> L.of(W.from_word([1, 2, 1]))
    5
    """

    def __init__(self, group: CoxeterGroup, values: Mapping[int, int]):
        if set(values) != set(group.generators()):
            raise ValueError("weight must be defined on every generator")
        for i in group.generators():
            if values[i] < 0:
                raise ValueError("weights must be nonnegative")
            for j in group.generators():
                if i < j and group.m(i, j) % 2 == 1 and values[i] != values[j]:
                    raise ValueError(
                        f"generators {i},{j} are conjugate (odd m) but weighted differently"
                    )
        self.group = group
        self.values = {i: int(values[i]) for i in group.generators()}

    def __call__(self, i: int) -> int:
        return self.values[i]

    def of(self, w: Element) -> int:
        return sum(self.values[s] for s in self.group.reduced_word(w))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self) -> int:
        return hash((id(self.group), frozenset(self.values.items())))


def split_weight(group: CoxeterGroup) -> WeightFunction:
    """The constant weight L ≡ 1."""
    return WeightFunction(group, {i: 1 for i in group.generators()})


class HeckeElement:
    """A finite A-linear combination of standard basis elements T_w."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Mapping[Element, Laurent]):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def coeff(self, w: Element) -> Laurent:
        return self.terms.get(w, ZERO)

    def support(self) -> tuple[Element, ...]:
        return tuple(sorted(self.terms, key=self.algebra.group.sort_key))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.algebra), frozenset(self.terms.items())))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(Laurent({0: -1}))

    def __neg__(self) -> "HeckeElement":
        return self.scale(Laurent({0: -1}))

    def scale(self, c: Laurent | int) -> "HeckeElement":
        if isinstance(c, int):
            c = Laurent({0: c})
        return HeckeElement(self.algebra, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.algebra.multiply(self, other)

    def text(self) -> str:
        if not self.terms:
            return "0"
        group = self.algebra.group
        chunks = []
        for w in self.support():
            c = self.terms[w]
            chunks.append(f"({c.text()})·T[{group.word_str(w)}]")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"HeckeElement({self.text()})"


class HeckeAlgebra:
    """The Hecke algebra of a Coxeter group in one of the two normalizations.

    Each generator s carries quadratic coefficients (a_s, b_s) with
    T_s^2 = a_s T_s + b_s; products, inverses of generators, and the bar
    involution are all derived from these.
    """

    def __init__(self, group: CoxeterGroup, normalization: str = "geometric",
                 weight: WeightFunction | None = None):
        if normalization == "geometric":
            if weight is not None:
                raise ValueError("geometric normalization takes no weight")
            quad = {
                s: (v_power(2) - 1, v_power(2)) for s in group.generators()
            }
        elif normalization == "weighted":
            if weight is None or weight.group is not group:
                raise ValueError("weighted normalization needs a weight on this group")
            quad = {
                s: (v_power(weight(s)) - v_power(-weight(s)), ONE)
                for s in group.generators()
            }
        else:
            raise ValueError(f"unknown normalization {normalization!r}")
        self.group = group
        self.normalization = normalization
        self.weight = weight
        self._quad = quad
        self._bar_basis: dict[Element, HeckeElement] = {}

    def quad_coeffs(self, s: int) -> tuple[Laurent, Laurent]:
        """(a_s, b_s) with T_s^2 = a_s T_s + b_s."""
        return self._quad[s]

    # -- building elements --------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def unit(self) -> HeckeElement:
        return HeckeElement(self, {self.group.identity(): ONE})

    def basis(self, w: Element) -> HeckeElement:
        return HeckeElement(self, {w: ONE})

    def element(self, terms: Mapping[Element, Laurent]) -> HeckeElement:
        return HeckeElement(self, terms)

    # -- multiplication --------------------------------------------------------

    def right_mult_gen(self, h: HeckeElement, s: int) -> HeckeElement:
        """h · T_s."""
        group = self.group
        a, b = self._quad[s]
        out: dict[Element, Laurent] = {}

        def add(w, c):
            t = out.get(w, ZERO) + c
            if t:
                out[w] = t
            else:
                out.pop(w, None)

        for w, c in h.terms.items():
            ws = group.right_mult_gen(w, s)
            if group.length(ws) > group.length(w):
                add(ws, c)
            else:
                add(w, c * a)
                add(ws, c * b)
        return HeckeElement(self, out)

    def left_mult_gen(self, s: int, h: HeckeElement) -> HeckeElement:
        """T_s · h."""
        group = self.group
        a, b = self._quad[s]
        out: dict[Element, Laurent] = {}

        def add(w, c):
            t = out.get(w, ZERO) + c
            if t:
                out[w] = t
            else:
                out.pop(w, None)

        for w, c in h.terms.items():
            sw = group.left_mult_gen(s, w)
            if group.length(sw) > group.length(w):
                add(sw, c)
            else:
                add(w, c * a)
                add(sw, c * b)
        return HeckeElement(self, out)

    def multiply(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        """x · y, by folding generator multiplications along reduced words."""
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("operands belong to a different algebra")
        group = self.group
        out = self.zero()
        for w, c in y.terms.items():
            h = x
            for s in group.reduced_word(w):
                h = self.right_mult_gen(h, s)
            out = out + h.scale(c)
        return out

    def product_of_gens(self, word: Iterable[int]) -> HeckeElement:
        """T_{s_1} T_{s_2} ··· for an arbitrary (possibly non-reduced) word."""
        h = self.unit()
        for s in word:
            h = self.right_mult_gen(h, s)
        return h

    # -- bar involution ----------------------------------------------------------

    def _bar_of_basis(self, w: Element) -> HeckeElement:
        cached = self._bar_basis.get(w)
        if cached is not None:
            return cached
        group = self.group
        if w == group.identity():
            result = self.unit()
        else:
            s = min(group.left_descents(w))
            rest = self._bar_of_basis(group.left_mult_gen(s, w))
            a, b = self._quad[s]
            # bar(T_s) = T_s^-1 = b^-1 (T_s - a); b is a unit monomial
            if len(b.support()) != 1 or b.coeff(b.max_exp()) not in (1, -1):
                raise ValueError("quadratic constant term is not a unit monomial")
            b_inv = Laurent({-b.max_exp(): b.coeff(b.max_exp())})
            gen_bar = self.element({
                group.generator(s): b_inv,
                group.identity(): -(a * b_inv),
            })
            result = self.multiply(gen_bar, rest)
        self._bar_basis[w] = result
        return result

    def bar(self, h: HeckeElement) -> HeckeElement:
        """The semilinear involution: bar(sum c_w T_w) = sum bar(c_w) bar(T_w)."""
        out = self.zero()
        for w, c in h.terms.items():
            out = out + self._bar_of_basis(w).scale(c.bar())
        return out


# -- Kazhdan-Lusztig tables ------------------------------------------------------


@dataclass
class KLTable:
    """All Kazhdan-Lusztig polynomials of a finite Coxeter group.

    Polynomials are in q = v^2 and stored as Laurent polynomials in v with
    even nonnegative exponents; P_{y,w} for incomparable pairs is 0 and is
    not stored.
    """

    group: CoxeterGroup
    table: dict[tuple[Element, Element], Laurent]

    def get(self, y: Element, w: Element) -> Laurent:
        return self.table.get((y, w), ZERO)

    def mu(self, y: Element, w: Element) -> int:
        """The coefficient of q^((l(w)-l(y)-1)/2) in P_{y,w} (0 when the
        length gap is even)."""
        d = self.group.length(w) - self.group.length(y)
        if d <= 0 or d % 2 == 0:
            return 0
        return self.get(y, w).coeff(d - 1)

    def pairs(self) -> list[tuple[Element, Element]]:
        key = self.group.sort_key
        return sorted(self.table, key=lambda p: (key(p[1]), key(p[0])))


def kl_table(group: CoxeterGroup) -> KLTable:
    """Compute every P_{y,w} by the column recursion: for a left descent s
    of w (so sw < w),

        P_{y,w} = P_{sy,w}                                  if sy > y,
        P_{y,w} = P_{sy,sw} + q P_{y,sw}
                  - sum_z mu(z, sw) q^((l(w)-l(z))/2) P_{y,z}   if sy < y,

    the sum over y <= z <= sw with sz < z."""
    e = group.identity()
    elements = sorted(group.elements(), key=group.sort_key)
    P: dict[tuple[Element, Element], Laurent] = {}
    mu_lists: dict[Element, tuple[tuple[Element, int], ...]] = {}

    for w in elements:
        if w == e:
            P[(e, e)] = ONE
            mu_lists[w] = ()
            continue
        s = min(group.left_descents(w))
        sw = group.left_mult_gen(s, w)
        lw = group.length(w)
        column = sorted(group.bruhat_lower(w), key=group.sort_key, reverse=True)
        lower_of = group.bruhat_lower
        for y in column:
            if y == w:
                P[(y, w)] = ONE
                continue
            sy = group.left_mult_gen(s, y)
            if group.length(sy) > group.length(y):
                P[(y, w)] = P[(sy, w)]
                continue
            val = P.get((sy, sw), ZERO) + Q * P.get((y, sw), ZERO)
            for z, m in mu_lists[sw]:
                if group.length(group.left_mult_gen(s, z)) < group.length(z) \
                        and y in lower_of(z):
                    val = val - P[(y, z)].shift(lw - group.length(z)) * m
            P[(y, w)] = val
        mus = []
        for y in column:
            if y == w:
                continue
            d = lw - group.length(y)
            if d % 2 == 1:
                c = P[(y, w)].coeff(d - 1)
                if c:
                    mus.append((y, c))
        mu_lists[w] = tuple(mus)
    return KLTable(group, P)


def inverse_kl(table: KLTable, support: Iterable[Element]) -> dict[tuple[Element, Element], Laurent]:
    """Inverse KL polynomials on a downward-closed support:
    sum_y P'_{x,y} P_{y,z} = delta_{x,z}, solved by forward substitution.

    Raises if the support is not closed under going down in Bruhat order
    (the inverse of a unitriangular matrix needs the whole lower set).
    """
    group = table.group
    supp = sorted(set(support), key=group.sort_key)
    supp_set = set(supp)
    for w in supp:
        if not group.bruhat_lower(w) <= supp_set:
            raise ValueError(f"support not downward closed at {group.word_str(w)}")
    Pp: dict[tuple[Element, Element], Laurent] = {}
    for i, z in enumerate(supp):
        for x in supp[: i + 1]:
            if x == z:
                Pp[(x, z)] = ONE
                continue
            if not group.bruhat_leq(x, z):
                continue
            acc = ZERO
            for y in supp:
                if (x, y) in Pp and y != z and (y, z) in table.table:
                    acc = acc + Pp[(x, y)] * table.table[(y, z)]
            Pp[(x, z)] = -acc
    return Pp


# -- weighted canonical bases ----------------------------------------------------


@dataclass
class CanonicalBasis:
    """The canonical basis {c_z} of a weighted Hecke algebra: the unique
    bar-invariant elements c_z = T_z + sum_{t<z} p(t,z) T_t with every
    p(t,z) in v^-1 Z[v^-1]."""

    algebra: HeckeAlgebra
    vectors: dict[Element, HeckeElement]

    def vector(self, z: Element) -> HeckeElement:
        return self.vectors[z]

    def p(self, t: Element, z: Element) -> Laurent:
        """The coefficient p(t,z) of T_t in c_z (0 for t not <= z)."""
        return self.vectors[z].coeff(t)


def canonical_basis(algebra: HeckeAlgebra, validate: bool = True) -> CanonicalBasis:
    """Build every c_z by induction on length: start from c_s · c_{sz}
    (bar-invariant with top term T_z) and repeatedly subtract
    gamma_t · c_t for the longest t whose coefficient has a part outside
    v^-1 Z[v^-1], where gamma_t is the bar-symmetric head of that
    coefficient.  Each step preserves bar-invariance and the top term, and
    strictly reduces the violating positions, so the loop terminates with
    the canonical basis element."""
    if algebra.normalization != "weighted":
        raise ValueError("canonical bases are defined here for the weighted normalization")
    group = algebra.group
    weight = algebra.weight
    vectors: dict[Element, HeckeElement] = {}
    for z in sorted(group.elements(), key=group.sort_key):
        if z == group.identity():
            vectors[z] = algebra.unit()
            continue
        s = min(group.left_descents(z))
        c_s = algebra.element({
            group.generator(s): ONE,
            group.identity(): v_power(-weight(s)),
        })
        x = algebra.multiply(c_s, vectors[group.left_mult_gen(s, z)])
        while True:
            worst = None
            for t, coeff in x.terms.items():
                if t != z and not coeff.in_v_minus_strict():
                    if worst is None or group.sort_key(t) > group.sort_key(worst):
                        worst = t
            if worst is None:
                break
            gamma = bar_symmetric_head(x.terms[worst])
            x = x - vectors[worst].scale(gamma)
        if validate:
            if x.coeff(z) != ONE:
                raise AssertionError("canonical basis element lost its top term")
            if algebra.bar(x) != x:
                raise AssertionError("canonical basis element is not bar-invariant")
            for t in x.terms:
                if not group.bruhat_leq(t, z):
                    raise AssertionError("canonical basis support leaked above z")
        vectors[z] = x
    return CanonicalBasis(algebra, vectors)
