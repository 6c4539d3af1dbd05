"""Indexing data and Hecke operators for the pieces of a twisted parabolic
stratification.

Fix a Coxeter group W with generating set I, a subset J of I, and a diagram
automorphism δ.  The pieces are indexed by the set of elements with no left
descents in δ(J).  Each index w carries a stabilization sequence

    J_0 = J,   w_n = the minimal element of  W_{δ(J)} · w · W_{J_n},
    J_{n+1} = {i in J_n : δ(i) is the index of w_n s_j w_n^{-1} for some j in J_n},

which becomes constant after finitely many steps; the stable pair
(J_inf, w_inf) satisfies w_inf J_inf w_inf^{-1} = δ(J_inf) as generator sets,
and w_inf equals the original w.  ``bedard_sequence`` computes the sequence,
``bedard_inverse`` validates such a sequence and recovers its index, so the
two are mutually inverse bijections.

On the Hecke algebra side, ``mu_J`` is the parabolic contraction
T_y ↦ T_{δ^{-1}(y_*)} · T_{y^*} for the decomposition y = y^* y_* with
y_* in W_{δ(J)} and y^* shortest in its coset; ``E_operator`` composes n of
these contractions along the stabilization sequence and then projects onto
the coset w^{-1} W_{δ(J_inf)}.  The operator is independent of n up to the
generator twist tau: E_{n+1}(T_y) = tau(E_n(T_y)).

The closure order on piece indices is w' ≤ w iff δ(u) w' u^{-1} ≤ w in
Bruhat order for some u in W_J.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import CoxeterGroup, DiagramAutomorphism, Element
from .hecke import HeckeAlgebra, HeckeElement


def ad_indices(group: CoxeterGroup, w: Element, K: Iterable[int]) -> frozenset:
    """{k : s_k = w s_j w^{-1} for some j in K} — conjugates of K-generators
    by w that remain generators (others are dropped)."""
    w_inv = group.inverse(w)
    out = set()
    for j in K:
        g = group.product(w, group.generator(j), w_inv)
        k = group.as_generator_index(g)
        if k is not None:
            out.add(k)
    return frozenset(out)


def conjugates_set_to(group: CoxeterGroup, w: Element, J: Iterable[int],
                      K: Iterable[int]) -> bool:
    """Whether w J w^{-1} = K as sets of generators."""
    Jf = frozenset(J)
    Kf = frozenset(K)
    w_inv = group.inverse(w)
    image = set()
    for j in Jf:
        k = group.as_generator_index(group.product(w, group.generator(j), w_inv))
        if k is None:
            return False
        image.add(k)
    return image == Kf


@dataclass(frozen=True)
class BedardData:
    """The stabilization sequence attached to a piece index w.

    ``steps[n] = (J_n, w_n)`` for n = 0..n0, where n0 is the first index with
    J_{n0} = J_{n0+1}; the sequence is constant from n0 on, so ``J_at`` and
    ``w_at`` clamp to the tail.
    """

    group: CoxeterGroup
    J: frozenset
    delta: DiagramAutomorphism
    w: Element
    steps: tuple[tuple[frozenset, Element], ...]

    @property
    def n0(self) -> int:
        return len(self.steps) - 1

    @property
    def J_infinity(self) -> frozenset:
        return self.steps[-1][0]

    @property
    def w_infinity(self) -> Element:
        return self.steps[-1][1]

    @property
    def target_parabolic(self) -> frozenset:
        """δ(J_inf) — the parabolic that E-operators land in."""
        return self.delta.on_set(self.J_infinity)

    def J_at(self, n: int) -> frozenset:
        return self.steps[min(n, self.n0)][0]

    def w_at(self, n: int) -> Element:
        return self.steps[min(n, self.n0)][1]

    # -- the generator twist --------------------------------------------------

    def tau(self, x: Element) -> Element:
        """tau(x) = w_inf · δ^{-1}(x) · w_inf^{-1}, an automorphism of
        W_{δ(J_inf)} permuting its generators."""
        group = self.group
        if not group.in_parabolic(x, self.target_parabolic):
            raise ValueError("tau is only defined on the target parabolic")
        w = self.w_infinity
        out = group.product(w, self.delta.apply_inv(x), group.inverse(w))
        if not group.in_parabolic(out, self.target_parabolic):
            raise ValueError("tau left the target parabolic; stabilization data is corrupt")
        return out

    def tau_gen_map(self) -> dict[int, int]:
        """tau on generator indices of the target parabolic."""
        group = self.group
        out = {}
        for k in sorted(self.target_parabolic):
            img = group.as_generator_index(self.tau(group.generator(k)))
            if img is None:
                raise ValueError("tau does not permute the target generators")
            out[k] = img
        return out

    def tau_element(self, h: HeckeElement) -> HeckeElement:
        """tau applied basiswise, T_x ↦ T_{tau(x)} — an algebra map because
        tau permutes the generators of the target parabolic."""
        return h.algebra.element({self.tau(x): c for x, c in h.terms.items()})


def _validate_index(group: CoxeterGroup, J: frozenset, delta: DiagramAutomorphism,
                    w: Element) -> None:
    if not group.is_left_min(w, delta.on_set(J)):
        raise ValueError(
            f"{group.word_str(w)} has a left descent in δ(J); not a piece index"
        )


def bedard_sequence(group: CoxeterGroup, J: Iterable[int],
                    delta: DiagramAutomorphism, w: Element) -> BedardData:
    """Compute the stabilization sequence of a piece index w.

    Raises ValueError if w has a left descent in δ(J).
    """
    Jf = group._check_subset(J)
    _validate_index(group, Jf, delta, w)
    dJ = delta.on_set(Jf)
    steps: list[tuple[frozenset, Element]] = []
    Jn = Jf
    while True:
        wn = group.min_double_coset(dJ, Jn, w)
        steps.append((Jn, wn))
        Jnext = frozenset(
            i for i in Jn if delta(i) in ad_indices(group, wn, Jn)
        )
        if Jnext == Jn:
            break
        Jn = Jnext
    data = BedardData(group, Jf, delta, w, tuple(steps))
    # the stable pair conjugates J_inf onto δ(J_inf); cheap, so always check
    if not conjugates_set_to(group, data.w_infinity, data.J_infinity,
                             data.target_parabolic):
        raise AssertionError("stabilization reached a non-conjugating pair")
    return data


def bedard_inverse(group: CoxeterGroup, J: Iterable[int],
                   delta: DiagramAutomorphism,
                   steps: Sequence[tuple[Iterable[int], Element]]) -> Element:
    """Validate a claimed stabilization sequence and return its piece index.

    The conditions certifying that (J_n, w_n) arises from an index are:

    * J_0 = J and J_n = J_{n-1} ∩ δ^{-1}(ad(w_{n-1}) J_{n-1}) for n >= 1;
    * every w_n has no left descent in δ(J_n) and no right descent in J_n;
    * w_n lies in w_{n-1} W_{J_{n-1}} for n >= 1;
    * the tail is stable: recomputing the subset step from the last pair
      reproduces its subset.

    For a valid sequence the index is the last w_n.
    """
    Jf = group._check_subset(J)
    norm = [(frozenset(group._check_subset(Jn)), wn) for Jn, wn in steps]
    if not norm:
        raise ValueError("empty sequence")
    if norm[0][0] != Jf:
        raise ValueError("sequence must start at the given subset J")
    for n, (Jn, wn) in enumerate(norm):
        if not group.is_left_min(wn, delta.on_set(Jn)) or not group.is_right_min(wn, Jn):
            raise ValueError(f"step {n}: not a minimal double coset representative")
        if n >= 1:
            Jprev, wprev = norm[n - 1]
            expected = frozenset(
                i for i in Jprev if delta(i) in ad_indices(group, wprev, Jprev)
            )
            if Jn != expected:
                raise ValueError(f"step {n}: subset does not follow the recursion")
            if not group.in_parabolic(group.product(group.inverse(wprev), wn), Jprev):
                raise ValueError(f"step {n}: leaves the previous right coset")
    J_last, w_last = norm[-1]
    stable = frozenset(
        i for i in J_last if delta(i) in ad_indices(group, w_last, J_last)
    )
    if stable != J_last:
        raise ValueError("sequence has not stabilized; more steps are required")
    _validate_index(group, Jf, delta, w_last)
    return w_last


def piece_indices(group: CoxeterGroup, J: Iterable[int],
                  delta: DiagramAutomorphism) -> tuple[Element, ...]:
    """All piece indices: elements with no left descent in δ(J), sorted."""
    dJ = delta.on_set(group._check_subset(J))
    return tuple(w for w in group.elements() if group.is_left_min(w, dJ))


def twisted_normalizer(group: CoxeterGroup, J: Iterable[int],
                       delta: DiagramAutomorphism) -> tuple[Element, ...]:
    """{w minimal in its double coset : w J w^{-1} = δ(J)} — the indices
    whose stabilization sequence is constant at (J, w), sorted."""
    Jf = group._check_subset(J)
    dJ = delta.on_set(Jf)
    return tuple(
        w for w in group.double_coset_reps(dJ, Jf)
        if conjugates_set_to(group, w, Jf, dJ)
    )


# -- closure order -----------------------------------------------------------


def closure_leq(group: CoxeterGroup, J: Iterable[int], delta: DiagramAutomorphism,
                w1: Element, w2: Element) -> bool:
    """w1 ≤ w2 in the closure order: δ(u) w1 u^{-1} ≤ w2 (Bruhat) for some
    u in W_J."""
    Jf = group._check_subset(J)
    _validate_index(group, Jf, delta, w1)
    _validate_index(group, Jf, delta, w2)
    w2_len = group.length(w2)
    for u in group.parabolic_elements(Jf):
        x = group.product(delta.apply(u), w1, group.inverse(u))
        if group.length(x) <= w2_len and group.bruhat_leq(x, w2):
            return True
    return False


def closure_hasse(group: CoxeterGroup, J: Iterable[int],
                  delta: DiagramAutomorphism) -> tuple[tuple[Element, Element], ...]:
    """Covering pairs (a, b), a strictly below b with nothing between, of the
    closure order on all piece indices.  Raises if the computed relation is
    not antisymmetric (it is a partial order for genuine stabilization data)."""
    idx = piece_indices(group, J, delta)
    pos = {w: i for i, w in enumerate(idx)}
    n = len(idx)
    leq = [[False] * n for _ in range(n)]
    for a in idx:
        for b in idx:
            if closure_leq(group, J, delta, a, b):
                leq[pos[a]][pos[b]] = True
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise AssertionError("closure relation is not antisymmetric")
    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if not any(leq[i][k] and leq[k][j] for k in range(n) if k != i and k != j):
                covers.append((idx[i], idx[j]))
    return tuple(covers)


# -- dimensions ----------------------------------------------------------------


def _positive_roots_of_subset(rank: int, J: frozenset) -> int:
    """Positive roots of the parabolic root subsystem of type B_rank on J:
    the run of consecutive indices containing 1 is a type-B subsystem (k^2
    roots for k nodes), every other run is type A (m(m+1)/2 roots)."""
    count = 0
    run = 0
    for i in range(1, rank + 2):
        if i <= rank and i in J:
            run += 1
            continue
        if run:
            if i - run == 1:  # the run started at node 1
                count += run * run
            else:
                count += run * (run + 1) // 2
            run = 0
    return count


def piece_dimension(group: CoxeterGroup, J: Iterable[int], w: Element,
                    delta: DiagramAutomorphism | None = None) -> int:
    """Dimension of the piece with index w for a type-B group of rank n:
    l(w) + n^2 + n + #(positive roots of the J-subsystem)."""
    if not group.type_tag.startswith("B"):
        raise ValueError("piece dimensions are defined here for type B only")
    Jf = group._check_subset(J)
    if delta is None:
        delta = group.automorphism()
    _validate_index(group, Jf, delta, w)
    n = group.rank
    return group.length(w) + n * n + n + _positive_roots_of_subset(n, Jf)


# -- Hecke operators ---------------------------------------------------------


@lru_cache(maxsize=None)
def _mu_on_basis(algebra: HeckeAlgebra, Jf: frozenset,
                 delta: DiagramAutomorphism, y: Element) -> HeckeElement:
    group = algebra.group
    dJ = delta.on_set(Jf)
    y_min, y_par = group.right_quotient(y, dJ)
    return algebra.multiply(
        algebra.basis(delta.apply_inv(y_par)), algebra.basis(y_min)
    )


def mu_J(h: HeckeElement, J: Iterable[int], delta: DiagramAutomorphism) -> HeckeElement:
    """The parabolic contraction T_y ↦ T_{δ^{-1}(y_*)} · T_{y^*}, extended
    linearly; y = y^* y_* with y_* in W_{δ(J)} and y^* shortest in y W_{δ(J)}.
    """
    algebra = h.algebra
    Jf = algebra.group._check_subset(J)
    out = algebra.zero()
    for y, c in h.terms.items():
        out = out + _mu_on_basis(algebra, Jf, delta, y).scale(c)
    return out


def piece_projection(h: HeckeElement, data: BedardData) -> HeckeElement:
    """T_y ↦ T_{wy} when wy stays in W_{δ(J_inf)}, else 0, extended linearly
    (w the piece index)."""
    algebra = h.algebra
    group = algebra.group
    K = data.target_parabolic
    out: dict[Element, object] = {}
    for y, c in h.terms.items():
        y1 = group.product(data.w, y)
        if group.in_parabolic(y1, K):
            prev = out.get(y1)
            out[y1] = c if prev is None else prev + c
    return algebra.element(out)


def E_operator(h: HeckeElement, data: BedardData, n: int) -> HeckeElement:
    """The composite  project ∘ mu_{J_{n-1}} ∘ ··· ∘ mu_{J_0}  for n >= n0.

    Raises ValueError when n < n0 (the sequence has not stabilized yet, so
    the projection target is not defined).
    """
    if n < data.n0:
        raise ValueError(f"operator needs n >= {data.n0}, got {n}")
    for k in range(n):
        h = mu_J(h, data.J_at(k), data.delta)
    return piece_projection(h, data)
