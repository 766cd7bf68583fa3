"""The modified derived length: exact cost arithmetic and optimal series.

A modified soluble series is a subnormal chain whose factors are abelian
(cost 1) or nilpotent of class exactly 2 (cost log4(10)); the invariant is
the minimum total cost. Costs are integer pairs (a, b) meaning
a + b*log4(10); since log4(10) is irrational the pair determines the
value, and comparisons reduce to exact big-integer power comparisons
(4^a1*10^b1 vs 4^a2*10^b2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

from .errors import CapExceeded, NotSoluble
from .table import (
    FiniteGroupTable,
    Subgroup,
    commutator_subgroup,
    direct_product,
    enumerate_group,
    quotient,
    whole_group,
)

BRUTE_CAP = 2048

ABELIAN = "abelian"
CLASS2 = "class2"


@total_ordering
class MuValue:
    """Exact cost a + b*log4(10) as a non-negative integer pair."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b

    def __add__(self, other: "MuValue") -> "MuValue":
        return MuValue(self.a + other.a, self.b + other.b)

    def __eq__(self, other) -> bool:
        return isinstance(other, MuValue) and (self.a, self.b) == (other.a, other.b)

    def __lt__(self, other: "MuValue") -> bool:
        return self.cmp(other) < 0

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def cmp(self, other: "MuValue") -> int:
        """Exact three-way comparison: sign of 4^da * 10^db - 1."""
        da, db = self.a - other.a, self.b - other.b
        if da == 0 and db == 0:
            return 0
        e2, e5 = 2 * da + db, db
        num, den = 1, 1
        if e2 >= 0:
            num <<= e2
        else:
            den <<= -e2
        if e5 >= 0:
            num *= 5**e5
        else:
            den *= 5**-e5
        return (num > den) - (num < den)

    def cmp_bound(self, c_num: int, c_den: int, r: int, s: int, n: int) -> int:
        """Compare with c_num/c_den + r*log4(10) + s*log4(n), exactly.

        Reduces to 2^(2A+B) * 5^B vs n^(s*c_den) with A = a*c_den - c_num
        and B = (b-r)*c_den; all integer arithmetic so ties are exact.
        """
        if c_den <= 0 or n < 1:
            raise ValueError("c_den must be positive and n >= 1")
        A = self.a * c_den - c_num
        B = (self.b - r) * c_den
        S = s * c_den
        e2, e5 = 2 * A + B, B
        num, den = 1, 1
        if e2 >= 0:
            num <<= e2
        else:
            den <<= -e2
        if e5 >= 0:
            num *= 5**e5
        else:
            den *= 5**-e5
        if S >= 0:
            rhs_num, rhs_den = n**S, 1
        else:
            rhs_num, rhs_den = 1, n ** (-S)
        lhs = num * rhs_den
        rhs = den * rhs_num
        return (lhs > rhs) - (lhs < rhs)

    def leq_bound(self, c_num: int, c_den: int, r: int, s: int, n: int) -> bool:
        return self.cmp_bound(c_num, c_den, r, s, n) <= 0

    @property
    def value(self) -> float:
        return self.a + self.b * math.log(10) / math.log(4)

    def decimal(self, digits: int = 30) -> str:
        from mpmath import mp, mpf, log

        old = mp.dps
        try:
            mp.dps = digits + 5
            val = mpf(self.a) + mpf(self.b) * log(10) / log(4)
            return mp.nstr(val, digits)
        finally:
            mp.dps = old

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "value": self.value}

    def __repr__(self) -> str:
        return f"MuValue({self.a}, {self.b})"


MU_ZERO = MuValue(0, 0)
MU_ABELIAN_STEP = MuValue(1, 0)
MU_CLASS2_STEP = MuValue(0, 1)


@dataclass
class ModifiedSeries:
    """Subnormal chain H_0 > H_1 > ... > H_k = 1 with factor kinds."""

    chain: list[Subgroup]
    kinds: list[str]

    @property
    def cost(self) -> MuValue:
        a = sum(1 for k in self.kinds if k == ABELIAN)
        b = len(self.kinds) - a
        return MuValue(a, b)

    def cost_word(self) -> list[int]:
        """Per-step word costs: 4 for abelian steps, 10 for class-2 steps."""
        return [4 if k == ABELIAN else 10 for k in self.kinds]

    def validate(self, T: FiniteGroupTable) -> None:
        """Recheck normality and factor kinds of every step."""
        assert self.chain[-1].is_trivial(), "series does not end at 1"
        assert len(self.kinds) == len(self.chain) - 1
        for i in range(1, len(self.chain)):
            head, sub = self.chain[i - 1], self.chain[i]
            assert head.member_set > sub.member_set, "chain is not strictly descending"
            for x in sub.generators:
                for g in head.generators:
                    assert T.conj(x, g) in sub.member_set, "step is not normal"
            derived = commutator_subgroup(T, head, head)
            g3 = commutator_subgroup(T, derived, head)
            abelian = sub.contains_set(derived)
            class2 = sub.contains_set(g3) and not abelian
            if self.kinds[i - 1] == ABELIAN:
                assert abelian, "abelian step has nonabelian factor"
            else:
                assert class2, "class-2 step factor is not class exactly 2"


def _check_soluble(T: FiniteGroupTable, start: Subgroup) -> None:
    from .table import derived_series

    if not derived_series(T, start)[-1].is_trivial():
        raise NotSoluble("modified derived length requires a soluble group")


def mu_bruteforce(
    T: FiniteGroupTable,
    start: Subgroup | None = None,
    cap: int = BRUTE_CAP,
) -> tuple[MuValue, ModifiedSeries]:
    """Global minimum cost over all modified soluble series, by recursion.

    mu(1) = 0 and mu(H) minimizes step-cost + mu(K) over proper normal
    subgroups K of H whose factor H/K is abelian or of class exactly 2
    (equivalently K contains gamma_3(H); abelian iff K contains H').
    Memoized on the member set; the witness series is reconstructed from
    the argmin choices.
    """
    from .soluble import normal_subgroups_within

    H0 = start if start is not None else whole_group(T)
    if H0.order > cap:
        raise CapExceeded(f"order {H0.order} exceeds brute-force cap {cap}")
    _check_soluble(T, H0)
    memo: dict[frozenset[int], tuple[MuValue, list[Subgroup], list[str]]] = {}

    def rec(H: Subgroup) -> tuple[MuValue, list[Subgroup], list[str]]:
        if H.is_trivial():
            return MU_ZERO, [H], []
        key = H.member_set
        hit = memo.get(key)
        if hit is not None:
            return hit
        derived = commutator_subgroup(T, H, H)
        g3 = commutator_subgroup(T, derived, H)
        best: tuple[MuValue, list[Subgroup], list[str]] | None = None
        for K in normal_subgroups_within(T, H):
            if K.order == H.order or not K.contains_set(g3):
                continue
            kind = ABELIAN if K.contains_set(derived) else CLASS2
            step = MU_ABELIAN_STEP if kind == ABELIAN else MU_CLASS2_STEP
            sub_cost, sub_chain, sub_kinds = rec(K)
            cand = (step + sub_cost, [H] + sub_chain, [kind] + sub_kinds)
            if best is None or cand[0] < best[0]:
                best = cand
        assert best is not None, "soluble head admits no modified step"
        memo[key] = best
        return best

    cost, chain, kinds = rec(H0)
    return cost, ModifiedSeries(chain, kinds)


def mu_fast(
    T: FiniteGroupTable, start: Subgroup | None = None
) -> tuple[MuValue, ModifiedSeries]:
    """Minimum cost via the canonical derived/gamma_3 first steps.

    By monotonicity of the invariant under subgroups, an optimal series may
    take its first step to the derived subgroup (abelian factor, cost 1) or
    to gamma_3 (class-2 factor, cost log4(10)); recursing on those two
    candidates only makes this scale far beyond the brute-force search.
    Equality with mu_bruteforce is property-tested over the corpus.
    """
    H0 = start if start is not None else whole_group(T)
    _check_soluble(T, H0)
    memo: dict[frozenset[int], tuple[MuValue, list[Subgroup], list[str]]] = {}

    def rec(H: Subgroup) -> tuple[MuValue, list[Subgroup], list[str]]:
        if H.is_trivial():
            return MU_ZERO, [H], []
        key = H.member_set
        hit = memo.get(key)
        if hit is not None:
            return hit
        derived = commutator_subgroup(T, H, H)
        da, dc, dk = rec(derived)
        best = (MU_ABELIAN_STEP + da, [H] + dc, [ABELIAN] + dk)
        g3 = commutator_subgroup(T, derived, H)
        if g3.order < derived.order:
            ga, gc, gk = rec(g3)
            cand = (MU_CLASS2_STEP + ga, [H] + gc, [CLASS2] + gk)
            if cand[0] < best[0]:
                best = cand
        memo[key] = best
        return best

    cost, chain, kinds = rec(H0)
    return cost, ModifiedSeries(chain, kinds)


def mu_properties_check(
    tables: list[FiniteGroupTable],
    subgroup_order_cap: int = 600,
    power_tables: list[FiniteGroupTable] | None = None,
) -> dict:
    """Verify monotonicity, quotient, extension and power laws on a corpus.

    For each table G: mu(H) <= mu(G) over the full subgroup lattice,
    mu(G/N) <= mu(G) and mu(G) <= mu(N) + mu(G/N) over the normal lattice;
    for each table in power_tables, mu(G^2) = mu(G). Values via mu_fast.
    """
    from .soluble import normal_subgroups, soluble_subgroups

    violations: list[str] = []
    pairs = 0
    for G in tables:
        mu_g, _ = mu_fast(G)
        if G.n <= subgroup_order_cap:
            for H in soluble_subgroups(G):
                mu_h, _ = mu_fast(G, start=H)
                pairs += 1
                if mu_h > mu_g:
                    violations.append(f"subgroup law: order {H.order} in order {G.n}")
        for N in normal_subgroups(G).subgroups:
            Q = quotient(G, N)
            mu_q, _ = mu_fast(Q.table)
            mu_n, _ = mu_fast(G, start=N)
            pairs += 2
            if mu_q > mu_g:
                violations.append(f"quotient law: |N|={N.order} in order {G.n}")
            if mu_g > mu_n + mu_q:
                violations.append(f"extension law: |N|={N.order} in order {G.n}")
    for G in power_tables or []:
        sq = direct_product(G, G)
        mu_g, _ = mu_fast(G)
        mu_sq, _ = mu_fast(sq)
        pairs += 1
        if mu_sq != mu_g:
            violations.append(f"power law: order {G.n} squared")
    return {"pairs_checked": pairs, "violations": violations}


def _sl23_table() -> FiniteGroupTable:
    from .elements import GenSet, MatFp

    s = MatFp(2, 3, [[0, 2], [1, 0]])
    t = MatFp(2, 3, [[1, 1], [0, 1]])
    return enumerate_group(GenSet([s, t]))


def _f9_q8_table() -> FiniteGroupTable:
    from .constructions import affine_semidirect
    from .elements import MatFp

    i = MatFp(2, 3, [[0, 2], [1, 0]])
    j = MatFp(2, 3, [[1, 1], [1, 2]])
    return enumerate_group(affine_semidirect(2, 3, [i, j]))


def product_counterexample_check(use_oracle: bool = False) -> dict:
    """Strict failure of the max law for one concrete direct product.

    Builds the double cover of Alt(4) as 2x2 matrices over F_3 and the
    72-element affine group F_3^2 x| Q_8, and tests whether
    mu(G1 x G2) > max(mu(G1), mu(G2)).
    """
    G1 = _sl23_table()
    G2 = _f9_q8_table()
    P = direct_product(G1, G2)
    mu1, _ = mu_fast(G1)
    mu2, _ = mu_fast(G2)
    mup, _ = mu_fast(P)
    if use_oracle:
        o1, _ = mu_bruteforce(G1)
        o2, _ = mu_bruteforce(G2)
        assert (o1, o2) == (mu1, mu2)
    biggest = mu1 if mu1 >= mu2 else mu2
    return {
        "mu_g1": mu1,
        "mu_g2": mu2,
        "mu_product": mup,
        "strict": mup > biggest,
    }


def mu_of_wreath_check(A: FiniteGroupTable, B: FiniteGroupTable, cap: int = 200_000) -> dict:
    """Whether mu(A wr B) <= mu(A) + mu(B) for permutation tables A, B."""
    from .constructions import wreath_product

    W = enumerate_group(wreath_product(A, B), cap=cap)
    mu_w, _ = mu_fast(W)
    mu_a, _ = mu_fast(A)
    mu_b, _ = mu_fast(B)
    return {
        "mu_wreath": mu_w,
        "mu_a": mu_a,
        "mu_b": mu_b,
        "holds": mu_w <= mu_a + mu_b,
    }
