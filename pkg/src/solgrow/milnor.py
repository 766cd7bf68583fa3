"""Conjugate-chain machinery and growth-lower-bound certificates.

The chain construction: Y_i is the set of conjugates of the seed set Y by
elements of length at most i; H_i = <Y_i> is an ascending chain that
stabilizes exactly at the normal closure of Y, and any stabilization at
step k yields a generating set Z = Y_k of the closure with
len(Z) <= len(Y) + 2k. Witnesses y_i in Y_i \\ H_{i-1} have pairwise
distinct subset products, giving the growth datapoint
gamma(kL + 2k^2) >= 2^k.

The certificate pipeline walks the optimal derived/gamma_3 series of a
finite quotient down to its self-centralizing minimal normal subgroup V,
tracks generator lengths step by step, picks short elements projecting to
independent vectors of V, and emits a machine-checkable datapoint
gamma(L*n) >= 2^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    HypothesisViolated,
    NotSelfCentralizing,
    RankDeficient,
    SeriesMismatch,
    WitnessDegenerate,
)
from .mu import ABELIAN, ModifiedSeries, MuValue, mu_fast
from .table import (
    FiniteGroupTable,
    Subgroup,
    commutator_subgroup,
    normal_closure,
    subgroup_generated,
    trivial_subgroup,
)

MAX_PRODUCT_WITNESSES = 20


@dataclass
class MilnorChain:
    """Ascending conjugate chain for one (table, seed set) pair."""

    table: FiniteGroupTable
    seeds: tuple[int, ...]
    levels: list[tuple[int, ...]]        # Y_0..Y_k (+ the repeat level)
    subgroups: list[Subgroup]            # H_0..H_{k+1} with H_k = H_{k+1}
    k: int                               # stabilization index
    witnesses: tuple[int, ...]           # y_1..y_k, first-in-BFS-order
    seed_length: int                     # L = max length over Y
    closure_length: int                  # exact max length over Z = Y_k

    @property
    def generating_set(self) -> tuple[int, ...]:
        return self.levels[self.k]

    @property
    def syntactic_bound(self) -> int:
        return self.seed_length + 2 * self.k


def milnor_chain(T: FiniteGroupTable, Y: list[int]) -> MilnorChain:
    """Build the full conjugate chain for seeds Y, with verified stabilization."""
    seeds = []
    seen = set()
    for y in Y:
        if y not in seen:
            seen.add(y)
            seeds.append(y)
    wl = T.word_length
    by_len = T.elements_by_length()
    level = sorted(seeds)
    levels = [tuple(level)]
    subgroups = [subgroup_generated(T, level)]
    k = None
    i = 0
    while k is None:
        i += 1
        conjugators = by_len[i] if i < len(by_len) else []
        new = set(levels[-1])
        for g in conjugators:
            for y in seeds:
                new.add(T.conj(y, g))
        levels.append(tuple(sorted(new)))
        subgroups.append(subgroup_generated(T, list(levels[-1])))
        if subgroups[-1].order == subgroups[-2].order:
            k = i - 1
    closure = normal_closure(T, seeds)
    assert subgroups[k].member_set == closure.member_set, "chain missed the closure"
    witnesses = []
    for j in range(1, k + 1):
        prev = subgroups[j - 1].member_set
        y_j = next(y for y in levels[j] if y not in prev)
        witnesses.append(y_j)
    L = max((wl[y] for y in seeds), default=0)
    lZ = max((wl[z] for z in levels[k]), default=0)
    assert lZ <= L + 2 * k, "closure generating set is longer than L + 2k"
    return MilnorChain(
        table=T,
        seeds=tuple(seeds),
        levels=levels,
        subgroups=subgroups,
        k=k,
        witnesses=tuple(witnesses),
        seed_length=L,
        closure_length=lZ,
    )


def subset_products(T: FiniteGroupTable, elements: list[int]) -> list[int]:
    """All 2^k products e1^eps1 ... ek^epsk, in epsilon-lex order."""
    if len(elements) > MAX_PRODUCT_WITNESSES:
        raise ValueError(f"too many witnesses ({len(elements)}) for exhaustive products")
    prods = [0]
    for y in elements:
        prods = prods + [T.mul(p, y) for p in prods]
    return prods


def distinct_products_check(chain: MilnorChain) -> tuple[bool, dict]:
    """Exact distinctness of the 2^k witness subset products, plus datapoint.

    The datapoint is gamma(kL + 2k^2) >= 2^k, checked against the table's
    word-length histogram (the ball saturates to |G| beyond the diameter).
    """
    T = chain.table
    for j, y in enumerate(chain.witnesses):
        if y in chain.subgroups[j].member_set:
            raise WitnessDegenerate(f"witness {j + 1} lies in H_{j}")
    prods = subset_products(T, list(chain.witnesses))
    distinct = len(set(prods)) == len(prods)
    k, L = chain.k, chain.seed_length
    radius = k * L + 2 * k * k
    gamma = T.gamma(radius)
    ok = distinct and gamma >= 2**k
    return ok, {
        "k": k,
        "seed_length": L,
        "radius": radius,
        "bound": 2**k,
        "gamma": gamma,
        "distinct": distinct,
    }


def quantitative_bound_check(chain: MilnorChain, theta: float, C: float) -> dict:
    """Check the quantitative chain bounds under the growth hypothesis.

    Requires gamma(n) <= exp(C n^theta) on the table's whole range (else
    HypothesisViolated); then asserts
        k <= (5C)^(1/(1-2 theta)) * max(L,1)^(theta/(1-theta))
    and len(Z) <= L + C1 * max(L,1)^(theta/(1-theta)) with
    C1 = 2 (5C)^(1/(1-2 theta)).
    """
    if not theta < 0.5:
        raise ValueError("theta must be < 1/2")
    if C < 1:
        raise ValueError("C must be >= 1")
    T = chain.table
    counts = T.growth_counts()
    for n in range(1, len(counts)):
        if math.log(counts[n]) > C * n**theta:
            raise HypothesisViolated(
                f"gamma({n}) = {counts[n]} exceeds exp({C} * {n}^{theta})"
            )
    L_eff = max(chain.seed_length, 1)
    base = (5 * C) ** (1 / (1 - 2 * theta))
    k_bound = base * L_eff ** (theta / (1 - theta))
    c1 = 2 * base
    z_bound = chain.seed_length + c1 * L_eff ** (theta / (1 - theta))
    k_ok = chain.k <= k_bound
    z_ok = chain.closure_length <= z_bound
    assert k_ok, "stabilization index exceeds the quantitative bound"
    assert z_ok, "closure generator length exceeds the quantitative bound"
    return {
        "theta": theta,
        "C": C,
        "C1": c1,
        "k": chain.k,
        "k_bound": k_bound,
        "k_ok": k_ok,
        "z_length": chain.closure_length,
        "z_bound": z_bound,
        "z_ok": z_ok,
        "k_slack": k_bound - chain.k,
        "z_slack": z_bound - chain.closure_length,
    }


def _pair_commutators(T: FiniteGroupTable, xs: tuple[int, ...]) -> list[int]:
    out, seen = [], set()
    for a in xs:
        for b in xs:
            c = T.comm(a, b)
            if c != 0 and c not in seen:
                seen.add(c)
                out.append(c)
    return out


def _triple_commutators(T: FiniteGroupTable, xs: tuple[int, ...]) -> list[int]:
    out, seen = [], set()
    pairs = []
    for a in xs:
        for b in xs:
            c = T.comm(a, b)
            if c != 0:
                pairs.append(c)
    for c in pairs:
        for z in xs:
            t = T.comm(c, z)
            if t != 0 and t not in seen:
                seen.add(t)
                out.append(t)
    return out


def derived_generators(T: FiniteGroupTable, k_max: int) -> dict:
    """Short generating sets of the derived series via conjugate chains.

    Step k seeds the chain with the pair commutators of the previous
    generating set; the stabilized conjugate set generates the k-th
    derived subgroup. Records exact max lengths and the ratio to 4^k,
    plus the smallest constants making the step recurrences hold.
    """
    records = []
    gens0 = []
    for g in T.generators:
        if g != 0 and g not in gens0:
            gens0.append(g)
    X = tuple(gens0)
    current = subgroup_generated(T, list(X))
    lengths = [max((T.word_length[x] for x in X), default=0)]
    records.append(
        {"k": 0, "order": current.order, "set_size": len(X), "max_length": lengths[0],
         "ratio": float(lengths[0])}
    )
    for k in range(1, k_max + 1):
        if current.is_trivial():
            break
        Y = _pair_commutators(T, X)
        if not Y:
            records.append({"k": k, "order": 1, "set_size": 0, "max_length": 0, "ratio": 0.0})
            current = trivial_subgroup(T)
            break
        chain = milnor_chain(T, Y)
        expected = commutator_subgroup(T, current, current)
        assert chain.subgroups[chain.k].member_set == expected.member_set, (
            "chain closure differs from the derived subgroup"
        )
        X = chain.generating_set
        current = chain.subgroups[chain.k]
        lengths.append(chain.closure_length)
        records.append(
            {
                "k": k,
                "order": current.order,
                "set_size": len(X),
                "max_length": chain.closure_length,
                "ratio": chain.closure_length / 4**k,
            }
        )
    rec_const = 0.0
    for i in range(1, len(lengths)):
        if lengths[i - 1] > 0:
            excess = lengths[i] - 4 * lengths[i - 1]
            rec_const = max(rec_const, excess / math.sqrt(lengths[i - 1]))
    return {"steps": records, "recurrence_constant": rec_const}


# -- certificate pipeline -----------------------------------------------------


@dataclass
class Certificate:
    """Growth-lower-bound witness: n short elements with distinct products."""

    group_order: int
    normal_order: int
    p: int
    rank: int
    step_kinds: list[str]
    step_orders: list[int]
    cost_word: list[int]
    mu: MuValue
    b_lengths: list[int]
    b_words: list[list[int]]
    length_bound: int                    # L = max b length
    radius: int                          # L * n
    bound: int                           # 2^n
    gamma_at_radius: int
    vacuous: bool
    checks: dict
    step_lengths: list[int] = field(default_factory=list)
    recurrence_constant: float = 0.0      # smallest C with L_i <= a_i L_{i-1} + C sqrt(L_{i-1})
    chain_constant: float = 0.0           # smallest C' with L_i <= C' a_1 .. a_{i+1}
    transcript: dict | None = None

    def as_dict(self) -> dict:
        out = {
            "group_order": self.group_order,
            "normal_order": self.normal_order,
            "p": self.p,
            "rank": self.rank,
            "step_kinds": list(self.step_kinds),
            "step_orders": list(self.step_orders),
            "cost_word": list(self.cost_word),
            "mu": self.mu.as_dict(),
            "b_lengths": list(self.b_lengths),
            "b_words": [list(w) for w in self.b_words],
            "length_bound": self.length_bound,
            "radius": self.radius,
            "bound": self.bound,
            "gamma_at_radius": self.gamma_at_radius,
            "vacuous": self.vacuous,
            "checks": dict(self.checks),
            "step_lengths": list(self.step_lengths),
            "recurrence_constant": self.recurrence_constant,
            "chain_constant": self.chain_constant,
        }
        if self.transcript is not None:
            out["transcript"] = self.transcript
        return out


def _elementary_abelian_coords(T: FiniteGroupTable, V: Subgroup, p: int):
    """Greedy basis of V and coordinates of every member over F_p."""
    span: dict[int, tuple[int, ...]] = {0: ()}
    basis: list[int] = []
    for v in V.members:
        if v in span:
            continue
        basis.append(v)
        new: dict[int, tuple[int, ...]] = {}
        for e, coords in span.items():
            new[e] = coords + (0,)
            x = e
            for j in range(1, p):
                x = T.mul(x, v)
                new[x] = coords + (j,)
        span = new
    assert len(span) == V.order, "subgroup is not elementary abelian"
    return basis, span


def canonical_modified_chain(
    Gbar: FiniteGroupTable, V: Subgroup
) -> tuple[ModifiedSeries, list[int]]:
    """Optimal derived/gamma_3 series of Gbar, checked to end at V.

    Returns the series and its cost word (4 per abelian step, 10 per
    class-2 step); the product of the word is 4^a * 10^b for the group's
    exact cost pair (a, b).
    """
    from .soluble import _is_self_centralizing

    if not _is_self_centralizing(Gbar, trivial_subgroup(Gbar), V):
        raise NotSelfCentralizing("V is not self-centralizing in the quotient")
    cost, series = mu_fast(Gbar)
    if series.chain[-2].member_set != V.member_set:
        raise SeriesMismatch(
            "canonical series does not end at the self-centralizing socle"
        )
    word = series.cost_word()
    assert math.prod(word) == 4**cost.a * 10**cost.b
    return series, word


def certify_growth_lower_bound(
    G: FiniteGroupTable,
    N: Subgroup | None = None,
    emit_transcript: bool = False,
) -> Certificate:
    """Run the whole pipeline on a finite group G with normal subgroup N.

    Finds a self-centralizing minimal normal V of G/N, walks the optimal
    modified series down to V with length-tracked generating sets, selects
    n short elements with independent images in V, verifies the 2^n subset
    products, and checks gamma(L*n) >= 2^n against an independently
    computed growth table of G.
    """
    from .soluble import _is_self_centralizing, minimal_normal_subgroups
    from .table import quotient

    if N is None or N.is_trivial():
        Gbar = G
        lift = None
        n_order = 1
    else:
        Q = quotient(G, N)
        Gbar = Q.table
        lift = Q
        n_order = N.order

    candidates = [
        M
        for M in minimal_normal_subgroups(Gbar)
        if _is_self_centralizing(Gbar, trivial_subgroup(Gbar), M)
    ]
    if not candidates:
        raise NotSelfCentralizing("no self-centralizing minimal normal subgroup")
    V = candidates[0]
    from .soluble import _prime_power

    pr = _prime_power(V.order)
    assert pr is not None, "socle is not a p-group"
    p, rank = pr

    series, cost_word = canonical_modified_chain(Gbar, V)
    k = len(series.kinds)

    # Length-tracked generating sets X_0 .. X_{k-1} along the series.
    X = tuple(g for g in dict.fromkeys(Gbar.generators) if g != 0)
    step_lengths = [max((Gbar.word_length[x] for x in X), default=0)]
    for i in range(1, k):
        seeds = (
            _pair_commutators(Gbar, X)
            if series.kinds[i - 1] == ABELIAN
            else _triple_commutators(Gbar, X)
        )
        chain = milnor_chain(Gbar, seeds)
        if chain.subgroups[chain.k].member_set != series.chain[i].member_set:
            raise SeriesMismatch(f"step {i} closure differs from the canonical term")
        X = chain.generating_set
        step_lengths.append(chain.closure_length)

    basis, coords = _elementary_abelian_coords(Gbar, V, p)
    ranked = sorted(X, key=lambda x: (Gbar.word_length[x], x))
    rows: list[list[int]] = []
    chosen: list[int] = []
    for cand in ranked:
        vec = list(coords[cand])
        red = list(vec)
        for row in rows:
            piv = next(i for i, x in enumerate(row) if x)
            if red[piv]:
                f = red[piv] * pow(row[piv], p - 2, p) % p
                red = [(x - f * y) % p for x, y in zip(red, row)]
        if any(red):
            rows.append(red)
            rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
            chosen.append(cand)
        if len(chosen) == rank:
            break
    if len(chosen) < rank:
        raise RankDeficient("generating set does not span the socle")

    b_lengths = [Gbar.word_length[b] for b in chosen]
    b_words = [Gbar.word(b) for b in chosen]
    L = max(b_lengths) if b_lengths else 0
    radius = L * rank
    prods = subset_products(Gbar, chosen)
    distinct = len(set(prods)) == len(prods)

    # Independent growth check on G itself (lifted words have length <= L).
    if G.gen_set is not None:
        from .growth import growth_table

        diam = G.diameter()
        gt = growth_table(G.gen_set, min(radius, diam))
        gamma_val = gt.counts[-1] if radius >= len(gt.counts) else gt.counts[radius]
        gamma_source = "independent_bfs"
    else:
        gamma_val = G.gamma(radius)
        gamma_source = "word_length_histogram"

    checks = {
        "distinct_products": distinct,
        "independent_images": len(chosen) == rank,
        "datapoint": gamma_val >= 2**rank,
        "gamma_source": gamma_source,
        "cost_word_product": math.prod(cost_word) == 4 ** sum(
            1 for kd in series.kinds if kd == ABELIAN
        ) * 10 ** sum(1 for kd in series.kinds if kd != ABELIAN),
    }

    # Measured constants: smallest values making the step recurrence
    # L_i <= a_i L_{i-1} + C sqrt(L_{i-1}) and the chain bound
    # L_i <= C' a_1 .. a_{i+1} hold on this run.
    rec_const = 0.0
    chain_const = 0.0
    for i in range(1, len(step_lengths)):
        prev = step_lengths[i - 1]
        if prev > 0:
            excess = step_lengths[i] - cost_word[i - 1] * prev
            rec_const = max(rec_const, excess / math.sqrt(prev))
    for i in range(len(step_lengths)):
        denom = math.prod(cost_word[: min(i + 1, len(cost_word))])
        chain_const = max(chain_const, step_lengths[i] / denom)
    transcript = None
    if emit_transcript and rank <= 10:
        transcript = {
            "products": [int(x) for x in prods],
            "b_coordinates": [list(coords[b]) for b in chosen],
            "basis": [int(x) for x in basis],
        }
    if lift is not None:
        # Words in the quotient lift letter-by-letter to G.
        for w, blen in zip(b_words, b_lengths):
            lifted = G.evaluate_word(w)
            assert G.word_length[lifted] <= blen

    return Certificate(
        group_order=G.n,
        normal_order=n_order,
        p=p,
        rank=rank,
        step_kinds=list(series.kinds),
        step_orders=[S.order for S in series.chain],
        cost_word=cost_word,
        mu=series.cost,
        b_lengths=b_lengths,
        b_words=b_words,
        length_bound=L,
        radius=radius,
        bound=2**rank,
        gamma_at_radius=gamma_val,
        vacuous=radius >= G.diameter(),
        checks=checks,
        step_lengths=step_lengths,
        recurrence_constant=rec_const,
        chain_constant=chain_const,
        transcript=transcript,
    )
