"""Chief series, self-centralizing chief rank, and supersolubility.

The self-centralizing chief rank is computed by quantifying over all
quotients G/N (N ranging over the full normal lattice) and inspecting the
minimal normal subgroups of each quotient. This deliberately
over-approximates "all chief factors up to equivalence": every chief
factor arises in some quotient, so the maximum self-centralizing rank is
found without implementing the equivalence relation on chief factors.

The normal lattice is generated from conjugacy classes: every normal
subgroup is the join of the normal closures of the classes it contains,
so closing the class-closure subgroups under pairwise joins yields the
complete lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import rho_int_bound
from .errors import CapExceeded, NotSoluble, TrivialGroup
from .table import (
    FiniteGroupTable,
    Subgroup,
    conjugacy_classes,
    derived_series,
    is_soluble,
    lower_central_series,
    normal_closure,
    reduce_generators,
    subgroup_generated,
    trivial_subgroup,
)

LATTICE_CAP = 20_000
SUBGROUP_ENUM_CAP = 10_000
MAXIMAL_CHECK_CAP = 500


@dataclass(frozen=True)
class ChiefFactorRecord:
    """One factor M/N of a chief series, with its rank data."""

    below: Subgroup   # N
    above: Subgroup   # M
    p: int
    rank: int
    self_centralizing: bool

    @property
    def order(self) -> int:
        return self.p**self.rank


@dataclass
class NormalLattice:
    """All normal subgroups of a table, sorted by (order, members)."""

    table: FiniteGroupTable
    subgroups: list[Subgroup]

    def minimal_over(self, N: Subgroup) -> list[Subgroup]:
        """Minimal members strictly containing N (minimal normals of G/N)."""
        overs = [
            K
            for K in self.subgroups
            if K.order > N.order and K.member_set > N.member_set
        ]
        out = []
        for K in overs:
            if not any(
                J.order < K.order and K.member_set > J.member_set for J in overs
            ):
                out.append(K)
        return out

    def __len__(self) -> int:
        return len(self.subgroups)


def _prime_power(m: int) -> tuple[int, int] | None:
    if m < 2:
        return None
    p = 2
    while p * p <= m:
        if m % p == 0:
            r = 0
            while m % p == 0:
                m //= p
                r += 1
            return (p, r) if m == 1 else None
        p += 1
    return (m, 1)


def normal_subgroups(T: FiniteGroupTable, cap: int = LATTICE_CAP) -> NormalLattice:
    """Complete normal lattice via joins of conjugacy-class closures."""
    if T.n > cap:
        raise CapExceeded(f"group order {T.n} exceeds lattice cap {cap}")
    T.ensure_dense()
    atoms = []
    seen: dict[frozenset[int], Subgroup] = {}
    triv = trivial_subgroup(T)
    seen[triv.member_set] = triv
    for cls in conjugacy_classes(T):
        N = reduce_generators(T, normal_closure(T, [cls[0]]))
        if N.member_set not in seen:
            seen[N.member_set] = N
            atoms.append(N)
    queue = list(atoms)
    known = list(seen.values())
    while queue:
        A = queue.pop(0)
        for B in list(known):
            if A.contains_set(B) or B.contains_set(A):
                continue
            join = subgroup_generated(T, list(A.generators) + list(B.generators))
            if join.member_set not in seen:
                join = reduce_generators(T, join)
                seen[join.member_set] = join
                known.append(join)
                queue.append(join)
    subs = sorted(seen.values(), key=lambda S: (S.order, S.members))
    return NormalLattice(T, subs)


def minimal_normal_subgroups(
    T: FiniteGroupTable, lattice: NormalLattice | None = None
) -> list[Subgroup]:
    """Minimal nontrivial normal subgroups."""
    lat = lattice if lattice is not None else normal_subgroups(T)
    return lat.minimal_over(trivial_subgroup(T))


def normal_subgroups_within(T: FiniteGroupTable, H: Subgroup) -> list[Subgroup]:
    """All subgroups of H normal in H, in parent-table indices.

    Same class-closure join method as normal_subgroups, run relative to H.
    Returned sorted by (order, members).
    """
    from .table import _normal_closure_under

    hgens = H.generators
    seen_cls = bytearray(T.n)
    atoms: list[Subgroup] = []
    seen: dict[frozenset[int], Subgroup] = {}
    triv = trivial_subgroup(T)
    seen[triv.member_set] = triv
    for x in H.members:
        if seen_cls[x]:
            continue
        orbit = [x]
        seen_cls[x] = 1
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in hgens:
                    z = T.conj(y, g)
                    if not seen_cls[z]:
                        seen_cls[z] = 1
                        orbit.append(z)
                        nxt.append(z)
            frontier = nxt
        N = reduce_generators(T, _normal_closure_under(T, [x], hgens))
        if N.member_set not in seen:
            seen[N.member_set] = N
            atoms.append(N)
    queue = list(atoms)
    known = list(seen.values())
    while queue:
        A = queue.pop()
        for B in list(known):
            if A.contains_set(B) or B.contains_set(A):
                continue
            join = subgroup_generated(T, list(A.generators) + list(B.generators))
            if join.member_set not in seen:
                join = reduce_generators(T, join)
                seen[join.member_set] = join
                known.append(join)
                queue.append(join)
    return sorted(seen.values(), key=lambda S: (S.order, S.members))


def _factor_rank(T: FiniteGroupTable, below: Subgroup, above: Subgroup) -> tuple[int, int]:
    """(p, r) with |above/below| = p^r; asserts elementary abelian factor."""
    m = above.order // below.order
    pr = _prime_power(m)
    if pr is None:
        raise NotSoluble(f"chief factor of non-prime-power order {m}")
    p, r = pr
    bset = below.member_set
    gens = above.generators
    for i, a in enumerate(gens):
        if pow_in(T, a, p) not in bset:
            raise AssertionError("chief factor is not elementary abelian (exponent)")
        for b in gens[i + 1 :]:
            if T.comm(a, b) not in bset:
                raise AssertionError("chief factor is not abelian")
    return p, r


def pow_in(T: FiniteGroupTable, g: int, e: int) -> int:
    x = 0
    for _ in range(e):
        x = T.mul(x, g)
    return x


def _is_self_centralizing(
    T: FiniteGroupTable, below: Subgroup, above: Subgroup
) -> bool:
    """Whether M/N equals its centralizer in G/N.

    The preimage of C_{G/N}(M/N) is {g : [g, m] in N for each generator m
    of M}; the factor is self-centralizing iff that preimage is exactly M.
    """
    bset = below.member_set
    gens = above.generators
    count = 0
    for g in range(T.n):
        if all(T.comm(g, m) in bset for m in gens):
            count += 1
            if count > above.order:
                return False
            if g not in above.member_set:
                return False
    return count == above.order


def chief_series(
    T: FiniteGroupTable,
    lattice: NormalLattice | None = None,
    reverse_tiebreak: bool = False,
) -> list[ChiefFactorRecord]:
    """A chief series 1 = G_0 < ... < G_m = G with factor data.

    Deterministic: at each step the minimal normal subgroup of G/G_i with
    the smallest (order, members) key is chosen; reverse_tiebreak picks the
    largest key instead (used to probe Jordan-Hoelder invariance).
    """
    if not is_soluble(T):
        raise NotSoluble("chief series factor data requires a soluble group")
    lat = lattice if lattice is not None else normal_subgroups(T)
    chain = [trivial_subgroup(T)]
    records = []
    while chain[-1].order < T.n:
        cands = lat.minimal_over(chain[-1])
        cands.sort(key=lambda S: (S.order, S.members), reverse=reverse_tiebreak)
        nxt = cands[0]
        p, r = _factor_rank(T, chain[-1], nxt)
        records.append(
            ChiefFactorRecord(
                below=chain[-1],
                above=nxt,
                p=p,
                rank=r,
                self_centralizing=_is_self_centralizing(T, chain[-1], nxt),
            )
        )
        chain.append(nxt)
    return records


def sc_chief_rank(
    T: FiniteGroupTable, lattice: NormalLattice | None = None
) -> int:
    """Maximum rank of self-centralizing chief factors over all quotients."""
    if T.n == 1:
        raise TrivialGroup("self-centralizing chief rank needs a nontrivial group")
    if not is_soluble(T):
        raise NotSoluble("self-centralizing chief rank requires a soluble group")
    lat = lattice if lattice is not None else normal_subgroups(T)
    best = 0
    for N in lat.subgroups:
        if N.order == T.n:
            continue
        for M in lat.minimal_over(N):
            if _is_self_centralizing(T, N, M):
                _, r = _factor_rank(T, N, M)
                best = max(best, r)
    assert best >= 1, "every nontrivial soluble group has a self-centralizing factor"
    return best


def chief_factor_orders_selfc(
    T: FiniteGroupTable, lattice: NormalLattice | None = None
) -> set[int]:
    """Orders p^r of self-centralizing chief factors over all quotients."""
    lat = lattice if lattice is not None else normal_subgroups(T)
    out = set()
    for N in lat.subgroups:
        if N.order == T.n:
            continue
        for M in lat.minimal_over(N):
            if _is_self_centralizing(T, N, M):
                out.add(M.order // N.order)
    return out


def is_supersoluble(T: FiniteGroupTable, lattice: NormalLattice | None = None) -> bool:
    """True iff the self-centralizing chief rank is 1.

    Cross-checked against the direct definition: a chief series in which
    every factor has prime order.
    """
    lat = lattice if lattice is not None else normal_subgroups(T)
    by_rank = sc_chief_rank(T, lat) == 1
    by_series = all(rec.rank == 1 for rec in chief_series(T, lat))
    assert by_rank == by_series, "rank-1 criterion disagrees with cyclic chief factors"
    return by_rank


def check_srank_nilpotency(T: FiniteGroupTable, n: int) -> bool:
    """Nilpotency of the deep derived term for groups of rank at most n.

    Takes the derived-series term at the integer derived-length bound for
    soluble linear groups of degree n and reports whether it is nilpotent.
    """
    if not is_soluble(T):
        raise NotSoluble("check requires a soluble group")
    if T.n > 1 and n < sc_chief_rank(T):
        raise ValueError("n is below the self-centralizing chief rank")
    d = rho_int_bound(n)
    series = derived_series(T)
    term = series[d] if d < len(series) else series[-1]
    sub_series = lower_central_series(T, start=term)
    return sub_series[-1].is_trivial()


# -- full subgroup enumeration (soluble subgroups, cyclic extensions) --------


def soluble_subgroups(
    T: FiniteGroupTable, cap: int = SUBGROUP_ENUM_CAP
) -> list[Subgroup]:
    """All soluble subgroups of T, by prime cyclic extensions.

    Every soluble subgroup has a subnormal series with prime cyclic
    factors, so repeatedly extending each known subgroup H by elements g of
    its normalizer whose coset gH has prime order finds them all. For a
    soluble T this is the complete subgroup list.
    """
    if T.n > cap:
        raise CapExceeded(f"group order {T.n} exceeds subgroup enumeration cap {cap}")
    T.ensure_dense()
    triv = trivial_subgroup(T)
    found: dict[frozenset[int], Subgroup] = {triv.member_set: triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for H in frontier:
            hset = H.member_set
            norm = [
                g
                for g in range(T.n)
                if all(T.conj(x, g) in hset for x in H.generators)
            ]
            seen_cosets = set(H.members)
            for g in norm:
                if g in seen_cosets:
                    continue
                coset = {T.mul(h, g) for h in H.members}
                seen_cosets |= coset
                m, x = 1, g
                while x not in hset:
                    x = T.mul(x, g)
                    m += 1
                pr = _prime_power(m)
                if pr is None or pr[1] != 1:
                    continue
                members = set(H.members)
                power = 0
                for _ in range(m - 1):
                    power = T.mul(power, g)
                    members.update(T.mul(h, power) for h in H.members)
                assert len(members) == H.order * m
                key = frozenset(members)
                if key not in found:
                    K = Subgroup(T, tuple(sorted(members)), H.generators + (g,), key)
                    found[key] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.members))


def maximal_subgroups(T: FiniteGroupTable, cap: int = MAXIMAL_CHECK_CAP) -> list[Subgroup]:
    """Maximal proper subgroups of a soluble group (full enumeration)."""
    if T.n > cap:
        raise CapExceeded(f"group order {T.n} exceeds maximal-subgroup cap {cap}")
    if not is_soluble(T):
        raise NotSoluble("maximal subgroup enumeration implemented for soluble groups")
    subs = [S for S in soluble_subgroups(T) if S.order < T.n]
    out = []
    for H in subs:
        if not any(
            K.order > H.order and K.order % H.order == 0 and K.member_set > H.member_set
            for K in subs
        ):
            out.append(H)
    return out


def sc_iff_maximal_index_check(T: FiniteGroupTable) -> bool:
    """Diagnostic: self-centralizing factor orders equal maximal indices."""
    if not is_soluble(T):
        raise NotSoluble("diagnostic requires a soluble group")
    orders = chief_factor_orders_selfc(T)
    indices = {T.n // M.order for M in maximal_subgroups(T)}
    return orders == indices


def analyze_record(T: FiniteGroupTable) -> dict:
    """Full analysis record for the CLI: order, series data, chief data."""
    soluble = is_soluble(T)
    rec: dict = {"order": T.n, "soluble": soluble}
    ds = derived_series(T)
    rec["derived_length"] = len(ds) - 1 if ds[-1].is_trivial() else None
    ncl = nilpotency_class_of(T)
    rec["nilpotent"] = ncl is not None
    rec["nilpotency_class"] = ncl
    if soluble and T.n > 1:
        lat = normal_subgroups(T)
        rec["chief_factors"] = [
            {
                "p": r.p,
                "rank": r.rank,
                "order": r.order,
                "self_centralizing": r.self_centralizing,
            }
            for r in chief_series(T, lat)
        ]
        rec["sc_chief_rank"] = sc_chief_rank(T, lat)
        rec["supersoluble"] = is_supersoluble(T, lat)
    else:
        rec["chief_factors"] = None
        rec["sc_chief_rank"] = None
        rec["supersoluble"] = None
    return rec


def nilpotency_class_of(T: FiniteGroupTable) -> int | None:
    series = lower_central_series(T)
    return len(series) - 1 if series[-1].is_trivial() else None
