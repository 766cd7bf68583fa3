"""Fully enumerated finite groups with exact Cayley word lengths.

A FiniteGroupTable indexes every element of a finite group; index 0 is the
identity and word_length[i] is the exact BFS distance from the identity
over the generating set (inverses adjoined). Tables are either
element-backed (built by enumerate_group from concrete GroupElements) or
abstract (quotients, direct products, subgroup restrictions), in which
case products are index arithmetic delegated to the parent structure.

Tables are immutable after construction; all queries are pure reads.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .elements import GenSet, GroupElement, MatFp, Perm
from .errors import CapExceeded, NotNormal

DEFAULT_CAP = 2_000_000
DENSE_LIMIT = 4096


class FiniteGroupTable:
    """Indexed finite group. Do not mutate after construction."""

    def __init__(
        self,
        encodings: list[bytes],
        mulfunc: Callable[[int, int], int],
        inv_idx: list[int],
        generators: list[int],
        elements: list[GroupElement] | None = None,
        gen_set: GenSet | None = None,
        word_length: list[int] | None = None,
        bfs_parent: list[tuple[int, int] | None] | None = None,
        step_refs: list[int] | None = None,
        dense_builder: Callable[[], list[array] | None] | None = None,
    ):
        self.n = len(encodings)
        self.encodings = encodings
        self.index = {enc: i for i, enc in enumerate(encodings)}
        assert len(self.index) == self.n, "encodings are not injective"
        self._mulfunc = mulfunc
        self.inv_idx = inv_idx
        self.generators = list(generators)
        self.elements = elements
        self.gen_set = gen_set
        self._rows: list[array] | None = None
        self._dense_builder = dense_builder
        if word_length is None:
            word_length, bfs_parent, step_refs = self._index_bfs()
        self.word_length = word_length
        self.bfs_parent = bfs_parent
        self.step_refs = step_refs

    # -- products ---------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self._rows is not None:
            return self._rows[i][j]
        return self._mulfunc(i, j)

    def inv(self, i: int) -> int:
        return self.inv_idx[i]

    def conj(self, x: int, g: int) -> int:
        """g^-1 * x * g."""
        return self.mul(self.mul(self.inv_idx[g], x), g)

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        return self.mul(self.mul(self.mul(self.inv_idx[a], self.inv_idx[b]), a), b)

    def order_of(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def ensure_dense(self, limit: int = DENSE_LIMIT) -> bool:
        """Build the dense product table if the group is small enough."""
        if self._rows is not None:
            return True
        if self.n > limit:
            return False
        rows = None
        if self._dense_builder is not None:
            rows = self._dense_builder()
        if rows is None:
            rows = self._build_dense_generic()
        if rows is None:
            return False
        self._rows = rows
        return True

    def _build_dense_generic(self) -> list[array] | None:
        n = self.n
        if self.elements is not None and isinstance(self.elements[0], Perm):
            imgs = np.array([g.images for g in self.elements], dtype=np.int32)
            lookup = {imgs[j].tobytes(): j for j in range(n)}
            rows = []
            for i in range(n):
                composed = imgs[i][imgs]
                rows.append(array("i", [lookup[r.tobytes()] for r in composed]))
            return rows
        if self.elements is not None and isinstance(self.elements[0], MatFp):
            first = self.elements[0]
            d, p = first.n, first.p
            stack = np.array(
                [g.entries for g in self.elements], dtype=np.int64
            ).reshape(n, d, d)
            lookup = {stack[j].tobytes(): j for j in range(n)}
            rows = []
            for i in range(n):
                prods = np.matmul(stack[i], stack) % p
                rows.append(array("i", [lookup[r.tobytes()] for r in prods]))
            return rows
        if self.n <= 1500 or self.elements is None:
            mul = self._mulfunc
            return [array("i", [mul(i, j) for j in range(n)]) for i in range(n)]
        return None

    # -- BFS and words ------------------------------------------------------

    def _index_bfs(self):
        """Word lengths w.r.t. self.generators, over gens then inverses."""
        steps: list[tuple[int, int]] = []
        for i, g in enumerate(self.generators):
            steps.append((g, i + 1))
        for i, g in enumerate(self.generators):
            steps.append((self.inv_idx[g], -(i + 1)))
        wl = [-1] * self.n
        parent: list[tuple[int, int] | None] = [None] * self.n
        wl[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for ordinal, (g, _ref) in enumerate(steps):
                    y = self.mul(x, g)
                    if wl[y] < 0:
                        wl[y] = wl[x] + 1
                        parent[y] = (x, ordinal)
                        nxt.append(y)
            frontier = nxt
        assert all(d >= 0 for d in wl), "generators do not generate the table"
        return wl, parent, [ref for (_g, ref) in steps]

    def word(self, i: int) -> list[int]:
        """Geodesic word for element i as signed generator references.

        +k means generator k-1, -k its inverse; the product read left to
        right equals the element.
        """
        out: list[int] = []
        while i != 0:
            prev, ordinal = self.bfs_parent[i]  # type: ignore[index]
            out.append(self.step_refs[ordinal])
            i = prev
        out.reverse()
        return out

    def evaluate_word(self, word: Sequence[int]) -> int:
        x = 0
        for ref in word:
            g = self.generators[abs(ref) - 1]
            x = self.mul(x, g if ref > 0 else self.inv_idx[g])
        return x

    # -- growth -------------------------------------------------------------

    def growth_counts(self) -> list[int]:
        """Cumulative ball sizes gamma(0..diameter) from word lengths."""
        diam = max(self.word_length)
        per = [0] * (diam + 1)
        for d in self.word_length:
            per[d] += 1
        out = []
        total = 0
        for c in per:
            total += c
            out.append(total)
        return out

    def gamma(self, r: int) -> int:
        counts = self.growth_counts()
        if r >= len(counts):
            return counts[-1]
        return counts[r]

    def diameter(self) -> int:
        return max(self.word_length)

    def elements_by_length(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.diameter() + 1)]
        for i, d in enumerate(self.word_length):
            out[d].append(i)
        return out


@dataclass(frozen=True)
class Subgroup:
    """Member index set of a subgroup, with a generating index list."""

    table: FiniteGroupTable
    members: tuple[int, ...]
    generators: tuple[int, ...]
    member_set: frozenset[int] = field(repr=False, default=frozenset())

    def __post_init__(self):
        if not self.member_set:
            object.__setattr__(self, "member_set", frozenset(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.member_set

    def contains_set(self, other: "Subgroup") -> bool:
        return self.member_set >= other.member_set

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def is_whole(self) -> bool:
        return len(self.members) == self.table.n

    def is_abelian(self) -> bool:
        T = self.table
        gens = self.generators
        return all(
            T.mul(a, b) == T.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1 :]
        )

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order})"


def whole_group(T: FiniteGroupTable) -> Subgroup:
    return Subgroup(T, tuple(range(T.n)), tuple(T.generators))


def trivial_subgroup(T: FiniteGroupTable) -> Subgroup:
    return Subgroup(T, (0,), ())


def _close_indices(T: FiniteGroupTable, gens: Sequence[int]) -> list[int]:
    """Members of <gens>: right-multiplication closure from the identity.

    In a finite group the subsemigroup containing the identity and closed
    under right multiplication by the seeds is already a subgroup.
    """
    member = bytearray(T.n)
    member[0] = 1
    out = [0]
    frontier = [0]
    gl = [g for g in gens if g != 0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gl:
                y = T.mul(x, g)
                if not member[y]:
                    member[y] = 1
                    out.append(y)
                    nxt.append(y)
        frontier = nxt
    return out


def subgroup_generated(T: FiniteGroupTable, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed indices."""
    gens: list[int] = []
    seen = set()
    for s in seeds:
        if s != 0 and s not in seen:
            seen.add(s)
            gens.append(s)
    members = _close_indices(T, gens)
    return Subgroup(T, tuple(sorted(members)), tuple(gens))


def _normal_closure_under(
    T: FiniteGroupTable, seeds: Iterable[int], conjugators: Sequence[int]
) -> Subgroup:
    """Smallest subgroup containing seeds, normalized by <conjugators>.

    Closure under conjugation by the conjugator generators suffices: the
    resulting finite subgroup maps into itself under each, hence onto.
    """
    gens: list[int] = []
    seen = set()
    for s in seeds:
        if s != 0 and s not in seen:
            seen.add(s)
            gens.append(s)
    H = subgroup_generated(T, gens)
    while True:
        new = []
        for x in gens:
            for g in conjugators:
                y = T.conj(x, g)
                if y not in H.member_set and y not in seen:
                    seen.add(y)
                    new.append(y)
        if not new:
            return Subgroup(T, H.members, tuple(gens))
        gens.extend(new)
        H = subgroup_generated(T, gens)


def normal_closure(T: FiniteGroupTable, seeds: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup of T containing the seeds."""
    return _normal_closure_under(T, seeds, T.generators)


def reduce_generators(T: FiniteGroupTable, H: Subgroup) -> Subgroup:
    """Replace the generator list by a short one (greedy, by index order)."""
    gens: list[int] = []
    closed = {0}
    for x in H.members:
        if x in closed:
            continue
        gens.append(x)
        closed = set(_close_indices(T, gens))
        if len(closed) == H.order:
            break
    return Subgroup(T, H.members, tuple(gens), H.member_set)


def commutator_subgroup(T: FiniteGroupTable, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B]: normal closure in <A, B> of generator commutators."""
    joint: list[int] = []
    seen = set()
    for g in list(A.generators) + list(B.generators):
        if g not in seen and g != 0:
            seen.add(g)
            joint.append(g)
    seeds = []
    seedset = set()
    for a in A.generators:
        for b in B.generators:
            c = T.comm(a, b)
            if c != 0 and c not in seedset:
                seedset.add(c)
                seeds.append(c)
    H = _normal_closure_under(T, seeds, joint)
    return reduce_generators(T, H)


def derived_series(T: FiniteGroupTable, start: Subgroup | None = None) -> list[Subgroup]:
    """Descending derived series from the whole group (or from `start`).

    Stops at the first repetition; for a soluble group the last term is
    trivial.
    """
    H = start if start is not None else whole_group(T)
    series = [H]
    while True:
        nxt = commutator_subgroup(T, H, H)
        if nxt.order == H.order:
            break
        series.append(nxt)
        H = nxt
        if H.is_trivial():
            break
    return series


def derived_length(T: FiniteGroupTable, start: Subgroup | None = None) -> int | None:
    """Derived length, or None if the series does not reach the identity."""
    series = derived_series(T, start)
    if series[-1].is_trivial():
        return len(series) - 1
    return None


def is_soluble(T: FiniteGroupTable, start: Subgroup | None = None) -> bool:
    return derived_length(T, start) is not None


def lower_central_series(
    T: FiniteGroupTable, start: Subgroup | None = None
) -> list[Subgroup]:
    """gamma_1 >= gamma_2 >= ..., stopping at the first repetition."""
    G = start if start is not None else whole_group(T)
    series = [G]
    H = G
    while True:
        nxt = commutator_subgroup(T, H, G)
        if nxt.order == H.order:
            break
        series.append(nxt)
        H = nxt
        if H.is_trivial():
            break
    return series


def nilpotency_class(T: FiniteGroupTable, start: Subgroup | None = None) -> int | None:
    """Nilpotency class, or None if not nilpotent."""
    series = lower_central_series(T, start)
    if series[-1].is_trivial():
        return len(series) - 1
    return None


def gamma3(T: FiniteGroupTable, H: Subgroup) -> Subgroup:
    """Third lower-central term of H (computed inside H)."""
    h2 = commutator_subgroup(T, H, H)
    return commutator_subgroup(T, h2, H)


def conjugacy_classes(T: FiniteGroupTable) -> list[tuple[int, ...]]:
    """Partition of the element set into conjugacy classes.

    Classes are sorted by their least member; each class is sorted.
    """
    seen = bytearray(T.n)
    classes = []
    for x in range(T.n):
        if seen[x]:
            continue
        orbit = [x]
        seen[x] = 1
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in T.generators:
                    z = T.conj(y, g)
                    if not seen[z]:
                        seen[z] = 1
                        orbit.append(z)
                        nxt.append(z)
            frontier = nxt
        classes.append(tuple(sorted(orbit)))
    return classes


def centralizer(T: FiniteGroupTable, S: Subgroup) -> Subgroup:
    """Elements commuting with every member of S (generators suffice)."""
    gens = S.generators if S.generators else ()
    members = [
        g
        for g in range(T.n)
        if all(T.mul(g, s) == T.mul(s, g) for s in gens)
    ]
    H = Subgroup(T, tuple(members), ())
    return reduce_generators(T, H)


def center(T: FiniteGroupTable) -> Subgroup:
    return centralizer(T, whole_group(T))


def is_normal(T: FiniteGroupTable, H: Subgroup) -> bool:
    return all(T.conj(x, g) in H.member_set for x in H.generators for g in T.generators)


# -- enumeration ------------------------------------------------------------


def enumerate_group(X: GenSet, cap: int = DEFAULT_CAP) -> FiniteGroupTable:
    """BFS-enumerate <X> with exact word lengths over X u X^-1.

    Deterministic: elements are indexed in discovery order, expanding each
    level by the generators in list order and then their inverses.
    """
    if cap < 1:
        raise CapExceeded("cap must be >= 1", 0)
    e = X.identity()
    steps = X.bfs_steps()
    elements: list[GroupElement] = [e]
    encodings = [e.encode()]
    index = {encodings[0]: 0}
    wl = [0]
    parent: list[tuple[int, int] | None] = [None]
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            base = elements[i]
            for ordinal, (s, _ref) in enumerate(steps):
                prod = base * s
                enc = prod.encode()
                j = index.get(enc)
                if j is None:
                    if len(elements) >= cap:
                        raise CapExceeded(
                            f"group exceeds cap of {cap} elements", len(elements)
                        )
                    j = len(elements)
                    index[enc] = j
                    elements.append(prod)
                    encodings.append(enc)
                    wl.append(wl[i] + 1)
                    parent.append((i, ordinal))
                    nxt.append(j)
        frontier = nxt

    gen_indices = [index[g.encode()] for g in X.elements]
    inv_idx = [index[g.inverse().encode()] for g in elements]

    def mulfunc(i: int, j: int, _els=elements, _idx=index) -> int:
        return _idx[(_els[i] * _els[j]).encode()]

    return FiniteGroupTable(
        encodings,
        mulfunc,
        inv_idx,
        gen_indices,
        elements=elements,
        gen_set=X,
        word_length=wl,
        bfs_parent=parent,
        step_refs=[ref for (_s, ref) in steps],
    )


# -- derived tables ----------------------------------------------------------


def subgroup_table(T: FiniteGroupTable, H: Subgroup) -> FiniteGroupTable:
    """H as a standalone table; word lengths are w.r.t. H's generators."""
    glob = list(H.members)
    local = {g: i for i, g in enumerate(glob)}
    encodings = [T.encodings[g] for g in glob]
    inv_idx = [local[T.inv_idx[g]] for g in glob]
    gens = [local[g] for g in H.generators]
    elements = [T.elements[g] for g in glob] if T.elements is not None else None

    def mulfunc(i: int, j: int, _g=glob, _l=local, _T=T) -> int:
        return _l[_T.mul(_g[i], _g[j])]

    return FiniteGroupTable(encodings, mulfunc, inv_idx, gens, elements=elements)


class QuotientGroup:
    """Quotient G/N carried as a coset-representative table.

    `table` is a genuine FiniteGroupTable over the cosets (representative =
    least element index in each coset), so every table operation applies to
    quotients; `coset_of` maps parent indices to quotient indices.
    """

    def __init__(self, parent: FiniteGroupTable, N: Subgroup):
        if not is_normal(parent, N):
            raise NotNormal(f"subgroup of order {N.order} is not normal")
        coset_of = [-1] * parent.n
        reps: list[int] = []
        members = list(N.members)
        for g in range(parent.n):
            if coset_of[g] >= 0:
                continue
            cid = len(reps)
            reps.append(g)
            for x in members:
                coset_of[parent.mul(g, x)] = cid
        self.parent = parent
        self.normal = N
        self.coset_of = coset_of
        self.reps = reps
        assert len(reps) * N.order == parent.n

        encodings = [parent.encodings[r] for r in reps]
        inv_idx = [coset_of[parent.inv_idx[r]] for r in reps]
        # Images of the parent generators, order and multiplicity preserved,
        # so that word references in the quotient lift to the parent.
        gens = [coset_of[g] for g in parent.generators]

        def mulfunc(i: int, j: int, _r=reps, _c=coset_of, _p=parent) -> int:
            return _c[_p.mul(_r[i], _r[j])]

        self.table = FiniteGroupTable(encodings, mulfunc, inv_idx, gens)

    def image(self, H: Subgroup) -> Subgroup:
        """Image of a parent subgroup in the quotient."""
        members = sorted({self.coset_of[x] for x in H.members})
        gens = []
        for g in H.generators:
            c = self.coset_of[g]
            if c != 0 and c not in gens:
                gens.append(c)
        return Subgroup(self.table, tuple(members), tuple(gens))

    def preimage(self, H: Subgroup) -> Subgroup:
        """Preimage in the parent of a quotient subgroup."""
        mem = frozenset(H.members)
        members = tuple(g for g in range(self.parent.n) if self.coset_of[g] in mem)
        gens = tuple(self.reps[h] for h in H.generators) + tuple(self.normal.generators)
        return Subgroup(self.parent, members, gens)


def quotient(T: FiniteGroupTable, N: Subgroup) -> QuotientGroup:
    """Quotient of T by a normal subgroup N."""
    return QuotientGroup(T, N)


def direct_product(A: FiniteGroupTable, B: FiniteGroupTable) -> FiniteGroupTable:
    """Direct product at the table level; element (i, j) has index i*|B|+j."""
    nA, nB = A.n, B.n
    encodings = []
    for i in range(nA):
        ea = A.encodings[i]
        head = b"D" + len(ea).to_bytes(4, "little") + ea
        for j in range(nB):
            encodings.append(head + B.encodings[j])
    inv_idx = [A.inv_idx[i] * nB + B.inv_idx[j] for i in range(nA) for j in range(nB)]
    gens = [g * nB for g in A.generators] + [g for g in B.generators]

    def mulfunc(x: int, y: int, _nB=nB, _A=A, _B=B) -> int:
        i, j = divmod(x, _nB)
        k, l = divmod(y, _nB)
        return _A.mul(i, k) * _nB + _B.mul(j, l)

    def dense_builder() -> list[array] | None:
        if not (A.ensure_dense() and B.ensure_dense()):
            return None
        Ad = np.array([list(r) for r in A._rows], dtype=np.int64)
        Bd = np.array([list(r) for r in B._rows], dtype=np.int64)
        full = (
            Ad[:, None, :, None] * nB + Bd[None, :, None, :]
        ).reshape(nA * nB, nA * nB)
        return [array("i", row.tolist()) for row in full]

    return FiniteGroupTable(
        encodings, mulfunc, inv_idx, gens, dense_builder=dense_builder
    )


def direct_power(A: FiniteGroupTable, k: int) -> FiniteGroupTable:
    T = A
    for _ in range(k - 1):
        T = direct_product(T, A)
    return T
