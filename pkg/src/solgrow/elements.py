"""Concrete group element variants with a shared multiply/inverse/encode contract.

Five variants are supported: permutations, matrices over a prime field,
integer matrices of determinant +-1, lamplighter elements (lamp set plus
head position), and finite-depth rooted-tree automorphisms given by
portraits. Canonical encodings are injective per variant, so encodings
double as hash keys for BFS deduplication.

Composition convention: permutations and tree automorphisms act on the
left, (g*h)(x) = g(h(x)), matching matrix action on column vectors.
"""

from __future__ import annotations

import struct
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MixedVariants, ParseError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GroupElement:
    """Common interface; concrete variants implement mul/inverse/encode."""

    variant: str = ""

    __slots__ = ()

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        raise NotImplementedError

    def inverse(self) -> "GroupElement":
        raise NotImplementedError

    def encode(self) -> bytes:
        raise NotImplementedError

    def identity(self) -> "GroupElement":
        """Identity element of the same variant and degree."""
        raise NotImplementedError

    def is_identity(self) -> bool:
        return self == self.identity()

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and self.encode() == other.encode()

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash(self.encode())

    def order(self, cap: int = 10**6) -> int:
        e = self.identity()
        x = self
        k = 1
        while x != e:
            x = x * self
            k += 1
            if k > cap:
                raise ValueError("element order exceeds cap")
        return k


class Perm(GroupElement):
    """Permutation of {0..m-1}, stored as the image tuple."""

    variant = "perm"

    __slots__ = ("images", "_enc")

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ParseError(f"not a permutation of 0..{len(imgs)-1}: {imgs}")
        self.images = imgs
        self._enc: bytes | None = None

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        a = self.images
        b = other.images
        p = Perm.__new__(Perm)
        p.images = tuple(a[x] for x in b)
        p._enc = None
        return p

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        p = Perm.__new__(Perm)
        p.images = tuple(inv)
        p._enc = None
        return p

    def identity(self) -> "Perm":
        p = Perm.__new__(Perm)
        p.images = tuple(range(len(self.images)))
        p._enc = None
        return p

    def __call__(self, point: int) -> int:
        return self.images[point]

    def encode(self) -> bytes:
        if self._enc is None:
            self._enc = b"P" + struct.pack("<H", len(self.images)) + struct.pack(
                f"<{len(self.images)}H", *self.images
            )
        return self._enc

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "Perm.id(%d)" % len(self.images)
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    @staticmethod
    def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        images = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[cyc[i]] = cyc[(i + 1) % len(cyc)]
        return Perm(images)


class MatFp(GroupElement):
    """Invertible n x n matrix over F_p, entries reduced mod p."""

    variant = "matfp"

    __slots__ = ("n", "p", "entries", "_enc")

    def __init__(self, n: int, p: int, entries: Sequence[Sequence[int]] | Sequence[int]):
        if not _is_prime(p):
            raise ParseError(f"p = {p} is not prime")
        flat: list[int]
        if entries and isinstance(entries[0], (list, tuple)):
            flat = [int(x) % p for row in entries for x in row]  # type: ignore[union-attr]
        else:
            flat = [int(x) % p for x in entries]  # type: ignore[arg-type]
        if len(flat) != n * n:
            raise ParseError(f"expected {n}x{n} entries")
        self.n = n
        self.p = p
        self.entries = tuple(flat)
        self._enc: bytes | None = None
        if self._det() == 0:
            raise ParseError("matrix is singular over F_p")

    def _det(self) -> int:
        # Gaussian elimination mod p.
        n, p = self.n, self.p
        m = [list(self.entries[i * n : (i + 1) * n]) for i in range(n)]
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] % p), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col] % p
            inv = pow(m[col][col], p - 2, p)
            for r in range(col + 1, n):
                f = m[r][col] * inv % p
                if f:
                    for c in range(col, n):
                        m[r][c] = (m[r][c] - f * m[col][c]) % p
        return det % p

    def __mul__(self, other: "MatFp") -> "MatFp":
        n, p = self.n, self.p
        a, b = self.entries, other.entries
        out = [0] * (n * n)
        for i in range(n):
            ai = i * n
            for k in range(n):
                aik = a[ai + k]
                if aik:
                    bk = k * n
                    for j in range(n):
                        out[ai + j] += aik * b[bk + j]
        m = MatFp.__new__(MatFp)
        m.n, m.p = n, p
        m.entries = tuple(x % p for x in out)
        m._enc = None
        return m

    def inverse(self) -> "MatFp":
        n, p = self.n, self.p
        m = [list(self.entries[i * n : (i + 1) * n]) + [int(i == j) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] % p)
            m[col], m[piv] = m[piv], m[col]
            inv = pow(m[col][col], p - 2, p)
            m[col] = [x * inv % p for x in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
        out = MatFp.__new__(MatFp)
        out.n, out.p = n, p
        out.entries = tuple(m[i][n + j] for i in range(n) for j in range(n))
        out._enc = None
        return out

    def identity(self) -> "MatFp":
        n = self.n
        m = MatFp.__new__(MatFp)
        m.n, m.p = n, self.p
        m.entries = tuple(int(i == j) for i in range(n) for j in range(n))
        m._enc = None
        return m

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector over F_p."""
        n, p = self.n, self.p
        return tuple(
            sum(self.entries[i * n + j] * vec[j] for j in range(n)) % p for i in range(n)
        )

    def rows(self) -> list[tuple[int, ...]]:
        n = self.n
        return [self.entries[i * n : (i + 1) * n] for i in range(n)]

    def encode(self) -> bytes:
        if self._enc is None:
            self._enc = (
                b"F"
                + struct.pack("<BI", self.n, self.p)
                + struct.pack(f"<{self.n * self.n}I", *self.entries)
            )
        return self._enc

    def __repr__(self) -> str:
        return f"MatFp({self.n}, {self.p}, {self.rows()})"


def _int_det(rows: list[list[int]]) -> int:
    # Fraction-free enough for desk-scale n; exact over Z via Fractions.
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    assert det.denominator == 1
    return int(det)


class MatZ(GroupElement):
    """Integer n x n matrix with determinant +-1 (exact arithmetic)."""

    variant = "matz"

    __slots__ = ("n", "entries", "_enc")

    def __init__(self, n: int, entries: Sequence[Sequence[int]] | Sequence[int]):
        flat: list[int]
        if entries and isinstance(entries[0], (list, tuple)):
            flat = [int(x) for row in entries for x in row]  # type: ignore[union-attr]
        else:
            flat = [int(x) for x in entries]  # type: ignore[arg-type]
        if len(flat) != n * n:
            raise ParseError(f"expected {n}x{n} entries")
        self.n = n
        self.entries = tuple(flat)
        self._enc: bytes | None = None
        d = _int_det([flat[i * n : (i + 1) * n] for i in range(n)])
        if d not in (1, -1):
            raise ParseError(f"determinant {d} is not +-1")

    def __mul__(self, other: "MatZ") -> "MatZ":
        n = self.n
        a, b = self.entries, other.entries
        out = [0] * (n * n)
        for i in range(n):
            ai = i * n
            for k in range(n):
                aik = a[ai + k]
                if aik:
                    bk = k * n
                    for j in range(n):
                        out[ai + j] += aik * b[bk + j]
        m = MatZ.__new__(MatZ)
        m.n = n
        m.entries = tuple(out)
        m._enc = None
        return m

    def inverse(self) -> "MatZ":
        # Gauss-Jordan over Q; the result is integral because det = +-1.
        n = self.n
        m = [
            [Fraction(self.entries[i * n + j]) for j in range(n)]
            + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        out = MatZ.__new__(MatZ)
        out.n = n
        vals = [m[i][n + j] for i in range(n) for j in range(n)]
        assert all(v.denominator == 1 for v in vals)
        out.entries = tuple(int(v) for v in vals)
        out._enc = None
        return out

    def identity(self) -> "MatZ":
        n = self.n
        m = MatZ.__new__(MatZ)
        m.n = n
        m.entries = tuple(int(i == j) for i in range(n) for j in range(n))
        m._enc = None
        return m

    def rows(self) -> list[tuple[int, ...]]:
        n = self.n
        return [self.entries[i * n : (i + 1) * n] for i in range(n)]

    def encode(self) -> bytes:
        # Entries are unbounded, so the encoding is length-delimited text.
        if self._enc is None:
            self._enc = b"Z" + struct.pack("<B", self.n) + repr(self.entries).encode()
        return self._enc

    def __repr__(self) -> str:
        return f"MatZ({self.n}, {self.rows()})"


class Lamplighter(GroupElement):
    """Element of the lamplighter group: finite set of lit lamps plus head."""

    variant = "lamplighter"

    __slots__ = ("lamps", "head", "_enc")

    def __init__(self, lamps: Iterable[int], head: int):
        self.lamps = frozenset(int(x) for x in lamps)
        self.head = int(head)
        self._enc: bytes | None = None

    def __mul__(self, other: "Lamplighter") -> "Lamplighter":
        # (f1, k1)(f2, k2) = (f1 xor shift(f2, k1), k1 + k2)
        shifted = frozenset(x + self.head for x in other.lamps)
        m = Lamplighter.__new__(Lamplighter)
        m.lamps = self.lamps ^ shifted
        m.head = self.head + other.head
        m._enc = None
        return m

    def inverse(self) -> "Lamplighter":
        m = Lamplighter.__new__(Lamplighter)
        m.lamps = frozenset(x - self.head for x in self.lamps)
        m.head = -self.head
        m._enc = None
        return m

    def identity(self) -> "Lamplighter":
        m = Lamplighter.__new__(Lamplighter)
        m.lamps = frozenset()
        m.head = 0
        m._enc = None
        return m

    def encode(self) -> bytes:
        if self._enc is None:
            self._enc = b"L" + repr((tuple(sorted(self.lamps)), self.head)).encode()
        return self._enc

    def __repr__(self) -> str:
        return f"Lamplighter({sorted(self.lamps)}, {self.head})"


def _node_paths(arity: int, depth: int) -> list[tuple[int, ...]]:
    """Internal nodes (levels 0..depth-1) in depth-first order."""
    out: list[tuple[int, ...]] = []

    def rec(path: tuple[int, ...]):
        out.append(path)
        if len(path) + 1 < depth:
            for c in range(arity):
                rec(path + (c,))

    if depth >= 1:
        rec(())
    return out


class TreeAuto(GroupElement):
    """Automorphism of the depth-d complete m-ary rooted tree, as a portrait.

    The portrait assigns to each internal node v a permutation label g_v of
    the child indices; the action on a leaf path (x1..xd) is
    (g_()(x1), g_(x1)(x2), ...). Identity labels are dropped from storage.
    """

    variant = "treeauto"

    __slots__ = ("depth", "arity", "portrait", "_enc")

    def __init__(self, depth: int, arity: int, portrait: dict):
        if depth < 1 or arity < 2:
            raise ParseError("treeauto needs depth >= 1 and arity >= 2")
        ident = tuple(range(arity))
        norm: dict[tuple[int, ...], tuple[int, ...]] = {}
        for path, label in portrait.items():
            path = tuple(int(x) for x in path)
            if len(path) >= depth or any(not (0 <= x < arity) for x in path):
                raise ParseError(f"bad portrait node {path}")
            lab = tuple(int(x) for x in label)
            if sorted(lab) != list(range(arity)):
                raise ParseError(f"portrait label at {path} is not a permutation")
            if lab != ident:
                norm[path] = lab
        self.depth = depth
        self.arity = arity
        self.portrait = norm
        self._enc: bytes | None = None

    def label(self, path: tuple[int, ...]) -> tuple[int, ...]:
        return self.portrait.get(path, tuple(range(self.arity)))

    def apply_path(self, path: Sequence[int]) -> tuple[int, ...]:
        """Image of a vertex path (length <= depth)."""
        out = []
        prefix: tuple[int, ...] = ()
        for x in path:
            out.append(self.label(prefix)[x])
            prefix = prefix + (x,)
        return tuple(out)

    def __mul__(self, other: "TreeAuto") -> "TreeAuto":
        # (g*h) section at v: g_{h(v)} o h_v. Nontrivial only on h's support
        # or on h-preimages of g's support, so the walk stays sparse.
        ident = tuple(range(self.arity))
        port: dict[tuple[int, ...], tuple[int, ...]] = {}
        cand = set(other.portrait)
        for path in self.portrait:
            cand.add(other._preimage_path(path))
        for path in cand:
            gl = self.label(other.apply_path(path))
            hl = other.label(path)
            lab = tuple(gl[hl[x]] for x in range(self.arity))
            if lab != ident:
                port[path] = lab
        m = TreeAuto.__new__(TreeAuto)
        m.depth = self.depth
        m.arity = self.arity
        m.portrait = port
        m._enc = None
        return m

    def _preimage_path(self, path: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        prefix: tuple[int, ...] = ()
        for x in path:
            lab = self.label(prefix)
            pre = lab.index(x)
            out.append(pre)
            prefix = prefix + (pre,)
        return tuple(out)

    def inverse(self) -> "TreeAuto":
        ident = tuple(range(self.arity))
        port: dict[tuple[int, ...], tuple[int, ...]] = {}
        for path, lab in self.portrait.items():
            inv = [0] * self.arity
            for i, x in enumerate(lab):
                inv[x] = i
            pre = self._pre_of_image_node(path)
            if tuple(inv) != ident:
                port[pre] = tuple(inv)
        m = TreeAuto.__new__(TreeAuto)
        m.depth = self.depth
        m.arity = self.arity
        m.portrait = port
        m._enc = None
        return m

    def _pre_of_image_node(self, path: tuple[int, ...]) -> tuple[int, ...]:
        # (g^-1)_v = (g_{g^-1(v)})^-1, so the inverse's label lives at g(v).
        return self.apply_path(path)

    def identity(self) -> "TreeAuto":
        m = TreeAuto.__new__(TreeAuto)
        m.depth = self.depth
        m.arity = self.arity
        m.portrait = {}
        m._enc = None
        return m

    def to_leaf_perm(self) -> Perm:
        """Action on the m^d leaves, leaf index = big-endian digit string."""
        m, d = self.arity, self.depth
        n = m**d
        images = []
        for idx in range(n):
            digits = []
            x = idx
            for _ in range(d):
                digits.append(x % m)
                x //= m
            digits.reverse()
            img = self.apply_path(digits)
            val = 0
            for t in img:
                val = val * m + t
            images.append(val)
        return Perm(images)

    def encode(self) -> bytes:
        if self._enc is None:
            parts = [b"T", struct.pack("<BB", self.depth, self.arity)]
            for path in _node_paths(self.arity, self.depth):
                parts.append(bytes(self.label(path)))
            self._enc = b"".join(parts)
        return self._enc

    def __repr__(self) -> str:
        return f"TreeAuto(depth={self.depth}, arity={self.arity}, {dict(sorted(self.portrait.items()))})"


class GenSet:
    """Ordered generating set of one variant; inverses adjoined for BFS.

    With symmetric=True (default) word lengths are measured over X u X^-1.
    An explicitly inverse-closed X may set symmetric=False.
    """

    def __init__(self, elements: Sequence[GroupElement], symmetric: bool = True,
                 allow_identity: bool = False):
        elems = list(elements)
        if not elems:
            raise ParseError("generating set is empty")
        v = elems[0].variant
        deg = _degree_key(elems[0])
        for g in elems:
            if g.variant != v or _degree_key(g) != deg:
                raise MixedVariants(f"mixed variants/degrees in generating set")
        if not allow_identity:
            for g in elems:
                if g.is_identity():
                    raise ParseError("identity element in generating set")
        self.elements = elems
        self.symmetric = symmetric

    @property
    def variant(self) -> str:
        return self.elements[0].variant

    def identity(self) -> GroupElement:
        return self.elements[0].identity()

    def bfs_steps(self) -> list[tuple[GroupElement, int]]:
        """Multiplication steps in deterministic order: X, then X^-1.

        Each step is (element, signed generator reference): +i for
        generator i, -(i+1) for its inverse.
        """
        steps = [(g, i + 1) for i, g in enumerate(self.elements)]
        if self.symmetric:
            steps += [(g.inverse(), -(i + 1)) for i, g in enumerate(self.elements)]
        return steps

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _degree_key(g: GroupElement):
    if isinstance(g, Perm):
        return ("perm", g.degree)
    if isinstance(g, MatFp):
        return ("matfp", g.n, g.p)
    if isinstance(g, MatZ):
        return ("matz", g.n)
    if isinstance(g, Lamplighter):
        return ("lamplighter",)
    if isinstance(g, TreeAuto):
        return ("treeauto", g.depth, g.arity)
    return ("pair", getattr(g, "_degkey", None))
