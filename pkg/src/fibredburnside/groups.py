"""Finite groups as explicit Cayley tables, with the elementary machinery
built on top: subgroups, quotients, homomorphisms, automorphisms, double
cosets and a small-groups catalog.

Element convention: elements of a group of order n are the indices
0..n-1, with 0 always the identity.  Conjugation is ``^g x = g x g^-1``
and ``x^g = g^-1 x g`` throughout.

All values are immutable after construction; the internal caches only
ever store idempotently recomputable data, so sharing across threads is
safe and every operation is a pure function of its arguments.
"""

from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence, Union

import numpy as np

__all__ = [
    "GroupError",
    "GroupSpecError",
    "BoundExceededError",
    "FiniteGroup",
    "Subgroup",
    "GroupHom",
    "ProductEmbedding",
    "AutomorphismData",
    "cyclic",
    "dihedral",
    "quaternion8",
    "symmetric",
    "alternating4",
    "dicyclic",
    "group_from_spec",
    "direct_product",
    "product_embedding",
    "subgroups",
    "center",
    "frattini",
    "homomorphisms",
    "automorphisms",
    "quotient",
    "subgroup_as_group",
    "double_coset_representatives",
    "isomorphism",
    "small_groups_catalog",
    "compose_homs",
]

SUBGROUP_ORDER_BOUND = 64
CATALOG_MAX_ORDER = 15


class GroupError(Exception):
    """Base error for group construction and queries."""


class GroupSpecError(GroupError):
    """Malformed or unsupported group spec string."""


class BoundExceededError(GroupError):
    """An enumeration was requested beyond the configured order bound."""


# ---------------------------------------------------------------------------
# core types


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Instances compare by identity (two structurally equal tables are still
    distinct groups); use :func:`isomorphism` for mathematical comparison.
    Instances are immutable after construction and cache derived data.
    """

    __slots__ = ("order", "table", "identity", "inverses", "labels", "name",
                 "_flat", "_cache")

    def __init__(self, table, labels=None, name=None, validate=True):
        rows = tuple(tuple(int(x) for x in row) for row in table)
        n = len(rows)
        self.order = n
        self.table = rows
        self.identity = 0
        self.name = name or f"group{n}"
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GroupError("labels length does not match order")
        self.labels = labels
        flat = []
        for row in rows:
            flat.extend(row)
        self._flat = flat
        self._cache = {}
        if validate:
            self._validate()
        inv = [-1] * n
        for a in range(n):
            b = rows[a].index(0)
            inv[a] = b
        self.inverses = tuple(inv)

    def _validate(self):
        n = self.order
        if n <= 0:
            raise GroupError("group must be nonempty")
        arr = np.array(self.table, dtype=np.int64)
        if arr.shape != (n, n) or arr.min() < 0 or arr.max() >= n:
            raise GroupError("table entries out of range")
        for a in range(n):
            if len(set(self.table[a])) != n:
                raise GroupError(f"row {a} is not a permutation")
            if len({self.table[b][a] for b in range(n)}) != n:
                raise GroupError(f"column {a} is not a permutation")
        if any(self.table[0][a] != a or self.table[a][0] != a for a in range(n)):
            raise GroupError("element 0 does not act as identity")
        for a in range(n):
            if 0 not in self.table[a]:
                raise GroupError(f"element {a} has no inverse")
        # full associativity scan; beyond the bound the constructions used
        # here (direct products of validated tables) are associative anyway
        if n <= SUBGROUP_ORDER_BOUND:
            if not np.array_equal(arr[arr, :], arr[:, arr]):
                raise GroupError("table is not associative")

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._flat[a * self.order + b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """``^g x = g x g^-1``."""
        f = self._flat
        n = self.order
        return f[f[g * n + x] * n + self.inverses[g]]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        orders = self._cache.get("element_orders")
        if orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = self.mul(y, x)
                    k += 1
                orders.append(k)
            orders = tuple(orders)
            self._cache["element_orders"] = orders
        return orders[a]

    def order_census(self) -> tuple:
        """Sorted multiset of element orders (an isomorphism invariant)."""
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    @property
    def is_abelian(self) -> bool:
        val = self._cache.get("abelian")
        if val is None:
            val = all(self.mul(a, b) == self.mul(b, a)
                      for a in range(self.order) for b in range(a))
            self._cache["abelian"] = val
        return val

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(elements))))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), _validate=False)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)), _validate=False)

    def generated_subgroup(self, generators: Iterable[int]) -> "Subgroup":
        mask = closure_mask(self, list(generators))
        return Subgroup(self, mask_to_elements(mask), _validate=False)

    # -- conjugation helpers ------------------------------------------------

    def conjugation_perm(self, g: int) -> tuple:
        """The permutation x -> g x g^-1 as a tuple."""
        perms = self._cache.setdefault("conj_perms", {})
        p = perms.get(g)
        if p is None:
            f = self._flat
            n = self.order
            gi = self.inverses[g]
            row = g * n
            p = tuple(f[f[row + x] * n + gi] for x in range(n))
            perms[g] = p
        return p

    def conjugation_reps(self) -> tuple:
        """Coset representatives of the center; conjugation by any element
        equals conjugation by one of these."""
        reps = self._cache.get("conj_reps")
        if reps is None:
            z = center(self).mask
            seen = 0
            out = []
            for g in range(self.order):
                if not (seen >> g) & 1:
                    out.append(g)
                    m = z
                    while m:
                        b = m & -m
                        seen |= 1 << self.mul(g, b.bit_length() - 1)
                        m ^= b
            reps = tuple(out)
            self._cache["conj_reps"] = reps
        return reps

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        data = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.labels is not None:
            data["labels"] = list(self.labels)
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(data["table"], labels=data.get("labels"),
                   name=data.get("name"))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class Subgroup:
    """A subgroup of a fixed parent group, stored as a sorted element tuple."""

    __slots__ = ("parent", "elements", "_mask")

    def __init__(self, parent: FiniteGroup, elements, _validate=True):
        self.parent = parent
        self.elements = tuple(elements)
        self._mask = None
        if _validate:
            self._validate()

    def _validate(self):
        els = self.elements
        if list(els) != sorted(set(els)):
            raise GroupError("subgroup elements must be sorted and distinct")
        if not els or els[0] != 0:
            raise GroupError("subgroup must contain the identity")
        mask = 0
        for x in els:
            if not (0 <= x < self.parent.order):
                raise GroupError("subgroup element out of range")
            mask |= 1 << x
        mul = self.parent.mul
        inv = self.parent.inverses
        for a in els:
            if not (mask >> inv[a]) & 1:
                raise GroupError("subgroup not closed under inverses")
            for b in els:
                if not (mask >> mul(a, b)) & 1:
                    raise GroupError("subgroup not closed under products")
        self._mask = mask

    @property
    def mask(self) -> int:
        m = self._mask
        if m is None:
            m = 0
            for x in self.elements:
                m |= 1 << x
            self._mask = m
        return m

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, x: int) -> bool:
        return (self.mask >> x) & 1 == 1

    def is_subset_of(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def is_normal(self) -> bool:
        G = self.parent
        m = self.mask
        return all(conjugate_mask(G, m, g) == m for g in G.conjugation_reps())

    def conjugate(self, g: int) -> "Subgroup":
        m = conjugate_mask(self.parent, self.mask, g)
        return Subgroup(self.parent, mask_to_elements(m), _validate=False)

    def index_of(self, x: int) -> int:
        """Position of a parent element inside this subgroup's element list."""
        import bisect
        i = bisect.bisect_left(self.elements, x)
        if i == len(self.elements) or self.elements[i] != x:
            raise GroupError(f"element {x} not in subgroup")
        return i

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.elements == self.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        names = ",".join(self.parent.label(x) for x in self.elements[:6])
        tail = ",..." if len(self.elements) > 6 else ""
        return f"Subgroup({{{names}{tail}}} <= {self.parent.name})"


Domain = Union[FiniteGroup, Subgroup]


def _domain_group(domain: Domain) -> FiniteGroup:
    return domain if isinstance(domain, FiniteGroup) else domain.parent


def _domain_elements(domain: Domain) -> Sequence[int]:
    if isinstance(domain, FiniteGroup):
        return range(domain.order)
    return domain.elements


class GroupHom:
    """A homomorphism, stored as the image of every domain element.

    ``images`` is aligned with the domain's element list (index order for a
    whole group, sorted-element order for a subgroup).
    """

    __slots__ = ("domain", "codomain", "images", "_map")

    def __init__(self, domain: Domain, codomain: FiniteGroup, images,
                 _validate=True):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        self._map = None
        if _validate:
            self._validate()

    def _validate(self):
        els = _domain_elements(self.domain)
        if len(self.images) != len(els):
            raise GroupError("image list does not match domain size")
        amb = _domain_group(self.domain)
        lookup = self.as_map()
        cmul = self.codomain.mul
        for i, a in enumerate(els):
            fa = self.images[i]
            if not (0 <= fa < self.codomain.order):
                raise GroupError("image out of range")
            for j, b in enumerate(els):
                if lookup[amb.mul(a, b)] != cmul(fa, self.images[j]):
                    raise GroupError("map is not a homomorphism")

    def as_map(self) -> dict:
        m = self._map
        if m is None:
            m = dict(zip(_domain_elements(self.domain), self.images))
            self._map = m
        return m

    def apply(self, x: int) -> int:
        if isinstance(self.domain, FiniteGroup):
            return self.images[x]
        return self.as_map()[x]

    def __call__(self, x: int) -> int:
        return self.apply(x)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def kernel(self) -> Subgroup:
        amb = _domain_group(self.domain)
        els = [a for a, fa in zip(_domain_elements(self.domain), self.images)
               if fa == 0]
        return Subgroup(amb, tuple(els), _validate=False)

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, tuple(sorted(set(self.images))),
                        _validate=False)

    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.images)

    def __eq__(self, other):
        return (isinstance(other, GroupHom)
                and self.domain == other.domain
                and self.codomain is other.codomain
                and self.images == other.images)

    def __hash__(self):
        dom = self.domain
        dom_key = id(dom) if isinstance(dom, FiniteGroup) else hash(dom)
        return hash((dom_key, id(self.codomain), self.images))

    def __repr__(self):
        src = (self.domain.name if isinstance(self.domain, FiniteGroup)
               else f"subgroup of {self.domain.parent.name}")
        return f"GroupHom({src} -> {self.codomain.name})"


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)), _validate=False)


def trivial_hom(domain: Domain, codomain: FiniteGroup) -> GroupHom:
    return GroupHom(domain, codomain, (0,) * len(_domain_elements(domain)),
                    _validate=False)


def compose_homs(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """outer o inner; the image of inner must land in outer's domain."""
    out = outer.as_map()
    images = tuple(out[y] for y in inner.images)
    return GroupHom(inner.domain, outer.codomain, images, _validate=False)


# ---------------------------------------------------------------------------
# bitmask helpers


def mask_to_elements(mask: int) -> tuple:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


def elements_to_mask(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def conjugate_mask(G: FiniteGroup, mask: int, g: int) -> int:
    perm = G.conjugation_perm(g)
    out = 0
    while mask:
        b = mask & -mask
        out |= 1 << perm[b.bit_length() - 1]
        mask ^= b
    return out


def closure_mask(G: FiniteGroup, seed: Iterable[int]) -> int:
    """Bitmask of the subgroup generated by ``seed``."""
    flat = G._flat
    n = G.order
    elems = [0]
    mask = 1
    work = []
    for s in seed:
        if not (mask >> s) & 1:
            mask |= 1 << s
            elems.append(s)
            work.append(s)
    while work:
        x = work.pop()
        for y in list(elems):
            for z in (flat[x * n + y], flat[y * n + x]):
                if not (mask >> z) & 1:
                    mask |= 1 << z
                    elems.append(z)
                    work.append(z)
    return mask


# ---------------------------------------------------------------------------
# constructors


_atom_cache: dict = {}


def _cached_atom(key, builder):
    grp = _atom_cache.get(key)
    if grp is None:
        grp = builder()
        _atom_cache[key] = grp
    return grp


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group of order n; element i is c^i."""
    if n < 1:
        raise GroupError("cyclic order must be positive")

    def build():
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        if n == 1:
            labels = ["1"]
        else:
            labels = ["1", "c"] + [f"c{i}" for i in range(2, n)]
        return FiniteGroup(table, labels=labels, name=f"C{n}")

    return _cached_atom(("C", n), build)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, presented as
    <a, b | a^n = b^2 = 1, b a b^-1 = a^-1> with n = order/2.
    Element i + n*j stands for a^i b^j."""
    if order < 2 or order % 2:
        raise GroupError("dihedral order must be even and >= 2")
    n = order // 2

    def build():
        table = [[0] * order for _ in range(order)]
        for i in range(n):
            for j in (0, 1):
                for k in range(n):
                    for l in (0, 1):
                        if j == 0:
                            ii, jj = (i + k) % n, l
                        else:
                            ii, jj = (i - k) % n, 1 - l
                        table[i + n * j][k + n * l] = ii + n * jj
        labels = []
        for j in (0, 1):
            for i in range(n):
                s = "" if i == 0 else ("a" if i == 1 else f"a{i}")
                s += "b" if j else ""
                labels.append(s or "1")
        return FiniteGroup(table, labels=labels, name=f"D{order}")

    return _cached_atom(("D", order), build)


def quaternion8() -> FiniteGroup:
    """Quaternion group <x, y | x^4 = 1, y x y^-1 = x^-1, x^2 = y^2>.
    Element i + 4*j stands for x^i y^j."""

    def build():
        table = [[0] * 8 for _ in range(8)]
        for i in range(4):
            for j in (0, 1):
                for k in range(4):
                    for l in (0, 1):
                        if j == 0:
                            ii, jj = (i + k) % 4, l
                        elif l == 0:
                            ii, jj = (i - k) % 4, 1
                        else:
                            ii, jj = (i - k + 2) % 4, 0
                        table[i + 4 * j][k + 4 * l] = ii + 4 * jj
        labels = ["1", "x", "x2", "x3", "y", "xy", "x2y", "x3y"]
        return FiniteGroup(table, labels=labels, name="Q8")

    return _cached_atom(("Q", 8), build)


def _perm_label(p: tuple) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + "".join(str(x) for x in cyc) + ")")
    return "".join(parts) or "e"


def _perm_group(perms: list, name: str) -> FiniteGroup:
    perms = sorted(perms)
    ident = tuple(range(len(perms[0])))
    perms.remove(ident)
    perms.insert(0, ident)
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(p)))] for q in perms]
             for p in perms]
    labels = [_perm_label(p) for p in perms]
    return FiniteGroup(table, labels=labels, name=name)


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n letters (n <= 4), elements in lexicographic
    order of permutation tuples, identity first."""
    if not 1 <= n <= 4:
        raise GroupError("symmetric group supported only for n <= 4")

    def build():
        import itertools
        perms = [tuple(p) for p in itertools.permutations(range(n))]
        return _perm_group(perms, name=f"S{n}")

    return _cached_atom(("S", n), build)


def alternating4() -> FiniteGroup:
    """Alternating group on 4 letters."""

    def build():
        import itertools

        def sign(p):
            s = 0
            for i in range(4):
                for j in range(i + 1, 4):
                    s += p[i] > p[j]
            return s % 2

        perms = [tuple(p) for p in itertools.permutations(range(4))
                 if sign(p) == 0]
        return _perm_group(perms, name="A4")

    return _cached_atom(("A", 4), build)


def dicyclic(order: int) -> FiniteGroup:
    """Dicyclic group of order 4m, presented as
    <a, b | a^{2m} = 1, b^2 = a^m, b a b^-1 = a^-1>.
    Element i + 2m*j stands for a^i b^j."""
    if order % 4 or order < 8:
        raise GroupError("dicyclic order must be a multiple of 4, >= 8")
    m = order // 4
    n = 2 * m

    def build():
        table = [[0] * order for _ in range(order)]
        for i in range(n):
            for j in (0, 1):
                for k in range(n):
                    for l in (0, 1):
                        if j == 0:
                            ii, jj = (i + k) % n, l
                        elif l == 0:
                            ii, jj = (i - k) % n, 1
                        else:
                            ii, jj = (i - k + m) % n, 0
                        table[i + n * j][k + n * l] = ii + n * jj
        labels = []
        for j in (0, 1):
            for i in range(n):
                s = "" if i == 0 else ("a" if i == 1 else f"a{i}")
                s += "b" if j else ""
                labels.append(s or "1")
        return FiniteGroup(table, labels=labels, name=f"Dic{m}")

    return _cached_atom(("Dic", order), build)


# ---------------------------------------------------------------------------
# direct products


class ProductEmbedding:
    """A group realized as an explicit direct product of named factors,
    with coordinate encode/decode and the projection homomorphisms.

    Encoding is mixed-radix with the last factor varying fastest, i.e.
    lexicographic in the coordinate tuple.  When all factors but one are
    trivial the ambient *is* that factor (the canonical isomorphism is the
    identity on indices), which keeps subgroup masks interchangeable.
    """

    __slots__ = ("factors", "ambient", "factor_projections", "_strides")

    def __init__(self, factors: tuple, ambient: FiniteGroup, strides: tuple):
        self.factors = factors
        self.ambient = ambient
        self._strides = strides
        projections = []
        for i, f in enumerate(factors):
            images = tuple(self.decode(x)[i] for x in range(ambient.order))
            projections.append(GroupHom(ambient, f, images, _validate=False))
        self.factor_projections = tuple(projections)

    def encode(self, *coords: int) -> int:
        return sum(c * s for c, s in zip(coords, self._strides))

    def decode(self, x: int) -> tuple:
        out = []
        for i, s in enumerate(self._strides):
            out.append(x // s)
            x %= s
        return tuple(out)

    def inject(self, i: int, x: int) -> int:
        """Element with x in slot i and identities elsewhere."""
        return x * self._strides[i]

    @property
    def group(self) -> FiniteGroup:
        return self.ambient

    def __repr__(self):
        names = " x ".join(f.name for f in self.factors)
        return f"ProductEmbedding({names})"


_product_cache: dict = {}


def product_embedding(*factors: FiniteGroup) -> ProductEmbedding:
    """Memoized product: the same factor tuple yields the same embedding
    (and hence the very same ambient group object)."""
    key = tuple(id(f) for f in factors)
    emb = _product_cache.get(key)
    if emb is not None:
        return emb
    if not factors:
        raise GroupError("product of no factors")
    orders = [f.order for f in factors]
    strides = []
    s = 1
    for o in reversed(orders):
        strides.append(s)
        s *= o
    strides = tuple(reversed(strides))
    total = s
    nontrivial = [f for f in factors if f.order > 1]
    if len(nontrivial) <= 1:
        ambient = nontrivial[0] if nontrivial else factors[0]
    else:
        def decode(x):
            out = []
            for st in strides:
                out.append(x // st)
                x %= st
            return out

        table = []
        for a in range(total):
            ca = decode(a)
            row = []
            for b in range(total):
                cb = decode(b)
                row.append(sum(f.mul(x, y) * st for f, x, y, st
                               in zip(factors, ca, cb, strides)))
            table.append(row)
        labels = None
        if all(f.labels is not None for f in factors):
            labels = ["(" + ",".join(f.label(c) for f, c
                                     in zip(factors, decode(a))) + ")"
                      for a in range(total)]
        name = "x".join(f.name for f in factors)
        ambient = FiniteGroup(table, labels=labels, name=name,
                              validate=total <= SUBGROUP_ORDER_BOUND)
    emb = ProductEmbedding(tuple(factors), ambient, strides)
    _product_cache[key] = emb
    return emb


def direct_product(G: FiniteGroup, H: FiniteGroup) -> ProductEmbedding:
    """Direct product of two groups, with its projection homomorphisms."""
    return product_embedding(G, H)


# ---------------------------------------------------------------------------
# subgroup enumeration and friends


def subgroups(G: FiniteGroup, bound: int = SUBGROUP_ORDER_BOUND) -> list:
    """All subgroups of G, each exactly once, sorted by (order, elements).

    Found by closing generated subgroups layer by layer: every subgroup
    arises from a smaller one by adjoining a single coset representative.
    """
    if G.order > bound:
        raise BoundExceededError(
            f"subgroup enumeration bound exceeded: {G.order} > {bound}")
    cached = G._cache.get("subgroups")
    if cached is None:
        flat = G._flat
        n = G.order
        found = {1: (0,)}
        frontier = [1]
        while frontier:
            new = []
            for m in frontier:
                els = found[m]
                covered = m
                for g in range(1, n):
                    if (covered >> g) & 1:
                        continue
                    # mark the whole coset: adjoining m*g generates the same
                    for x in els:
                        covered |= 1 << flat[x * n + g]
                    res = closure_mask(G, list(els) + [g])
                    if res not in found:
                        found[res] = mask_to_elements(res)
                        new.append(res)
            frontier = new
        subs = [Subgroup(G, els, _validate=False)
                for els in sorted(found.values(), key=lambda e: (len(e), e))]
        cached = subs
        G._cache["subgroups"] = cached
    return list(cached)


def center(G: FiniteGroup) -> Subgroup:
    sub = G._cache.get("center")
    if sub is None:
        els = [a for a in range(G.order)
               if all(G.mul(a, b) == G.mul(b, a) for b in range(G.order))]
        sub = Subgroup(G, tuple(els), _validate=False)
        G._cache["center"] = sub
    return sub


def frattini(G: FiniteGroup) -> Subgroup:
    """Intersection of all maximal subgroups (the whole group if none)."""
    sub = G._cache.get("frattini")
    if sub is None:
        proper = [s.mask for s in subgroups(G) if s.order < G.order]
        maximal = [m for m in proper
                   if not any(m != m2 and m & ~m2 == 0 for m2 in proper)]
        mask = (1 << G.order) - 1
        for m in maximal:
            mask &= m
        sub = Subgroup(G, mask_to_elements(mask), _validate=False)
        G._cache["frattini"] = sub
    return sub


def _generating_sequence(G: FiniteGroup, elements: Sequence[int]) -> list:
    """Greedy small generating set (least new element each step)."""
    mask = elements_to_mask(elements)
    gens = []
    cur = 1
    for x in elements:
        if not (cur >> x) & 1:
            gens.append(x)
            cur = closure_mask(G, gens)
            if cur == mask:
                break
    return gens


def _extend_hom(G: FiniteGroup, elements: Sequence[int], gens: list,
                codomain: FiniteGroup, gen_images: Sequence[int]):
    """Propagate generator images over a subgroup; None if inconsistent.

    Walking every (element, generator) edge both assigns and fully checks
    the homomorphism property on the generated set.
    """
    images = {0: 0}
    order = [0]
    i = 0
    gmul = G.mul
    cmul = codomain.mul
    while i < len(order):
        a = order[i]
        fa = images[a]
        i += 1
        for g, fg in zip(gens, gen_images):
            b = gmul(a, g)
            fb = cmul(fa, fg)
            known = images.get(b)
            if known is None:
                images[b] = fb
                order.append(b)
            elif known != fb:
                return None
    if len(images) != len(elements):
        return None
    return images


def homomorphisms(domain: Domain, C: FiniteGroup,
                  bound: int = SUBGROUP_ORDER_BOUND) -> list:
    """All homomorphisms from a group or subgroup into C, in a
    deterministic order (sorted by image tuple)."""
    G = _domain_group(domain)
    els = list(_domain_elements(domain))
    if len(els) > bound or C.order > bound:
        raise BoundExceededError("homomorphism enumeration bound exceeded")
    key = ("homs", tuple(els), id(C))
    cached = G._cache.get(key)
    if cached is None:
        gens = _generating_sequence(G, els)
        results = []
        if not gens:
            results.append(GroupHom(domain, C, (0,) * len(els),
                                    _validate=False))
        else:
            gen_orders = [G.element_order(g) for g in gens]
            candidates = []
            for g_ord in gen_orders:
                candidates.append([c for c in range(C.order)
                                   if g_ord % C.element_order(c) == 0])
            import itertools
            for assignment in itertools.product(*candidates):
                images = _extend_hom(G, els, gens, C, assignment)
                if images is not None:
                    results.append(GroupHom(
                        domain, C, tuple(images[a] for a in els),
                        _validate=False))
        results.sort(key=lambda h: h.images)
        cached = results
        G._cache[key] = cached
    return list(cached)


class AutomorphismData:
    """Automorphism census: all of Aut, the inner ones, and one
    representative per coset of Inn (least image tuple)."""

    __slots__ = ("group", "all", "inner", "out_representatives")

    def __init__(self, group, all_autos, inner, out_reps):
        self.group = group
        self.all = all_autos
        self.inner = inner
        self.out_representatives = out_reps

    @property
    def out_order(self) -> int:
        return len(self.out_representatives)


def automorphisms(G: FiniteGroup,
                  bound: int = SUBGROUP_ORDER_BOUND) -> AutomorphismData:
    if G.order > bound:
        raise BoundExceededError("automorphism enumeration bound exceeded")
    cached = G._cache.get("automorphisms")
    if cached is None:
        els = list(range(G.order))
        gens = _generating_sequence(G, els)
        autos = []
        if not gens:
            autos.append(identity_hom(G))
        else:
            import itertools
            candidates = [[c for c in range(G.order)
                           if G.element_order(c) == G.element_order(g)]
                          for g in gens]
            for assignment in itertools.product(*candidates):
                images = _extend_hom(G, els, gens, G, assignment)
                if images is None or len(set(images.values())) != G.order:
                    continue
                autos.append(GroupHom(G, G, tuple(images[a] for a in els),
                                      _validate=False))
        autos.sort(key=lambda h: h.images)
        inner_images = {tuple(G.conjugation_perm(g)) for g in range(G.order)}
        inner = [h for h in autos if h.images in inner_images]
        seen = set()
        out_reps = []
        for h in autos:  # ascending image tuples: first hit is the least rep
            if h.images in seen:
                continue
            out_reps.append(h)
            for k in inner:
                seen.add(tuple(h.images[x] for x in k.images))
        cached = AutomorphismData(G, autos, inner, out_reps)
        G._cache["automorphisms"] = cached
    return cached


def subgroup_as_group(S: Subgroup):
    """Reindex a subgroup as a standalone group.

    Returns (group, inclusion) where inclusion maps new indices to parent
    elements.  The full subgroup yields the parent itself.  Memoized per
    (parent, elements).
    """
    G = S.parent
    if len(S.elements) == G.order:
        return G, identity_hom(G)
    key = ("as_group", S.elements)
    cached = G._cache.get(key)
    if cached is None:
        els = S.elements
        pos = {x: i for i, x in enumerate(els)}
        table = [[pos[G.mul(a, b)] for b in els] for a in els]
        labels = [G.label(x) for x in els] if G.labels else None
        sub = FiniteGroup(table, labels=labels,
                          name=f"{G.name}|{len(els)}", validate=False)
        inclusion = GroupHom(sub, G, els, _validate=False)
        cached = (sub, inclusion)
        G._cache[key] = cached
    return cached


def quotient(G: FiniteGroup, N: Subgroup):
    """Quotient by a normal subgroup.

    Returns (Q, projection).  Cosets are ordered by least representative,
    so the identity coset is element 0.
    """
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    if N.order == 1:
        return G, identity_hom(G)
    if N.order == G.order:
        one = cyclic(1)
        return one, trivial_hom(G, one)
    key = ("quotient", N.elements)
    cached = G._cache.get(key)
    if cached is None:
        n = G.order
        coset_of = [-1] * n
        reps = []
        for g in range(n):
            if coset_of[g] >= 0:
                continue
            idx = len(reps)
            reps.append(g)
            for x in N.elements:
                coset_of[G.mul(g, x)] = idx
        q = len(reps)
        table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
        labels = None
        if G.labels is not None:
            labels = [f"[{G.label(r)}]" for r in reps]
        Q = FiniteGroup(table, labels=labels,
                        name=f"{G.name}/{len(N.elements)}", validate=False)
        proj = GroupHom(G, Q, tuple(coset_of), _validate=False)
        cached = (Q, proj)
        G._cache[key] = cached
    return cached


def double_coset_representatives(G: FiniteGroup, A: Subgroup,
                                 B: Subgroup) -> list:
    """Least-index representatives of the double cosets A g B, ascending."""
    n = G.order
    flat = G._flat
    covered = 0
    reps = []
    for g in range(n):
        if (covered >> g) & 1:
            continue
        reps.append(g)
        for a in A.elements:
            ag = flat[a * n + g]
            row = ag * n
            for b in B.elements:
                covered |= 1 << flat[row + b]
    return reps


def isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[GroupHom]:
    """Some isomorphism G -> H, or None.  Deterministic: generator images
    are tried in ascending order and the first success is returned."""
    if G.order != H.order:
        return None
    if G.order_census() != H.order_census():
        return None
    els = list(range(G.order))
    gens = _generating_sequence(G, els)
    if not gens:
        return identity_hom(G) if G is H else GroupHom(G, H, (0,),
                                                       _validate=False)
    import itertools
    candidates = [[c for c in range(H.order)
                   if H.element_order(c) == G.element_order(g)]
                  for g in gens]
    for assignment in itertools.product(*candidates):
        images = _extend_hom(G, els, gens, H, assignment)
        if images is not None and len(set(images.values())) == G.order:
            return GroupHom(G, H, tuple(images[a] for a in els),
                            _validate=False)
    return None


# ---------------------------------------------------------------------------
# the small-groups catalog


def _catalog_builders():
    C = cyclic
    D = dihedral

    def prod(*gs):
        return product_embedding(*gs).ambient

    return {
        1: [lambda: C(1)],
        2: [lambda: C(2)],
        3: [lambda: C(3)],
        4: [lambda: C(4), lambda: prod(C(2), C(2))],
        5: [lambda: C(5)],
        6: [lambda: C(6), lambda: symmetric(3)],
        7: [lambda: C(7)],
        8: [lambda: C(8), lambda: prod(C(4), C(2)),
            lambda: prod(C(2), C(2), C(2)), lambda: D(8), quaternion8],
        9: [lambda: C(9), lambda: prod(C(3), C(3))],
        10: [lambda: C(10), lambda: D(10)],
        11: [lambda: C(11)],
        12: [lambda: C(12), lambda: prod(C(6), C(2)), lambda: D(12),
             alternating4, lambda: dicyclic(12)],
        13: [lambda: C(13)],
        14: [lambda: C(14), lambda: D(14)],
        15: [lambda: C(15)],
    }


_EXPECTED_CLASS_COUNTS = (1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1)


def small_groups_catalog(max_order: int = CATALOG_MAX_ORDER) -> list:
    """One representative per isomorphism class per order <= max_order.

    The full catalog is validated once (class counts and pairwise
    non-isomorphism within each order) and cached.
    """
    if not 1 <= max_order <= CATALOG_MAX_ORDER:
        raise BoundExceededError(
            f"catalog supports orders 1..{CATALOG_MAX_ORDER}")
    full = _atom_cache.get("catalog")
    if full is None:
        full = []
        builders = _catalog_builders()
        for order in range(1, CATALOG_MAX_ORDER + 1):
            groups = [b() for b in builders[order]]
            if len(groups) != _EXPECTED_CLASS_COUNTS[order - 1]:
                raise GroupError(f"catalog miscount at order {order}")
            for i, g in enumerate(groups):
                if g.order != order:
                    raise GroupError(f"catalog order mismatch for {g.name}")
                for h in groups[:i]:
                    if isomorphism(g, h) is not None:
                        raise GroupError(
                            f"catalog entries {g.name} and {h.name} are "
                            "isomorphic")
            full.extend(groups)
        _atom_cache["catalog"] = full
    return [g for g in full if g.order <= max_order]


# ---------------------------------------------------------------------------
# group spec mini-language


_ATOM_RE = re.compile(r"^([A-Z]+)(\d*)$")


def _atom_from_spec(token: str) -> FiniteGroup:
    m = _ATOM_RE.match(token)
    if not m:
        raise GroupSpecError(f"cannot parse atom {token!r}")
    kind, num = m.group(1), m.group(2)
    if kind == "C" and num:
        return cyclic(int(num))
    if kind == "D" and num:
        n = int(num)
        if n < 2 or n % 2:
            raise GroupSpecError(f"dihedral atom needs an even order: {token!r}")
        return dihedral(n)
    if kind == "Q" and num == "8":
        return quaternion8()
    if kind == "S" and num:
        n = int(num)
        if not 1 <= n <= 4:
            raise GroupSpecError(f"symmetric atom supports n <= 4: {token!r}")
        return symmetric(n)
    raise GroupSpecError(f"unsupported atom {token!r}")


def group_from_spec(spec: str) -> FiniteGroup:
    """Build a group from a spec like ``"Q8"``, ``"C2xC4"`` or ``"D8"``.

    Atoms are Cn, D2n, Q8 and Sn (n <= 4), connected with ``x``.
    Memoized: the same normalized spec returns the same object.
    """
    if not isinstance(spec, str):
        raise GroupSpecError("spec must be a string")
    norm = spec.replace(" ", "").replace("X", "x")
    if not norm:
        raise GroupSpecError("empty group spec")
    cached = _atom_cache.get(("spec", norm))
    if cached is not None:
        return cached
    tokens = norm.split("x")
    if any(not t for t in tokens):
        raise GroupSpecError(f"cannot parse spec {spec!r}")
    factors = [_atom_from_spec(t) for t in tokens]
    if len(factors) == 1:
        grp = factors[0]
    else:
        grp = product_embedding(*factors).ambient
    _atom_cache[("spec", norm)] = grp
    return grp
