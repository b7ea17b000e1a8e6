"""Explicit finite actions and monomial sets.

A monomial set is a finite (G x C)-set on which the fibre group C acts
freely; these are the brute-force counterparts of the formal classes in
the ring module.  Everything here works with concrete points and action
tables, so it is slow but independent of any composition formula: this
module is the oracle the formulas are tested against.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple

from .groups import (
    FiniteGroup,
    GroupError,
    ProductEmbedding,
    product_embedding,
)

__all__ = [
    "FiniteAction",
    "MonomialSet",
    "coset_action",
    "monomial_set_from_pair",
    "decompose_monomial",
    "mackey_glue",
    "tensor_sets",
    "c_free_part",
    "block_sum",
    "interleaved_product_biset",
    "equivariant_isomorphism",
]


class FiniteAction:
    """A finite set with a left action of a fixed group, as a full table."""

    __slots__ = ("group", "size", "table")

    def __init__(self, group: FiniteGroup, table: Sequence[Sequence[int]],
                 validate: bool = False):
        self.group = group
        self.table = [tuple(row) for row in table]
        self.size = len(self.table[0]) if self.table else 0
        if len(self.table) != group.order:
            raise GroupError("action table must have one row per element")
        if validate:
            self.validate()

    def validate(self):
        n = self.size
        if self.table[0] != tuple(range(n)):
            raise GroupError("identity does not act trivially")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise GroupError("action row is not a permutation")
        # compatibility against a generating set implies it everywhere
        from .groups import _generating_sequence
        gens = _generating_sequence(self.group, range(self.group.order))
        for g in gens:
            rg = self.table[g]
            for a in range(self.group.order):
                ra = self.table[a]
                rga = self.table[self.group.mul(g, a)]
                if any(rg[ra[p]] != rga[p] for p in range(n)):
                    raise GroupError("action is not compatible with products")

    def act(self, a: int, p: int) -> int:
        return self.table[a][p]

    def orbits(self) -> List[List[int]]:
        seen = [False] * self.size
        out = []
        for p in range(self.size):
            if seen[p]:
                continue
            orbit = sorted({row[p] for row in self.table})
            for q in orbit:
                seen[q] = True
            out.append(orbit)
        return out

    def stabilizer_elements(self, p: int) -> List[int]:
        return [a for a in range(self.group.order) if self.table[a][p] == p]

    def __repr__(self):
        return f"FiniteAction({self.group.name} on {self.size} points)"


def coset_action(G: FiniteGroup, subgroup_elements: Sequence[int]) -> FiniteAction:
    """Left translation on the left cosets of a subgroup; points are
    ordered by least coset representative."""
    n = G.order
    coset_of = [-1] * n
    reps = []
    for g in range(n):
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for s in subgroup_elements:
            coset_of[G.mul(g, s)] = idx
    table = [[coset_of[G.mul(a, r)] for r in reps] for a in range(n)]
    return FiniteAction(G, table)


def _product_action(embs_and_actions) -> Tuple[ProductEmbedding, FiniteAction]:
    """Componentwise action of a product group on a product of point sets."""
    groups = [g for g, _ in embs_and_actions]
    actions = [a for _, a in embs_and_actions]
    emb = product_embedding(*groups)
    sizes = [a.size for a in actions]
    total = 1
    for s in sizes:
        total *= s
    table = []
    for e in range(emb.ambient.order):
        coords = emb.decode(e)
        row = []
        for p in range(total):
            q = p
            pos = []
            for s in reversed(sizes):
                pos.append(q % s)
                q //= s
            pos.reverse()
            row.append(_flatten(sizes,
                                [actions[i].table[coords[i]][pos[i]]
                                 for i in range(len(sizes))]))
        table.append(row)
    return emb, FiniteAction(emb.ambient, table)


def _flatten(sizes, pos):
    out = 0
    for s, p in zip(sizes, pos):
        out = out * s + p
    return out


class MonomialSet:
    """A C-free (G x C)-set with explicit points.

    ``acting`` is the group part G (itself often a direct product) and
    ``fibre`` the abelian group C.  The combined action is stored over the
    product embedding of (G, C).
    """

    __slots__ = ("acting", "fibre", "embedding", "action")

    def __init__(self, acting: FiniteGroup, fibre: FiniteGroup,
                 action: FiniteAction, validate: bool = True):
        self.acting = acting
        self.fibre = fibre
        self.embedding = product_embedding(acting, fibre)
        if action.group is not self.embedding.ambient:
            raise GroupError("action must live over the (G, C) product")
        self.action = action
        if validate:
            if not fibre.is_abelian:
                raise GroupError("fibre group must be abelian")
            action.validate()
            self._check_free()

    def _check_free(self):
        emb = self.embedding
        for c in range(1, self.fibre.order):
            row = self.action.table[emb.encode(0, c)]
            if any(row[p] == p for p in range(self.size)):
                raise GroupError("fibre group does not act freely")

    @property
    def size(self) -> int:
        return self.action.size

    def act(self, a: int, c: int, p: int) -> int:
        return self.action.table[self.embedding.encode(a, c)][p]

    def __repr__(self):
        return (f"MonomialSet({self.acting.name} with fibre "
                f"{self.fibre.name} on {self.size} points)")


def monomial_set_from_pair(acting: FiniteGroup, fibre: FiniteGroup,
                           d_elements: Sequence[int],
                           delta: Callable[[int], int]) -> MonomialSet:
    """The transitive monomial set attached to a subgroup D of the acting
    group and a character delta on it: cosets of the twisted diagonal
    {(a, delta(a)^-1)}."""
    emb = product_embedding(acting, fibre)
    inv = fibre.inverses
    twisted = sorted(emb.encode(a, inv[delta(a)]) for a in d_elements)
    return MonomialSet(acting, fibre, coset_action(emb.ambient, twisted),
                       validate=False)


def decompose_monomial(T: MonomialSet) -> List[Tuple[Tuple[int, ...],
                                                     Tuple[int, ...]]]:
    """Split a monomial set into transitive pieces and read off the
    (subgroup, character) pair from the stabilizer of each orbit's least
    point.  Returns one (d_elements, delta_images) pair per orbit."""
    emb = T.embedding
    inv = T.fibre.inverses
    out = []
    for orbit in T.action.orbits():
        base = orbit[0]
        pairs = []
        for a in T.action.stabilizer_elements(base):
            d, c = emb.decode(a)
            pairs.append((d, inv[c]))
        pairs.sort()
        d_elements = tuple(p[0] for p in pairs)
        delta_images = tuple(p[1] for p in pairs)
        if len(set(d_elements)) != len(d_elements):
            raise GroupError("stabilizer is not a twisted diagonal")
        out.append((d_elements, delta_images))
    return out


def _orbit_partition(n_points: int, moves: List[Sequence[int]]):
    """Orbits of a point set under a list of permutations (as maps)."""
    rep = list(range(n_points))

    def find(x):
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for mv in moves:
        for p in range(n_points):
            a, b = find(p), find(mv[p])
            if a != b:
                if a < b:
                    rep[b] = a
                else:
                    rep[a] = b
    roots = {}
    for p in range(n_points):
        r = find(p)
        roots.setdefault(r, len(roots))
    return [find(p) for p in range(n_points)], roots


def mackey_glue(emb_ab: ProductEmbedding, X: FiniteAction,
                emb_br: ProductEmbedding, T: FiniteAction
                ) -> Tuple[ProductEmbedding, FiniteAction]:
    """Glue an (A, B)-biset X (as an (A x B)-set, acting as a x b^-1)
    with a (B x R)-set T over the middle group B: the orbit set of
    X x T under b.(x, t) = (x.b^-1, b.t), carrying the leftover
    (A x R)-action.  Returns the (A, R) embedding and the action."""
    A, B = emb_ab.factors
    B2, R = emb_br.factors
    if B is not B2:
        raise GroupError("middle groups do not agree")
    nx, nt = X.size, T.size
    n_pairs = nx * nt
    moves = []
    for b in range(B.order):
        xr = X.table[emb_ab.encode(0, b)]
        tr = T.table[emb_br.encode(b, 0)]
        moves.append([xr[p // nt] * nt + tr[p % nt] for p in range(n_pairs)])
    find_rep, roots = _orbit_partition(n_pairs, moves)
    emb_ar = product_embedding(A, R)
    table = []
    for e in range(emb_ar.ambient.order):
        a, r = emb_ar.decode(e)
        xr = X.table[emb_ab.encode(a, 0)]
        tr = T.table[emb_br.encode(0, r)]
        row = []
        for root, idx in roots.items():
            q = xr[root // nt] * nt + tr[root % nt]
            row.append(roots[find_rep[q]])
        table.append(row)
    return emb_ar, FiniteAction(emb_ar.ambient, table)


def tensor_sets(emb_ac: ProductEmbedding, T: FiniteAction,
                emb_bc: ProductEmbedding, Y: FiniteAction
                ) -> Tuple[ProductEmbedding, FiniteAction]:
    """Tensor of a C-fibred A-set and a C-fibred B-set: C-orbits of
    T x Y under c.(t, y) = (c.t, c^-1.y), with the (A x B x C)-action
    (a, b, c).[t, y] = [(a, c).t, (b, 1).y]."""
    A, C = emb_ac.factors
    B, C2 = emb_bc.factors
    if C is not C2:
        raise GroupError("fibre groups do not agree")
    nt, ny = T.size, Y.size
    n_pairs = nt * ny
    inv = C.inverses
    moves = []
    for c in range(1, C.order):
        tr = T.table[emb_ac.encode(0, c)]
        yr = Y.table[emb_bc.encode(0, inv[c])]
        moves.append([tr[p // ny] * ny + yr[p % ny] for p in range(n_pairs)])
    find_rep, roots = _orbit_partition(n_pairs, moves)
    emb_ab = product_embedding(A, B)
    emb_abc = product_embedding(emb_ab.ambient, C)
    table = []
    for e in range(emb_abc.ambient.order):
        ab, c = emb_abc.decode(e)
        a, b = emb_ab.decode(ab)
        tr = T.table[emb_ac.encode(a, c)]
        yr = Y.table[emb_bc.encode(b, 0)]
        row = []
        for root, idx in roots.items():
            q = tr[root // ny] * ny + yr[root % ny]
            row.append(roots[find_rep[q]])
        table.append(row)
    return emb_abc, FiniteAction(emb_abc.ambient, table)


def c_free_part(emb_ac: ProductEmbedding, S: FiniteAction
                ) -> Tuple[FiniteAction, List[int]]:
    """Subset of points on which the fibre factor acts freely, reindexed;
    also returns the kept original point indices."""
    C = emb_ac.factors[1]
    keep = []
    for p in range(S.size):
        if all(S.table[emb_ac.encode(0, c)][p] != p
               for c in range(1, C.order)):
            keep.append(p)
    pos = {p: i for i, p in enumerate(keep)}
    table = [[pos[row[p]] for p in keep] for row in S.table]
    return FiniteAction(S.group, table), keep


def block_sum(actions: List[FiniteAction]) -> FiniteAction:
    """Disjoint union of actions of the same group."""
    group = actions[0].group
    if any(a.group is not group for a in actions):
        raise GroupError("block sum needs actions of the same group")
    table = []
    for g in range(group.order):
        row = []
        offset = 0
        for a in actions:
            row.extend(offset + v for v in a.table[g])
            offset += a.size
        table.append(row)
    return FiniteAction(group, table)


def interleaved_product_biset(emb_lg: ProductEmbedding, Z: FiniteAction,
                              emb_kh: ProductEmbedding, X: FiniteAction
                              ) -> Tuple[ProductEmbedding, FiniteAction]:
    """The external product of an (L, G)-biset and a (K, H)-biset as an
    (L x K, G x H)-biset: pairs of points with ((l,k),(g,h)) acting
    componentwise.  Returns the ((L x K), (G x H)) embedding and action."""
    L, G = emb_lg.factors
    K, H = emb_kh.factors
    emb_lk = product_embedding(L, K)
    emb_gh = product_embedding(G, H)
    emb = product_embedding(emb_lk.ambient, emb_gh.ambient)
    nz, nx = Z.size, X.size
    table = []
    for e in range(emb.ambient.order):
        lk, gh = emb.decode(e)
        l, k = emb_lk.decode(lk)
        g, h = emb_gh.decode(gh)
        zr = Z.table[emb_lg.encode(l, g)]
        xr = X.table[emb_kh.encode(k, h)]
        table.append([zr[p // nx] * nx + xr[p % nx]
                      for p in range(nz * nx)])
    return emb, FiniteAction(emb.ambient, table)


def equivariant_isomorphism(S: FiniteAction,
                            T: FiniteAction) -> Optional[List[int]]:
    """An equivariant bijection between two actions of the same group,
    or None.  Found orbit by orbit: a base point of an S-orbit can map to
    any point of a T-orbit with literally equal stabilizer, and that
    choice determines the bijection on the whole orbit.  The result is
    verified pointwise before being returned."""
    if S.group is not T.group or S.size != T.size:
        return None
    n_el = S.group.order
    t_unused = [True] * T.size
    mapping = [-1] * S.size
    for orbit in S.orbits():
        base = orbit[0]
        stab = tuple(a for a in range(n_el) if S.table[a][base] == base)
        image = -1
        for q in range(T.size):
            if not t_unused[q]:
                continue
            if tuple(a for a in range(n_el)
                     if T.table[a][q] == q) == stab:
                image = q
                break
        if image < 0:
            return None
        for a in range(n_el):
            p, q = S.table[a][base], T.table[a][image]
            if mapping[p] not in (-1, q):
                return None
            mapping[p] = q
            t_unused[q] = False
    if -1 in mapping or len(set(mapping)) != S.size:
        return None
    for a in range(n_el):
        rs, rt = S.table[a], T.table[a]
        if any(mapping[rs[p]] != rt[mapping[p]] for p in range(S.size)):
            return None
    return mapping
