"""The monomial Burnside ring and its composition calculus.

Transitive classes are pairs (D, delta) with D a subgroup of an ambient
group and delta a character of D into an abelian fibre group C; classes
over a product G x H compose like bisets.  ``compose`` implements the
double-coset formula and ``compose_oracle`` recomputes the same thing
set-theoretically from explicit orbit counting; the two must always
agree, and that agreement is the backbone of the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .groups import (
    FiniteGroup,
    GroupError,
    GroupHom,
    ProductEmbedding,
    Subgroup,
    cyclic,
    homomorphisms,
    mask_to_elements,
    product_embedding,
    quotient,
    subgroup_as_group,
    subgroups,
    double_coset_representatives,
)
from . import monomial
from .monomial import FiniteAction, MonomialSet

__all__ = [
    "Subcharacter",
    "TransitiveFibredBiset",
    "FibredElement",
    "subcharacter_classes",
    "transitive_basis",
    "canonicalize",
    "transitive_fibred_biset",
    "element_of",
    "zero_element",
    "identity_element",
    "opposite",
    "opposite_element",
    "compose",
    "compose_oracle",
    "is_idempotent",
    "tensor",
    "ring_product",
    "ring_identity",
    "element_from_subcharacter",
    "to_monomial_set",
    "from_monomial_set",
    "elementary_fibred_biset",
    "BoucFactorization",
    "bouc_factorize",
    "element_to_json",
    "element_from_json",
    "subcharacter_to_json",
    "subcharacter_from_json",
]


# ---------------------------------------------------------------------------
# raw (mask, delta) machinery
#
# Internally a class over an ambient group is the pair of its subgroup
# bitmask and the tuple of character values aligned with the sorted
# subgroup elements.  Canonical form is the least such pair over the
# conjugacy orbit; the orbit walk only needs coset representatives of the
# center.


def _conjugate_raw(ambient: FiniteGroup, elements: Tuple[int, ...],
                   delta: Tuple[int, ...], g: int):
    perm = ambient.conjugation_perm(g)
    pairs = sorted(zip((perm[x] for x in elements), delta))
    mask = 0
    for x, _ in pairs:
        mask |= 1 << x
    return mask, tuple(p[1] for p in pairs)


def _canonical_raw(ambient: FiniteGroup, mask: int, delta: Tuple[int, ...]):
    if ambient.is_abelian:
        return mask, delta
    cache = ambient._cache.setdefault("canonical_pairs", {})
    hit = cache.get((mask, delta))
    if hit is not None:
        return hit
    elements = mask_to_elements(mask)
    seen = []
    best = (mask, delta)
    for g in ambient.conjugation_reps():
        cand = _conjugate_raw(ambient, elements, delta, g)
        seen.append(cand)
        if cand < best:
            best = cand
    for cand in seen:
        cache[cand] = best
    return best


def _orbit_size(ambient: FiniteGroup, mask: int, delta: Tuple[int, ...]) -> int:
    elements = mask_to_elements(mask)
    return len({_conjugate_raw(ambient, elements, delta, g)
                for g in range(ambient.order)})


# ---------------------------------------------------------------------------
# public types


class Subcharacter:
    """A subgroup D <= G with a character delta: D -> C; the index of a
    transitive C-fibred G-set."""

    __slots__ = ("group", "fibre", "D", "delta")

    def __init__(self, group: FiniteGroup, fibre: FiniteGroup, D: Subgroup,
                 delta: GroupHom, _validate=True):
        self.group = group
        self.fibre = fibre
        self.D = D
        self.delta = delta
        if _validate:
            if not fibre.is_abelian:
                raise GroupError("fibre group must be abelian")
            if D.parent is not group:
                raise GroupError("subgroup does not live in the stated group")
            if delta.domain != D or delta.codomain is not fibre:
                raise GroupError("character does not match the subgroup")

    @property
    def raw(self):
        return self.D.mask, self.delta.images

    def key(self):
        return (id(self.group), id(self.fibre)) + self.raw

    def is_canonical(self) -> bool:
        return _canonical_raw(self.group, *self.raw) == self.raw

    def __eq__(self, other):
        return (isinstance(other, Subcharacter)
                and self.group is other.group and self.fibre is other.fibre
                and self.raw == other.raw)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        names = ",".join(self.group.label(x) for x in self.D.elements[:4])
        return (f"Subcharacter(D={{{names}"
                f"{',...' if len(self.D.elements) > 4 else ''}}}, "
                f"delta={self.delta.images} in {self.fibre.name})")


def _make_subcharacter(group, fibre, elements, delta):
    D = Subgroup(group, elements, _validate=False)
    hom = GroupHom(D, fibre, delta, _validate=False)
    return Subcharacter(group, fibre, D, hom, _validate=False)


class TransitiveFibredBiset:
    """A transitive class over G x H: subgroup D of the product with a
    character delta into the fibre; ``canonical`` marks the least pair in
    the conjugacy orbit under the fixed encoding order."""

    __slots__ = ("left", "right", "fibre", "D", "delta", "canonical")

    def __init__(self, left: FiniteGroup, right: FiniteGroup,
                 fibre: FiniteGroup, D: Subgroup, delta: GroupHom,
                 canonical: bool = False, _validate=True):
        self.left = left
        self.right = right
        self.fibre = fibre
        self.D = D
        self.delta = delta
        self.canonical = canonical
        if _validate:
            amb = product_embedding(left, right).ambient
            if D.parent is not amb:
                raise GroupError("subgroup does not live over (left, right)")
            if delta.domain != D or delta.codomain is not fibre:
                raise GroupError("character does not match the subgroup")
            if not fibre.is_abelian:
                raise GroupError("fibre group must be abelian")
            if canonical and _canonical_raw(amb, *self.raw) != self.raw:
                raise GroupError("pair is not in canonical form")

    @property
    def ambient(self) -> FiniteGroup:
        return product_embedding(self.left, self.right).ambient

    @property
    def embedding(self) -> ProductEmbedding:
        return product_embedding(self.left, self.right)

    @property
    def raw(self):
        return self.D.mask, self.delta.images

    def key(self):
        return (id(self.left), id(self.right), id(self.fibre)) + self.raw

    def __eq__(self, other):
        return (isinstance(other, TransitiveFibredBiset)
                and self.left is other.left and self.right is other.right
                and self.fibre is other.fibre and self.raw == other.raw)

    def __hash__(self):
        return hash(self.key())

    def describe(self) -> str:
        els = ",".join(self.ambient.label(x) for x in self.D.elements[:4])
        tail = ",..." if len(self.D.elements) > 4 else ""
        vals = ",".join(self.fibre.label(c) for c in self.delta.images[:4])
        return (f"[D={{{els}{tail}}} |D|={len(self.D.elements)} "
                f"delta=({vals}{tail})]")

    def __repr__(self):
        return (f"TransitiveFibredBiset({self.left.name}x{self.right.name}, "
                f"fibre={self.fibre.name}, |D|={len(self.D.elements)})")


def _class_from_raw(left, right, fibre, mask, delta, canonical=False):
    amb = product_embedding(left, right).ambient
    D = Subgroup(amb, mask_to_elements(mask), _validate=False)
    hom = GroupHom(D, fibre, delta, _validate=False)
    return TransitiveFibredBiset(left, right, fibre, D, hom,
                                 canonical=canonical, _validate=False)


def transitive_fibred_biset(left, right, fibre, d_elements,
                            delta_images) -> TransitiveFibredBiset:
    """Validated public constructor for a transitive class."""
    amb = product_embedding(left, right).ambient
    D = Subgroup(amb, tuple(sorted(d_elements)))
    hom = GroupHom(D, fibre, tuple(delta_images))
    return TransitiveFibredBiset(left, right, fibre, D, hom)


def canonicalize(X: TransitiveFibredBiset) -> TransitiveFibredBiset:
    """The least (D, delta) in the conjugacy orbit of X; idempotent."""
    if X.canonical:
        return X
    mask, delta = _canonical_raw(X.ambient, *X.raw)
    return _class_from_raw(X.left, X.right, X.fibre, mask, delta,
                           canonical=True)


class FibredElement:
    """An integer combination of canonical transitive classes sharing the
    same (left, right, fibre)."""

    __slots__ = ("left", "right", "fibre", "terms")

    def __init__(self, left, right, fibre, terms: Dict[TransitiveFibredBiset,
                                                       int]):
        self.left = left
        self.right = right
        self.fibre = fibre
        clean = {}
        for cls, coeff in terms.items():
            if coeff == 0:
                continue
            if not cls.canonical:
                cls = canonicalize(cls)
            if (cls.left is not left or cls.right is not right
                    or cls.fibre is not fibre):
                raise GroupError("terms do not match the element's groups")
            clean[cls] = clean.get(cls, 0) + coeff
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @property
    def ambient(self) -> FiniteGroup:
        return product_embedding(self.left, self.right).ambient

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].raw)

    def __eq__(self, other):
        return (isinstance(other, FibredElement)
                and self.left is other.left and self.right is other.right
                and self.fibre is other.fibre and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.left), id(self.right), id(self.fibre),
                     tuple(sorted((c.raw, v)
                                  for c, v in self.terms.items()))))

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for cls, coeff in other.terms.items():
            terms[cls] = terms.get(cls, 0) + coeff
        return FibredElement(self.left, self.right, self.fibre, terms)

    def __neg__(self):
        return FibredElement(self.left, self.right, self.fibre,
                             {c: -v for c, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k: int) -> "FibredElement":
        return FibredElement(self.left, self.right, self.fibre,
                             {c: k * v for c, v in self.terms.items()})

    def _check_compatible(self, other):
        if (self.left is not other.left or self.right is not other.right
                or self.fibre is not other.fibre):
            raise GroupError("elements live over different groups")

    def __repr__(self):
        n = len(self.terms)
        return (f"FibredElement({self.left.name}x{self.right.name}, "
                f"fibre={self.fibre.name}, {n} term{'s' if n != 1 else ''})")


def element_of(X: TransitiveFibredBiset, coeff: int = 1) -> FibredElement:
    return FibredElement(X.left, X.right, X.fibre, {X: coeff})


def zero_element(left, right, fibre) -> FibredElement:
    return FibredElement(left, right, fibre, {})


# ---------------------------------------------------------------------------
# bases


def subcharacter_classes(G: FiniteGroup, C: FiniteGroup) -> List[Subcharacter]:
    """Canonical representatives of the G-classes of pairs (D, delta);
    they index the basis of the monomial Burnside ring of G."""
    if not C.is_abelian:
        raise GroupError("fibre group must be abelian")
    key = ("subchar_classes", id(C))
    cached = G._cache.get(key)
    if cached is None:
        found = set()
        for D in subgroups(G):
            for hom in homomorphisms(D, C):
                found.add(_canonical_raw(G, D.mask, hom.images))
        cached = sorted(found)
        G._cache[key] = cached
    return [_make_subcharacter(G, C, mask_to_elements(m), d)
            for m, d in cached]


def transitive_basis(G: FiniteGroup, H: FiniteGroup,
                     C: FiniteGroup) -> List[TransitiveFibredBiset]:
    """Canonical transitive classes over G x H: the basis of the
    morphism group from H to G."""
    amb = product_embedding(G, H).ambient
    return [_class_from_raw(G, H, C, *sc.raw, canonical=True)
            for sc in subcharacter_classes(amb, C)]


def element_from_subcharacter(sc: Subcharacter) -> FibredElement:
    """View a basis class of the ring of G as an element over (G, C1)."""
    one = cyclic(1)
    mask, delta = _canonical_raw(sc.group, *sc.raw)
    cls = _class_from_raw(sc.group, one, sc.fibre, mask, delta,
                          canonical=True)
    return element_of(cls)


def ring_identity(G: FiniteGroup, C: FiniteGroup) -> FibredElement:
    """The class of C G/G: the identity of the ring of G."""
    one = cyclic(1)
    mask = (1 << G.order) - 1
    delta = (0,) * G.order
    mask, delta = _canonical_raw(G, mask, delta)
    return element_of(_class_from_raw(G, one, C, mask, delta, canonical=True))


def identity_element(G: FiniteGroup, C: FiniteGroup) -> FibredElement:
    """The class of C (G x G)/Delta(G): the identity morphism of G."""
    emb = product_embedding(G, G)
    mask = 0
    for g in range(G.order):
        mask |= 1 << emb.encode(g, g)
    delta = (0,) * G.order
    mask, delta = _canonical_raw(emb.ambient, mask, delta)
    return element_of(_class_from_raw(G, G, C, mask, delta, canonical=True))


# ---------------------------------------------------------------------------
# opposites


def opposite(X: TransitiveFibredBiset) -> TransitiveFibredBiset:
    """Swap the two factors: D -> {(h, g) : (g, h) in D} and
    delta -> delta(g, h)^-1."""
    emb = X.embedding
    emb_op = product_embedding(X.right, X.left)
    inv = X.fibre.inverses
    pairs = []
    for x, c in zip(X.D.elements, X.delta.images):
        g, h = emb.decode(x)
        pairs.append((emb_op.encode(h, g), inv[c]))
    pairs.sort()
    mask = 0
    for x, _ in pairs:
        mask |= 1 << x
    delta = tuple(c for _, c in pairs)
    mask, delta = _canonical_raw(emb_op.ambient, mask, delta)
    return _class_from_raw(X.right, X.left, X.fibre, mask, delta,
                           canonical=True)


def opposite_element(elt: FibredElement) -> FibredElement:
    terms = {opposite(cls): coeff for cls, coeff in elt.terms.items()}
    return FibredElement(elt.right, elt.left, elt.fibre, terms)


# ---------------------------------------------------------------------------
# composition: the double-coset formula


def _compose_raw(emb_gh: ProductEmbedding, emb_hk: ProductEmbedding,
                 C: FiniteGroup, v_elements, nu, u_elements, mu,
                 only_masks=None):
    """All summands of the composition of transitive classes (V, nu) over
    G x H and (U, mu) over H x K.

    Yields (h, mask, delta) per double-coset representative h that passes
    the character condition; when ``only_masks`` is given, summands whose
    star subgroup is not in that set are skipped before any character
    work.
    """
    G, H = emb_gh.factors
    H2, K = emb_hk.factors
    if H is not H2:
        raise GroupError("middle groups do not agree")
    emb_gk = product_embedding(G, K)
    cmul = C.mul
    hmul = H.mul
    hinv = H.inverses

    v_dec = [emb_gh.decode(x) for x in v_elements]
    u_dec = [emb_hk.decode(x) for x in u_elements]
    p2v = sorted({h for _, h in v_dec})
    p1u = sorted({h for h, _ in u_dec})
    k2v = [(h, c) for (g, h), c in zip(v_dec, nu) if g == 0]
    k1u_vals = {h: c for (h, k), c in zip(u_dec, mu) if k == 0}
    u_by_first: Dict[int, list] = {}
    for (h, k), c in zip(u_dec, mu):
        u_by_first.setdefault(h, []).append((k, c))

    A = Subgroup(H, tuple(p2v), _validate=False)
    B = Subgroup(H, tuple(p1u), _validate=False)
    out = []
    for h in double_coset_representatives(H, A, B):
        hi = hinv[h]

        def twist(x, h=h, hi=hi):
            return hmul(hi, hmul(x, h))

        ok = True
        for hp, c_nu in k2v:
            c_mu = k1u_vals.get(twist(hp))
            if c_mu is None:
                continue
            if cmul(c_nu, c_mu) != 0:
                ok = False
                break
        if not ok:
            continue
        if only_masks is not None:
            mask = 0
            for (g, h1), _ in zip(v_dec, nu):
                for k, _ in u_by_first.get(twist(h1), ()):
                    mask |= 1 << emb_gk.encode(g, k)
            if mask not in only_masks:
                continue
        values: Dict[int, int] = {}
        for (g, h1), c_nu in zip(v_dec, nu):
            hits = u_by_first.get(twist(h1))
            if not hits:
                continue
            for k, c_mu in hits:
                e = emb_gk.encode(g, k)
                val = cmul(c_nu, c_mu)
                old = values.get(e)
                if old is None:
                    values[e] = val
                elif old != val:
                    raise GroupError("composite character is ill-defined")
        items = sorted(values.items())
        mask = 0
        for e, _ in items:
            mask |= 1 << e
        out.append((h, mask, tuple(c for _, c in items)))
    return out


def compose(X: FibredElement, Y: FibredElement,
            check: bool = False) -> FibredElement:
    """Composition of morphisms: an element over G x H composed with one
    over H x K gives an element over G x K.  With ``check`` the orbit
    oracle is run as well and any disagreement raises."""
    if X.right is not Y.left:
        raise GroupError("middle groups do not agree")
    if X.fibre is not Y.fibre:
        raise GroupError("fibre groups do not agree")
    emb_gh = product_embedding(X.left, X.right)
    emb_hk = product_embedding(Y.left, Y.right)
    amb_gk = product_embedding(X.left, Y.right).ambient
    acc: Dict[tuple, int] = {}
    for tx, cx in X.terms.items():
        for ty, cy in Y.terms.items():
            coeff = cx * cy
            for _, mask, delta in _compose_raw(
                    emb_gh, emb_hk, X.fibre,
                    tx.D.elements, tx.delta.images,
                    ty.D.elements, ty.delta.images):
                key = _canonical_raw(amb_gk, mask, delta)
                acc[key] = acc.get(key, 0) + coeff
    result = FibredElement(
        X.left, Y.right, X.fibre,
        {_class_from_raw(X.left, Y.right, X.fibre, m, d, canonical=True): v
         for (m, d), v in acc.items() if v != 0})
    if check:
        oracle = compose_oracle(X, Y)
        if oracle != result:
            raise GroupError("composition formula disagrees with the oracle")
    return result


def is_idempotent(W: FibredElement) -> bool:
    """Whether W o W = W; W must be a square element (same group twice)."""
    if W.left is not W.right:
        raise GroupError("idempotency needs an element over G x G")
    return compose(W, W) == W


# ---------------------------------------------------------------------------
# monomial-set bridge and the orbit oracle


def to_monomial_set(X) -> MonomialSet:
    """Explicit coset model of a transitive class (over its full ambient
    group) or of a ring basis class."""
    if isinstance(X, Subcharacter):
        acting, (mask, delta) = X.group, X.raw
    elif isinstance(X, TransitiveFibredBiset):
        acting, (mask, delta) = X.ambient, X.raw
    else:
        raise GroupError("expected a transitive class")
    elements = mask_to_elements(mask)
    dmap = dict(zip(elements, delta))
    return monomial.monomial_set_from_pair(acting, X.fibre, elements,
                                           dmap.__getitem__)


def from_monomial_set(T: MonomialSet, left: Optional[FiniteGroup] = None,
                      right: Optional[FiniteGroup] = None) -> FibredElement:
    """Decompose a monomial set into canonical transitive classes.  The
    acting group must be the product of (left, right) when those are
    given; otherwise the result is a ring element over the acting group.
    """
    if left is None and right is None:
        left, right = T.acting, cyclic(1)
    amb = product_embedding(left, right).ambient
    if amb is not T.acting:
        raise GroupError("acting group is not the stated product")
    acc: Dict[tuple, int] = {}
    for d_elements, delta in monomial.decompose_monomial(T):
        mask = 0
        for x in d_elements:
            mask |= 1 << x
        key = _canonical_raw(amb, mask, delta)
        acc[key] = acc.get(key, 0) + 1
    return FibredElement(
        left, right, T.fibre,
        {_class_from_raw(left, right, T.fibre, m, d, canonical=True): v
         for (m, d), v in acc.items()})


def _compose_oracle_transitive(tx: TransitiveFibredBiset,
                               ty: TransitiveFibredBiset) -> FibredElement:
    """Set-theoretic composition of two transitive classes: orbits of the
    product under the middle-group/fibre action, keeping the part on
    which the fibre acts freely."""
    G, H = tx.left, tx.right
    K = ty.right
    C = tx.fibre
    emb_gh = product_embedding(G, H)
    emb_hk = product_embedding(H, K)
    emb_gk = product_embedding(G, K)
    T1 = to_monomial_set(tx)
    T2 = to_monomial_set(ty)
    e1 = T1.embedding
    e2 = T2.embedding
    n2 = T2.size
    n_pairs = T1.size * n2
    inv = C.inverses

    moves = []
    for h in range(H.order):
        for c in range(C.order):
            r1 = T1.action.table[e1.encode(emb_gh.encode(0, h), c)]
            r2 = T2.action.table[e2.encode(emb_hk.encode(h, 0), inv[c])]
            moves.append([r1[p // n2] * n2 + r2[p % n2]
                          for p in range(n_pairs)])
    find_rep, roots = monomial._orbit_partition(n_pairs, moves)

    def pair_move(p, a1, a2):
        return (T1.action.table[a1][p // n2] * n2
                + T2.action.table[a2][p % n2])

    # keep the orbits on which the fibre acts freely
    kept = []
    for root in roots:
        free = True
        for c in range(1, C.order):
            q = pair_move(root, e1.encode(0, c), e2.encode(0, 0))
            if find_rep[q] == root:
                free = False
                break
        if free:
            kept.append(root)
    index = {r: i for i, r in enumerate(kept)}
    emb_res = product_embedding(emb_gk.ambient, C)
    table = []
    for e in range(emb_res.ambient.order):
        gk, c = emb_res.decode(e)
        g, k = emb_gk.decode(gk)
        a1 = e1.encode(emb_gh.encode(g, 0), c)
        a2 = e2.encode(emb_hk.encode(0, k), 0)
        table.append([index[find_rep[pair_move(r, a1, a2)]] for r in kept])
    result = MonomialSet(emb_gk.ambient, C,
                         FiniteAction(emb_res.ambient, table),
                         validate=False)
    return from_monomial_set(result, G, K)


def compose_oracle(X: FibredElement, Y: FibredElement) -> FibredElement:
    """Brute-force composition through explicit monomial sets; must agree
    with :func:`compose` on every input."""
    if X.right is not Y.left:
        raise GroupError("middle groups do not agree")
    if X.fibre is not Y.fibre:
        raise GroupError("fibre groups do not agree")
    out = zero_element(X.left, Y.right, X.fibre)
    for tx, cx in X.terms.items():
        for ty, cy in Y.terms.items():
            out = out + _compose_oracle_transitive(tx, ty).scaled(cx * cy)
    return out


# ---------------------------------------------------------------------------
# tensor product and the ring structure


def tensor(X: FibredElement, Y: FibredElement) -> FibredElement:
    """Dress tensor of ring elements: an element of the ring of G and one
    of the ring of H give one over G x H, computed set-theoretically as
    fibre-orbits of the product set."""
    if X.right.order != 1 or Y.right.order != 1:
        raise GroupError("tensor expects ring elements (trivial right part)")
    if X.fibre is not Y.fibre:
        raise GroupError("fibre groups do not agree")
    C = X.fibre
    G, H = X.left, Y.left
    emb_gc = product_embedding(G, C)
    emb_hc = product_embedding(H, C)
    out = zero_element(G, H, C)
    for tx, cx in X.terms.items():
        for ty, cy in Y.terms.items():
            T = to_monomial_set(tx)
            U = to_monomial_set(ty)
            _, action = monomial.tensor_sets(emb_gc, T.action,
                                             emb_hc, U.action)
            amb = product_embedding(G, H).ambient
            res = MonomialSet(amb, C, action, validate=False)
            out = out + from_monomial_set(res, G, H).scaled(cx * cy)
    return out


def _restrict_to_diagonal(elt: FibredElement) -> FibredElement:
    """Pull an element over G x G back along g -> (g, g)."""
    G = elt.left
    C = elt.fibre
    emb_gg = product_embedding(G, G)
    emb_src = product_embedding(emb_gg.ambient, C)
    emb_dst = product_embedding(G, C)
    out = zero_element(G, cyclic(1), C)
    for cls, coeff in elt.terms.items():
        T = to_monomial_set(cls)
        table = []
        for e in range(emb_dst.ambient.order):
            g, c = emb_dst.decode(e)
            table.append(T.action.table[emb_src.encode(
                emb_gg.encode(g, g), c)])
        res = MonomialSet(G, C, FiniteAction(emb_dst.ambient, table),
                          validate=False)
        out = out + from_monomial_set(res).scaled(coeff)
    return out


def ring_product(X: FibredElement, Y: FibredElement) -> FibredElement:
    """Internal product of the ring of G: tensor, then restrict along the
    diagonal of G x G."""
    if X.left is not Y.left or X.right.order != 1 or Y.right.order != 1:
        raise GroupError("ring product expects ring elements over one group")
    if X.fibre is not Y.fibre:
        raise GroupError("fibre groups do not agree")
    return _restrict_to_diagonal(tensor(X, Y))


# ---------------------------------------------------------------------------
# elementary bisets and the factorization through projections


def _graph_class(left: FiniteGroup, right: FiniteGroup, C: FiniteGroup,
                 pairs: Iterable[Tuple[int, int]],
                 values: Optional[Iterable[int]] = None
                 ) -> TransitiveFibredBiset:
    emb = product_embedding(left, right)
    if values is None:
        encoded = sorted(emb.encode(a, b) for a, b in pairs)
        delta = (0,) * len(encoded)
        mask = 0
        for e in encoded:
            mask |= 1 << e
    else:
        items: Dict[int, int] = {}
        for (a, b), v in zip(pairs, values):
            e = emb.encode(a, b)
            old = items.get(e)
            if old is None:
                items[e] = v
            elif old != v:
                raise GroupError("character is ill-defined on the subgroup")
        enc = sorted(items.items())
        mask = 0
        for e, _ in enc:
            mask |= 1 << e
        delta = tuple(v for _, v in enc)
    mask, delta = _canonical_raw(emb.ambient, mask, delta)
    return _class_from_raw(left, right, C, mask, delta, canonical=True)


def elementary_fibred_biset(kind: str, C: FiniteGroup, *,
                            group: Optional[FiniteGroup] = None,
                            subgroup: Optional[Subgroup] = None,
                            normal: Optional[Subgroup] = None,
                            iso: Optional[GroupHom] = None
                            ) -> TransitiveFibredBiset:
    """The trivial-character fibred class of an elementary biset.

    kinds: ``ind``/``res`` take (group, subgroup); ``inf``/``def`` take
    (group, normal); ``iso`` takes a bijective homomorphism.  Morphisms
    point left: a class over (A, B) is a morphism from B to A.
    """
    kind = kind.lower()
    if kind in ("ind", "res"):
        if group is None or subgroup is None or subgroup.parent is not group:
            raise GroupError("ind/res need a group and one of its subgroups")
        sub_grp, inclusion = subgroup_as_group(subgroup)
        pairs = [(inclusion.images[i], i) for i in range(sub_grp.order)]
        if kind == "ind":
            return _graph_class(group, sub_grp, C,
                                [(g, e) for g, e in pairs])
        return _graph_class(sub_grp, group, C, [(e, g) for g, e in pairs])
    if kind in ("inf", "def"):
        if group is None or normal is None or normal.parent is not group:
            raise GroupError("inf/def need a group and a normal subgroup")
        Q, proj = quotient(group, normal)
        pairs = [(g, proj.images[g]) for g in range(group.order)]
        if kind == "inf":
            return _graph_class(group, Q, C, pairs)
        return _graph_class(Q, group, C, [(q, g) for g, q in pairs])
    if kind == "iso":
        if iso is None or not isinstance(iso.domain, FiniteGroup):
            raise GroupError("iso needs a bijective homomorphism of groups")
        if not iso.is_bijective:
            raise GroupError("iso map is not bijective")
        return _graph_class(iso.codomain, iso.domain, C,
                            [(iso.images[g], g)
                             for g in range(iso.domain.order)])
    raise GroupError(f"unknown elementary biset kind {kind!r}")


@dataclass(frozen=True)
class BoucFactorization:
    """Both factorizations of a transitive class through its projections:
    X = left_elementary o beta1 and X = beta2 o right_elementary."""

    left_elementary: TransitiveFibredBiset
    beta1: TransitiveFibredBiset
    beta2: TransitiveFibredBiset
    right_elementary: TransitiveFibredBiset
    left_middle: FiniteGroup
    right_middle: FiniteGroup


def _reduced_kernel(emb: ProductEmbedding, X: TransitiveFibredBiset,
                    side: int) -> list:
    """Elements g of the side's factor with (g embedded alone) in D and
    trivial character; this is the kernel that the twisted diagonal of
    (D, delta) sees on that side."""
    out = []
    for x, c in zip(X.D.elements, X.delta.images):
        coords = emb.decode(x)
        other = coords[1 - side]
        if other == 0 and c == 0:
            out.append(coords[side])
    return sorted(out)


def bouc_factorize(X: TransitiveFibredBiset) -> BoucFactorization:
    """Factor a transitive class over G x H through the quotients of its
    projections.  With E = p1(D) and k1 the left reduced kernel, the left
    factorization passes through E' = E/k1; symmetrically on the right.
    Both recompositions return X exactly.
    """
    emb = X.embedding
    G, H = emb.factors
    C = X.fibre

    # left side
    E_els = sorted({emb.decode(x)[0] for x in X.D.elements})
    E = Subgroup(G, tuple(E_els), _validate=False)
    k1 = _reduced_kernel(emb, X, 0)
    E_grp, incl = subgroup_as_group(E)
    pos_e = {x: i for i, x in enumerate(E.elements)}
    k1_local = Subgroup(E_grp, tuple(sorted(pos_e[x] for x in k1)),
                        _validate=False)
    E_quot, proj_e = quotient(E_grp, k1_local)
    left_elementary = _graph_class(G, E_quot, C,
                                   [(g, proj_e.images[pos_e[g]])
                                    for g in E.elements])
    beta1 = _graph_class(
        E_quot, H, C,
        [(proj_e.images[pos_e[emb.decode(x)[0]]], emb.decode(x)[1])
         for x in X.D.elements],
        values=X.delta.images)

    # right side
    F_els = sorted({emb.decode(x)[1] for x in X.D.elements})
    F = Subgroup(H, tuple(F_els), _validate=False)
    k2 = _reduced_kernel(emb, X, 1)
    F_grp, _ = subgroup_as_group(F)
    pos_f = {x: i for i, x in enumerate(F.elements)}
    k2_local = Subgroup(F_grp, tuple(sorted(pos_f[x] for x in k2)),
                        _validate=False)
    F_quot, proj_f = quotient(F_grp, k2_local)
    right_elementary = _graph_class(F_quot, H, C,
                                    [(proj_f.images[pos_f[h]], h)
                                     for h in F.elements])
    beta2 = _graph_class(
        G, F_quot, C,
        [(emb.decode(x)[0], proj_f.images[pos_f[emb.decode(x)[1]]])
         for x in X.D.elements],
        values=X.delta.images)

    return BoucFactorization(left_elementary=left_elementary, beta1=beta1,
                             beta2=beta2, right_elementary=right_elementary,
                             left_middle=E_quot, right_middle=F_quot)


# ---------------------------------------------------------------------------
# JSON wire format


def subcharacter_to_json(sc: Subcharacter) -> dict:
    return {"group_spec": sc.group.name, "fibre": sc.fibre.name,
            "subgroup_elements": list(sc.D.elements),
            "delta_images": list(sc.delta.images)}


def subcharacter_from_json(data: dict) -> Subcharacter:
    from .groups import group_from_spec
    G = group_from_spec(data["group_spec"])
    C = group_from_spec(data["fibre"])
    D = G.subgroup(data["subgroup_elements"])
    hom = GroupHom(D, C, tuple(data["delta_images"]))
    return Subcharacter(G, C, D, hom)


def element_to_json(elt: FibredElement) -> dict:
    return {
        "left": elt.left.name,
        "right": elt.right.name,
        "fibre": elt.fibre.name,
        "terms": [{"D": list(cls.D.elements),
                   "delta": list(cls.delta.images),
                   "coeff": coeff}
                  for cls, coeff in elt.sorted_terms()],
    }


def element_from_json(data: dict) -> FibredElement:
    from .groups import group_from_spec
    left = group_from_spec(data["left"])
    right = group_from_spec(data["right"])
    fibre = group_from_spec(data["fibre"])
    terms: Dict[TransitiveFibredBiset, int] = {}
    for item in data["terms"]:
        cls = transitive_fibred_biset(left, right, fibre, item["D"],
                                      item["delta"])
        cls = canonicalize(cls)
        terms[cls] = terms.get(cls, 0) + int(item.get("coeff", 1))
    return FibredElement(left, right, fibre, terms)
