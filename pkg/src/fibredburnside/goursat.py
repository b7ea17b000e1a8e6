"""Subgroups of direct products: coordinate projections and kernels,
the star product, Goursat decomposition, and conjugation of subgroups
and subgroup/character pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .groups import (
    FiniteGroup,
    GroupError,
    GroupHom,
    ProductEmbedding,
    Subgroup,
    conjugate_mask,
    mask_to_elements,
    product_embedding,
    quotient,
    subgroup_as_group,
)

__all__ = [
    "projection",
    "kernel_part",
    "star",
    "GoursatData",
    "goursat_decompose",
    "rebuild_from_goursat",
    "conjugate_subgroup",
    "conjugate_pair",
]


def _check_indices(emb: ProductEmbedding, indices: Sequence[int]) -> tuple:
    ids = tuple(indices)
    k = len(emb.factors)
    if not ids or len(set(ids)) != len(ids) or list(ids) != sorted(ids):
        raise GroupError(f"invalid index set {indices!r}")
    if any(not 1 <= i <= k for i in ids):
        raise GroupError(f"index set {indices!r} out of range for {k} factors")
    return ids


def _target(emb: ProductEmbedding, ids: tuple):
    """Target embedding/group for a projection onto the given coordinates."""
    if len(ids) == 1:
        f = emb.factors[ids[0] - 1]
        return None, f
    sub = product_embedding(*(emb.factors[i - 1] for i in ids))
    return sub, sub.ambient


def projection(emb: ProductEmbedding, D: Subgroup,
               indices: Sequence[int]) -> Subgroup:
    """Image of D under the coordinate projection p_i (or p_{i,j}, ...)."""
    if D.parent is not emb.ambient:
        raise GroupError("subgroup does not live in this product")
    ids = _check_indices(emb, indices)
    sub, target = _target(emb, ids)
    out = set()
    for x in D.elements:
        coords = emb.decode(x)
        picked = tuple(coords[i - 1] for i in ids)
        out.add(picked[0] if sub is None else sub.encode(*picked))
    return Subgroup(target, tuple(sorted(out)), _validate=False)


def kernel_part(emb: ProductEmbedding, D: Subgroup,
                indices: Sequence[int]) -> Subgroup:
    """k_i(D) (or k_{i,j}(D)): the part of p_i(D) whose extension by
    identities in the remaining coordinates lies in D."""
    if D.parent is not emb.ambient:
        raise GroupError("subgroup does not live in this product")
    ids = _check_indices(emb, indices)
    sub, target = _target(emb, ids)
    others = [i for i in range(1, len(emb.factors) + 1) if i not in ids]
    out = set()
    for x in D.elements:
        coords = emb.decode(x)
        if any(coords[i - 1] != 0 for i in others):
            continue
        picked = tuple(coords[i - 1] for i in ids)
        out.add(picked[0] if sub is None else sub.encode(*picked))
    return Subgroup(target, tuple(sorted(out)), _validate=False)


def star(emb_gh: ProductEmbedding, U: Subgroup,
         emb_hk: ProductEmbedding, V: Subgroup) -> Subgroup:
    """U * V = {(g,k) : exists h with (g,h) in U and (h,k) in V},
    a subgroup of G x K."""
    if len(emb_gh.factors) != 2 or len(emb_hk.factors) != 2:
        raise GroupError("star is defined for two-factor products")
    if U.parent is not emb_gh.ambient or V.parent is not emb_hk.ambient:
        raise GroupError("subgroup does not live in the stated product")
    if emb_gh.factors[1] is not emb_hk.factors[0]:
        raise GroupError("middle factors do not agree")
    emb_gk = product_embedding(emb_gh.factors[0], emb_hk.factors[1])
    by_h: dict = {}
    for x in U.elements:
        g, h = emb_gh.decode(x)
        by_h.setdefault(h, []).append(g)
    out = set()
    for y in V.elements:
        h, k = emb_hk.decode(y)
        for g in by_h.get(h, ()):
            out.add(emb_gk.encode(g, k))
    return Subgroup(emb_gk.ambient, tuple(sorted(out)), _validate=False)


@dataclass(frozen=True)
class GoursatData:
    """The five-tuple classifying a subgroup D of G x H: projections E and
    F, kernels k1 and k2, and the induced isomorphism F/k2 -> E/k1 (as a
    homomorphism between the quotient groups, together with the quotient
    data needed to use it)."""

    E: Subgroup
    k1: Subgroup
    F: Subgroup
    k2: Subgroup
    iso: GroupHom
    e_quotient: FiniteGroup
    e_projection: GroupHom
    f_quotient: FiniteGroup
    f_projection: GroupHom


def _quotient_of_subgroup(S: Subgroup, N: Subgroup):
    """Quotient of a subgroup (given in ambient coordinates) by a normal
    subgroup of it; returns (Q, projection from ambient elements of S)."""
    grp, inclusion = subgroup_as_group(S)
    pos = {x: i for i, x in enumerate(S.elements)}
    n_local = Subgroup(grp, tuple(sorted(pos[x] for x in N.elements)),
                       _validate=False)
    Q, proj_local = quotient(grp, n_local)
    images = tuple(proj_local.images[pos[x]] for x in S.elements)
    return Q, GroupHom(S, Q, images, _validate=False)


def goursat_decompose(emb: ProductEmbedding, D: Subgroup) -> GoursatData:
    """Goursat data of D <= G x H.  The isomorphism F/k2 -> E/k1 sends
    h k2 to g k1 for any (g, h) in D; it is determined by D."""
    if len(emb.factors) != 2:
        raise GroupError("goursat decomposition needs a two-factor product")
    E = projection(emb, D, (1,))
    k1 = kernel_part(emb, D, (1,))
    F = projection(emb, D, (2,))
    k2 = kernel_part(emb, D, (2,))
    EQ, eproj = _quotient_of_subgroup(E, k1)
    FQ, fproj = _quotient_of_subgroup(F, k2)
    emap = eproj.as_map()
    fmap = fproj.as_map()
    images = [-1] * FQ.order
    for x in D.elements:
        g, h = emb.decode(x)
        images[fmap[h]] = emap[g]
    iso = GroupHom(FQ, EQ, tuple(images), _validate=False)
    if not iso.is_bijective:
        raise GroupError("goursat correspondence failed to be bijective")
    return GoursatData(E=E, k1=k1, F=F, k2=k2, iso=iso,
                       e_quotient=EQ, e_projection=eproj,
                       f_quotient=FQ, f_projection=fproj)


def rebuild_from_goursat(emb: ProductEmbedding, data: GoursatData) -> Subgroup:
    """The subgroup {(g, h) : iso(h k2) = g k1} defined by Goursat data."""
    emap = data.e_projection.as_map()
    fmap = data.f_projection.as_map()
    iso = data.iso.as_map()
    out = []
    for g in data.E.elements:
        for h in data.F.elements:
            if iso[fmap[h]] == emap[g]:
                out.append(emb.encode(g, h))
    return Subgroup(emb.ambient, tuple(sorted(out)), _validate=False)


def conjugate_subgroup(D: Subgroup, g: int) -> Subgroup:
    """^g D = g D g^-1 inside the parent group."""
    mask = conjugate_mask(D.parent, D.mask, g)
    return Subgroup(D.parent, mask_to_elements(mask), _validate=False)


def conjugate_pair(D: Subgroup, delta: GroupHom,
                   g: int) -> Tuple[Subgroup, GroupHom]:
    """^g (D, delta) = (^g D, ^g delta) with ^g delta(x) = delta(g^-1 x g)."""
    G = D.parent
    perm = G.conjugation_perm(g)
    dmap = delta.as_map()
    pairs = sorted((perm[x], c) for x, c in dmap.items())
    newD = Subgroup(G, tuple(p[0] for p in pairs), _validate=False)
    newdelta = GroupHom(newD, delta.codomain, tuple(p[1] for p in pairs),
                        _validate=False)
    return newD, newdelta
