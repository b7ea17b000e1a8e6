"""Seeded random instances for the property suites: groups from the
catalog, transitive classes over products, and composable tuples."""

from __future__ import annotations

import random
from typing import List, Optional

from .groups import (
    FiniteGroup,
    Subgroup,
    homomorphisms,
    product_embedding,
    small_groups_catalog,
    subgroups,
)
from .fibred import TransitiveFibredBiset, canonicalize

__all__ = [
    "random_group",
    "random_transitive_class",
    "random_full_projection_class",
]


def random_group(rng: random.Random, max_order: int,
                 min_order: int = 1) -> FiniteGroup:
    pool = [g for g in small_groups_catalog(min(max_order, 15))
            if g.order >= min_order]
    return pool[rng.randrange(len(pool))]


def random_transitive_class(rng: random.Random, left: FiniteGroup,
                            right: FiniteGroup,
                            fibre: FiniteGroup) -> TransitiveFibredBiset:
    amb = product_embedding(left, right).ambient
    subs = subgroups(amb)
    D = subs[rng.randrange(len(subs))]
    homs = homomorphisms(D, fibre)
    delta = homs[rng.randrange(len(homs))]
    return canonicalize(TransitiveFibredBiset(left, right, fibre, D, delta,
                                              _validate=False))


def _full_projection_subgroups(left: FiniteGroup,
                               right: FiniteGroup) -> List[Subgroup]:
    emb = product_embedding(left, right)
    key = ("full_projection_subgroups",)
    cached = emb.ambient._cache.get(key)
    if cached is None:
        cached = []
        for D in subgroups(emb.ambient):
            firsts = set()
            seconds = set()
            for x in D.elements:
                a, b = emb.decode(x)
                firsts.add(a)
                seconds.add(b)
            if len(firsts) == left.order and len(seconds) == right.order:
                cached.append(D)
        emb.ambient._cache[key] = cached
    return cached


def random_full_projection_class(rng: random.Random, left: FiniteGroup,
                                 right: FiniteGroup, fibre: FiniteGroup
                                 ) -> Optional[TransitiveFibredBiset]:
    """A class whose subgroup projects onto both factors, or None when the
    two groups admit no such subgroup."""
    pool = _full_projection_subgroups(left, right)
    if not pool:
        return None
    D = pool[rng.randrange(len(pool))]
    homs = homomorphisms(D, fibre)
    delta = homs[rng.randrange(len(homs))]
    return canonicalize(TransitiveFibredBiset(left, right, fibre, D, delta,
                                              _validate=False))
