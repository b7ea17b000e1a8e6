"""Shared brute-force oracles for the test suite, independent of the
production enumeration paths."""

import itertools


def brute_subgroup_masks(G):
    """Exhaustive subset scan (use only for |G| <= 10 or so)."""
    n = G.order
    out = []
    for bits in range(2 ** (n - 1)):
        mask = 1 | (bits << 1)
        els = [x for x in range(n) if (mask >> x) & 1]
        if all((mask >> G.inv(a)) & 1 and (mask >> G.mul(a, b)) & 1
               for a in els for b in els):
            out.append(mask)
    return out


def brute_homs(G, elements, C):
    """All characters on a subgroup, by scanning every map."""
    els = list(elements)
    pos = {x: i for i, x in enumerate(els)}
    out = []
    for images in itertools.product(range(C.order), repeat=len(els) - 1):
        f = (0,) + images
        if all(f[pos[G.mul(a, b)]] == C.mul(f[pos[a]], f[pos[b]])
               for a in els for b in els):
            out.append(f)
    return out


def brute_subcharacter_count(G, C):
    """Number of conjugacy classes of (subgroup, character) pairs, from
    scratch: subset scan, full map scan, then orbit counting."""
    pairs = set()
    for mask in brute_subgroup_masks(G):
        els = tuple(x for x in range(G.order) if (mask >> x) & 1)
        for f in brute_homs(G, els, C):
            pairs.add((els, f))
    seen = set()
    count = 0
    for pair in sorted(pairs):
        if pair in seen:
            continue
        count += 1
        els, f = pair
        for g in range(G.order):
            gi = G.inv(g)
            conj = sorted((G.mul(G.mul(g, x), gi), v)
                          for x, v in zip(els, f))
            seen.add((tuple(x for x, _ in conj),
                      tuple(v for _, v in conj)))
    return count
