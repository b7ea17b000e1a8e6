"""The quotient algebra of classes over G x G modulo everything that
factors through strictly smaller groups.

Membership in the ideal is decided by the summand criterion: a canonical
transitive class is in the ideal exactly when it appears as a summand of
some composition a o b with a over G x K, b over K x G and |K| < |G|.
Classes whose projections or reduced kernels are proper factor through a
quotient of a projection and get an explicit constructed witness; the
remaining candidates are settled by exhaustive search over the catalog.

For a fibre of prime order the surviving classes have a closed
description: diagonal classes indexed by characters and outer
automorphisms, plus central classes indexed by outer automorphisms and
fibre embeddings into the center-intersect-Frattini subgroup.  The
product rules on those generators are implemented directly and verified
against compose-then-reduce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .groups import (
    BoundExceededError,
    FiniteGroup,
    GroupError,
    GroupHom,
    automorphisms,
    center,
    frattini,
    homomorphisms,
    isomorphism,
    mask_to_elements,
    product_embedding,
    small_groups_catalog,
)
from .fibred import (
    TransitiveFibredBiset,
    _canonical_raw,
    _class_from_raw,
    _compose_raw,
    bouc_factorize,
    canonicalize,
    compose,
    element_of,
    is_idempotent,
    opposite,
    transitive_basis,
    transitive_fibred_biset,
)

__all__ = [
    "VerificationError",
    "FactorizationWitness",
    "HatGenerator",
    "HatElement",
    "is_in_ideal",
    "hat_dimension",
    "hat_basis_prime",
    "hat_generator_class",
    "hat_multiply",
    "transport_hat_generator",
    "verify_hat_vs_quotient",
    "seed_index",
    "frattini_criterion",
    "y_type_class",
    "counterexample_verify",
]

_PRIMES = {2, 3, 5, 7, 11, 13}


class VerificationError(Exception):
    """A verification step failed; carries the failing step's name."""

    def __init__(self, step: str, detail: str = ""):
        self.step = step
        self.detail = detail
        super().__init__(f"verification failed at step {step!r}"
                         + (f": {detail}" if detail else ""))


@dataclass(frozen=True)
class FactorizationWitness:
    """A factorization of a class over G x G through a smaller group K:
    the class is the summand of compose(a, b) at the stated double-coset
    representative."""

    K: FiniteGroup
    a: TransitiveFibredBiset
    b: TransitiveFibredBiset
    which_summand: int

    def describe(self) -> str:
        return (f"through {self.K.name}: a={self.a.describe()} "
                f"b={self.b.describe()} at representative "
                f"{self.which_summand}")

    def to_json(self) -> dict:
        return {
            "through": self.K.name,
            "a": {"D": list(self.a.D.elements),
                  "delta": list(self.a.delta.images)},
            "b": {"D": list(self.b.D.elements),
                  "delta": list(self.b.delta.images)},
            "which_summand": self.which_summand,
        }


def _witness_matches(X: TransitiveFibredBiset,
                     w: FactorizationWitness) -> bool:
    if w.K.order >= X.left.order:
        return False
    emb_gk = product_embedding(w.a.left, w.a.right)
    emb_kg = product_embedding(w.b.left, w.b.right)
    amb = X.ambient
    for h, mask, delta in _compose_raw(
            emb_gk, emb_kg, X.fibre,
            w.a.D.elements, w.a.delta.images,
            w.b.D.elements, w.b.delta.images):
        if h == w.which_summand:
            return _canonical_raw(amb, mask, delta) == X.raw
    return False


# ---------------------------------------------------------------------------
# ideal membership


def _catalog_below(order: int, catalog_bound: int) -> List[FiniteGroup]:
    if catalog_bound < order - 1:
        raise BoundExceededError(
            f"catalog up to {catalog_bound} cannot cover orders below "
            f"{order}")
    return [K for K in small_groups_catalog(catalog_bound)
            if K.order < order]


def _iso_to_catalog(grp: FiniteGroup, catalog_bound: int):
    """A catalog group isomorphic to grp, with the isomorphism."""
    cached = grp._cache.get("iso_to_catalog")
    if cached is None:
        for K in small_groups_catalog(catalog_bound):
            if K.order != grp.order:
                continue
            phi = isomorphism(grp, K)
            if phi is not None:
                cached = (K, phi)
                break
        else:
            raise GroupError(f"no catalog group of order {grp.order} "
                             f"matches {grp.name}")
        grp._cache["iso_to_catalog"] = cached
    return cached


def _transport_class(X: TransitiveFibredBiset, side: int,
                     phi: GroupHom) -> TransitiveFibredBiset:
    """Apply an isomorphism to one factor of a class over a product."""
    emb = X.embedding
    factors = [X.left, X.right]
    factors[side] = phi.codomain
    emb_new = product_embedding(*factors)
    pairs = []
    for x, c in zip(X.D.elements, X.delta.images):
        coords = list(emb.decode(x))
        coords[side] = phi.images[coords[side]]
        pairs.append((emb_new.encode(*coords), c))
    pairs.sort()
    mask = 0
    for e, _ in pairs:
        mask |= 1 << e
    mask, delta = _canonical_raw(emb_new.ambient, mask,
                                 tuple(c for _, c in pairs))
    return _class_from_raw(factors[0], factors[1], X.fibre, mask, delta,
                           canonical=True)


def _summand_index(X: TransitiveFibredBiset, a: TransitiveFibredBiset,
                   b: TransitiveFibredBiset) -> Optional[int]:
    """Double-coset representative at which X occurs in compose(a, b)."""
    amb = X.ambient
    for h, mask, delta in _compose_raw(
            product_embedding(a.left, a.right),
            product_embedding(b.left, b.right), X.fibre,
            a.D.elements, a.delta.images, b.D.elements, b.delta.images):
        if _canonical_raw(amb, mask, delta) == X.raw:
            return h
    return None


def _reduction_witness(X: TransitiveFibredBiset,
                       catalog_bound: int) -> Optional[FactorizationWitness]:
    """Constructed witness when a projection or reduced kernel is proper:
    the class then factors through the quotient of a projection, which is
    strictly smaller and has a catalog twin."""
    G = X.left
    fac = bouc_factorize(X)
    for middle, left_cls, right_cls in (
            (fac.left_middle, fac.left_elementary, fac.beta1),
            (fac.right_middle, fac.beta2, fac.right_elementary)):
        if middle.order >= G.order:
            continue
        K, phi = _iso_to_catalog(middle, catalog_bound)
        a = _transport_class(left_cls, 1, phi)
        b = _transport_class(right_cls, 0, phi)
        h = _summand_index(X, a, b)
        if h is None:
            raise GroupError("constructed factorization lost the class")
        return FactorizationWitness(K=K, a=a, b=b, which_summand=h)
    return None


def _full_side_classes(left: FiniteGroup, right: FiniteGroup,
                       C: FiniteGroup, side: int
                       ) -> List[TransitiveFibredBiset]:
    """Canonical classes over left x right whose projection on the given
    side (0 = left, 1 = right) is all of that factor."""
    emb = product_embedding(left, right)
    target = emb.factors[side].order
    out = []
    for cls in transitive_basis(left, right, C):
        seen = {emb.decode(x)[side] for x in cls.D.elements}
        if len(seen) == target:
            out.append(cls)
    return out


def _ideal_sweep(G: FiniteGroup, C: FiniteGroup, K: FiniteGroup) -> dict:
    """All canonical summand keys of compositions a o b through K where
    both outer projections are full, with a witness for each.  This is
    exactly the part of the ideal that can meet classes with full
    projections."""
    key = ("ideal_sweep", id(C), id(K))
    cached = G._cache.get(key)
    if cached is None:
        amb = product_embedding(G, G).ambient
        emb_gk = product_embedding(G, K)
        emb_kg = product_embedding(K, G)
        lefts = _full_side_classes(G, K, C, 0)
        rights = _full_side_classes(K, G, C, 1)
        cached = {}
        for a in lefts:
            for b in rights:
                for h, mask, delta in _compose_raw(
                        emb_gk, emb_kg, C, a.D.elements, a.delta.images,
                        b.D.elements, b.delta.images):
                    raw = _canonical_raw(amb, mask, delta)
                    if raw not in cached:
                        cached[raw] = FactorizationWitness(
                            K=K, a=a, b=b, which_summand=h)
        G._cache[key] = cached
    return cached


def is_in_ideal(X: TransitiveFibredBiset, catalog_bound: int = 15
                ) -> Optional[FactorizationWitness]:
    """Search for a factorization of X through a group of order < |G|.

    A class with a proper projection or a nontrivial reduced kernel gets
    its witness from the factorization through the projection quotient;
    the remaining candidates are settled by exhaustive search over the
    catalog (None means no factorization exists).
    """
    if X.left is not X.right:
        raise GroupError("ideal membership is about classes over G x G")
    G = X.left
    X = canonicalize(X)
    kats = _catalog_below(G.order, catalog_bound)
    cache = G._cache.setdefault(("ideal_decisions", id(X.fibre),
                                 catalog_bound), {})
    if X.raw in cache:
        return cache[X.raw]
    witness = _reduction_witness(X, catalog_bound)
    if witness is None:
        for K in kats:
            hit = _ideal_sweep(G, X.fibre, K).get(X.raw)
            if hit is not None:
                witness = hit
                break
    cache[X.raw] = witness
    return witness


def hat_dimension(G: FiniteGroup, C: FiniteGroup, catalog_bound: int = 15
                  ) -> Tuple[int, List[TransitiveFibredBiset]]:
    """Number of canonical transitive classes over G x G that survive in
    the quotient, together with those classes (the working basis)."""
    basis = transitive_basis(G, G, C)
    survivors = [X for X in basis if is_in_ideal(X, catalog_bound) is None]
    return len(survivors), survivors


# ---------------------------------------------------------------------------
# prime-fibre structure


class HatGenerator:
    """A basis symbol of the quotient algebra for a prime-order fibre.

    Variant "X": a character t: G -> C and an outer representative sigma;
    the class of the sigma-twisted diagonal with character read off t.
    Variant "Y": an outer representative omega and an injective fibre
    embedding zeta: C -> Z(G) meeting the Frattini subgroup.
    """

    __slots__ = ("variant", "group", "fibre", "t", "sigma", "omega", "zeta")

    def __init__(self, variant: str, group: FiniteGroup, fibre: FiniteGroup,
                 t: Optional[GroupHom] = None,
                 sigma: Optional[GroupHom] = None,
                 omega: Optional[GroupHom] = None,
                 zeta: Optional[GroupHom] = None):
        self.variant = variant
        self.group = group
        self.fibre = fibre
        self.t = t
        self.sigma = sigma
        self.omega = omega
        self.zeta = zeta
        if variant not in ("X", "Y"):
            raise GroupError("generator variant must be 'X' or 'Y'")

    def key(self):
        if self.variant == "X":
            return ("X", self.t.images, self.sigma.images)
        return ("Y", self.omega.images, self.zeta.images)

    def __eq__(self, other):
        return (isinstance(other, HatGenerator)
                and self.group is other.group and self.fibre is other.fibre
                and self.key() == other.key())

    def __hash__(self):
        return hash((id(self.group), id(self.fibre), self.key()))

    def describe(self) -> str:
        if self.variant == "X":
            return f"X[t={self.t.images}, sigma={self.sigma.images}]"
        return f"Y[omega={self.omega.images}, zeta={self.zeta.images}]"

    def __repr__(self):
        return f"HatGenerator({self.describe()} over {self.group.name})"


class HatElement:
    """A rational combination of hat generators."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Dict[HatGenerator, Fraction]):
        self.coefficients = {g: Fraction(v)
                             for g, v in coefficients.items() if v != 0}

    @classmethod
    def zero(cls) -> "HatElement":
        return cls({})

    @classmethod
    def of(cls, gen: HatGenerator, coeff=1) -> "HatElement":
        return cls({gen: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other):
        out = dict(self.coefficients)
        for g, v in other.coefficients.items():
            out[g] = out.get(g, Fraction(0)) + v
        return HatElement(out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, k) -> "HatElement":
        return HatElement({g: v * k for g, v in self.coefficients.items()})

    def __eq__(self, other):
        return (isinstance(other, HatElement)
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash(frozenset((g, v) for g, v in self.coefficients.items()))

    def __repr__(self):
        if not self.coefficients:
            return "HatElement(0)"
        bits = [f"{v}*{g.describe()}" for g, v in self.coefficients.items()]
        return "HatElement(" + " + ".join(sorted(bits)) + ")"


def _require_prime_fibre(C: FiniteGroup):
    if C.order not in _PRIMES:
        raise GroupError("this operation needs a fibre of prime order")


def _fibre_embeddings(G: FiniteGroup, C: FiniteGroup,
                      into_frattini: bool = True) -> List[GroupHom]:
    """Injective homomorphisms from the prime fibre into Z(G) (optionally
    restricted to land inside the Frattini subgroup)."""
    p = C.order
    zmask = center(G).mask
    if into_frattini:
        zmask &= frattini(G).mask
    out = []
    for z in mask_to_elements(zmask):
        if G.element_order(z) != p:
            continue
        images = [0]
        cur = z
        for _ in range(p - 1):
            images.append(cur)
            cur = G.mul(cur, z)
        out.append(GroupHom(C, G, tuple(images), _validate=False))
    out.sort(key=lambda h: h.images)
    return out


def hat_basis_prime(G: FiniteGroup, C: FiniteGroup) -> List[HatGenerator]:
    """Generators of the quotient algebra for a prime fibre: X[t, sigma]
    for every character t and outer representative sigma, plus Y[omega,
    zeta] for every outer representative and fibre embedding into the
    center-intersect-Frattini subgroup (only possible when the prime
    divides the center's order)."""
    _require_prime_fibre(C)
    auts = automorphisms(G)
    gens = [HatGenerator("X", G, C, t=t, sigma=s)
            for t in homomorphisms(G, C)
            for s in auts.out_representatives]
    if center(G).order % C.order == 0:
        gens.extend(HatGenerator("Y", G, C, omega=w, zeta=z)
                    for w in auts.out_representatives
                    for z in _fibre_embeddings(G, C))
    return gens


def hat_generator_class(gen: HatGenerator) -> TransitiveFibredBiset:
    """The canonical transitive class over G x G attached to a generator."""
    G, C = gen.group, gen.fibre
    emb = product_embedding(G, G)
    cinv = C.inverses
    if gen.variant == "X":
        t, sigma = gen.t, gen.sigma
        pairs = sorted((emb.encode(sigma.images[g], g), cinv[t.images[g]])
                       for g in range(G.order))
    else:
        omega, zeta = gen.omega, gen.zeta
        items = {}
        for g in range(G.order):
            wg = omega.images[g]
            for c in range(C.order):
                e = emb.encode(G.mul(wg, zeta.images[c]), g)
                items[e] = cinv[c]
        pairs = sorted(items.items())
    mask = 0
    for e, _ in pairs:
        mask |= 1 << e
    mask, delta = _canonical_raw(emb.ambient, mask,
                                 tuple(c for _, c in pairs))
    return _class_from_raw(G, G, C, mask, delta, canonical=True)


def y_type_class(G: FiniteGroup, C: FiniteGroup, omega: GroupHom,
                 zeta: GroupHom) -> TransitiveFibredBiset:
    """The class of {(omega(g) zeta(c), g)} with character c -> c^-1, for
    any injective zeta into the center (not necessarily Frattini-bound)."""
    gen = HatGenerator("Y", G, C, omega=omega, zeta=zeta)
    return hat_generator_class(gen)


def frattini_criterion(G: FiniteGroup, C: FiniteGroup,
                       zeta: GroupHom) -> bool:
    """Whether every character G -> C kills the image of zeta."""
    return all(all(mu.images[z] == 0 for z in zeta.images[1:])
               for mu in homomorphisms(G, C))


def _out_rep_lookup(G: FiniteGroup) -> dict:
    """Map from any automorphism's image tuple to its coset representative."""
    cached = G._cache.get("out_rep_lookup")
    if cached is None:
        auts = automorphisms(G)
        cached = {}
        for rep in auts.out_representatives:
            for inner in auts.inner:
                composite = tuple(rep.images[inner.images[g]]
                                  for g in range(G.order))
                cached[composite] = rep
        G._cache["out_rep_lookup"] = cached
    return cached


def _hom_product(G: FiniteGroup, C: FiniteGroup, *homs) -> tuple:
    """Pointwise product of maps G -> C, as an image tuple."""
    out = []
    for g in range(G.order):
        v = 0
        for h in homs:
            v = C.mul(v, h[g])
        out.append(v)
    return tuple(out)


def hat_multiply(a: HatGenerator, b: HatGenerator) -> HatElement:
    """Product of two generators, re-canonicalized to basis symbols.

    X.X always lands on an X generator; Y.Y survives only when the left
    omega transports the right zeta onto the left one; the mixed products
    survive exactly when an induced self-map (of the fibre for X.Y, of
    the group for Y.X) is an automorphism.
    """
    if a.group is not b.group or a.fibre is not b.fibre:
        raise GroupError("generators live over different groups")
    G, C = a.group, a.fibre
    _require_prime_fibre(C)
    reps = _out_rep_lookup(G)

    if a.variant == "X" and b.variant == "X":
        t1, s1 = a.t.images, a.sigma.images
        t2, s2 = b.t.images, b.sigma.images
        t = tuple(C.mul(t1[s2[g]], t2[g]) for g in range(G.order))
        sigma = reps[tuple(s1[s2[g]] for g in range(G.order))]
        return HatElement.of(HatGenerator(
            "X", G, C, t=GroupHom(G, C, t, _validate=False), sigma=sigma))

    if a.variant == "Y" and b.variant == "Y":
        w, z = a.omega.images, a.zeta.images
        al, ch = b.omega.images, b.zeta.images
        if tuple(w[ch[c]] for c in range(C.order)) != z:
            return HatElement.zero()
        omega = reps[tuple(w[al[g]] for g in range(G.order))]
        return HatElement.of(HatGenerator("Y", G, C, omega=omega,
                                          zeta=a.zeta))

    if a.variant == "X" and b.variant == "Y":
        t, s = a.t.images, a.sigma.images
        w, z = b.omega.images, b.zeta.images
        r = tuple(C.mul(t[z[c]], c) for c in range(C.order))
        if len(set(r)) != C.order:
            return HatElement.zero()
        r_inv = [0] * C.order
        for c, rc in enumerate(r):
            r_inv[rc] = c
        s_map = tuple(G.mul(w[g], z[r_inv[t[w[g]]]])
                      for g in range(G.order))
        if len(set(s_map)) != G.order:
            raise GroupError("induced group map failed to be bijective")
        omega = reps[tuple(s[s_map[g]] for g in range(G.order))]
        zeta = tuple(s[z[r_inv[c]]] for c in range(C.order))
        return HatElement.of(HatGenerator(
            "Y", G, C, omega=omega,
            zeta=GroupHom(C, G, zeta, _validate=False)))

    # Y . X
    w, z = a.omega.images, a.zeta.images
    t, s = b.t.images, b.sigma.images
    m = tuple(G.mul(w[s[g]], z[t[g]]) for g in range(G.order))
    if len(set(m)) != G.order:
        return HatElement.zero()
    omega = reps[m]
    return HatElement.of(HatGenerator("Y", G, C, omega=omega, zeta=a.zeta))


def hat_multiply_elements(x: HatElement, y: HatElement) -> HatElement:
    out = HatElement.zero()
    for g1, v1 in x.coefficients.items():
        for g2, v2 in y.coefficients.items():
            out = out + hat_multiply(g1, g2).scaled(v1 * v2)
    return out


def transport_hat_generator(gen: HatGenerator,
                            phi: GroupHom) -> HatGenerator:
    """Move a generator along an isomorphism phi: G -> H."""
    if not phi.is_bijective or phi.domain is not gen.group:
        raise GroupError("transport needs an isomorphism out of the "
                         "generator's group")
    H = phi.codomain
    reps = _out_rep_lookup(H)
    phi_inv = [0] * H.order
    for g in range(gen.group.order):
        phi_inv[phi.images[g]] = g
    if gen.variant == "X":
        t = tuple(gen.t.images[phi_inv[h]] for h in range(H.order))
        sigma = reps[tuple(phi.images[gen.sigma.images[phi_inv[h]]]
                           for h in range(H.order))]
        return HatGenerator("X", H, gen.fibre,
                            t=GroupHom(H, gen.fibre, t, _validate=False),
                            sigma=sigma)
    omega = reps[tuple(phi.images[gen.omega.images[phi_inv[h]]]
                       for h in range(H.order))]
    zeta = tuple(phi.images[z] for z in gen.zeta.images)
    return HatGenerator("Y", H, gen.fibre, omega=omega,
                        zeta=GroupHom(gen.fibre, H, zeta, _validate=False))


def verify_hat_vs_quotient(G: FiniteGroup, C: FiniteGroup,
                           catalog_bound: int = 15,
                           check: bool = False) -> dict:
    """Check the generator product rules against the ring: multiply the
    attached classes with compose, drop ideal summands, and compare with
    hat_multiply on every generator pair.  With ``check`` every
    composition is also cross-checked against the orbit oracle."""
    gens = hat_basis_prime(G, C)
    classes = {g: hat_generator_class(g) for g in gens}
    by_raw = {cls.raw: g for g, cls in classes.items()}
    if len(by_raw) != len(gens):
        raise GroupError("generator classes are not distinct")
    mismatches = []
    for a in gens:
        ea = element_of(classes[a])
        for b in gens:
            predicted = hat_multiply(a, b)
            composed = compose(ea, element_of(classes[b]), check=check)
            reduced: Dict[HatGenerator, Fraction] = {}
            unknown = []
            for cls, coeff in composed.terms.items():
                if is_in_ideal(cls, catalog_bound) is not None:
                    continue
                gen = by_raw.get(cls.raw)
                if gen is None:
                    unknown.append(cls)
                else:
                    reduced[gen] = (reduced.get(gen, Fraction(0))
                                    + Fraction(coeff))
            if unknown or HatElement(reduced) != predicted:
                mismatches.append({
                    "left": a.describe(),
                    "right": b.describe(),
                    "predicted": repr(predicted),
                    "reduced": repr(HatElement(reduced)),
                    "unknown_summands": [c.describe() for c in unknown],
                })
    return {
        "group": G.name,
        "fibre": C.name,
        "generators": len(gens),
        "pairs": len(gens) ** 2,
        "mismatches": mismatches,
        "ok": not mismatches,
    }


def seed_index(catalog: List[FiniteGroup], C: FiniteGroup) -> List[dict]:
    """Index data of the classification for a prime fibre: for each group
    the parametrizing algebra with its dimension and generator census.
    (Only the index side; no module theory of the algebras themselves.)"""
    _require_prime_fibre(C)
    out = []
    for G in catalog:
        gens = hat_basis_prime(G, C)
        n_x = sum(1 for g in gens if g.variant == "X")
        n_y = len(gens) - n_x
        algebra = ("group algebra of Hom(G,C) x| Out(G)" if n_y == 0 else
                   "R[Out(G) x Y_G] (+) group algebra of Hom(G,C) x| Out(G)")
        out.append({
            "group": G.name,
            "order": G.order,
            "algebra": algebra,
            "dimension": len(gens),
            "x_generators": n_x,
            "y_generators": n_y,
        })
    return out


# ---------------------------------------------------------------------------
# the counterexample, end to end


def counterexample_verify(catalog_bound: int = 7) -> dict:
    """Build the order-4 fibre example over the quaternion and dihedral
    groups of order 8 and check every step: projections and kernels, the
    closed form of W = X o X-op, idempotency, and the exhaustive absence
    of any factorization through a smaller group (on both sides).

    Returns a step-by-step report; raises VerificationError on the first
    failing step."""
    from .groups import _extend_hom, cyclic, dihedral, quaternion8
    from . import goursat

    steps = []

    def step(name, ok, detail=""):
        steps.append({"name": name, "ok": bool(ok), "detail": detail})
        if not ok:
            raise VerificationError(name, detail)

    C = cyclic(4)
    G = quaternion8()
    H = dihedral(8)
    emb = product_embedding(G, H)
    gens = [emb.encode(1, 1), emb.encode(4, 4)]  # (x,a), (y,b)
    D = emb.ambient.generated_subgroup(gens)
    step("subgroup D = <(x,a),(y,b)>", len(D) == 16, f"|D| = {len(D)}")

    images = _extend_hom(emb.ambient, D.elements, gens, C, (2, 3))
    step("character delta((x,a)) = c^2, delta((y,b)) = c^-1",
         images is not None, "generator assignment extends to D")
    delta = GroupHom(D, C, tuple(images[x] for x in D.elements),
                     _validate=False)
    val = delta.apply(emb.encode(2, 0))
    step("delta(x^2, 1) = c^2 != 1", val == 2, f"value index {val}")

    p1 = goursat.projection(emb, D, (1,))
    p2 = goursat.projection(emb, D, (2,))
    k1 = goursat.kernel_part(emb, D, (1,))
    k2 = goursat.kernel_part(emb, D, (2,))
    step("p1(D) = G and p2(D) = H",
         p1.order == G.order and p2.order == H.order,
         f"|p1| = {p1.order}, |p2| = {p2.order}")
    step("k1(D) = <x^2>", [G.label(x) for x in k1.elements] == ["1", "x2"],
         str([G.label(x) for x in k1.elements]))
    step("k2(D) = <a^2>", [H.label(x) for x in k2.elements] == ["1", "a2"],
         str([H.label(x) for x in k2.elements]))

    X = canonicalize(TransitiveFibredBiset(G, H, C, D, delta,
                                           _validate=False))
    Xop = opposite(X)
    W = compose(element_of(X), element_of(Xop), check=True)

    embGG = product_embedding(G, G)
    dmap = delta.as_map()
    pairs = sorted((embGG.encode(g1, g2),
                    dmap[emb.encode(G.mul(g1, G.inv(g2)), 0)])
                   for g1 in range(G.order) for g2 in range(G.order)
                   if k1.contains(G.mul(g1, G.inv(g2))))
    closed = canonicalize(transitive_fibred_biset(
        G, G, C, [p[0] for p in pairs], [p[1] for p in pairs]))
    step("W = X o X-op matches the closed form over D' = "
         "{(g1,g2) : g1 g2^-1 in <x^2>}",
         W == element_of(closed), f"{len(W.terms)} term(s)")
    step("W o W = W", is_idempotent(W), "idempotent")

    kats = _catalog_below(G.order, catalog_bound)
    step("catalog covers all orders below 8", len(kats) == 9,
         ", ".join(K.name for K in kats))
    wcls = next(iter(W.terms))
    witness = is_in_ideal(wcls, catalog_bound)
    step("W does not factor through any group of order < 8",
         witness is None,
         "searched " + ", ".join(K.name for K in kats))

    WH = compose(element_of(Xop), element_of(X), check=True)
    step("W_H = X-op o X is idempotent over H x H", is_idempotent(WH),
         f"{len(WH.terms)} term(s)")
    whcls = next(iter(WH.terms))
    witness_h = is_in_ideal(whcls, catalog_bound)
    step("W_H does not factor through any group of order < 8",
         witness_h is None,
         "searched " + ", ".join(K.name for K in kats))

    return {
        "ok": True,
        "fibre": C.name,
        "left_group": G.name,
        "right_group": H.name,
        "searched_groups": [K.name for K in kats],
        "ideal_membership_criterion":
            "class occurs as a summand of a single composition a o b "
            "through a group of smaller order",
        "steps": steps,
    }
