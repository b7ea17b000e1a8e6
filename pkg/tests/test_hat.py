"""Ideal membership, the quotient algebra, the prime-fibre structure and
the end-to-end counterexample."""

from fractions import Fraction

import pytest

from fibredburnside import hat
from fibredburnside.fibred import (
    canonicalize,
    compose,
    element_of,
    identity_element,
    opposite,
    transitive_basis,
    transitive_fibred_biset,
)
from fibredburnside.groups import (
    GroupError,
    automorphisms,
    cyclic,
    dihedral,
    frattini,
    group_from_spec,
    isomorphism,
    product_embedding,
    small_groups_catalog,
)
from fibredburnside.hat import (
    HatElement,
    counterexample_verify,
    frattini_criterion,
    hat_basis_prime,
    hat_dimension,
    hat_generator_class,
    hat_multiply,
    is_in_ideal,
    seed_index,
    transport_hat_generator,
    verify_hat_vs_quotient,
    y_type_class,
)

from test_fibred import counterexample_class


# -- ideal membership ---------------------------------------------------------


def test_identity_never_factors():
    for spec in ("C2", "C4", "S3"):
        G = group_from_spec(spec)
        ident = next(iter(identity_element(G, cyclic(2)).terms))
        assert is_in_ideal(ident) is None


def test_counterexample_idempotent_not_in_ideal():
    X = counterexample_class()
    W = compose(element_of(X), element_of(opposite(X)))
    (wcls, _), = W.terms.items()
    assert is_in_ideal(wcls, 7) is None


def test_full_product_class_factors(c4, c2):
    emb = product_embedding(c4, c4)
    X = canonicalize(transitive_fibred_biset(
        c4, c4, c2, range(16), [0] * 16))
    w = is_in_ideal(X, 7)
    assert w is not None
    assert w.K.order < 4
    assert hat._witness_matches(X, w)


def test_witnesses_are_valid_on_sample(d8, c2):
    checked = 0
    for X in transitive_basis(d8, d8, c2):
        w = is_in_ideal(X, 7)
        if w is not None:
            assert w.K.order < 8
            assert hat._witness_matches(X, w)
            checked += 1
        if checked >= 12:
            break
    assert checked == 12


def test_ideal_count_matches_basis_split(s3, c2):
    basis = transitive_basis(s3, s3, c2)
    dim, survivors = hat_dimension(s3, c2)
    in_ideal = [X for X in basis if is_in_ideal(X) is not None]
    assert dim + len(in_ideal) == len(basis)
    assert all(X not in in_ideal for X in survivors)


def test_catalog_bound_guard(q8, c2):
    ident = next(iter(identity_element(q8, c2).terms))
    with pytest.raises(Exception):
        is_in_ideal(ident, catalog_bound=5)


# -- hat dimensions -----------------------------------------------------------


def test_hat_dimension_trivial_group(c1, c2):
    dim, basis = hat_dimension(c1, c2)
    assert dim == 1


def test_hat_dimension_c2(c2):
    dim, _ = hat_dimension(c2, c2)
    assert dim == 2
    assert len(hat_basis_prime(c2, c2)) == 2


def test_hat_dimension_c4(c4, c2):
    dim, basis = hat_dimension(c4, c2)
    assert dim == 6
    gens = hat_basis_prime(c4, c2)
    assert len(gens) == 6
    assert sum(1 for g in gens if g.variant == "X") == 4
    assert sum(1 for g in gens if g.variant == "Y") == 2
    assert {hat_generator_class(g).raw for g in gens} == \
        {X.raw for X in basis}


def test_hat_basis_s3(s3, c2):
    gens = hat_basis_prime(s3, c2)
    assert len(gens) == 2
    assert all(g.variant == "X" for g in gens)  # odd center order


def test_hat_basis_q8(q8, c2):
    gens = hat_basis_prime(q8, c2)
    assert len(gens) == 30
    assert sum(1 for g in gens if g.variant == "X") == 24
    assert sum(1 for g in gens if g.variant == "Y") == 6


def test_hat_basis_c4_c3(c4, c3):
    gens = hat_basis_prime(c4, c3)
    assert len(gens) == 2  # one character, two outer classes, no Y part
    assert all(g.variant == "X" for g in gens)


def test_hat_basis_needs_prime_fibre(q8, c4):
    with pytest.raises(GroupError):
        hat_basis_prime(q8, c4)


# -- generator products -------------------------------------------------------


def _identity_generator(G, C):
    gens = hat_basis_prime(G, C)
    for g in gens:
        if g.variant == "X" and g.t.is_trivial() and \
                g.sigma.images == tuple(range(G.order)):
            return g
    raise AssertionError("identity generator missing")


def test_identity_generator_is_neutral(c4, c2):
    one = _identity_generator(c4, c2)
    assert hat_generator_class(one).raw == \
        next(iter(identity_element(c4, c2).terms)).raw
    for g in hat_basis_prime(c4, c2):
        assert hat_multiply(one, g) == HatElement.of(g)
        assert hat_multiply(g, one) == HatElement.of(g)


def test_yy_vanishes_unless_transported(q8, c2):
    gens = [g for g in hat_basis_prime(q8, c2) if g.variant == "Y"]
    for a in gens:
        for b in gens:
            prod = hat_multiply(a, b)
            wz = tuple(a.omega.images[b.zeta.images[c]] for c in range(2))
            if wz == a.zeta.images:
                assert not prod.is_zero()
            else:
                assert prod.is_zero()


def test_xy_survival_example(c4, c2):
    # t the surjection C4 -> C2, zeta into <g^2>: t kills the image, so
    # the induced fibre map is the identity and the product is nonzero
    gens = hat_basis_prime(c4, c2)
    x = next(g for g in gens if g.variant == "X"
             and not g.t.is_trivial()
             and g.sigma.images == (0, 1, 2, 3))
    y = next(g for g in gens if g.variant == "Y"
             and g.omega.images == (0, 1, 2, 3))
    assert tuple(x.t.images[v] for v in y.zeta.images) == (0, 0)
    prod = hat_multiply(x, y)
    assert not prod.is_zero()
    ((res, coeff),) = prod.coefficients.items()
    assert res.variant == "Y" and coeff == Fraction(1)


def test_yy_zero_branch_with_two_embeddings(c3):
    # C9 has two distinct fibre embeddings into its Frattini subgroup, so
    # the transported-embedding condition genuinely fails for mixed pairs
    c9 = cyclic(9)
    gens = [g for g in hat_basis_prime(c9, c3) if g.variant == "Y"]
    zetas = {g.zeta.images for g in gens}
    assert len(zetas) == 2
    ident = [g for g in gens if g.omega.images == tuple(range(9))]
    assert len(ident) == 2
    a, b = ident
    assert hat_multiply(a, b).is_zero()
    assert hat_multiply(b, a).is_zero()
    assert hat_multiply(a, a) == HatElement.of(a)
    assert hat_multiply(b, b) == HatElement.of(b)


def test_hat_multiply_associative_q8(q8, c2):
    gens = hat_basis_prime(q8, c2)
    for a in gens[::5]:
        for b in gens:
            ab = hat_multiply(a, b)
            for c in gens[::7]:
                left = hat.hat_multiply_elements(ab, HatElement.of(c))
                right = hat.hat_multiply_elements(
                    HatElement.of(a), hat_multiply(b, c))
                assert left == right


def test_hat_multiply_associative_on_generators(c4, c2, s3):
    for G in (c4, s3):
        gens = hat_basis_prime(G, c2)
        for a in gens:
            for b in gens:
                ab = hat_multiply(a, b)
                for c in gens:
                    left = hat.hat_multiply_elements(ab, HatElement.of(c))
                    right = hat.hat_multiply_elements(
                        HatElement.of(a), hat_multiply(b, c))
                    assert left == right


def test_verify_hat_vs_quotient_small():
    for spec, pairs in (("C2", 4), ("C4", 36), ("S3", 4)):
        G = group_from_spec(spec)
        report = verify_hat_vs_quotient(G, cyclic(2))
        assert report["ok"], report["mismatches"]
        assert report["pairs"] == pairs


def test_verify_hat_vs_quotient_c3_fibre():
    for spec in ("C3", "S3", "C4"):
        G = group_from_spec(spec)
        report = verify_hat_vs_quotient(G, cyclic(3))
        assert report["ok"], report["mismatches"]


# -- Frattini criterion and Y-class vanishing ----------------------------------


def test_frattini_criterion_matches_membership():
    c2 = cyclic(2)
    for spec in ("C2", "C4", "C2xC2", "Q8", "D8"):
        G = group_from_spec(spec)
        ident = automorphisms(G).out_representatives[0]
        phi_mask = frattini(G).mask
        for zeta in hat._fibre_embeddings(G, c2, into_frattini=False):
            lands_in_phi = all((phi_mask >> z) & 1 for z in zeta.images)
            assert frattini_criterion(G, c2, zeta) == lands_in_phi
            cls = y_type_class(G, c2, ident, zeta)
            witness = is_in_ideal(cls, 7)
            assert (witness is None) == lands_in_phi


# -- seed index ----------------------------------------------------------------


def test_seed_index_small_catalog(c2):
    entries = seed_index(small_groups_catalog(2), c2)
    assert [(e["group"], e["dimension"]) for e in entries] == \
        [("C1", 1), ("C2", 2)]


def test_seed_index_q8_entry(c2):
    entries = seed_index(small_groups_catalog(8), c2)
    by_name = {e["group"]: e for e in entries}
    assert by_name["Q8"]["dimension"] == 30
    assert by_name["Q8"]["y_generators"] == 6
    assert by_name["D8"]["dimension"] == 10


def test_seed_entries_iso_invariant(s3, c2):
    d6 = dihedral(6)
    phi = isomorphism(s3, d6)
    assert phi is not None
    transported = {transport_hat_generator(g, phi).key()
                   for g in hat_basis_prime(s3, c2)}
    native = {g.key() for g in hat_basis_prime(d6, c2)}
    assert transported == native


def test_transport_respects_products(s3, c2):
    d6 = dihedral(6)
    phi = isomorphism(s3, d6)
    gens = hat_basis_prime(s3, c2)
    for a in gens:
        for b in gens:
            direct = hat_multiply(transport_hat_generator(a, phi),
                                  transport_hat_generator(b, phi))
            moved = HatElement({
                transport_hat_generator(g, phi): v
                for g, v in hat_multiply(a, b).coefficients.items()})
            assert direct == moved


# -- the counterexample -------------------------------------------------------


def test_counterexample_verify_passes():
    report = counterexample_verify()
    assert report["ok"]
    assert report["left_group"] == "Q8"
    assert report["right_group"] == "D8"
    assert report["fibre"] == "C4"
    assert len(report["searched_groups"]) == 9
    names = [s["name"] for s in report["steps"]]
    assert any("k1(D) = <x^2>" in n for n in names)
    assert all(s["ok"] for s in report["steps"])


def test_counterexample_contrast_with_prime_fibre(q8, d8, c2):
    # with a prime fibre the same subgroup's idempotent dies in the
    # quotient: no class survives on both sides
    emb = product_embedding(q8, d8)
    D = emb.ambient.generated_subgroup([emb.encode(1, 1), emb.encode(4, 4)])
    from fibredburnside.groups import homomorphisms
    for delta in homomorphisms(D, c2):
        X = canonicalize(
            transitive_fibred_biset(q8, d8, c2, D.elements, delta.images))
        W = compose(element_of(X), element_of(opposite(X)))
        assert all(is_in_ideal(cls, 7) is not None for cls in W.terms)
