"""Antipode computations: cross-validation of the universal alternating sum,
the one-sided recursions, and the closed forms; convolution identities;
sign behavior on primitives; the cancellation-freeness audit for graphs."""

import pytest

from species_forge import build_model
from species_forge.antipode import (
    antipode,
    antipode_family,
    closed_form,
    closed_term_count,
    has_closed_form,
    takeuchi_column,
    verify_antipode,
)
from species_forge.exactlin import LinComb, LinMap
from species_forge.models import basis_change, q_view
from species_forge.kernels import popcount
from species_forge.setcomb import decode_comp, decode_partition, full_mask, submasks
from species_forge.species import NotHopfError, component_map
from species_forge.titsops import mu_pair, primitive_part

E = build_model("E")
L = build_model("L")
Pi = build_model("Pi")
G = build_model("G")
Sigma = build_model("Sigma")

MODELS_N3 = ("E", "L", "Lq:2", "Pi", "Sigma", "Sigmaq:2", "G")


def test_takeuchi_examples():
    assert antipode(E, 3)(full_mask(3)) == LinComb.term(full_mask(3), -1)
    s = antipode(Pi, 2)
    assert s((3,)) == LinComb({(3,): -1, (1, 2): 2})
    s = antipode(G, 2)
    assert s(1) == LinComb({1: -1, 0: 2})


def test_closed_form_examples():
    lq = build_model("Lq:2")
    assert closed_form(lq, decode_comp("0|1|2"), 3) == LinComb.term(decode_comp("2|1|0"), -8)
    assert closed_form(L, decode_comp("0|1"), 2) == LinComb.term(decode_comp("1|0"), 1)
    # one-block composition: alternating sum over all refinements of itself
    sg = closed_form(Sigma, (7,), 3)
    assert sg[(7,)] == -1 and sg[decode_comp("0|1|2")] == -1
    assert len(sg) == 13


def test_q_closed_form_examples():
    qsig = q_view(Sigma)
    assert closed_form(qsig, decode_comp("0|12"), 3) == LinComb.term(decode_comp("12|0"), 1)
    assert closed_form(qsig, (7,), 3) == LinComb.term((7,), -1)
    qpi = q_view(Pi)
    assert closed_form(qpi, decode_partition("01.2"), 3) == LinComb.term(decode_partition("01.2"), 1)
    qg = q_view(G)
    assert closed_form(qg, 1, 2) == LinComb.term(1, -1)  # one component
    assert closed_form(qg, 0, 2) == LinComb.term(0, 1)  # two isolated vertices


@pytest.mark.parametrize("name", MODELS_N3)
def test_method_agreement(name):
    model = build_model(name)
    fams = {m: antipode_family(model, 3, m) for m in ("takeuchi", "mm-left", "mm-right")}
    if has_closed_form(model):
        fams["closed"] = antipode_family(model, 3, "closed")
    for n in range(4):
        maps = [f[n] for f in fams.values()]
        assert all(m == maps[0] for m in maps), (name, n)


@pytest.mark.parametrize("name", ("Pi", "G", "Sigma"))
def test_q_basis_antipode_matches_conjugated(name):
    model = build_model(name)
    view = q_view(model)
    for n in range(4):
        sq = antipode(model, n, "closed", basis="Q")
        sh = antipode(model, n, "takeuchi")
        for key in view.basis(n):
            hx = basis_change(model, "Q", "H", LinComb.term(key), n)
            conj = basis_change(model, "H", "Q", sh(hx), n)
            assert sq(key) == conj, (name, n, key)


def test_antipode_is_involution_on_bicommutative_models():
    for name in ("E", "Pi", "G"):
        model = build_model(name)
        for n in range(4):
            s = antipode(model, n)
            assert s.compose(s) == LinMap.identity(model.basis(n))
    # cocommutative but noncommutative models are involutive too
    for name in ("L", "Sigma"):
        model = build_model(name)
        for n in range(4):
            s = antipode(model, n)
            assert s.compose(s) == LinMap.identity(model.basis(n))


def test_antipode_reverses_products():
    for name in ("L", "Sigmaq:2", "Pi"):
        model = build_model(name)
        q = model.q
        for n in range(4):
            fam = antipode_family(model, n, "takeuchi")
            full = full_mask(n)
            for S in submasks(full):
                T = full ^ S
                braid = q ** (popcount(S) * popcount(T))
                sS = component_map(model, fam[popcount(S)], S)
                sT = component_map(model, fam[popcount(T)], T)
                for x in model.basis_on(S):
                    for y in model.basis_on(T):
                        lhs = fam[n](model.product(S, T, x, y))
                        rhs = mu_pair(model, T, S, sT(LinComb.term(y)),
                                      sS(LinComb.term(x))).scale(braid)
                        assert lhs == rhs, (name, n, S, T)


def test_primitives_are_negated():
    for name in ("L", "Pi", "G", "Sigma"):
        model = build_model(name)
        for n in range(1, 4):
            s = antipode(model, n)
            for v in primitive_part(model, n):
                assert s(v) == v.scale(-1)


def test_verify_antipode():
    assert verify_antipode(Pi, 4) == []
    assert verify_antipode(Sigma, 3) == []
    bad = verify_antipode(L, 2, candidate=LinMap.identity(L.basis(2)))
    assert bad


def test_graph_closed_form_is_cancellation_free():
    # term count of the closed form equals the surviving-term count of the
    # exactly-cancelled alternating sum
    for n in range(4 + 1):
        for g in G.basis(n):
            col = takeuchi_column(G, n, g) if n else LinComb.term(g)
            assert closed_term_count(G, g, n) == len(col.terms)
            assert closed_form(G, g, n) == col


def test_not_hopf_refusal():
    hat = build_model("SigmaHat:3")
    with pytest.raises(NotHopfError):
        antipode(hat, 2)
    with pytest.raises(NotHopfError):
        closed_form(hat, ((0, 1),), 1)


def test_degree_zero_antipode_is_identity():
    for name in MODELS_N3:
        model = build_model(name)
        assert antipode(model, 0) == LinMap.identity(model.basis(0))
