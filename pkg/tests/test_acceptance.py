"""Acceptance gate: ten numbered end-to-end criteria, one report line each.

Every check is exact (tolerance zero).  Expected homology values were frozen
from the Smith normal form oracle applied to the unreduced boundary matrices;
expected ranks were hand-counted from the matchings.  Run directly
(`python tests/test_acceptance.py`) or under pytest; either way the scoreboard
lists one PASS/FAIL line per criterion.
"""

import random
import sys
from contextlib import contextmanager

import corpus
from equimorse import (
    MatchingValidationError,
    ZZ,
    Zmod,
    build_cover_graph,
    check_complex,
    check_orbit_incomparability,
    compare,
    contraction_homotopy,
    greedy_equivariant_match,
    homology,
    ingest_simplicial,
    reduce,
    trivial_action,
    validate,
    verify_weight_preservation,
)
from equimorse.chains import ChainComplex
from equimorse.io import SimplicialInput
from equimorse.matchings import Matching

RESULTS = {}
SEED = 20260818
RANDOM_CASES = 220  # criterion 9 requires at least 200


@contextmanager
def criterion(num, name):
    try:
        yield
    except BaseException:
        RESULTS[num] = (name, False)
        raise
    RESULTS[num] = (name, True)


_RUNS = None


def corpus_runs():
    """(name, C, G, M, result) for every fixed instance, computed once.

    Each instance gets its greedy matching; the two hexagon actions also get
    the hand-picked matchings whose expected ranks are frozen below.
    """
    global _RUNS
    if _RUNS is not None:
        return _RUNS
    runs = []
    for name, C, G in corpus.corpus_with_actions():
        M = greedy_equivariant_match(C, G)
        assert validate(C, G, M).all_ok(), name
        runs.append((name, C, G, M, reduce(C, G, M)))
    C, G = corpus.hexagon_z2()
    M = corpus.match(C, *corpus.HEX_Z2_PAIRS)
    runs.append(("hexagon_z2_hand", C, G, M, reduce(C, G, M)))
    C, G = corpus.hexagon_z3()
    M = corpus.match(C, *corpus.HEX_Z3_PAIRS)
    runs.append(("hexagon_z3_hand", C, G, M, reduce(C, G, M)))
    _RUNS = runs
    return runs


def test_criterion_01_chain_axiom():
    with criterion(1, "chain axiom holds on inputs, residuals, and C^M"):
        for name, C, G, M, result in corpus_runs():
            assert check_complex(C) == [], name
            for step in result.steps:
                assert check_complex(step.residual) == [], (name, step.index)
            assert check_complex(result.morse_complex) == [], name


def test_criterion_02_equivariance():
    with criterion(2, "group actions survive reduction and commute with iso"):
        cases = [
            (corpus.hexagon_z2(), corpus.HEX_Z2_PAIRS),
            (corpus.hexagon_z3(), corpus.HEX_Z3_PAIRS),
            ((corpus.hexagon_z6()), None),  # greedy (empty) matching
        ]
        for (C, G), pairs in cases:
            M = (
                corpus.match(C, *pairs)
                if pairs is not None
                else greedy_equivariant_match(C, G)
            )
            result = reduce(C, G, M)
            assert result.morse_action.verify_g_map() == []
            iso = result.iso
            DG = result.decomposition_action
            for (gname, g), (_, dg) in zip(G.generators, DG.generators):
                for b in C.all_elements():
                    moved = iso.apply(G.act_chain(g, C.chain(b.degree, {b.label: 1})))
                    assert moved == DG.act_chain(dg, iso.column(b)), (gname, b)


def test_criterion_03_rank_bookkeeping():
    with criterion(3, "rank(C^M_n) = rank(C_n) - matched_n; hexagon values"):
        for name, C, G, M, result in corpus_runs():
            for n in C.degrees():
                assert result.morse_complex.rank(n) == C.rank(n) - M.matched_count(n), (
                    name,
                    n,
                )
        by_name = {name: r for name, _, _, _, r in corpus_runs()}
        assert by_name["hexagon_z2_hand"].morse_complex.ranks() == {0: 2, 1: 2}
        assert by_name["hexagon_z3_hand"].morse_complex.ranks() == {0: 3, 1: 3}


def test_criterion_04_decomposition_identity():
    with criterion(4, "iso is an invertible chain map onto C^M (+) T"):
        for name, C, G, M, result in corpus_runs():
            iso, inv = result.iso, result.iso_inverse
            assert iso.is_chain_map(), name
            assert inv.is_chain_map(), name
            assert inv.compose(iso).is_identity(), name
            assert iso.compose(inv).is_identity(), name
            assert result.decomposition.total_rank() == C.total_rank(), name


def test_criterion_05_homology_invariance():
    with criterion(5, "homology of C^M equals homology of C; frozen values"):
        for name, C, G, M, result in corpus_runs():
            ok, diff = compare(C, result.morse_complex)
            assert ok, (name, diff)
        hexa = homology(corpus.hexagon())
        assert (hexa.betti(0), hexa.betti(1)) == (1, 1)
        rp2_z = homology(corpus.rp2())
        assert rp2_z.betti(1) == 0 and rp2_z.torsion(1) == (2,)
        rp2_f2 = homology(corpus.rp2(Zmod(2)))
        assert (rp2_f2.betti(0), rp2_f2.betti(1), rp2_f2.betti(2)) == (1, 1, 1)
        torus = homology(corpus.torus())
        assert (torus.betti(0), torus.betti(1), torus.betti(2)) == (1, 2, 1)


def test_criterion_06_acyclic_pieces():
    with criterion(6, "piece blocks invert, contractions check, ranks add up"):
        for name, C, G, M, result in corpus_runs():
            for piece in result.pieces:
                P = contraction_homotopy(piece)  # raises unless both products = I
                assert len(P) == piece.rank(), name
                T = piece.to_complex(C.ring)
                prof = homology(T)
                assert all(
                    prof.betti(n) == 0 and prof.torsion(n) == () for n in T.degrees()
                ), name
            for n in C.degrees():
                orbit_wise = sum(p.rank_in_degree(n) for p in result.pieces)
                assert orbit_wise == M.matched_count(n), (name, n)
                assert result.t_complex.rank(n) == orbit_wise, (name, n)


def test_criterion_07_weight_preservation():
    with criterion(7, "covering weights between survivors keep their values"):
        for name, C, G, M, result in corpus_runs():
            before = C
            for step in result.steps:
                assert verify_weight_preservation(step, before, step.residual) == [], (
                    name,
                    step.index,
                )
                before = step.residual


def test_criterion_08_negative_cases():
    with criterion(8, "cyclic, inequivariant, and non-unit matchings rejected"):
        # All four vertex-edge pairs of the square close a directed cycle.
        C = corpus.square()
        M = corpus.match(C, ("v0", "e01"), ("v1", "e12"), ("v2", "e23"), ("v3", "e30"))
        rep = validate(C, trivial_action(C), M)
        assert not rep.acyclic_ok
        witness = [b.label for b in rep.witnesses["acyclic_ok"]]
        assert witness == ["v0", "e01", "v1", "e12", "v2", "e23", "v3", "e30", "v0"]
        try:
            reduce(C, trivial_action(C), M)
        except MatchingValidationError as exc:
            assert not exc.report.acyclic_ok
        else:
            raise AssertionError("cyclic matching was accepted")

        # One pair of a two-pair orbit: the missing translate is the witness.
        H, G = corpus.hexagon_z2()
        rep = validate(H, G, corpus.match(H, ("v1", "e01")))
        assert not rep.equivariant_ok
        (gen, (ga, gb)) = rep.witnesses["equivariant_ok"][0]
        assert (ga.label, gb.label) == ("v4", "e34")

        # Weight 2 is not a unit over the integers.
        W = ChainComplex(ZZ, {0: ["a"], 1: ["b"]}, {1: {"b": {"a": 2}}})
        MW = Matching([(W.element(0, "a"), W.element(1, "b"))])
        rep = validate(W, trivial_action(W), MW)
        assert not rep.invertible_ok
        (a, b, w) = rep.witnesses["invertible_ok"][0]
        assert w.value == 2


def _random_simplex_subcomplex(rng):
    verts = [str(i) for i in range(6)]
    n_facets = rng.randint(2, 8)
    facets = []
    for _ in range(n_facets):
        k = rng.choice([1, 2, 2, 3, 3, 3, 4, 4, 4, 5])
        facets.append(sorted(rng.sample(verts, k), key=verts.index))
    return ingest_simplicial(
        SimplicialInput(vertices=verts, facets=facets, ring=ZZ)
    )


def _random_polygon_with_rotation(rng):
    n = rng.choice([6, 8, 9, 10, 12, 14, 15, 16, 18, 20, 21, 22, 24])
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    order = rng.choice(divisors)
    C = corpus.cycle(n)
    G = corpus.rotation_action(C, n, n // order)
    return C, G


def _check_case(C, G, M, result, with_action):
    # criterion 1: chain axiom
    assert check_complex(result.morse_complex) == []
    for step in result.steps:
        assert check_complex(step.residual) == []
    # criterion 3: rank bookkeeping
    for n in C.degrees():
        assert result.morse_complex.rank(n) == C.rank(n) - M.matched_count(n)
    # criterion 4: decomposition identity
    assert result.iso.is_chain_map()
    assert result.iso_inverse.compose(result.iso).is_identity()
    assert result.iso.compose(result.iso_inverse).is_identity()
    # criterion 5: homology invariance
    ok, diff = compare(C, result.morse_complex)
    assert ok, diff
    # criterion 2 on the group cases
    if with_action:
        assert validate(C, G, M).all_ok()
        assert result.morse_action.verify_g_map() == []
        DG = result.decomposition_action
        for (_, g), (_, dg) in zip(G.generators, DG.generators):
            for b in C.all_elements():
                moved = result.iso.apply(
                    G.act_chain(g, C.chain(b.degree, {b.label: 1}))
                )
                assert moved == DG.act_chain(dg, result.iso.column(b))


def test_criterion_09_randomized_properties():
    # The loop asserts criteria 1, 3, 4, 5 itself (plus 2 on the group
    # cases), so the per-step internal verification is switched off to keep
    # the 220 cases inside the time budget.
    with criterion(
        9, f"{RANDOM_CASES} randomized cases uphold criteria 1-5"
    ):
        rng = random.Random(SEED)
        simplex_cases = 120
        polygon_cases = RANDOM_CASES - simplex_cases
        for _ in range(simplex_cases):
            C, G = _random_simplex_subcomplex(rng)
            M = greedy_equivariant_match(C, G)
            result = reduce(C, G, M, check=False)
            _check_case(C, G, M, result, with_action=False)
        for _ in range(polygon_cases):
            C, G = _random_polygon_with_rotation(rng)
            M = greedy_equivariant_match(C, G)
            result = reduce(C, G, M, check=False)
            _check_case(C, G, M, result, with_action=True)


def test_criterion_10_orbit_incomparability():
    with criterion(10, "same-orbit elements are incomparable in the cover order"):
        for name, C, G in corpus.corpus_with_actions():
            assert G.verify_g_map() == [], name
            P = build_cover_graph(C)
            assert check_orbit_incomparability(P, G) == [], name


def _main():
    tests = [
        (num, fn)
        for num, fn in enumerate(
            [
                test_criterion_01_chain_axiom,
                test_criterion_02_equivariance,
                test_criterion_03_rank_bookkeeping,
                test_criterion_04_decomposition_identity,
                test_criterion_05_homology_invariance,
                test_criterion_06_acyclic_pieces,
                test_criterion_07_weight_preservation,
                test_criterion_08_negative_cases,
                test_criterion_09_randomized_properties,
                test_criterion_10_orbit_incomparability,
            ],
            start=1,
        )
    ]
    failures = 0
    for num, fn in tests:
        try:
            fn()
        except BaseException as exc:  # report and continue
            failures += 1
            detail = f" ({exc})" if str(exc) else ""
            print(f"criterion {num:2d}: FAIL  {RESULTS[num][0]}{detail}")
            continue
        print(f"criterion {num:2d}: PASS  {RESULTS[num][0]}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(_main())
