import random

import pytest

from confhad import catalog
from confhad.equivalence import (
    EquivalenceClass,
    MonomialTransform,
    are_equivalent,
    conference_fingerprint,
    fingerprint,
    specialize_and_classify,
)
from confhad.matrices import ButsonMatrix, double_hadamard, to_butson
from confhad.verify import check_hadamard


def random_transform(n, m, rng):
    rp = list(range(n))
    cp = list(range(n))
    rng.shuffle(rp)
    rng.shuffle(cp)
    return MonomialTransform(
        m,
        tuple(rp),
        tuple(cp),
        tuple(rng.randrange(m) for _ in range(n)),
        tuple(rng.randrange(m) for _ in range(n)),
    )


H4 = ButsonMatrix(2, [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 1, 1, 0]])


def butson(name):
    return to_butson(catalog.build_verified(name))


class TestFingerprint:
    def test_invariant_under_random_transforms(self):
        rng = random.Random(101)
        for name in ("H12a", "H12f"):
            M = butson(name)
            fp = fingerprint(M)
            for _ in range(10):
                T = random_transform(M.n, M.m, rng)
                assert fingerprint(T.apply(M)) == fp

    def test_real_and_fourth_root_prints_differ(self):
        assert fingerprint(butson("H12a")) != fingerprint(butson("H12f"))

    def test_real_hadamard_values_are_signs(self):
        fp = fingerprint(H4)
        assert fp.m == 2
        assert {k for k, _ in fp.counts} <= {0, 1}

    def test_zero_cells_rejected_in_hadamard_mode(self):
        with pytest.raises(ValueError):
            fingerprint(butson("C6a"))

    def test_conference_variant_skips_zero_quadruples(self):
        fp = conference_fingerprint(butson("C6a"))
        assert fp.zeros > 0
        rng = random.Random(5)
        M = butson("C6f")
        base = conference_fingerprint(M)
        sigma = list(range(6))
        rng.shuffle(sigma)
        T = MonomialTransform(
            4,
            tuple(sigma),
            tuple(sigma),
            tuple(rng.randrange(4) for _ in range(6)),
            tuple(rng.randrange(4) for _ in range(6)),
        )
        assert conference_fingerprint(T.apply(M)) == base

    def test_lines_are_sorted_and_stable(self):
        fp = fingerprint(butson("H12f"))
        assert fp.lines() == fp.lines()
        assert fp.lines()[0].startswith("n=12")


class TestAreEquivalent:
    def test_transformed_copy_found_with_witness(self):
        rng = random.Random(77)
        M = butson("H12a")
        shuffled = random_transform(M.n, M.m, rng).apply(M)
        verdict = are_equivalent(M, shuffled)
        assert verdict.equivalent
        assert verdict.witness.maps(M, shuffled)

    def test_row_negation_is_equivalent(self):
        logs = [list(r) for r in H4.logs]
        logs[2] = [(c + 1) % 2 for c in logs[2]]
        flipped = ButsonMatrix(2, logs)
        verdict = are_equivalent(H4, flipped)
        assert verdict.equivalent

    def test_conference_pair_from_print(self):
        # the b-variant is the a-variant with rows/cols 4,5 swapped
        verdict = are_equivalent(butson("C6a"), butson("C6b"))
        assert verdict.equivalent
        w = verdict.witness
        assert w.row_perm == w.col_perm

    def test_inequivalent_by_fingerprint(self):
        verdict = are_equivalent(butson("H12a"), butson("H12d"))
        assert verdict.inequivalent and verdict.reason == "fingerprint mismatch"

    def test_inequivalent_by_exhausted_search(self):
        # doubled C6d vs the printed class: fingerprints differ already,
        # so force the search path with a transformed pair of distinct classes
        A = to_butson(double_hadamard(catalog.build("C6d")))
        B = butson("H12d")
        verdict = are_equivalent(A, B)
        assert verdict.inequivalent

    def test_unknown_on_tiny_budget(self):
        rng = random.Random(3)
        M = butson("H12f")
        shuffled = random_transform(M.n, M.m, rng).apply(M)
        verdict = are_equivalent(M, shuffled, budget=2)
        assert verdict.status == "unknown"

    def test_skew_cores_inequivalent_by_exhausted_search(self):
        # entrywise conjugates: fingerprints tie, the search decides
        f, g = butson("C6f"), butson("C6g")
        assert conference_fingerprint(f) == conference_fingerprint(g)
        verdict = are_equivalent(f, g)
        assert verdict.inequivalent and verdict.reason == "exhausted search"
        assert verdict.nodes > 0

    def test_hadamard_search_exhausts_on_inequivalent_pair(self):
        # completeness probe for the dephased-anchor search itself
        from math import lcm

        from confhad.equivalence import _Budget, _search_hadamard

        A, B = butson("H12a"), butson("H12d")
        m = lcm(A.m, B.m)
        budget = _Budget(10**8)
        assert _search_hadamard(A.lift(m), B.lift(m), budget) is None
        assert 0 < budget.used < 10**5

    def test_inputs_stored_above_their_minimal_order(self):
        # regression: witness re-verification must accept non-reduced inputs
        wide = butson("H12a").lift(4)
        verdict = are_equivalent(wide, butson("H12a"))
        assert verdict.equivalent and verdict.witness.maps(wide, butson("H12a"))

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ValueError):
            are_equivalent(H4, butson("H12a"))

    def test_mixed_orders_lift_transparently(self):
        real = butson("H12a")
        lifted = real.lift(4)
        assert are_equivalent(real, lifted).equivalent

    def test_completeness_small_order(self):
        rng = random.Random(13)
        for _ in range(25):
            T = random_transform(4, 2, rng)
            assert are_equivalent(H4, T.apply(H4)).equivalent

    def test_verdict_matrix_of_printed_hadamards(self):
        # regression: the seven prints split into three classes
        classes = {"a": 0, "b": 0, "c": 0, "d": 1, "e": 1, "f": 2, "g": 2}
        letters = "abcdefg"
        for i, x in enumerate(letters):
            for y in letters[i + 1 :]:
                verdict = are_equivalent(butson(f"H12{x}"), butson(f"H12{y}"))
                expected = classes[x] == classes[y]
                assert verdict.equivalent == expected, (x, y, verdict.status)
                assert verdict.status != "unknown"


class TestSpecializeAndClassify:
    def test_sign_specializations_of_printed_family(self):
        M = catalog.build_verified("O12a")
        syms = sorted(M.symbols())
        assignments = [
            {s: (bits >> k) & 1 for k, s in enumerate(syms)} for bits in range(64)
        ]
        classes = specialize_and_classify(M, assignments, order=2)
        assert sum(c.size for c in classes) == 64  # every sign choice is Hadamard
        assert len(classes) == 1  # single class (regression)
        assert not classes[0].undecided
        rep = classes[0].representative
        assert check_hadamard(rep)

    def test_all_ones_lands_in_the_printed_class(self):
        M = catalog.build_verified("O12a")
        ones = {s: 0 for s in M.symbols()}
        classes = specialize_and_classify(M, [ones], order=2)
        assert are_equivalent(classes[0].representative, butson("H12a")).equivalent

    def test_tiny_doubled_matrix_single_class(self):
        from confhad.matrices import bordered_circulant, double_orthogonal, scale_columns
        from confhad.symbolic import Monomial

        C2 = bordered_circulant([None])
        scaled = scale_columns(C2, [Monomial.symbol("a"), Monomial.symbol("b")])
        doubled = double_orthogonal(scaled)
        assignments = [{"a": x, "b": y} for x in (0, 1) for y in (0, 1)]
        classes = specialize_and_classify(doubled, assignments, order=2)
        assert len(classes) == 1 and classes[0].size == 4

    def test_rejects_non_orthogonal_input(self):
        from confhad.matrices import SymbolicMatrix

        bad = SymbolicMatrix.from_strings([["1", "1"], ["1", "1"]])
        with pytest.raises(ValueError):
            specialize_and_classify(bad, [{}], order=2)

    def test_in_class_members_are_pairwise_equivalent(self):
        M = catalog.build_verified("O12c")
        syms = sorted(M.symbols())
        rng = random.Random(31)
        assignments = [
            {s: rng.randint(0, 1) for s in syms} for _ in range(6)
        ]
        classes = specialize_and_classify(M, assignments, order=2)
        from confhad.matrices import eval_exact

        for cls in classes:
            for asg in cls.assignments[1:]:
                member = eval_exact(M, asg, order=2)
                assert are_equivalent(member, cls.representative).equivalent
