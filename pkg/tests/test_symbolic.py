import cmath
import random

import pytest
from hypothesis import given, strategies as st

from confhad.symbolic import (
    Gaussian,
    LaurentPoly,
    Monomial,
    ONE,
    entry_str,
    parse_entry,
)

SYMS = "abcdefg"


def mono(text):
    m = parse_entry(text)
    assert m is not None
    return m


monomials = st.builds(
    Monomial,
    st.integers(min_value=0, max_value=3),
    st.lists(
        st.tuples(st.sampled_from(SYMS), st.integers(min_value=-3, max_value=3)),
        max_size=4,
    ),
)


class TestMonomial:
    def test_mul_examples(self):
        assert mono("i*a") * mono("i*a") == mono("-a^2")
        assert mono("b*a^-1") * mono("a") == mono("b")

    def test_mul_cancellation_against_float_oracle(self):
        # (-i*c/a) * (i*a/c) should be exactly 1; check the claim numerically
        x, y = mono("-i*c*a^-1"), mono("i*a*c^-1")
        a, c = 2.0, 3.0
        lhs = (-1j * c / a) * (1j * a / c)
        assert abs(lhs - 1) < 1e-15
        assert x * y == ONE

    def test_reciprocal_examples(self):
        assert mono("i*a").reciprocal() == mono("-i*a^-1")
        assert ONE.reciprocal() == ONE
        assert mono("-b*a^-1").reciprocal() == mono("-a*b^-1")

    @given(monomials)
    def test_reciprocal_inverts(self, m):
        assert m * m.reciprocal() == ONE

    @given(monomials, monomials)
    def test_mul_commutes(self, x, y):
        assert x * y == y * x

    @given(monomials, monomials, monomials)
    def test_mul_associates(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    def test_pow_and_neg(self):
        assert mono("i*a") ** 2 == mono("-a^2")
        assert -mono("b") == mono("-b")
        assert mono("a") ** 0 == ONE

    def test_substitute(self):
        m = mono("b*a^-1")
        assert m.substitute({"a": mono("i"), "b": mono("-1")}) == mono("i")
        # unmapped symbols stay formal
        assert m.substitute({"b": mono("c")}) == mono("c*a^-1")

    def test_rejects_bad_symbols(self):
        with pytest.raises(ValueError):
            Monomial(0, (("i", 1),))
        with pytest.raises(ValueError):
            Monomial(0, (("A", 1),))


class TestEvaluation:
    def test_eval_complex_direct(self):
        v = mono("a").eval_complex({"a": cmath.exp(1j * cmath.pi / 3)})
        assert abs(v - complex(0.5, 3**0.5 / 2)) < 1e-15

    def test_eval_root_log_matches_float(self):
        # b/a at a=i, b=-1 in 4th roots: -1/i = i
        k, order = mono("b*a^-1").eval_root_log({"a": 1, "b": 2}, 4)
        assert (k, order) == (1, 4)
        numeric = mono("b*a^-1").eval_complex({"a": 1j, "b": -1})
        assert abs(numeric - 1j) < 1e-15

    def test_eval_cyc_ring_values(self):
        from confhad.cyclotomic import CycValue

        value = mono("b*a^-1").eval_cyc({"a": CycValue.root(4, 1), "b": CycValue.root(4, 2)})
        assert value == CycValue.root(4, 1)
        # mixed orders lift to the common ring
        value = mono("a*b").eval_cyc({"a": CycValue.root(3, 1), "b": CycValue.root(4, 1)})
        assert value == CycValue.root(12, 7)
        with pytest.raises(ValueError):
            mono("a").eval_cyc({"a": CycValue.one(4) + CycValue.one(4)})
        with pytest.raises(KeyError):
            mono("a").eval_cyc({})

    def test_eval_at_all_ones_is_unit(self):
        for text in ("i*a*b^-1", "-c", "a^3"):
            m = mono(text)
            ones = {s: 1 for s in SYMS}
            assert m.eval_complex(ones) == 1j**m.ipow

    def test_eval_errors(self):
        with pytest.raises(KeyError):
            mono("a").eval_complex({})
        with pytest.raises(ValueError):
            mono("a").eval_complex({"a": 0})

    @given(monomials, monomials)
    def test_eval_is_multiplicative(self, x, y):
        rng = random.Random(hash((x, y)) & 0xFFFF)
        assignment = {
            s: cmath.exp(1j * rng.uniform(-3, 3)) for s in SYMS
        }
        lhs = (x * y).eval_complex(assignment)
        rhs = x.eval_complex(assignment) * y.eval_complex(assignment)
        assert abs(lhs - rhs) < 1e-12


class TestParsing:
    @pytest.mark.parametrize(
        "text", ["0", "1", "-1", "i", "-i", "a", "-i*c*a^-1", "b^2", "-a*b*c^-3"]
    )
    def test_round_trip(self, text):
        entry = parse_entry(text)
        assert parse_entry(entry_str(entry)) == entry

    def test_canonical_emit_sorts_symbols(self):
        assert entry_str(parse_entry("c*a^-1*b")) == "a^-1*b*c"

    @pytest.mark.parametrize("text", ["", "i*", "2*a", "a^", "a**b", "x y", "-0"])
    def test_rejects_garbage(self, text):
        with pytest.raises(ValueError):
            parse_entry(text)


class TestLaurentPoly:
    def test_accumulate_examples(self):
        p = LaurentPoly.zero().add_monomial(mono("a"))
        assert p.coefficient((("a", 1),)) == Gaussian(1, 0)
        assert p.add_monomial(mono("-a")).is_zero
        q = p.add_monomial(mono("i*a")).add_monomial(mono("i*a"))
        assert q.coefficient((("a", 1),)) == Gaussian(1, 2)

    def test_canonical_form_drops_zeros(self):
        p = LaurentPoly({(("a", 1),): Gaussian(0, 0)})
        assert p.is_zero and p == LaurentPoly.zero()

    @given(st.lists(monomials, max_size=6), st.lists(monomials, max_size=6))
    def test_addition_commutes(self, xs, ys):
        p = LaurentPoly.zero()
        for x in xs:
            p = p.add_monomial(x)
        q = LaurentPoly.zero()
        for y in ys:
            q = q.add_monomial(y)
        assert p + q == q + p

    @given(st.lists(monomials, min_size=1, max_size=4))
    def test_add_then_subtract_self(self, xs):
        p = LaurentPoly.zero()
        for x in xs:
            p = p.add_monomial(x)
        assert (p - p).is_zero

    def test_multiplication_matches_monomials(self):
        p = LaurentPoly.from_monomial(mono("i*a"))
        q = LaurentPoly.from_monomial(mono("b*a^-1"))
        assert p * q == LaurentPoly.from_monomial(mono("i*b"))

    @given(
        st.lists(monomials, max_size=4),
        st.lists(monomials, max_size=4),
        st.lists(monomials, max_size=3),
    )
    def test_mul_commutes_and_distributes(self, xs, ys, zs):
        def poly(ms):
            p = LaurentPoly.zero()
            for m in ms:
                p = p.add_monomial(m)
            return p

        p, q, r = poly(xs), poly(ys), poly(zs)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r

    def test_str_is_deterministic(self):
        p = LaurentPoly.zero().add_monomial(mono("b")).add_monomial(mono("a"))
        assert str(p) == str(p)
        assert "a" in str(p) and "b" in str(p)
