"""Average character degrees: exact rational arithmetic and the closed forms."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from acdlab.errors import DomainError, InputError
from acdlab.fieldvals import FieldSpec
from acdlab.group import minimal_normal_subgroups, point_stabilizer
from acdlab.stats import AcdQuery, abelian3_formula, acd, ave, bound_f, selected_rows

Q = FieldSpec.rationals()
R = FieldSpec.reals()
C = FieldSpec.complexes()


def zm(m):
    return FieldSpec.cyclotomic(m)


class TestAve:
    def test_examples(self):
        assert ave([1, 2, 3]) == 2
        assert ave([1, 1, 2, 3, 3]) == Fraction(2)
        assert ave([Fraction(1, 2), Fraction(3, 2)]) == 1
        assert ave([5]) == 5

    def test_exactness(self):
        assert ave([1, 1, 3]) == Fraction(5, 3)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            ave([])

    @given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=20))
    def test_between_min_and_max(self, xs):
        a = ave(xs)
        assert min(xs) <= a <= max(xs)

    @given(st.fractions(max_denominator=20), st.integers(min_value=1, max_value=9))
    def test_constant(self, x, n):
        assert ave([x] * n) == x


class TestAcd:
    @pytest.mark.parametrize(
        "text,query,want",
        [
            ("S(4)", None, Fraction(2)),
            ("S(4)", AcdQuery(field=Q), Fraction(2)),
            ("S(4)", AcdQuery(field=R), Fraction(2)),
            ("S(4)", AcdQuery(field=Q, p_filter=2), Fraction(2)),
            ("S(4)", AcdQuery(p_filter=3), Fraction(4, 3)),
            ("F(7,3)", None, Fraction(9, 5)),
            ("F(7,3)", AcdQuery(p_filter=7), Fraction(9, 5)),
            ("F(7,3)", AcdQuery(field=Q), Fraction(1)),
            ("F(7,3)", AcdQuery(field=zm(3)), Fraction(1)),
            ("F(7,3)", AcdQuery(field=zm(7)), Fraction(7, 3)),
            ("F(7,3)", AcdQuery(field=zm(21)), Fraction(9, 5)),
            ("A(5)", None, Fraction(16, 5)),
            ("A(5)", AcdQuery(field=R), Fraction(16, 5)),
            ("A(5)", AcdQuery(field=Q), Fraction(10, 3)),
            ("D(10)", None, Fraction(3, 2)),
            ("D(10)", AcdQuery(field=Q), Fraction(1)),
            ("D(10)", AcdQuery(field=R), Fraction(3, 2)),
            ("D(10)", AcdQuery(field=zm(5), p_filter=5), Fraction(3, 2)),
            ("Q8", None, Fraction(6, 5)),
            ("C(12)", AcdQuery(field=Q), Fraction(1)),
        ],
    )
    def test_known_values(self, cache, text, query, want):
        G, T = cache.pair(text)
        assert acd(G, T, query) == want

    def test_quotient(self, cache):
        G, T = cache.pair("S(4)")
        V = minimal_normal_subgroups(G)[0]
        assert acd(G, T, AcdQuery(quotient_by=V)) == Fraction(4, 3)
        G2, T2 = cache.pair("C(2)*S(3)")
        K = next(H for H in minimal_normal_subgroups(G2) if H.order == 2)
        assert acd(G2, T2, AcdQuery(quotient_by=K)) == Fraction(4, 3)
        assert acd(G2, T2, AcdQuery(quotient_by=K, p_filter=3)) == Fraction(4, 3)

    def test_selected_rows_match_filters(self, cache):
        from acdlab.fieldvals import has_values_in

        G, T = cache.pair("F(11,10)")
        for q in (None, AcdQuery(field=zm(11)), AcdQuery(p_filter=11), AcdQuery(field=Q, p_filter=5)):
            rows = selected_rows(G, T, q)
            assert rows == sorted(rows)
            if q is None:
                assert rows == list(range(T.num_chars))
            else:
                for r in rows:
                    assert has_values_in(T, r, q.field)
                    if q.p_filter:
                        assert T.degrees[r] % q.p_filter != 0

    def test_bad_inputs(self, cache):
        G, T = cache.pair("S(3)")
        with pytest.raises(InputError):
            acd(G, T, AcdQuery(p_filter=6))
        with pytest.raises(InputError):
            acd(G, T, AcdQuery(quotient_by=point_stabilizer(G, 0)))
        G4, T4 = cache.pair("S(4)")
        with pytest.raises(InputError):
            acd(G, T4)  # table belongs to a different group


class TestBoundF:
    def test_known_values(self):
        assert bound_f(3, 1) == Fraction(4, 3)
        assert bound_f(5, 1) == Fraction(3, 2)
        assert bound_f(7, 1) == Fraction(8, 5)
        assert bound_f(11, 1) == Fraction(12, 7)
        assert bound_f(13, 1) == Fraction(7, 4)
        assert bound_f(2, 2) == Fraction(10, 7)

    def test_monotone_and_bounded(self):
        prev = Fraction(0)
        for x in range(1, 8):
            b = bound_f(3, x)
            assert prev < b < 2
            prev = b

    def test_rejects(self):
        with pytest.raises(InputError):
            bound_f(1, 1)
        with pytest.raises(DomainError):
            bound_f(3, 0)


class TestAbelian3Formula:
    def test_sharp_cases(self):
        # |H| = 2 reproduces the dihedral-style bound.
        for p in (3, 5, 7, 11, 13):
            assert abelian3_formula(p, 1, 2, 2) == bound_f(p, 1)
        # |H| = 3 with trivial fixed field, small module.
        assert abelian3_formula(2, 2, 3, 3) == Fraction(3 * (4 + 2), 4 + 8)
        assert abelian3_formula(7, 1, 3, 3) == Fraction(9, 5)
        # |H| = p^a - 1: the Frobenius complement case.
        for p, a in ((5, 1), (11, 1), (3, 2)):
            q = p**a
            assert abelian3_formula(p, a, q - 1, q - 1) == Fraction(2 * (q - 1), q)

    def test_general_form(self):
        # d (index + q - 1) / (d * index + q - 1) with q = p^a.
        assert abelian3_formula(11, 1, 10, 2) == Fraction(10 * (2 + 10), 20 + 10)
        assert abelian3_formula(3, 2, 8, 4) == Fraction(8 * (4 + 8), 32 + 8)

    def test_at_least_one(self):
        for p, a, d in ((7, 1, 6), (3, 2, 8), (5, 2, 24)):
            from acdlab.number_theory import divisors

            for index in divisors(d):
                assert abelian3_formula(p, a, d, index) >= 1

    def test_rejects(self):
        with pytest.raises(InputError):
            abelian3_formula(4, 1, 3, 3)
        with pytest.raises(InputError):
            abelian3_formula(7, 1, 4, 2)  # 4 does not divide 7 - 1 = 6
        with pytest.raises(InputError):
            abelian3_formula(7, 1, 3, 2)  # 2 does not divide 3
        with pytest.raises(InputError):
            abelian3_formula(7, 0, 3, 3)
