"""Revision operators: the ranked realization, relation round trips,
theory-floor models, conservative extension, iteration."""

import pytest

from rankedrev import (
    ConsequenceRelation,
    PropSet,
    RankedRevision,
    RankFunction,
    Severity,
    TableRevision,
    Theory,
    check_rationality,
    cn_with,
    conservative_extension,
    consequences_of,
    iterate,
    normalize,
    relation_of_revision,
    revision_of_relation,
    severity_of,
    theory_contains,
    with_theory_floor,
)

from helpers import R0, ps, th


class TestRevise:
    def test_severe_takes_default_consequences(self, rv0, sig2):
        k, f = th(sig2, "!q"), ps(sig2, "q")
        assert severity_of(k, f) is Severity.SEVERE
        assert rv0.revise(k, f) == th(sig2, "p & q")

    def test_mild_expands(self, rv0, sig2):
        k, f = th(sig2, "p"), ps(sig2, "q")
        assert severity_of(k, f) is Severity.MILD
        assert rv0.revise(k, f) == cn_with(k, f) == th(sig2, "p & q")

    def test_false_input_gives_bottom_for_every_theory(self, rv0, sig2):
        for km in range(16):
            k = Theory(PropSet(sig2, km))
            assert rv0.revise(k, PropSet.empty(sig2)) == Theory.bottom(sig2)

    def test_true_input_fixes_consistent_theories(self, rv0, sig2):
        for km in range(1, 16):
            k = Theory(PropSet(sig2, km))
            assert rv0.revise(k, PropSet.full(sig2)) == k

    def test_bottom_is_always_severe(self, rv0, sig2):
        for fm in range(16):
            f = PropSet(sig2, fm)
            assert severity_of(Theory.bottom(sig2), f) is Severity.SEVERE
            assert rv0.revise(Theory.bottom(sig2), f) == consequences_of(R0, f)

    def test_restriction_to_bottom_determines_everything(self, revs75, sig2):
        # severe cells equal the bottom row, mild cells are expansion
        for rv in revs75:
            for km in range(16):
                for fm in range(16):
                    got = rv.revise_mask(km, fm)
                    if km & fm:
                        assert got == km & fm
                    else:
                        assert got == rv.revise_mask(0, fm)


class TestRelationOfRevision:
    def test_bottom_base_recovers_rank_relation(self, rv0, sig2):
        rel = relation_of_revision(rv0, Theory.bottom(sig2))
        assert rel == ConsequenceRelation.from_rank(R0)

    def test_consistent_base_examples(self, rv0, sig2):
        rel = relation_of_revision(rv0, th(sig2, "!q"))
        assert rel.theory_for(PropSet.full(sig2)) == th(sig2, "!q")
        assert rel.theory_for(ps(sig2, "q")) == th(sig2, "p & q")

    def test_every_base_gives_rational_relation(self, rv0, sig2):
        for km in range(16):
            rel = relation_of_revision(rv0, Theory(PropSet(sig2, km)))
            assert check_rationality(rel).all_pass


class TestRoundTrips:
    def test_relation_revision_relation(self, ranks75, sig2):
        for r in ranks75:
            rel = ConsequenceRelation.from_rank(r)
            back = relation_of_revision(revision_of_relation(rel), Theory.bottom(sig2))
            assert back == rel

    def test_revision_relation_revision(self, revs75, sig2):
        for rv in revs75:
            rel = relation_of_revision(rv, Theory.bottom(sig2))
            assert revision_of_relation(rel).same_revision(rv)

    def test_true_row_recovers_relation(self, ranks75, sig2):
        # with K the default closure of true, membership in K*phi is the relation
        for r in ranks75:
            rel = ConsequenceRelation.from_rank(r)
            rv = revision_of_relation(rel)
            k_mask = rel.consequences[sig2.universe_mask]
            for fm in range(16):
                assert rv.revise_mask(k_mask, fm) == rel.consequences[fm]


class TestTheoryFloor:
    def test_floor_example(self, sig2):
        floored = with_theory_floor(R0, th(sig2, "!q"))
        # 00 -> 0, 01 -> 2, 10 -> 0, 11 -> 1
        assert floored.ranks == (0, 2, 0, 1)

    def test_bottom_floor_is_identity(self, sig2):
        assert with_theory_floor(R0, Theory.bottom(sig2)) == R0

    def test_full_universe_floor_flattens(self, sig2):
        assert with_theory_floor(R0, Theory.top(sig2)).ranks == (0, 0, 0, 0)

    def test_revision_equals_floored_consequences(self, revs75, sig2):
        # K*phi is exactly the default consequence of phi in the model
        # extended with a new lowest level holding the models of K
        for rv in revs75:
            for km in range(16):
                k = Theory(PropSet(sig2, km))
                floored = with_theory_floor(rv.rank, k)
                for fm in range(16):
                    f = PropSet(sig2, fm)
                    assert rv.revise(k, f) == consequences_of(floored, f)

    def test_refloring_already_floored_changes_nothing(self, sig2):
        # dropping theory models to the floor is idempotent up to
        # normalization, so no trace of their original ranks survives
        for km in range(16):
            k = Theory(PropSet(sig2, km))
            floored = with_theory_floor(R0, k)
            if km:
                reranked = normalize(
                    RankFunction(
                        sig2,
                        tuple(
                            0 if (km >> v) & 1 else rank
                            for v, rank in enumerate(floored.ranks)
                        ),
                    )
                )
                assert reranked == floored


class TestConservativeExtension:
    def test_agrees_on_anchor_row(self, rv0, sig2):
        ext = conservative_extension(rv0, th(sig2, "!q"))
        assert ext.revise(th(sig2, "!q"), ps(sig2, "q")) == rv0.revise(
            th(sig2, "!q"), ps(sig2, "q")
        )

    def test_severe_routes_through_anchor(self, rv0, sig2):
        ext = conservative_extension(rv0, th(sig2, "!q"))
        assert ext.revise(Theory.bottom(sig2), ps(sig2, "q")) == rv0.revise(
            th(sig2, "!q"), ps(sig2, "q")
        )

    def test_mild_branch_is_plain_expansion(self, rv0, sig2):
        ext = conservative_extension(rv0, th(sig2, "!q"))
        assert ext.revise(th(sig2, "p"), ps(sig2, "q")) == th(sig2, "p & q")

    def test_tag(self, rv0, sig2):
        assert conservative_extension(rv0, th(sig2, "p")).tag == "conservative"


class TestIterate:
    def test_two_step_trace(self, rv0, sig2):
        steps = iterate(rv0, th(sig2, "!q"), [ps(sig2, "p"), ps(sig2, "q")])
        assert [(s.before, s.after, s.severity) for s in steps] == [
            (th(sig2, "!q"), th(sig2, "p & !q"), Severity.MILD),
            (th(sig2, "p & !q"), th(sig2, "p & q"), Severity.SEVERE),
        ]

    def test_empty_trace(self, rv0, sig2):
        assert iterate(rv0, th(sig2, "!q"), []) == []

    def test_repeat_input_becomes_mild_fixed_point(self, rv0, sig2):
        steps = iterate(rv0, th(sig2, "!q"), [ps(sig2, "q"), ps(sig2, "q")])
        assert steps[0].severity is Severity.SEVERE
        assert steps[1].severity is Severity.MILD
        assert steps[1].before == steps[1].after == th(sig2, "p & q")

    def test_severity_flag_matches_membership_of_negation(self, rv0, sig2):
        for km in range(16):
            for fm in range(16):
                k, f = Theory(PropSet(sig2, km)), PropSet(sig2, fm)
                step = iterate(rv0, k, [f])[0]
                expected = (
                    Severity.SEVERE
                    if theory_contains(k, ~f)
                    else Severity.MILD
                )
                assert step.severity is expected


class TestTableRevision:
    def test_needs_full_table(self, sig2):
        with pytest.raises(ValueError):
            TableRevision(sig2, [0] * 10)

    def test_from_function_and_equality(self, rv0, sig2):
        tab = TableRevision.from_function(sig2, rv0.revise_mask)
        assert tab.same_revision(rv0)
        assert tab.tag == "table"

    def test_pointwise_inequality_detected(self, rv0, sig2):
        cells = list(TableRevision.from_function(sig2, rv0.revise_mask).cells)
        cells[5 * 16 + 10] = 2  # one severe cell perturbed
        assert not TableRevision(sig2, cells).same_revision(rv0)
