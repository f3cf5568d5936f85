"""Postulate checkers, impossibility witnesses, implication and
under-determination searches."""

import json
import random

import pytest

from rankedrev import (
    AGM_PLUS_MINIMAL_INFLUENCE,
    DomainTooLargeError,
    ImpossibilityTarget,
    PostulateId,
    PropSet,
    RankedRevision,
    TableRevision,
    Theory,
    Violation,
    WitnessNotFoundError,
    check_implication_9p_to_92,
    check_postulate,
    check_rationality,
    consequences_of,
    dynamic_underdetermination,
    enumerate_rank_functions,
    find_impossibility_witness,
    random_rank_function,
    relation_of_revision,
    run_suite,
    with_theory_floor,
)

from helpers import SIG1, SIG3, ps, th

DERIVED_IDS = (
    PostulateId.U8_2,
    PostulateId.P_KM1,
    PostulateId.P_K9U81,
    PostulateId.C1,
    PostulateId.C2P,
    PostulateId.C3,
    PostulateId.C4,
)


def _perturbed_table(rv, k_mask, f_mask, new_value):
    nm = rv.sig.universe_mask + 1
    cells = [rv.revise_mask(k, f) for k in range(nm) for f in range(nm)]
    cells[k_mask * nm + f_mask] = new_value
    return TableRevision(rv.sig, cells)


def _random_table(sig, rng, respect_success=False):
    nm = sig.universe_mask + 1
    cells = []
    for _ in range(nm):
        for f in range(nm):
            value = rng.randrange(nm)
            if respect_success:
                value &= f
            cells.append(value)
    return TableRevision(sig, cells)


class TestCheckPostulate:
    def test_success_postulate_holds(self, rv0):
        assert check_postulate(rv0, PostulateId.K2) is None

    def test_agm_plus_k9_all_pass(self, rv0):
        report = run_suite(rv0, AGM_PLUS_MINIMAL_INFLUENCE)
        assert report.all_pass

    def test_derived_postulates_pass(self, rv0):
        assert run_suite(rv0, DERIVED_IDS).all_pass

    def test_u8_1_fails_with_replayable_witness(self, rv0, sig2):
        v = check_postulate(rv0, PostulateId.U8_1)
        assert v is not None
        assert v.postulate is PostulateId.U8_1
        assert v.replay(rv0)
        # the classic instantiation also violates the clause: take the
        # bottom theory above Cn(!p & !q) and revise both by true
        classic = Violation(
            postulate=PostulateId.U8_1,
            k=th(sig2, "!p & !q"),
            kprime=Theory.bottom(sig2),
            phi=PropSet.full(sig2),
            observed=rv0.revise(Theory.bottom(sig2), PropSet.full(sig2)),
            required=v.required,
        )
        assert classic.replay(rv0)

    def test_c2_fails_with_replayable_witness(self, rv0, sig2):
        v = check_postulate(rv0, PostulateId.C2)
        assert v is not None
        assert v.replay(rv0)
        # revising by false then by true lands on the bottom row, away
        # from any consistent theory that is not the default closure
        classic = Violation(
            postulate=PostulateId.C2,
            k=th(sig2, "!p & !q"),
            phi=PropSet.full(sig2),
            psi=PropSet.empty(sig2),
            observed=rv0.revise(Theory.bottom(sig2), PropSet.full(sig2)),
            required=v.required,
        )
        assert classic.replay(rv0)
        k = th(sig2, "!p & !q")
        via_false = rv0.revise(rv0.revise(k, PropSet.empty(sig2)), PropSet.full(sig2))
        direct = rv0.revise(k, PropSet.full(sig2))
        assert via_false == th(sig2, "p & q")
        assert direct == k
        assert via_false != direct

    def test_gen_passes_and_example_instance(self, rv0, sig2):
        assert check_postulate(rv0, PostulateId.P_GEN) is None
        k, phi, psi = th(sig2, "!q"), ps(sig2, "q"), ps(sig2, "p")
        assert rv0.revise(k, phi).models.issubset(psi)  # psi ∈ K*phi
        assert rv0.revise(rv0.revise(k, psi), phi) == rv0.revise(k, phi)

    def test_perturbed_severe_cell_breaks_k9(self, rv0, sig2):
        # Cn(!q) revised by q is a severe cell; point it somewhere else
        broken = _perturbed_table(rv0, th(sig2, "!q").models.mask, ps(sig2, "q").mask, ps(sig2, "!p & q").mask)
        v = check_postulate(broken, PostulateId.K9)
        assert v is not None and v.replay(broken)
        # the witness pins the perturbed cell as one of the two rows
        assert ps(sig2, "q").mask == v.phi.mask
        assert th(sig2, "!q").models.mask in (v.k.models.mask, v.kprime.models.mask)

    def test_exhaustive_triple_clause_rejected_at_three_atoms(self):
        rv = RankedRevision(random_rank_function(SIG3, 3, 1))
        with pytest.raises(DomainTooLargeError) as exc:
            check_postulate(rv, PostulateId.K7)
        assert "sampled" in str(exc.value)

    def test_sampled_mode_is_deterministic(self):
        rv = RankedRevision(random_rank_function(SIG3, 4, 9))
        a = run_suite(rv, [PostulateId.K7, PostulateId.P_GEN], mode="sampled", seed=5, samples=200)
        b = run_suite(rv, [PostulateId.K7, PostulateId.P_GEN], mode="sampled", seed=5, samples=200)
        assert json.dumps(a.to_json_records()) == json.dumps(b.to_json_records())
        assert a.all_pass

    def test_sampled_mode_requires_seed(self, rv0):
        with pytest.raises(ValueError):
            check_postulate(rv0, PostulateId.K7, mode="sampled")


class TestSuiteReport:
    def test_text_lists_every_requested_postulate(self, rv0):
        report = run_suite(rv0, AGM_PLUS_MINIMAL_INFLUENCE)
        text = report.to_text()
        for i in range(1, 10):
            assert f"K{i} pass" in text

    def test_json_schema(self, rv0):
        report = run_suite(rv0, [PostulateId.K2, PostulateId.U8_1])
        records = report.to_json_records()
        assert [r["postulate"] for r in records] == ["K2", "U8_1"]
        assert records[0]["verdict"] == "pass"
        assert "witness" not in records[0]
        assert records[1]["verdict"] == "fail"
        witness = records[1]["witness"]
        assert set(witness) == {"K", "Kprime", "phi", "observed", "required"}
        assert records[0]["mode"] == "exhaustive"

    def test_violations_property(self, rv0):
        report = run_suite(rv0, [PostulateId.U8, PostulateId.K2])
        assert not report.all_pass
        assert [v.postulate for v in report.violations] == [PostulateId.U8]


class TestViolationSoundness:
    def test_every_returned_violation_replays(self, rv0, sig2):
        # break single cells at random and confirm any reported violation
        # reproduces on replay, across all postulates
        rng = random.Random(7)
        for trial in range(15):
            broken = _perturbed_table(
                rv0, rng.randrange(16), rng.randrange(16), rng.randrange(16)
            )
            for pid in PostulateId:
                v = check_postulate(broken, pid)
                if v is not None:
                    assert v.replay(broken), (trial, pid)

    def test_describe_names_all_bindings(self, rv0):
        v = check_postulate(rv0, PostulateId.U8_1)
        text = v.describe()
        for key in ("K=", "Kprime=", "phi=", "observed=", "required="):
            assert key in text


class TestImplication9pTo92:
    def test_holds_on_ranked_revisions(self, revs75):
        for rv in revs75:
            assert check_implication_9p_to_92(rv) is None

    def test_vacuous_when_success_fails(self, rv0, sig2):
        # point a cell outside phi so K2 fails; conditional holds vacuously
        broken = _perturbed_table(rv0, 0, ps(sig2, "q").mask, ps(sig2, "!q").mask)
        assert check_postulate(broken, PostulateId.K2) is not None
        assert check_implication_9p_to_92(broken) is None

    def test_holds_on_random_tables(self, sig2):
        rng = random.Random(123)
        for i in range(60):
            rv = _random_table(sig2, rng, respect_success=bool(i % 2))
            assert check_implication_9p_to_92(rv) is None


class TestImpossibilityWitness:
    def test_u8_1_witness_matches_classic_bindings(self, rv0, sig2):
        v = find_impossibility_witness(rv0, ImpossibilityTarget.U8_1_VS_K4K5)
        assert v.postulate is PostulateId.U8_1
        assert v.k == th(sig2, "!p & !q")
        assert v.kprime == Theory.bottom(sig2)
        assert v.phi == PropSet.full(sig2)
        assert v.replay(rv0)

    def test_c2_witness_matches_classic_bindings(self, rv0, sig2):
        v = find_impossibility_witness(rv0, "C2_vs_K1K4")
        assert v.postulate is PostulateId.C2
        assert v.k == th(sig2, "!p & !q")
        assert v.phi == PropSet.full(sig2)
        assert v.psi == PropSet.empty(sig2)
        assert v.replay(rv0)

    def test_preconditions_enforced(self, rv0, sig2):
        # break K4 on a mild cell: Cn(p) revised by true must keep p
        broken = _perturbed_table(
            rv0, ps(sig2, "p").mask, PropSet.full(sig2).mask, PropSet.full(sig2).mask
        )
        with pytest.raises(ValueError):
            find_impossibility_witness(broken, ImpossibilityTarget.U8_1_VS_K4K5)


class TestDynamicUnderdetermination:
    def test_witness_for_conjunction_anchor(self, sig2):
        k = th(sig2, "p & q")
        w = dynamic_underdetermination(sig2, k)
        rv1, rv2 = RankedRevision(w.first), RankedRevision(w.second)
        # identical rows at the anchor
        for fm in range(16):
            assert rv1.revise_mask(k.models.mask, fm) == rv2.revise_mask(
                k.models.mask, fm
            )
        # divergence one step later
        t = rv1.revise_mask(k.models.mask, w.psi.mask)
        assert rv1.revise_mask(t, w.phi.mask) != rv2.revise_mask(t, w.phi.mask)

    def test_full_universe_anchor_golden(self, sig2):
        w = dynamic_underdetermination(sig2, Theory.top(sig2))
        assert w.first.ranks == (0, 0, 0, 0)
        assert w.second.ranks == (0, 0, 0, 1)
        assert w.psi == PropSet.empty(sig2)
        assert w.phi == ps(sig2, "p <-> q")

    def test_bottom_anchor_determines_everything(self, sig2):
        with pytest.raises(WitnessNotFoundError):
            dynamic_underdetermination(sig2, Theory.bottom(sig2))

    def test_only_two_atoms_supported(self):
        with pytest.raises(DomainTooLargeError):
            dynamic_underdetermination(SIG3, Theory.bottom(SIG3))


class TestAssortedLaws:
    def test_revising_by_true_weakens_consistent_theories(self, revs75, sig2):
        # K*true ⊆ K whenever K is consistent, at one and two atoms
        uni = sig2.universe_mask
        for rv in revs75:
            for km in range(1, 16):
                assert (km | rv.revise_mask(km, uni)) == rv.revise_mask(km, uni)
        for r in enumerate_rank_functions(SIG1):
            rv = RankedRevision(r)
            for km in range(1, 4):
                assert (km | rv.revise_mask(km, 3)) == rv.revise_mask(km, 3)

    def test_mild_u8_on_running_example(self, rv0):
        assert check_postulate(rv0, PostulateId.P_KM1) is None

    def test_severe_u8_on_running_example(self, rv0):
        assert check_postulate(rv0, PostulateId.P_K9U81) is None

    def test_u8_equivalent_to_its_halves(self, rv0, sig2):
        # the update postulate splits into monotonicity plus the reverse
        # inclusion: a revision satisfies U8 exactly when it satisfies
        # both U8_1 and U8_2
        rng = random.Random(99)
        candidates = [rv0]
        for i in range(40):
            candidates.append(_random_table(sig2, rng, respect_success=bool(i % 2)))
        for rv in candidates:
            whole = check_postulate(rv, PostulateId.U8) is None
            halves = (
                check_postulate(rv, PostulateId.U8_1) is None
                and check_postulate(rv, PostulateId.U8_2) is None
            )
            assert whole == halves


class TestRelationOfAnyAgmRevision:
    def test_non_minimal_influence_revision_still_gives_rational_rows(
        self, ranks75, sig2
    ):
        """A revision whose severe behavior varies with the theory (so K9
        fails) still induces a rational, consistency-preserving relation
        from every base theory, as long as K1-K8 hold."""

        def row_value(km, fm):
            # each theory row gets its own rank function, floored at the row
            base = ranks75[km % len(ranks75)]
            floored = with_theory_floor(base, Theory(PropSet(sig2, km)))
            return consequences_of(floored, PropSet(sig2, fm)).models.mask

        rv = TableRevision.from_function(sig2, row_value)
        for i in range(1, 9):
            assert check_postulate(rv, PostulateId[f"K{i}"]) is None
        assert check_postulate(rv, PostulateId.K9) is not None
        for km in range(16):
            rel = relation_of_revision(rv, Theory(PropSet(sig2, km)))
            assert check_rationality(rel).all_pass
