"""Canonical DNF emission and theory literals."""

from rankedrev import (
    And,
    Atom,
    Const,
    Not,
    Or,
    PropSet,
    Theory,
    canonical_formula,
    dnf_text,
    models_of,
    theory_text,
)

from helpers import SIG1, SIG2, SIG3, ps


class TestCanonicalFormula:
    def test_empty_is_false(self):
        assert canonical_formula(PropSet.empty(SIG2)) == Const(False)

    def test_full_is_true(self):
        assert canonical_formula(PropSet.full(SIG2)) == Const(True)

    def test_single_minterm(self):
        f = canonical_formula(ps(SIG2, "p & q"))
        assert f == And(Atom("p"), Atom("q"))

    def test_two_minterms_ascending(self):
        f = canonical_formula(PropSet.from_bits(SIG2, "00", "11"))
        assert f == Or(And(Not(Atom("p")), Not(Atom("q"))), And(Atom("p"), Atom("q")))

    def test_round_trip_all_propsets_one_atom(self):
        for m in range(4):
            s = PropSet(SIG1, m)
            assert models_of(canonical_formula(s), SIG1) == s

    def test_round_trip_all_propsets_two_atoms(self):
        for m in range(16):
            s = PropSet(SIG2, m)
            assert models_of(canonical_formula(s), SIG2) == s

    def test_round_trip_all_propsets_three_atoms(self):
        for m in range(256):
            s = PropSet(SIG3, m)
            assert models_of(canonical_formula(s), SIG3) == s


class TestDnfText:
    def test_examples(self):
        assert dnf_text(PropSet.empty(SIG2)) == "false"
        assert dnf_text(PropSet.full(SIG2)) == "true"
        assert dnf_text(ps(SIG2, "p & q")) == "p & q"
        assert dnf_text(PropSet.from_bits(SIG2, "00", "11")) == "(!p & !q) | (p & q)"

    def test_single_atom_signature(self):
        assert dnf_text(PropSet.from_bits(SIG1, "0")) == "!p"
        assert dnf_text(PropSet.from_bits(SIG1, "1")) == "p"

    def test_text_reparses_to_same_propset(self):
        for m in range(256):
            s = PropSet(SIG3, m)
            assert ps(SIG3, dnf_text(s)) == s


class TestTheoryText:
    def test_bottom_literal(self):
        assert theory_text(Theory.bottom(SIG2)) == "bot"

    def test_consistent_theory_is_dnf_of_models(self):
        assert theory_text(Theory(ps(SIG2, "!q"))) == "(!p & !q) | (p & !q)"
