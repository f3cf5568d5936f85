"""Consequence relations and the rationality property checker.

A consequence relation is stored as the total map phi -> C(phi) from
PropSet masks to the theory of default consequences of phi. Working on
PropSet masks quotients by logical equivalence, so left logical
equivalence holds by construction. phi |~ psi exactly when
models(C(phi)) ⊆ models(psi).

The checker covers the standard rational set imported from the KLM
framework: REF, LLE, RW, AND, OR, CM, RM, S (conditionalization) and
CP (consistency preservation). Each property is evaluated by
quantifying over all PropSet pairs or triples; the first counterexample
in lexicographic (phi, psi) order is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainTooLargeError
from .logic import PropSet, Signature, Theory
from .ranking import RankFunction

RATIONAL_PROPERTIES = ("REF", "LLE", "RW", "AND", "OR", "CM", "RM", "S", "CP")

CHECK_MAX_ATOMS = 3


@dataclass(frozen=True)
class ConsequenceRelation:
    """Total map phi |-> C(phi), indexed by the PropSet mask of phi;
    each entry is the models mask of the theory C(phi)."""

    sig: Signature
    consequences: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "consequences", tuple(self.consequences))
        expected = self.sig.universe_mask + 1
        if len(self.consequences) != expected:
            raise ValueError(f"need {expected} entries, got {len(self.consequences)}")
        uni = self.sig.universe_mask
        if any(not 0 <= c <= uni for c in self.consequences):
            raise ValueError("consequence masks out of range")

    @classmethod
    def from_rank(cls, r: RankFunction) -> "ConsequenceRelation":
        """The relation defined by minimum-rank models."""
        return cls(r.sig, r.consequence_table())

    @classmethod
    def from_function(
        cls, sig: Signature, theory_models: Callable[[int], int]
    ) -> "ConsequenceRelation":
        """Tabulate an arbitrary phi-mask -> models-mask map."""
        return cls(sig, tuple(theory_models(f) for f in range(sig.universe_mask + 1)))

    def theory_for(self, f: PropSet) -> Theory:
        return Theory(PropSet(self.sig, self.consequences[f.mask]))

    def entails(self, f: PropSet, g: PropSet) -> bool:
        """phi |~ psi."""
        c = self.consequences[f.mask]
        return (c | g.mask) == g.mask


@dataclass(frozen=True)
class RelationWitness:
    """First counterexample to a rationality property."""

    prop: str
    phi: PropSet
    psi: Optional[PropSet]
    chi: Optional[PropSet]
    detail: str


@dataclass(frozen=True)
class RationalityReport:
    """Per-property verdicts; a None witness means the property passed."""

    witnesses: tuple[tuple[str, Optional[RelationWitness]], ...]

    def witness(self, prop: str) -> Optional[RelationWitness]:
        for name, w in self.witnesses:
            if name == prop:
                return w
        raise KeyError(prop)

    def passes(self, prop: str) -> bool:
        return self.witness(prop) is None

    @property
    def all_pass(self) -> bool:
        return all(w is None for _, w in self.witnesses)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(name for name, w in self.witnesses if w is not None)

    def core_implies_or_cm(self) -> bool:
        """REF+LLE+RW+AND+S+RM+CP passing forces OR and CM to pass as well;
        reports whether this relation is consistent with that implication."""
        core = ("REF", "LLE", "RW", "AND", "S", "RM", "CP")
        if all(self.passes(p) for p in core):
            return self.passes("OR") and self.passes("CM")
        return True


def check_rationality(c: ConsequenceRelation, sig: Optional[Signature] = None) -> RationalityReport:
    """Exhaustively evaluate the nine rational properties of the relation."""
    sig = sig or c.sig
    if sig.n > CHECK_MAX_ATOMS:
        raise DomainTooLargeError(
            f"rationality check quantifies over 2**{sig.num_valuations} formula "
            f"classes; at most {CHECK_MAX_ATOMS} atoms supported"
        )
    M = c.consequences
    nmasks = sig.universe_mask + 1
    uni = sig.universe_mask
    ps = lambda m: PropSet(sig, m)
    out: list[tuple[str, Optional[RelationWitness]]] = []

    # REF: phi |~ phi
    w = None
    for phi in range(nmasks):
        if (M[phi] | phi) != phi:
            w = RelationWitness("REF", ps(phi), None, None,
                                "C(phi) has a model outside phi")
            break
    out.append(("REF", w))

    # LLE holds by construction: equivalent formulas are the same PropSet.
    out.append(("LLE", None))

    # RW: phi |~ psi and psi ⊨ chi imply phi |~ chi
    w = None
    for phi in range(nmasks):
        if w:
            break
        a = M[phi]
        for psi in range(nmasks):
            if (a | psi) != psi:
                continue
            chi = psi
            while True:  # supersets of psi in increasing mask order
                if (a | chi) != chi:
                    w = RelationWitness("RW", ps(phi), ps(psi), ps(chi),
                                        "phi |~ psi, psi ⊨ chi, but not phi |~ chi")
                    break
                if chi == uni:
                    break
                chi = (chi + 1) | psi
            if w:
                break
    out.append(("RW", w))

    # AND: phi |~ psi and phi |~ chi imply phi |~ psi ∧ chi
    w = None
    for phi in range(nmasks):
        if w:
            break
        a = M[phi]
        sups = []
        s = a
        while True:
            sups.append(s)
            if s == uni:
                break
            s = (s + 1) | a
        for psi in sups:
            if w:
                break
            for chi in sups:
                both = psi & chi
                if (a | both) != both:
                    w = RelationWitness("AND", ps(phi), ps(psi), ps(chi),
                                        "phi |~ psi and phi |~ chi but not phi |~ psi ∧ chi")
                    break
    out.append(("AND", w))

    # OR: phi |~ chi and psi |~ chi imply phi ∨ psi |~ chi
    w = None
    for phi in range(nmasks):
        if w:
            break
        for psi in range(nmasks):
            joint = M[phi] | M[psi]  # smallest chi with phi |~ chi and psi |~ chi
            if (M[phi | psi] | joint) != joint:
                w = RelationWitness("OR", ps(phi), ps(psi), ps(joint),
                                    "phi |~ chi and psi |~ chi but not phi ∨ psi |~ chi")
                break
    out.append(("OR", w))

    # CM: phi |~ psi and phi |~ chi imply phi ∧ psi |~ chi
    w = None
    for phi in range(nmasks):
        if w:
            break
        a = M[phi]
        for psi in range(nmasks):
            if (a | psi) == psi and (M[phi & psi] | a) != a:
                w = RelationWitness("CM", ps(phi), ps(psi), ps(a),
                                    "phi |~ psi and phi |~ chi but not phi ∧ psi |~ chi")
                break
    out.append(("CM", w))

    # RM: phi |~ chi and not phi |~ ¬psi imply phi ∧ psi |~ chi
    w = None
    for phi in range(nmasks):
        if w:
            break
        a = M[phi]
        for psi in range(nmasks):
            if a & psi and (M[phi & psi] | a) != a:
                w = RelationWitness("RM", ps(phi), ps(psi), ps(a),
                                    "phi |~ chi, phi |~/ ¬psi, but not phi ∧ psi |~ chi")
                break
    out.append(("RM", w))

    # S: phi ∧ psi |~ chi implies phi |~ psi -> chi
    w = None
    for phi in range(nmasks):
        if w:
            break
        a = M[phi]
        for psi in range(nmasks):
            b = M[phi & psi]  # smallest chi with phi ∧ psi |~ chi
            if ((a & psi) | b) != b:
                w = RelationWitness("S", ps(phi), ps(psi), ps(b),
                                    "phi ∧ psi |~ chi but not phi |~ psi -> chi")
                break
    out.append(("S", w))

    # CP: phi |~ false only for phi ≡ false
    w = None
    for phi in range(1, nmasks):
        if M[phi] == 0:
            w = RelationWitness("CP", ps(phi), None, None,
                                "consistent phi with C(phi) inconsistent")
            break
    out.append(("CP", w))

    return RationalityReport(tuple(out))
