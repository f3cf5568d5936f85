"""Canonical DNF output for PropSets and theories.

The emitted form is full (unminimized) DNF over the whole signature,
minterms in ascending valuation order, so output is deterministic and
byte-stable; minimization would only be cosmetic.
"""

from __future__ import annotations

from .logic import And, Atom, Const, Formula, Not, Or, PropSet, Theory


def canonical_formula(s: PropSet) -> Formula:
    """The canonical DNF formula denoting s; `false`/`true` for the
    empty/full set. models_of(canonical_formula(s)) == s."""
    if s.mask == 0:
        return Const(False)
    if s.mask == s.sig.universe_mask:
        return Const(True)
    minterms = [_minterm(s.sig.atoms, s.sig.n, v) for v in s.valuations()]
    out = minterms[0]
    for t in minterms[1:]:
        out = Or(out, t)
    return out


def _minterm(atoms, n: int, v: int) -> Formula:
    lits = [
        Atom(a) if (v >> (n - 1 - i)) & 1 else Not(Atom(a))
        for i, a in enumerate(atoms)
    ]
    out = lits[0]
    for lit in lits[1:]:
        out = And(out, lit)
    return out


def dnf_text(s: PropSet) -> str:
    """Text of the canonical DNF, e.g. "(!p & !q) | (p & q)"."""
    if s.mask == 0:
        return "false"
    if s.mask == s.sig.universe_mask:
        return "true"
    sig = s.sig
    terms = []
    for v in s.valuations():
        lits = [
            a if (v >> (sig.n - 1 - i)) & 1 else "!" + a
            for i, a in enumerate(sig.atoms)
        ]
        terms.append(" & ".join(lits))
    if len(terms) == 1:
        return terms[0]
    wrap = "({})" if sig.n > 1 else "{}"
    return " | ".join(wrap.format(t) for t in terms)


def theory_text(k: Theory) -> str:
    """Theory literal: `bot` for the inconsistent theory, else the DNF of
    a formula whose closure is the theory."""
    if not k.is_consistent:
        return "bot"
    return dnf_text(k.models)
