"""Revision operators over finite theories.

A revision maps (theory, input formula) to the revised theory. The
revision is mild when the input is consistent with the theory (plain
expansion suffices) and severe when the input contradicts it. The
ranked realization implements the minimal-influence discipline: a
severe revision forgets the theory entirely and adopts the input
together with its default consequences under the rank function, so the
result of a severe revision does not depend on the theory at all.

The inconsistent theory is always revised severely, which makes it the
canonical probe: the whole operator is determined by its bottom row
plus expansion. Revisions are immutable; ``revise`` is pure, and
exhaustive sweeps may evaluate disjoint cells concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import DomainTooLargeError
from .logic import PropSet, Signature, Theory
from .ranking import RankFunction, normalize
from .relations import ConsequenceRelation

TABLE_MAX_ATOMS = 3


class Severity(str, Enum):
    MILD = "mild"
    SEVERE = "severe"


def severity_of(k: Theory, f: PropSet) -> Severity:
    """Severe exactly when ¬f belongs to k, i.e. models(k) ∩ f = ∅."""
    return Severity.SEVERE if (k.models.mask & f.mask) == 0 else Severity.MILD


@dataclass(frozen=True)
class RevisionStep:
    before: Theory
    formula: PropSet
    after: Theory
    severity: Severity


class Revision:
    """Abstract two-argument revision operator.

    Subclasses implement ``revise_mask`` on raw masks; the table of all
    cells is cached for the exhaustive checkers. Two revisions are the
    same revision when they agree pointwise over the finite domain.
    """

    tag: str = "abstract"

    def __init__(self, sig: Signature):
        self.sig = sig
        self._table = None

    def revise_mask(self, k_mask: int, f_mask: int) -> int:
        raise NotImplementedError

    def revise(self, k: Theory, f: PropSet) -> Theory:
        return Theory(PropSet(self.sig, self.revise_mask(k.models.mask, f.mask)))

    def table(self) -> tuple[tuple[int, ...], ...]:
        """revise_mask tabulated as table[k_mask][f_mask]."""
        if self._table is None:
            if self.sig.n > TABLE_MAX_ATOMS:
                raise DomainTooLargeError(
                    f"full revision table needs 4**{self.sig.num_valuations} cells; "
                    f"at most {TABLE_MAX_ATOMS} atoms supported"
                )
            nmasks = self.sig.universe_mask + 1
            rm = self.revise_mask
            self._table = tuple(
                tuple(rm(k, f) for f in range(nmasks)) for k in range(nmasks)
            )
        return self._table

    def same_revision(self, other: "Revision") -> bool:
        """Pointwise equality over the finite domain."""
        return self.sig == other.sig and self.table() == other.table()


class RankedRevision(Revision):
    """Revision induced by a rank function: severe revisions return the
    minimum-rank models of the input, mild revisions expand."""

    tag = "ranked"

    def __init__(self, rank: RankFunction):
        super().__init__(rank.sig)
        self.rank = rank
        self._cons = None

    def consequence_masks(self) -> tuple[int, ...]:
        if self._cons is None:
            self._cons = self.rank.consequence_table()
        return self._cons

    def revise_mask(self, k_mask: int, f_mask: int) -> int:
        meet = k_mask & f_mask
        if meet:
            return meet
        return self.consequence_masks()[f_mask]


class TableRevision(Revision):
    """Explicit (theory, formula) -> theory map; the vehicle for testing
    arbitrary candidate revisions."""

    tag = "table"

    def __init__(self, sig: Signature, cells: Sequence[int]):
        super().__init__(sig)
        nmasks = sig.universe_mask + 1
        cells = tuple(cells)
        if len(cells) != nmasks * nmasks:
            raise ValueError(f"need {nmasks * nmasks} cells, got {len(cells)}")
        if any(not 0 <= c <= sig.universe_mask for c in cells):
            raise ValueError("cell values must be model masks over the signature")
        self.cells = cells
        self._nmasks = nmasks

    @classmethod
    def from_function(
        cls, sig: Signature, fn: Callable[[int, int], int]
    ) -> "TableRevision":
        nmasks = sig.universe_mask + 1
        return cls(sig, [fn(k, f) for k in range(nmasks) for f in range(nmasks)])

    def revise_mask(self, k_mask: int, f_mask: int) -> int:
        return self.cells[k_mask * self._nmasks + f_mask]


class ConservativeRevision(Revision):
    """Extension of an arbitrary revision from one anchor theory to the
    whole domain: severe revisions are routed through the anchor's row of
    the source revision, mild revisions expand as usual."""

    tag = "conservative"

    def __init__(self, source: Revision, anchor: Theory):
        super().__init__(source.sig)
        self.source = source
        self.anchor = anchor
        self._row = None

    def _anchor_row(self) -> tuple[int, ...]:
        if self._row is None:
            am = self.anchor.models.mask
            src = self.source.revise_mask
            self._row = tuple(
                src(am, f) for f in range(self.sig.universe_mask + 1)
            )
        return self._row

    def revise_mask(self, k_mask: int, f_mask: int) -> int:
        meet = k_mask & f_mask
        if meet:
            return meet
        return self._anchor_row()[f_mask]


def conservative_extension(rv: Revision, k: Theory) -> ConservativeRevision:
    """The revision that treats every severe revision the way ``rv``
    revises ``k``; it agrees with ``rv`` on the whole row of ``k``."""
    return ConservativeRevision(rv, k)


def relation_of_revision(rv: Revision, base: Theory) -> ConsequenceRelation:
    """The consequence relation phi |-> revise(base, phi)."""
    if rv.sig.n > TABLE_MAX_ATOMS:
        raise DomainTooLargeError(
            f"total consequence map needs 2**{rv.sig.num_valuations} entries; "
            f"at most {TABLE_MAX_ATOMS} atoms supported"
        )
    bm = base.models.mask
    rm = rv.revise_mask
    return ConsequenceRelation(
        rv.sig, tuple(rm(bm, f) for f in range(rv.sig.universe_mask + 1))
    )


def revision_of_relation(rel: ConsequenceRelation) -> TableRevision:
    """The inverse construction: severe revisions take the relation's
    consequences of the input, mild revisions expand."""
    cons = rel.consequences
    return TableRevision.from_function(
        rel.sig, lambda k, f: (k & f) if (k & f) else cons[f]
    )


def with_theory_floor(r: RankFunction, k: Theory) -> RankFunction:
    """Rank function whose lowest level is exactly the models of k: those
    drop to rank 0, every other valuation shifts up one, then the result
    is normalized. For the inconsistent k this is r itself."""
    km = k.models.mask
    shifted = tuple(
        0 if (km >> v) & 1 else rank + 1 for v, rank in enumerate(r.ranks)
    )
    return normalize(RankFunction(r.sig, shifted))


def iterate(rv: Revision, k: Theory, fs: Sequence[PropSet]) -> list[RevisionStep]:
    """Fold revise left to right, recording each step's severity."""
    steps = []
    current = k
    for f in fs:
        nxt = rv.revise(current, f)
        steps.append(RevisionStep(current, f, nxt, severity_of(current, f)))
        current = nxt
    return steps
