"""Rank functions over the valuation universe.

A rank function assigns every valuation a natural number; it is the
finite realization of a rational, consistency-preserving consequence
relation (consistency preservation is exactly totality: no valuation is
missing). Only the induced total preorder matters, so rank functions
are kept in normalized form: the ranks used are exactly 0..h for some
h. The number of normalized rank functions over m valuations is the
ordered-set-partition (Fubini) number of m.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import RankFileError, SignatureTooLargeError
from .logic import PropSet, Signature, Theory

ENUM_MAX_ATOMS = 3


@dataclass(frozen=True)
class RankFunction:
    """One natural-number rank per valuation, indexed by valuation."""

    sig: Signature
    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        if len(self.ranks) != self.sig.num_valuations:
            raise ValueError(
                f"need {self.sig.num_valuations} ranks, got {len(self.ranks)}"
            )
        if any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be natural numbers")

    @property
    def height(self) -> int:
        return max(self.ranks)

    @property
    def is_normalized(self) -> bool:
        used = set(self.ranks)
        return used == set(range(len(used)))

    def level_mask(self, level: int) -> int:
        m = 0
        for v, r in enumerate(self.ranks):
            if r == level:
                m |= 1 << v
        return m

    def min_models_mask(self, f_mask: int) -> int:
        """The minimum-rank valuations of f_mask (0 when f_mask is 0)."""
        if f_mask == 0:
            return 0
        ranks = self.ranks
        best = None
        out = 0
        m, v = f_mask, 0
        while m:
            if m & 1:
                r = ranks[v]
                if best is None or r < best:
                    best, out = r, 1 << v
                elif r == best:
                    out |= 1 << v
            m >>= 1
            v += 1
        return out

    def consequence_table(self) -> tuple[int, ...]:
        """min_models_mask for every PropSet mask, indexed by mask."""
        levels = [self.level_mask(l) for l in range(self.height + 1)]
        table = [0] * (self.sig.universe_mask + 1)
        for f in range(1, self.sig.universe_mask + 1):
            for lvl in levels:
                hit = f & lvl
                if hit:
                    table[f] = hit
                    break
        return tuple(table)


def consequences_of(r: RankFunction, f: PropSet) -> Theory:
    """The theory holding by default under f: its models are the
    minimum-rank models of f. The empty f yields the inconsistent theory."""
    return Theory(PropSet(r.sig, r.min_models_mask(f.mask)))


def normalize(r: RankFunction) -> RankFunction:
    """Relabel ranks order-preservingly onto 0..h; fixes normalized inputs."""
    relabel = {v: i for i, v in enumerate(sorted(set(r.ranks)))}
    return RankFunction(r.sig, tuple(relabel[x] for x in r.ranks))


def enumerate_rank_functions(sig: Signature) -> Iterator[RankFunction]:
    """Yield every normalized rank function over the signature exactly once,
    in lexicographic order of the rank vector.

    The count equals the Fubini number of 2**n, so enumeration is capped
    at n <= 3 (545835 functions).
    """
    if sig.n > ENUM_MAX_ATOMS:
        raise SignatureTooLargeError(
            f"exhaustive enumeration supports at most {ENUM_MAX_ATOMS} atoms, got {sig.n}"
        )
    m = sig.num_valuations
    vec = [0] * m

    def rec(i: int, used: int, top: int) -> Iterator[RankFunction]:
        if i == m:
            yield RankFunction(sig, tuple(vec))
            return
        remaining = m - i - 1
        for c in range(m):
            new_used = used | (1 << c)
            new_top = c if c > top else top
            # holes below the current top must still be fillable
            if (new_top + 1) - new_used.bit_count() <= remaining:
                vec[i] = c
                yield from rec(i + 1, new_used, new_top)

    return rec(0, 0, -1)


def random_rank_function(sig: Signature, levels: int, seed: int) -> RankFunction:
    """Seeded random normalized rank function.

    Each valuation's rank is drawn independently and uniformly from
    0..levels-1 (one random.Random(seed).randrange(levels) call per
    valuation, in valuation order), then the result is normalized.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    rng = random.Random(seed)
    draws = tuple(rng.randrange(levels) for _ in range(sig.num_valuations))
    return normalize(RankFunction(sig, draws))


# --- file format ----------------------------------------------------------
#
#   atoms: p q
#   0: 11
#   1: 01 10
#   2: 00
#
# One line per level, lowest first; valuations as bit strings in atom
# order. Only normalized rank functions are representable, and the
# format round-trips bit-exactly.


def format_rank_file(r: RankFunction) -> str:
    if not r.is_normalized:
        raise ValueError("only normalized rank functions can be written")
    lines = ["atoms: " + " ".join(r.sig.atoms)]
    for level in range(r.height + 1):
        vals = [r.sig.valuation_bits(v) for v, rk in enumerate(r.ranks) if rk == level]
        lines.append(f"{level}: " + " ".join(vals))
    return "\n".join(lines) + "\n"


def parse_rank_file(text: str) -> RankFunction:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("atoms:"):
        raise RankFileError("first line must be 'atoms: <names>'")
    atoms = lines[0][len("atoms:"):].split()
    try:
        sig = Signature(tuple(atoms))
    except ValueError as exc:
        raise RankFileError(str(exc)) from exc
    ranks: dict[int, int] = {}
    for lineno, line in enumerate(lines[1:]):
        head, sep, rest = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise RankFileError(f"bad level line {line!r}")
        level = int(head)
        if level != lineno:
            raise RankFileError(f"levels must be contiguous from 0, got {level}")
        vals = rest.split()
        if not vals:
            raise RankFileError(f"level {level} is empty")
        for bits in vals:
            try:
                v = sig.valuation_from_bits(bits)
            except ValueError as exc:
                raise RankFileError(str(exc)) from exc
            if v in ranks:
                raise RankFileError(f"valuation {bits} listed twice")
            ranks[v] = level
    if len(ranks) != sig.num_valuations:
        missing = [
            sig.valuation_bits(v) for v in range(sig.num_valuations) if v not in ranks
        ]
        raise RankFileError(f"valuations missing a rank: {' '.join(missing)}")
    return RankFunction(sig, tuple(ranks[v] for v in range(sig.num_valuations)))
