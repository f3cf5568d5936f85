"""Machine-checkable catalogue of revision postulates.

Every postulate is a universally quantified clause over theories and
formula classes. Quantifier domains are semantic: theories range over
all 2**(2**n) model sets and formulas over all 2**(2**n) PropSet masks,
so "for any theory" is literal at desk scale. Exhaustive checking
reports the first counterexample in lexicographic binding order
(ascending masks, K then K' then phi then psi), which keeps golden
reports stable. Sampled mode draws bindings from a seeded generator and
reports the seed, so every run is replayable.

Violations are self-certifying: replaying the recorded bindings through
the revision reproduces the clause failure.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Union

from .errors import (
    DomainTooLargeError,
    SearchExhaustedError,
    WitnessNotFoundError,
)
from .logic import PropSet, Signature, Theory
from .ranking import RankFunction, enumerate_rank_functions
from .render import dnf_text, theory_text
from .revision import RankedRevision, Revision


class PostulateId(Enum):
    """Closed enumeration of the checkable postulates."""

    K1 = "K1"
    K2 = "K2"
    K3 = "K3"
    K4 = "K4"
    K5 = "K5"
    K6 = "K6"
    K7 = "K7"
    K8 = "K8"
    K9 = "K9"
    K9_1 = "K9_1"
    K9_2 = "K9_2"
    K9_2P = "K9_2P"
    U8 = "U8"
    U8_1 = "U8_1"
    U8_2 = "U8_2"
    C1 = "C1"
    C2 = "C2"
    C2P = "C2P"
    C3 = "C3"
    C4 = "C4"
    P_PHIANDPSI = "P_PHIANDPSI"
    P_PSI = "P_PSI"
    P_GEN = "P_GEN"
    P_KM1 = "P_KM1"
    P_K9U81 = "P_K9U81"


AGM_POSTULATES = tuple(PostulateId[f"K{i}"] for i in range(1, 9))
AGM_PLUS_MINIMAL_INFLUENCE = AGM_POSTULATES + (PostulateId.K9,)


# Clause evaluators work on raw masks. ``rev`` maps (theory models mask,
# formula mask) to the revised theory's models mask. Subset tests use
# (a | b) == b for "a ⊆ b"; remember the formula-set order inversion:
# psi ∈ T means models(T) ⊆ models(psi).


def _h_k1(rev, uni, K, Kp, phi, psi):
    return 0 <= rev(K, phi) <= uni


def _h_k2(rev, uni, K, Kp, phi, psi):
    r = rev(K, phi)
    return (r | phi) == phi


def _h_k3(rev, uni, K, Kp, phi, psi):
    r = rev(K, phi)
    kf = K & phi
    return (kf | r) == r


def _h_k4(rev, uni, K, Kp, phi, psi):
    kf = K & phi
    if kf == 0:
        return True
    r = rev(K, phi)
    return (r | kf) == kf


def _h_k5(rev, uni, K, Kp, phi, psi):
    return rev(K, phi) != 0 or phi == 0


def _h_k6(rev, uni, K, Kp, phi, psi):
    # equivalent formulas are identical masks; this only guards against a
    # nondeterministic revise
    return rev(K, phi) == rev(K, phi)


def _h_k7(rev, uni, K, Kp, phi, psi):
    cn = rev(K, phi) & psi
    both = rev(K, phi & psi)
    return (cn | both) == both


def _h_k8(rev, uni, K, Kp, phi, psi):
    cn = rev(K, phi) & psi
    if cn == 0:
        return True
    both = rev(K, phi & psi)
    return (both | cn) == cn


def _h_k9(rev, uni, K, Kp, phi, psi):
    if K & phi or Kp & phi:
        return True
    return rev(K, phi) == rev(Kp, phi)


def _h_k9_1(rev, uni, K, Kp, phi, psi):
    if K & phi:
        return True
    bot = rev(0, phi)
    r = rev(K, phi)
    return (bot | r) == r


def _h_k9_2(rev, uni, K, Kp, phi, psi):
    if K & phi:
        return True
    bot = rev(0, phi)
    return (rev(K, phi) | bot) == bot


def _h_k9_2p(rev, uni, K, Kp, phi, psi):
    if (K | psi) != psi:
        return True
    if (rev(0, phi) | psi) != psi:
        return True
    return (rev(K, phi) | psi) == psi


def _h_u8(rev, uni, K, Kp, phi, psi):
    return rev(K | Kp, phi) == (rev(K, phi) | rev(Kp, phi))


def _h_u8_1(rev, uni, K, Kp, phi, psi):
    if (Kp | K) != K:  # K ⊆ K' as formula sets: models(K') ⊆ models(K)
        return True
    a = rev(K, phi)
    b = rev(Kp, phi)
    return (b | a) == a


def _h_u8_2(rev, uni, K, Kp, phi, psi):
    inter = rev(K, phi) | rev(Kp, phi)
    return (rev(K | Kp, phi) | inter) == inter


def _h_km1(rev, uni, K, Kp, phi, psi):
    if (K & phi) == 0 or (Kp & phi) == 0:
        return True
    return rev(K | Kp, phi) == (rev(K, phi) | rev(Kp, phi))


def _h_k9u81(rev, uni, K, Kp, phi, psi):
    if K & phi or Kp & phi:
        return True
    return rev(K | Kp, phi) == (rev(K, phi) | rev(Kp, phi))


def _h_c1(rev, uni, K, Kp, phi, psi):
    if (phi | psi) != psi:
        return True
    return rev(rev(K, psi), phi) == rev(K, phi)


def _h_c2(rev, uni, K, Kp, phi, psi):
    if phi & psi:
        return True
    return rev(rev(K, psi), phi) == rev(K, phi)


def _h_c2p(rev, uni, K, Kp, phi, psi):
    if K & phi or phi & psi:
        return True
    return rev(rev(K, psi), phi) == rev(K, phi)


def _h_c3(rev, uni, K, Kp, phi, psi):
    r = rev(K, phi)
    if (r | psi) != psi:
        return True
    return (rev(rev(K, psi), phi) | psi) == psi


def _h_c4(rev, uni, K, Kp, phi, psi):
    if (rev(K, phi) & psi) == 0:
        return True
    return (rev(rev(K, psi), phi) & psi) != 0


def _h_phiandpsi(rev, uni, K, Kp, phi, psi):
    r = rev(K, psi)
    if (r & phi) == 0:
        return True
    return rev(r, phi) == rev(K, psi & phi)


def _h_psi(rev, uni, K, Kp, phi, psi):
    if rev(K, psi | phi) & phi:
        return True
    return rev(rev(K, psi), phi) == rev(K, phi)


def _h_gen(rev, uni, K, Kp, phi, psi):
    r = rev(K, phi)
    if (r | psi) != psi:
        return True
    return rev(rev(K, psi), phi) == r


def _o_row(rev, K, Kp, phi, psi):
    return rev(K, phi)


def _o_conj(rev, K, Kp, phi, psi):
    return rev(K, phi & psi)


def _o_prime(rev, K, Kp, phi, psi):
    return rev(Kp, phi)


def _o_union(rev, K, Kp, phi, psi):
    return rev(K | Kp, phi)


def _o_iter(rev, K, Kp, phi, psi):
    return rev(rev(K, psi), phi)


@dataclass(frozen=True)
class _Clause:
    shape: str  # "KF": (K, phi); "KKF": (K, K', phi); "KFF": (K, phi, psi)
    holds: Callable[..., bool]
    observed: Callable[..., int]
    required: str


_CLAUSES: dict[PostulateId, _Clause] = {
    PostulateId.K1: _Clause("KF", _h_k1, _o_row, "K*phi is a theory over the signature"),
    PostulateId.K2: _Clause("KF", _h_k2, _o_row, "phi ∈ K*phi"),
    PostulateId.K3: _Clause("KF", _h_k3, _o_row, "K*phi ⊆ Cn(K, phi)"),
    PostulateId.K4: _Clause("KF", _h_k4, _o_row, "if ¬phi ∉ K then Cn(K, phi) ⊆ K*phi"),
    PostulateId.K5: _Clause("KF", _h_k5, _o_row, "K*phi inconsistent only if phi ≡ false"),
    PostulateId.K6: _Clause("KF", _h_k6, _o_row, "equivalent inputs revise equally"),
    PostulateId.K7: _Clause("KFF", _h_k7, _o_conj, "K*(phi ∧ psi) ⊆ Cn(K*phi, psi)"),
    PostulateId.K8: _Clause("KFF", _h_k8, _o_conj,
                            "if ¬psi ∉ K*phi then Cn(K*phi, psi) ⊆ K*(phi ∧ psi)"),
    PostulateId.K9: _Clause("KKF", _h_k9, _o_prime,
                            "if ¬phi ∈ K and ¬phi ∈ K' then K*phi = K'*phi"),
    PostulateId.K9_1: _Clause("KF", _h_k9_1, _o_row,
                              "if ¬phi ∈ K then K*phi ⊆ bot*phi"),
    PostulateId.K9_2: _Clause("KF", _h_k9_2, _o_row,
                              "if ¬phi ∈ K then bot*phi ⊆ K*phi"),
    PostulateId.K9_2P: _Clause("KFF", _h_k9_2p, _o_row,
                               "if psi ∈ K and psi ∈ bot*phi then psi ∈ K*phi"),
    PostulateId.U8: _Clause("KKF", _h_u8, _o_union,
                            "(K ∩ K')*phi = (K*phi) ∩ (K'*phi)"),
    PostulateId.U8_1: _Clause("KKF", _h_u8_1, _o_prime,
                              "if K ⊆ K' then K*phi ⊆ K'*phi"),
    PostulateId.U8_2: _Clause("KKF", _h_u8_2, _o_union,
                              "(K*phi) ∩ (K'*phi) ⊆ (K ∩ K')*phi"),
    PostulateId.C1: _Clause("KFF", _h_c1, _o_iter,
                            "if phi ⊨ psi then (K*psi)*phi = K*phi"),
    PostulateId.C2: _Clause("KFF", _h_c2, _o_iter,
                            "if phi ⊨ ¬psi then (K*psi)*phi = K*phi"),
    PostulateId.C2P: _Clause("KFF", _h_c2p, _o_iter,
                             "if ¬phi ∈ K and phi ⊨ ¬psi then (K*psi)*phi = K*phi"),
    PostulateId.C3: _Clause("KFF", _h_c3, _o_iter,
                            "if psi ∈ K*phi then psi ∈ (K*psi)*phi"),
    PostulateId.C4: _Clause("KFF", _h_c4, _o_iter,
                            "if ¬psi ∉ K*phi then ¬psi ∉ (K*psi)*phi"),
    PostulateId.P_PHIANDPSI: _Clause("KFF", _h_phiandpsi, _o_iter,
                                     "if ¬phi ∉ K*psi then (K*psi)*phi = K*(psi ∧ phi)"),
    PostulateId.P_PSI: _Clause("KFF", _h_psi, _o_iter,
                               "if ¬phi ∈ K*(psi ∨ phi) then (K*psi)*phi = K*phi"),
    PostulateId.P_GEN: _Clause("KFF", _h_gen, _o_iter,
                               "if psi ∈ K*phi then (K*psi)*phi = K*phi"),
    PostulateId.P_KM1: _Clause("KKF", _h_km1, _o_union,
                               "if ¬phi ∉ K and ¬phi ∉ K' then "
                               "(K ∩ K')*phi = (K*phi) ∩ (K'*phi)"),
    PostulateId.P_K9U81: _Clause("KKF", _h_k9u81, _o_union,
                                 "if ¬phi ∈ K and ¬phi ∈ K' then "
                                 "(K*phi) ∩ (K'*phi) = (K ∩ K')*phi"),
}

# exhaustive-mode atom caps per quantifier shape; (K, phi, psi) clauses
# blow up fastest
_EXHAUSTIVE_MAX = {"KF": 3, "KKF": 3, "KFF": 2}


@dataclass(frozen=True)
class Violation:
    """Witness record for a failed postulate; ``replay`` re-derives the
    failure from the bindings, so violations are self-certifying."""

    postulate: PostulateId
    k: Theory
    phi: PropSet
    observed: Theory
    required: str
    kprime: Optional[Theory] = None
    psi: Optional[PropSet] = None

    def replay(self, rv: Revision) -> bool:
        """True when the recorded bindings still violate the clause."""
        clause = _CLAUSES[self.postulate]
        return not clause.holds(
            rv.revise_mask,
            rv.sig.universe_mask,
            self.k.models.mask,
            self.kprime.models.mask if self.kprime is not None else 0,
            self.phi.mask,
            self.psi.mask if self.psi is not None else 0,
        )

    def describe(self) -> str:
        parts = [f"K={theory_text(self.k)}"]
        if self.kprime is not None:
            parts.append(f"Kprime={theory_text(self.kprime)}")
        parts.append(f"phi={dnf_text(self.phi)}")
        if self.psi is not None:
            parts.append(f"psi={dnf_text(self.psi)}")
        parts.append(f"observed={theory_text(self.observed)}")
        parts.append(f"required={self.required}")
        return "; ".join(parts)

    def witness_json(self) -> dict:
        out = {"K": theory_text(self.k)}
        if self.kprime is not None:
            out["Kprime"] = theory_text(self.kprime)
        out["phi"] = dnf_text(self.phi)
        if self.psi is not None:
            out["psi"] = dnf_text(self.psi)
        out["observed"] = theory_text(self.observed)
        out["required"] = self.required
        return out


def _make_violation(rv: Revision, pid: PostulateId, K: int, Kp: int,
                    phi: int, psi: int) -> Violation:
    sig = rv.sig
    clause = _CLAUSES[pid]
    shape = clause.shape
    return Violation(
        postulate=pid,
        k=Theory(PropSet(sig, K)),
        kprime=Theory(PropSet(sig, Kp)) if shape == "KKF" else None,
        phi=PropSet(sig, phi),
        psi=PropSet(sig, psi) if shape == "KFF" else None,
        observed=Theory(PropSet(sig, clause.observed(rv.revise_mask, K, Kp, phi, psi))),
        required=clause.required,
    )


def check_postulate(
    rv: Revision,
    pid: PostulateId,
    *,
    mode: str = "exhaustive",
    seed: Optional[int] = None,
    samples: int = 500,
) -> Optional[Violation]:
    """Evaluate one postulate; None means it holds everywhere checked.

    Exhaustive mode sweeps the whole binding domain in lexicographic
    order and needs n <= 2 for (K, phi, psi) clauses, n <= 3 otherwise.
    Sampled mode draws ``samples`` bindings from random.Random(seed), one
    randrange per quantifier in binding order.
    """
    clause = _CLAUSES[pid]
    sig = rv.sig
    nmasks = sig.universe_mask + 1
    uni = sig.universe_mask
    holds = clause.holds
    shape = clause.shape

    if mode == "exhaustive":
        if sig.n > _EXHAUSTIVE_MAX[shape]:
            raise DomainTooLargeError(
                f"{pid.name} quantifies over too many bindings at {sig.n} atoms; "
                "run in sampled mode instead"
            )
        table = rv.table()

        def rev(k, f, _t=table):
            return _t[k][f]

        if shape == "KF":
            for K in range(nmasks):
                for phi in range(nmasks):
                    if not holds(rev, uni, K, 0, phi, 0):
                        return _make_violation(rv, pid, K, 0, phi, 0)
        elif shape == "KKF":
            for K in range(nmasks):
                for Kp in range(nmasks):
                    for phi in range(nmasks):
                        if not holds(rev, uni, K, Kp, phi, 0):
                            return _make_violation(rv, pid, K, Kp, phi, 0)
        else:
            for K in range(nmasks):
                for phi in range(nmasks):
                    for psi in range(nmasks):
                        if not holds(rev, uni, K, 0, phi, psi):
                            return _make_violation(rv, pid, K, 0, phi, psi)
        return None

    if mode != "sampled":
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if seed is None:
        raise ValueError("sampled mode needs a seed")
    rng = random.Random(seed)
    rev = rv.revise_mask
    for _ in range(samples):
        K = rng.randrange(nmasks)
        Kp = rng.randrange(nmasks) if shape == "KKF" else 0
        phi = rng.randrange(nmasks)
        psi = rng.randrange(nmasks) if shape == "KFF" else 0
        if not holds(rev, uni, K, Kp, phi, psi):
            return _make_violation(rv, pid, K, Kp, phi, psi)
    return None


@dataclass(frozen=True)
class SuiteReport:
    """Aggregated verdicts, ordered canonically by postulate."""

    sig: Signature
    mode: str
    seed: Optional[int]
    samples: Optional[int]
    domain_size: int  # number of theories = number of formula classes
    results: tuple[tuple[PostulateId, Optional[Violation]], ...]

    @property
    def all_pass(self) -> bool:
        return all(v is None for _, v in self.results)

    @property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(v for _, v in self.results if v is not None)

    def verdict(self, pid: PostulateId) -> Optional[Violation]:
        for p, v in self.results:
            if p is pid:
                return v
        raise KeyError(pid.name)

    def to_text(self) -> str:
        head = (
            f"postulate suite over atoms {' '.join(self.sig.atoms)}: "
            f"mode={self.mode}"
        )
        if self.mode == "sampled":
            head += f" seed={self.seed} samples={self.samples}"
        head += f" domain={self.domain_size} theories x {self.domain_size} formula classes"
        lines = [head]
        for pid, v in self.results:
            if v is None:
                lines.append(f"{pid.name} pass")
            else:
                lines.append(f"{pid.name} FAIL {v.describe()}")
        return "\n".join(lines) + "\n"

    def to_json_records(self) -> list[dict]:
        records = []
        for pid, v in self.results:
            rec: dict = {"postulate": pid.name,
                         "verdict": "pass" if v is None else "fail"}
            if v is not None:
                rec["witness"] = v.witness_json()
            rec["mode"] = self.mode
            if self.mode == "sampled":
                rec["seed"] = self.seed
                rec["samples"] = self.samples
            records.append(rec)
        return records


def run_suite(
    rv: Revision,
    ids: Iterable[PostulateId],
    *,
    mode: str = "exhaustive",
    seed: Optional[int] = None,
    samples: int = 500,
) -> SuiteReport:
    """check_postulate over a set of ids, merged in canonical order."""
    wanted = set(ids)
    results = []
    for pid in PostulateId:
        if pid in wanted:
            results.append(
                (pid, check_postulate(rv, pid, mode=mode, seed=seed, samples=samples))
            )
    return SuiteReport(
        sig=rv.sig,
        mode=mode,
        seed=seed if mode == "sampled" else None,
        samples=samples if mode == "sampled" else None,
        domain_size=rv.sig.universe_mask + 1,
        results=tuple(results),
    )


def check_implication_9p_to_92(rv: Revision) -> Optional[Violation]:
    """The conditional: K1, K2 and K9.2' together force K9.2.

    Returns None when the conditional holds (including vacuously, when
    the antecedent fails); a Violation only when the antecedent holds
    and K9.2 still fails somewhere.
    """
    for pid in (PostulateId.K1, PostulateId.K2, PostulateId.K9_2P):
        if check_postulate(rv, pid) is not None:
            return None
    v = check_postulate(rv, PostulateId.K9_2)
    if v is None:
        return None
    return dataclasses.replace(
        v, required="K1, K2 and K9_2P hold, so K9_2 must: " + v.required
    )


class ImpossibilityTarget(Enum):
    """Postulate combinations that no revision can satisfy in full."""

    U8_1_VS_K4K5 = "U8_1_vs_K4K5"
    C2_VS_K1K4 = "C2_vs_K1K4"


_IMPOSSIBILITY_PRECONDITIONS = {
    ImpossibilityTarget.U8_1_VS_K4K5: (PostulateId.K4, PostulateId.K5),
    ImpossibilityTarget.C2_VS_K1K4: (
        PostulateId.K1, PostulateId.K2, PostulateId.K3, PostulateId.K4,
    ),
}


def find_impossibility_witness(
    rv: Revision,
    which: Union[ImpossibilityTarget, str],
    *,
    verify_preconditions: bool = True,
) -> Violation:
    """Produce a concrete violation of U8.1 (resp. C2) for a revision that
    satisfies the rest of the named postulate set.

    The search follows the shape of the impossibility arguments rather
    than a blind sweep: both start from bot*true, the default closure of
    the tautology. A witness is guaranteed for every K1-K9 revision over
    a signature with at least one atom, so exhaustion of the search
    space signals an implementation bug.
    """
    if not isinstance(which, ImpossibilityTarget):
        which = ImpossibilityTarget(which)
    if verify_preconditions:
        for pid in _IMPOSSIBILITY_PRECONDITIONS[which]:
            if check_postulate(rv, pid) is not None:
                raise ValueError(
                    f"witness search for {which.value} assumes {pid.name} holds, "
                    "but this revision violates it"
                )
    sig = rv.sig
    uni = sig.universe_mask
    rev = rv.revise_mask
    bottom_true = rev(0, uni)

    if which is ImpossibilityTarget.U8_1_VS_K4K5:
        # Any consistent Cn(phi) missing some default consequence of true
        # breaks monotonicity against bot: Cn(phi) ⊆ bot yet
        # Cn(phi)*true keeps phi (by K4) while bot*true may not.
        for phi in range(1, uni + 1):
            if (bottom_true | phi) != phi:
                cand = Violation(
                    postulate=PostulateId.U8_1,
                    k=Theory(PropSet(sig, phi)),
                    kprime=Theory.bottom(sig),
                    phi=PropSet.full(sig),
                    observed=Theory(PropSet(sig, rev(0, uni))),
                    required=_CLAUSES[PostulateId.U8_1].required,
                )
                if cand.replay(rv):
                    return cand
        raise SearchExhaustedError(
            "no U8_1 witness found; the revision cannot satisfy K4 and K5"
        )

    # C2 instantiated at psi = false collapses every severe row to the
    # bottom row, so any consistent theory other than bot*true witnesses.
    for km in range(1, uni + 1):
        if km != bottom_true:
            cand = Violation(
                postulate=PostulateId.C2,
                k=Theory(PropSet(sig, km)),
                phi=PropSet.full(sig),
                psi=PropSet.empty(sig),
                observed=Theory(PropSet(sig, rev(rev(km, 0), uni))),
                required=_CLAUSES[PostulateId.C2].required,
            )
            if cand.replay(rv):
                return cand
    raise SearchExhaustedError(
        "no C2 witness found; the revision cannot satisfy K1-K4"
    )


@dataclass(frozen=True)
class UnderdeterminationWitness:
    """Two rank functions whose revisions agree on every cell of the
    anchor theory's row yet diverge after one further revision step."""

    anchor: Theory
    first: RankFunction
    second: RankFunction
    psi: PropSet
    phi: PropSet


def dynamic_underdetermination(sig: Signature, k: Theory) -> UnderdeterminationWitness:
    """Search all pairs of normalized rank functions for a witness that
    the map chi |-> K*chi does not determine iterated revision.

    Raises WitnessNotFoundError when no pair exists; the anchor is then
    degenerate in the sense that its row pins down the whole operator
    (the inconsistent theory always is, since its row is the entire
    default structure).
    """
    if sig.n != 2:
        raise DomainTooLargeError(
            "under-determination search is defined for exactly 2 atoms"
        )
    nmasks = sig.universe_mask + 1
    km = k.models.mask
    ranks = list(enumerate_rank_functions(sig))
    revs = [RankedRevision(r) for r in ranks]
    rows = [
        tuple(rv.revise_mask(km, f) for f in range(nmasks)) for rv in revs
    ]
    for i in range(len(revs)):
        for j in range(i + 1, len(revs)):
            if rows[i] != rows[j]:
                continue
            rm_i = revs[i].revise_mask
            rm_j = revs[j].revise_mask
            for psi in range(nmasks):
                t = rows[i][psi]
                for phi in range(nmasks):
                    if rm_i(t, phi) != rm_j(t, phi):
                        return UnderdeterminationWitness(
                            anchor=k,
                            first=ranks[i],
                            second=ranks[j],
                            psi=PropSet(sig, psi),
                            phi=PropSet(sig, phi),
                        )
    raise WitnessNotFoundError(
        f"anchor {theory_text(k)} is degenerate: its row determines "
        "iterated revision for every rank function pair"
    )
