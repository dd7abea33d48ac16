"""Strategy deciders for bipartite product-unitary discrimination.

A set {U_i = A_i (x) B_i} is tested under four probe/measurement regimes:

* GDR: one composite probe (ancilla allowed), one measurement;
* GDA: composite probe, adaptive two-stage local measurements;
* LDR: each party fixes its own probe upfront, measures in sequence;
* LDA: the responding party chooses its probe after hearing the outcome.

Local strategies are modeled as group discrimination: the starting party
identifies which class of phase-equal factors acted, the responder then
separates the class.  Indices with phase-equal starting factors produce
evolved states equal up to phase for every probe, so no measurement ever
splits them: any unambiguous elimination retains whole groups.  That
observation makes three certification routes exact:

* a responder within-group problem with no common probe kills LDA and LDR;
* for LDR the responder probe is fixed, so the union of all within-group
  constraints must hold at once; infeasibility of the union kills LDR;
* when group identification itself is infeasible for the starting party,
  the verdict is still certified provided every two-group union is beyond
  the responder, since then partial elimination cannot help either.

When none of these routes close a failed search (a branch relies on the
unexplored partial-elimination family), the status is not_found rather
than a fake certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qcore import (
    DEFAULT_TOL,
    StateVector,
    Tolerances,
    as_matrix,
)
from .eigdist import build_pair_probe, pair_distinguishable
from .probefeas import OrthogonalityProblem, ProbeFeasibility, common_probe_feasible, purify_witness

__all__ = [
    "ProductUnitarySet",
    "FactorGroup",
    "StageTwo",
    "OutcomeBranch",
    "ProtocolTree",
    "ProbeWitness",
    "StrategyVerdict",
    "VerifyResult",
    "phase_equal",
    "group_by_factor",
    "verify_tree",
    "verify_probe",
    "check_gdr",
    "check_lda",
    "check_ldr",
    "check_gda",
    "hierarchy_audit",
]

_PARTIES = ("A", "B")


def _party_index(party):
    if party not in _PARTIES:
        raise ValueError(f"party must be 'A' or 'B', got {party!r}")
    return _PARTIES.index(party)


# -----------------------------------------------------------------------------
# The set
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductUnitarySet:
    """Indexed product unitaries A_i (x) B_i with optional priors."""

    party_dims: tuple
    items: tuple  # of (label, factor_A, factor_B)
    priors: np.ndarray | None = None

    def __post_init__(self):
        da, db = self.party_dims
        norm_items = []
        for label, a, b in self.items:
            a = as_matrix(a)
            b = as_matrix(b)
            if a.shape != (da, da) or b.shape != (db, db):
                raise ValueError(f"item {label!r}: factor shapes {a.shape}, {b.shape} "
                                 f"do not match party dims {self.party_dims}")
            for f in (a, b):
                if np.max(np.abs(f.conj().T @ f - np.eye(f.shape[0]))) > 1e-8:
                    raise ValueError(f"item {label!r}: factor is not unitary")
            norm_items.append((str(label), a, b))
        object.__setattr__(self, "items", tuple(norm_items))
        object.__setattr__(self, "party_dims", (int(da), int(db)))
        if self.priors is None:
            p = np.full(len(norm_items), 1.0 / max(len(norm_items), 1))
        else:
            p = np.asarray(self.priors, dtype=float)
            if p.shape != (len(norm_items),) or np.any(p < -1e-12) or abs(p.sum() - 1) > 1e-9:
                raise ValueError("priors must be a probability vector over the items")
        object.__setattr__(self, "priors", p)

    @property
    def size(self):
        return len(self.items)

    @property
    def labels(self):
        return tuple(it[0] for it in self.items)

    @property
    def dim(self):
        return self.party_dims[0] * self.party_dims[1]

    def factor(self, index, party):
        return self.items[index][1 + _party_index(party)]

    def factors(self, party):
        k = 1 + _party_index(party)
        return tuple(it[k] for it in self.items)

    def global_unitary(self, index):
        _, a, b = self.items[index]
        return np.kron(a, b)

    def global_unitaries(self):
        return tuple(self.global_unitary(i) for i in range(self.size))


def phase_equal(a, b, tol: float = 1e-9) -> bool:
    """Whether two unitaries agree up to one global phase: |Tr(a†b)| = d."""
    a = as_matrix(a)
    b = as_matrix(b)
    d = a.shape[0]
    return abs(np.trace(a.conj().T @ b)) >= d - tol


@dataclass(frozen=True)
class FactorGroup:
    party: str
    representative: np.ndarray
    member_indices: tuple


def group_by_factor(uset: ProductUnitarySet, party) -> list:
    """Partition indices into classes of phase-equal factors on one side."""
    groups = []
    for i in range(uset.size):
        f = uset.factor(i, party)
        for g in groups:
            if phase_equal(g[0], f):
                g[1].append(i)
                break
        else:
            groups.append((f, [i]))
    return [FactorGroup(party=party, representative=f, member_indices=tuple(members))
            for f, members in groups]


def _relative(a, b):
    return as_matrix(a).conj().T @ as_matrix(b)


def _dedup_phase(ops):
    kept = []
    for k in ops:
        if not any(phase_equal(k, other) for other in kept):
            kept.append(k)
    return kept


# -----------------------------------------------------------------------------
# Protocol trees and their simulation
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class StageTwo:
    """Responder stage: probe, measurement, and an outcome-to-guess map."""

    party: str
    probe: StateVector
    ancilla_dim: int
    povm: tuple
    guesses: tuple  # per outcome: unitary index or None
    correction: np.ndarray | None = None  # known unitary applied before measuring


@dataclass(frozen=True)
class OutcomeBranch:
    retained: tuple
    guess: int | None = None
    stage2: StageTwo | None = None


@dataclass(frozen=True)
class ProtocolTree:
    """Two-stage sequential local protocol, starting party first."""

    start: str
    probe: StateVector
    ancilla_dim: int
    povm: tuple
    branches: tuple
    note: str = ""


@dataclass(frozen=True)
class ProbeWitness:
    """Single-probe, single-measurement witness for the global strategies."""

    probe: StateVector
    ancilla_dim: int
    povm: tuple
    guesses: tuple


@dataclass(frozen=True)
class StrategyVerdict:
    strategy: str
    starting_party: str  # "A" | "B" | "either"
    status: str  # "distinguishable" | "indistinguishable_certified" | "not_found"
    witness: object | None = None
    note: str = ""
    feasibility: ProbeFeasibility | None = None


@dataclass(frozen=True)
class VerifyResult:
    success: np.ndarray  # per-unitary probability of the correct guess
    leakage: np.ndarray  # per-unitary mass on outcomes that should not fire
    stage1_probs: np.ndarray  # (num unitaries) x (stage-1 outcomes)


def _check_povm(povm, dim, what):
    if not povm:
        raise ValueError(f"{what}: empty POVM")
    total = np.zeros((dim, dim), dtype=complex)
    for k, m in enumerate(povm):
        m = as_matrix(m)
        if m.shape != (dim, dim):
            raise ValueError(f"{what}: element {k} has shape {m.shape}, expected {(dim, dim)}")
        if np.max(np.abs(m - m.conj().T)) > 1e-8:
            raise ValueError(f"{what}: element {k} is not Hermitian")
        lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())
        if lo < -1e-10:
            raise ValueError(f"{what}: element {k} has eigenvalue {lo:.3e} < -1e-10")
        total += m
    err = float(np.max(np.abs(total - np.eye(dim))))
    if err > 1e-8:
        raise ValueError(f"{what}: completeness violated by {err:.3e}")


def _evolved(factor, ancilla_dim, probe: StateVector):
    u = as_matrix(factor)
    if ancilla_dim > 1:
        u = np.kron(u, np.eye(ancilla_dim))
    return u @ probe.amplitudes


def verify_tree(uset: ProductUnitarySet, tree: ProtocolTree,
                tol: Tolerances = DEFAULT_TOL) -> VerifyResult:
    """Exact simulation of a protocol tree on every unitary of the set.

    Returns per-unitary success probability, leakage (mass on outcomes
    whose retained set excludes the true index, plus mass on dead ends),
    and the full stage-1 outcome table.  ``tree`` may also be the JSON
    object form of a tree, which is decoded first.
    """
    if isinstance(tree, dict):
        from .jsonio import tree_from_json

        tree = tree_from_json(tree)
    start = tree.start
    resp = "B" if start == "A" else "A"
    d1 = uset.party_dims[_party_index(start)]
    d2 = uset.party_dims[_party_index(resp)]

    if tree.probe.dim != d1 * tree.ancilla_dim:
        raise ValueError(f"stage-1 probe dim {tree.probe.dim} != {d1} * {tree.ancilla_dim}")
    _check_povm(tree.povm, d1 * tree.ancilla_dim, "stage-1 POVM")
    if len(tree.branches) != len(tree.povm):
        raise ValueError("one branch per stage-1 outcome required")

    m = uset.size
    success = np.zeros(m)
    leakage = np.zeros(m)
    stage1 = np.zeros((m, len(tree.povm)))

    for i in range(m):
        phi1 = _evolved(uset.factor(i, start), tree.ancilla_dim, tree.probe)
        for a, (el, br) in enumerate(zip(tree.povm, tree.branches)):
            p = float(np.real(phi1.conj() @ (as_matrix(el) @ phi1)))
            p = max(p, 0.0)
            stage1[i, a] = p
            if p < 1e-15:
                continue
            if i not in br.retained:
                leakage[i] += p
                continue
            if br.stage2 is None:
                if br.guess is None:
                    leakage[i] += p  # declared possible but no answer
                elif br.guess == i:
                    success[i] += p
                continue
            st = br.stage2
            if st.party != resp:
                raise ValueError("stage-2 party must be the responder")
            if st.probe.dim != d2 * st.ancilla_dim:
                raise ValueError(f"stage-2 probe dim {st.probe.dim} != {d2} * {st.ancilla_dim}")
            _check_povm(st.povm, d2 * st.ancilla_dim, f"stage-2 POVM (outcome {a})")
            if len(st.guesses) != len(st.povm):
                raise ValueError("stage-2 guesses must map every outcome")
            phi2 = _evolved(uset.factor(i, resp), st.ancilla_dim, st.probe)
            if st.correction is not None:
                phi2 = as_matrix(st.correction) @ phi2
            for el2, guess in zip(st.povm, st.guesses):
                q = float(np.real(phi2.conj() @ (as_matrix(el2) @ phi2)))
                q = max(q, 0.0)
                if guess is None:
                    leakage[i] += p * q
                elif guess == i:
                    success[i] += p * q
    return VerifyResult(success=success, leakage=leakage, stage1_probs=stage1)


def verify_probe(unitaries, witness: ProbeWitness) -> np.ndarray:
    """Success probabilities of a one-shot probe witness on given unitaries."""
    mats = [as_matrix(u) for u in unitaries]
    d = mats[0].shape[0]
    _check_povm(witness.povm, d * witness.ancilla_dim, "witness POVM")
    success = np.zeros(len(mats))
    for i, u in enumerate(mats):
        phi = _evolved(u, witness.ancilla_dim, witness.probe)
        for el, guess in zip(witness.povm, witness.guesses):
            if guess == i:
                success[i] += float(np.real(phi.conj() @ (as_matrix(el) @ phi)))
    return success


# -----------------------------------------------------------------------------
# Witness assembly helpers
# -----------------------------------------------------------------------------

def _orthonormalize_states(states):
    """Orthonormalize near-orthogonal unit vectors, keeping each output
    aligned with its input (QR with a phase fix on the diagonal)."""
    mat = np.column_stack(states)
    q, r = np.linalg.qr(mat)
    for k in range(len(states)):
        piv = r[k, k]
        if abs(piv) < 1e-12:
            raise ValueError("states are not linearly independent")
        q[:, k] *= piv / abs(piv)
    return [q[:, k] for k in range(len(states))]


def _projective_povm(states, dim):
    """Projectors onto orthonormalized states plus the remainder element."""
    ortho = _orthonormalize_states(states)
    povm = [np.outer(v, v.conj()) for v in ortho]
    rest = np.eye(dim, dtype=complex) - sum(povm)
    rest = (rest + rest.conj().T) / 2
    if np.max(np.abs(rest)) > 1e-12:
        povm.append(rest)
        return povm, True
    # states span everything; fold the numerically zero remainder away
    povm[-1] = povm[-1] + rest
    return povm, False


def _one_shot_witness(factors, feas: ProbeFeasibility, tol):
    """Probe + orthogonal-state measurement from a feasibility witness."""
    psi, r = purify_witness(feas.witness, tol)
    dim = as_matrix(factors[0]).shape[0] * r
    probe = StateVector(psi.amplitudes)
    states = [_evolved(f, r, probe) for f in factors]
    povm, has_rest = _projective_povm(states, dim)
    guesses = tuple(range(len(factors))) + ((None,) if has_rest else ())
    return ProbeWitness(probe=probe, ancilla_dim=r, povm=tuple(povm), guesses=guesses)


def _pass_through_stage1(d_start):
    return StateVector(np.eye(d_start)[:, 0]), 1, (np.eye(d_start, dtype=complex),)


def _stage2_from_feasibility(party, members, factors, feas, tol):
    psi, r = purify_witness(feas.witness, tol)
    probe = StateVector(psi.amplitudes)
    dim = as_matrix(factors[0]).shape[0] * r
    states = [_evolved(factors[k], r, probe) for k in range(len(factors))]
    povm, has_rest = _projective_povm(states, dim)
    guesses = tuple(members) + ((None,) if has_rest else ())
    return StageTwo(party=party, probe=probe, ancilla_dim=r,
                    povm=tuple(povm), guesses=guesses)


# -----------------------------------------------------------------------------
# Global strategies
# -----------------------------------------------------------------------------

def gdr_problem(uset: ProductUnitarySet) -> OrthogonalityProblem:
    """The orthogonalization problem a fixed composite probe must solve:
    one constraint per pairwise relative product unitary, phase-deduplicated.

    Exposed so certificates attached to a verdict can be re-verified
    against the exact constraint system that produced them.
    """
    ops = []
    for i in range(uset.size):
        for j in range(i + 1, uset.size):
            ops.append(np.kron(_relative(uset.factor(i, "A"), uset.factor(j, "A")),
                               _relative(uset.factor(i, "B"), uset.factor(j, "B"))))
    return OrthogonalityProblem(dim=uset.dim, operators=tuple(_dedup_phase(ops)))


def check_gdr(uset: ProductUnitarySet, tol: Tolerances = DEFAULT_TOL) -> StrategyVerdict:
    """One composite probe, one measurement: feasibility of a common probe
    orthogonalizing all pairwise relative product unitaries."""
    m = uset.size
    if m <= 1:
        d = uset.dim
        witness = ProbeWitness(probe=StateVector(np.eye(d)[:, 0]), ancilla_dim=1,
                               povm=(np.eye(d, dtype=complex),), guesses=(0,) * m or (None,))
        return StrategyVerdict(strategy="GDR", starting_party="either",
                               status="distinguishable", witness=witness,
                               note="at most one candidate")
    feas = common_probe_feasible(gdr_problem(uset), tol)
    if feas.status == "feasible":
        witness = _one_shot_witness(uset.global_unitaries(), feas, tol)
        return StrategyVerdict(strategy="GDR", starting_party="either",
                               status="distinguishable", witness=witness,
                               note=feas.note, feasibility=feas)
    if feas.status == "infeasible_certified":
        return StrategyVerdict(strategy="GDR", starting_party="either",
                               status="indistinguishable_certified",
                               note=feas.note, feasibility=feas)
    return StrategyVerdict(strategy="GDR", starting_party="either", status="not_found",
                           note=feas.note, feasibility=feas)


# -----------------------------------------------------------------------------
# Local strategies
# -----------------------------------------------------------------------------

def _pair_tree(uset, start, tol):
    """Two candidates: adaptivity is irrelevant, one party's pair criterion
    decides, and either party may do the measuring."""
    resp = "B" if start == "A" else "A"
    res_start = pair_distinguishable(uset.factor(0, start), uset.factor(1, start), tol)
    res_resp = pair_distinguishable(uset.factor(0, resp), uset.factor(1, resp), tol)
    d1 = uset.party_dims[_party_index(start)]

    if res_start.distinguishable:
        probe = build_pair_probe(uset.factor(0, start), uset.factor(1, start), res_start, tol)
        tree = ProtocolTree(
            start=start, probe=probe.probe, ancilla_dim=probe.ancilla_dim,
            povm=tuple(probe.measurement),
            branches=(OutcomeBranch(retained=(0,), guess=0),
                      OutcomeBranch(retained=(1,), guess=1)),
            note="pair criterion met by the starting party")
        return tree, None
    if res_resp.distinguishable:
        probe = build_pair_probe(uset.factor(0, resp), uset.factor(1, resp), res_resp, tol)
        s1_probe, s1_anc, s1_povm = _pass_through_stage1(d1)
        st = StageTwo(party=resp, probe=probe.probe, ancilla_dim=probe.ancilla_dim,
                      povm=tuple(probe.measurement), guesses=(0, 1))
        tree = ProtocolTree(
            start=start, probe=s1_probe, ancilla_dim=s1_anc, povm=s1_povm,
            branches=(OutcomeBranch(retained=(0, 1), stage2=st),),
            note="pair criterion met by the responding party")
        return tree, None
    note = (f"two candidates, both factor pairs fail the pair criterion "
            f"(hull distances {res_start.min_norm:.6f} and {res_resp.min_norm:.6f}); "
            f"with two candidates outcome-dependent probes cannot help")
    return None, note


def _within_group_ops(uset, resp, members):
    ops = []
    for x in range(len(members)):
        for y in range(x + 1, len(members)):
            ops.append(_relative(uset.factor(members[x], resp), uset.factor(members[y], resp)))
    return _dedup_phase(ops)


def _union_reduction_certified(uset, resp, groups, tol):
    """True when every two-group union is certified beyond the responder,
    forcing any successful protocol to fully identify the group."""
    d2 = uset.party_dims[_party_index(resp)]
    for gi in range(len(groups)):
        for gj in range(gi + 1, len(groups)):
            members = tuple(sorted(groups[gi].member_indices + groups[gj].member_indices))
            ops = _within_group_ops(uset, resp, members)
            feas = common_probe_feasible(OrthogonalityProblem(dim=d2, operators=tuple(ops)), tol)
            if feas.status != "infeasible_certified":
                return False
    return True


def _locc_check(uset, start, adaptive, tol):
    strategy = "LDA" if adaptive else "LDR"
    resp = "B" if start == "A" else "A"
    m = uset.size
    d1 = uset.party_dims[_party_index(start)]
    d2 = uset.party_dims[_party_index(resp)]

    if m <= 1:
        probe, anc, povm = _pass_through_stage1(d1)
        tree = ProtocolTree(start=start, probe=probe, ancilla_dim=anc, povm=povm,
                            branches=(OutcomeBranch(retained=tuple(range(m)),
                                                    guess=0 if m else None),),
                            note="at most one candidate")
        return StrategyVerdict(strategy=strategy, starting_party=start,
                               status="distinguishable", witness=tree,
                               note="at most one candidate")
    if m == 2:
        tree, fail_note = _pair_tree(uset, start, tol)
        if tree is not None:
            return StrategyVerdict(strategy=strategy, starting_party=start,
                                   status="distinguishable", witness=tree, note=tree.note)
        return StrategyVerdict(strategy=strategy, starting_party=start,
                               status="indistinguishable_certified", note=fail_note)

    groups = group_by_factor(uset, start)

    # responder problems inside each group; these constraints bind every
    # protocol because phase-equal starting factors are never split
    group_feas = []
    for g in groups:
        ops = _within_group_ops(uset, resp, g.member_indices)
        if not ops:
            group_feas.append(None)
            continue
        feas = common_probe_feasible(OrthogonalityProblem(dim=d2, operators=tuple(ops)), tol)
        group_feas.append(feas)
        if feas.status == "infeasible_certified":
            return StrategyVerdict(
                strategy=strategy, starting_party=start,
                status="indistinguishable_certified",
                note=(f"indices {g.member_indices} share a starting factor, and no "
                      f"responder probe can separate them"),
                feasibility=feas)

    union_feas = None
    if not adaptive:
        union_ops = []
        for g in groups:
            union_ops.extend(_within_group_ops(uset, resp, g.member_indices))
        union_ops = _dedup_phase(union_ops)
        if union_ops:
            union_feas = common_probe_feasible(
                OrthogonalityProblem(dim=d2, operators=tuple(union_ops)), tol)
            if union_feas.status == "infeasible_certified":
                return StrategyVerdict(
                    strategy=strategy, starting_party=start,
                    status="indistinguishable_certified",
                    note=("the responder probe is fixed upfront, and no single probe "
                          "satisfies all within-group constraints at once"),
                    feasibility=union_feas)

    # stage 1: perfect identification of the starting party's factor group
    reps = [g.representative for g in groups]
    cross_ops = _dedup_phase([_relative(reps[x], reps[y])
                              for x in range(len(reps)) for y in range(x + 1, len(reps))])
    if cross_ops:
        stage1_feas = common_probe_feasible(
            OrthogonalityProblem(dim=d1, operators=tuple(cross_ops)), tol)
    else:
        stage1_feas = None  # single group, nothing to identify

    if stage1_feas is not None and stage1_feas.status == "infeasible_certified":
        if _union_reduction_certified(uset, resp, groups, tol):
            return StrategyVerdict(
                strategy=strategy, starting_party=start,
                status="indistinguishable_certified",
                note=("every two-group union defeats the responder, so the starting "
                      "party would have to identify its factor group exactly, and "
                      "no probe of its own can do that"),
                feasibility=stage1_feas)
        return StrategyVerdict(
            strategy=strategy, starting_party=start, status="not_found",
            note=("group identification by the starting party is certified "
                  "impossible, but partial-elimination protocols with overlapping "
                  "retained sets are not exhausted by this search"),
            feasibility=stage1_feas)
    if stage1_feas is not None and stage1_feas.status == "not_found":
        return StrategyVerdict(strategy=strategy, starting_party=start, status="not_found",
                               note=f"stage-1 search stalled: {stage1_feas.note}",
                               feasibility=stage1_feas)

    # feasible throughout; assemble the protocol tree
    unresolved = [f for f in group_feas if f is not None and f.status == "not_found"]
    if adaptive and unresolved:
        return StrategyVerdict(strategy=strategy, starting_party=start, status="not_found",
                               note=f"within-group search stalled: {unresolved[0].note}",
                               feasibility=unresolved[0])
    if not adaptive and union_feas is not None and union_feas.status == "not_found":
        return StrategyVerdict(strategy=strategy, starting_party=start, status="not_found",
                               note=f"shared-probe search stalled: {union_feas.note}",
                               feasibility=union_feas)

    def stage2_for(g, feas):
        members = g.member_indices
        if len(members) == 1:
            return None
        return _stage2_from_feasibility(resp, members,
                                        [uset.factor(k, resp) for k in members], feas, tol)

    if stage1_feas is None:
        probe, anc, povm = _pass_through_stage1(d1)
        g = groups[0]
        feas = union_feas if not adaptive else group_feas[0]
        st = stage2_for(g, feas)
        branch = (OutcomeBranch(retained=g.member_indices, stage2=st)
                  if st is not None else
                  OutcomeBranch(retained=g.member_indices, guess=g.member_indices[0]))
        tree = ProtocolTree(start=start, probe=probe, ancilla_dim=anc, povm=povm,
                            branches=(branch,),
                            note="single factor group, responder works alone")
    else:
        psi, r = purify_witness(stage1_feas.witness, tol)
        probe = StateVector(psi.amplitudes)
        states = [_evolved(g.representative, r, probe) for g in groups]
        povm, has_rest = _projective_povm(states, d1 * r)
        branches = []
        for gi, g in enumerate(groups):
            feas = union_feas if not adaptive else group_feas[gi]
            st = stage2_for(g, feas)
            if st is None:
                branches.append(OutcomeBranch(retained=g.member_indices,
                                              guess=g.member_indices[0]))
            else:
                branches.append(OutcomeBranch(retained=g.member_indices, stage2=st))
        if has_rest:
            branches.append(OutcomeBranch(retained=(), guess=None))
        tree = ProtocolTree(start=start, probe=probe, ancilla_dim=r,
                            povm=tuple(povm), branches=tuple(branches),
                            note="group identification followed by within-group separation")
    return StrategyVerdict(strategy=strategy, starting_party=start,
                           status="distinguishable", witness=tree, note=tree.note,
                           feasibility=stage1_feas)


def check_lda(uset: ProductUnitarySet, starting_party: str,
              tol: Tolerances = DEFAULT_TOL) -> StrategyVerdict:
    """Local sequential discrimination, responder probe chosen per outcome."""
    _party_index(starting_party)
    return _locc_check(uset, starting_party, adaptive=True, tol=tol)


def check_ldr(uset: ProductUnitarySet, starting_party: str,
              tol: Tolerances = DEFAULT_TOL) -> StrategyVerdict:
    """Local sequential discrimination with both probes fixed upfront."""
    _party_index(starting_party)
    return _locc_check(uset, starting_party, adaptive=False, tol=tol)


def check_gda(uset: ProductUnitarySet, tol: Tolerances = DEFAULT_TOL) -> StrategyVerdict:
    """Global adaptive strategies reduce to the better of the global
    restricted check and the local adaptive check over starting parties."""
    gdr = check_gdr(uset, tol)
    if gdr.status == "distinguishable":
        return StrategyVerdict(strategy="GDA", starting_party="either",
                               status="distinguishable", witness=gdr.witness,
                               note="via a fixed composite probe", feasibility=gdr.feasibility)
    lda = {p: check_lda(uset, p, tol) for p in _PARTIES}
    for p in _PARTIES:
        if lda[p].status == "distinguishable":
            return StrategyVerdict(strategy="GDA", starting_party=p,
                                   status="distinguishable", witness=lda[p].witness,
                                   note=f"via the local adaptive protocol starting at {p}")
    parts = [gdr] + [lda[p] for p in _PARTIES]
    if all(v.status == "indistinguishable_certified" for v in parts):
        return StrategyVerdict(strategy="GDA", starting_party="either",
                               status="indistinguishable_certified",
                               note=("fixed-probe route and both local adaptive routes "
                                     "are certified infeasible"))
    return StrategyVerdict(strategy="GDA", starting_party="either", status="not_found",
                           note="no route succeeded and at least one search is inconclusive")


# -----------------------------------------------------------------------------
# Cross-strategy audit
# -----------------------------------------------------------------------------

_RANK = {"distinguishable": 1, "indistinguishable_certified": 0, "not_found": None}


def hierarchy_audit(uset: ProductUnitarySet, tol: Tolerances = DEFAULT_TOL,
                    include_separable: bool | None = None):
    """Run every checker and confirm the strategy-power orderings.

    Certified verdicts must satisfy LDR <= LDA <= GDA and LDR <= GDR <= GDA
    (per starting party where applicable); a certified contradiction raises.
    Returns the ordered (label, verdict) table.
    """
    rows = []
    for p in _PARTIES:
        rows.append((f"LDR:{p}", check_ldr(uset, p, tol)))
    for p in _PARTIES:
        rows.append((f"LDA:{p}", check_lda(uset, p, tol)))
    rows.append(("GDR", check_gdr(uset, tol)))
    rows.append(("GDA", check_gda(uset, tol)))
    if include_separable is None:
        include_separable = uset.party_dims == (2, 2)
    if include_separable:
        from .separable import check_gda_separable
        rows.append(("GDA_separable", check_gda_separable(uset, tol)))

    val = {label: _RANK[v.status] for label, v in rows}
    ordering = [("LDR:A", "LDA:A"), ("LDR:B", "LDA:B"),
                ("LDA:A", "GDA"), ("LDA:B", "GDA"),
                ("LDR:A", "GDR"), ("LDR:B", "GDR"), ("GDR", "GDA")]
    violations = []
    for weak, strong in ordering:
        a, b = val[weak], val[strong]
        if a is not None and b is not None and a > b:
            violations.append(f"{weak}={a} exceeds {strong}={b}")
    if violations:
        raise RuntimeError("strategy hierarchy violated: " + "; ".join(violations))
    return tuple(rows)
