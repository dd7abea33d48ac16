"""Product-probe strategies: single-system probes, locally measured.

This module decides whether a set of product unitaries can be perfectly
identified when the probe must be a product of two single-system states (no
entanglement with each other or with ancillas) and each party measures only
their own system.  Two shapes of protocol are covered:

* **sequential**: one party measures their evolved probe first and the
  outcome tells the other party what to discriminate; the second probe and
  measurement may be chosen adaptively,
* **simultaneous**: both probes and both local measurements are fixed
  upfront and the pair of outcomes must determine the answer.

For qubit factors both branches are decided exactly in the certification
direction.  The sequential analysis rests on a structural fact: in a
two-dimensional space a POVM element of rank 2 has full support, so any
outcome that eliminates anything must be rank 1, and it eliminates
precisely the inputs whose evolved probe states are parallel to its kernel
ray.  Outcomes therefore retain at most two candidates (the responder,
measuring one qubit, cannot tell three pairwise non-parallel states apart),
the eliminated sets of distinct outcomes are disjoint parallel classes, and
completing the elimination elements to a POVM is a small linear program
over the class rays.  Candidate probes are exhausted by the eigenrays of
the non-phase-equal relative factors, the balanced superpositions that null
a distinguishable relative, and the six axis states; for five or more
inputs two disjoint classes of the required size cannot coexist at all, so
the sequential branch is infeasible outright.

The simultaneous branch first assigns every index pair to a side whose
evolved overlap must vanish; on a qubit each such constraint is affine in
the probe's axis vector, so an assignment is a sphere-meets-subspace
feasibility problem solved exactly through the minimum-norm solution and a
null-space extension.  Infeasibility of every assignment certifies the
branch.  A feasible assignment yields probes, and a local witness is then
sought as a pair of two-outcome projective measurements whose joint cells
isolate the inputs; failure of that final search leaves the branch open
rather than claiming success with a non-local measurement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
import math

import numpy as np

from .eigdist import build_pair_probe, pair_distinguishable
from .protocols import (
    OutcomeBranch,
    ProbeWitness,
    ProductUnitarySet,
    ProtocolTree,
    StageTwo,
    StrategyVerdict,
    phase_equal,
    _pair_tree,
)
from .qcore import DEFAULT_TOL, StateVector, Tolerances

__all__ = [
    "EliminableClass",
    "SeparableStartReport",
    "separable_start_analysis",
    "check_gda_separable",
]

_PARALLEL_TOL = 1e-9


# ---------------------------------------------------------------------------
# report containers


@dataclass(frozen=True)
class EliminableClass:
    """A set of inputs whose evolved probes can be made parallel.

    ``member_indices`` lists the inputs sharing a ray, ``probes`` the unit
    probe vectors achieving it (all rays work when ``any_probe`` is set,
    which happens when the member factors agree up to phase).
    """

    member_indices: tuple[int, ...]
    probes: tuple[np.ndarray, ...]
    any_probe: bool = False


@dataclass(frozen=True)
class SeparableStartReport:
    """Outcome of the sequential-start analysis for one measuring party.

    ``responder_pairs`` are the index pairs the non-measuring party could
    finish alone, ``necessary_sets`` their complements (what the first
    measurement would have to eliminate in one shot to leave such a pair),
    and ``eliminable`` the necessary sets that actually admit a
    parallelizing probe, together with those probes.
    """

    starting_party: str
    responder_pairs: tuple[tuple[int, int], ...]
    necessary_sets: tuple[tuple[int, ...], ...]
    eliminable: tuple[EliminableClass, ...]
    verdict: str
    tree: ProtocolTree | None
    note: str


# ---------------------------------------------------------------------------
# small geometry helpers


def _rays_parallel(u: np.ndarray, v: np.ndarray, tol: float = _PARALLEL_TOL) -> bool:
    # unit vectors in C^2: parallel iff the 2x2 determinant vanishes
    return abs(u[0] * v[1] - u[1] * v[0]) <= tol


def _dedup_rays(rays) -> list:
    out: list[np.ndarray] = []
    for r in rays:
        n = np.linalg.norm(r)
        if n < 1e-12:
            continue
        r = r / n
        if not any(_rays_parallel(r, s) for s in out):
            out.append(r)
    return out


def _kernel_ray(ray: np.ndarray) -> np.ndarray:
    # the ray orthogonal to a given unit vector in C^2
    return np.array([-np.conj(ray[1]), np.conj(ray[0])], dtype=complex)


_AXIS_STATES = (
    np.array([1.0, 0.0], dtype=complex),
    np.array([0.0, 1.0], dtype=complex),
    np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0),
    np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0),
    np.array([1.0, 1.0j], dtype=complex) / math.sqrt(2.0),
    np.array([1.0, -1.0j], dtype=complex) / math.sqrt(2.0),
)


def _eigenrays(op: np.ndarray) -> list:
    _, vecs = np.linalg.eig(op)
    return [vecs[:, k] / np.linalg.norm(vecs[:, k]) for k in range(op.shape[0])]


def _factor_mats(uset: ProductUnitarySet, party: str) -> list:
    return [uset.factor(k, party) for k in range(uset.size)]


# ---------------------------------------------------------------------------
# sequential branch


def _responder_pairs(uset, responder: str, tol: Tolerances) -> set:
    pairs = set()
    for i, j in combinations(range(uset.size), 2):
        res = pair_distinguishable(
            uset.factor(i, responder), uset.factor(j, responder), tol
        )
        if res.min_norm <= tol.comparison:
            pairs.add((i, j))
    return pairs


def _class_probes(factors, members) -> tuple:
    """Probes making the evolved states of ``members`` pairwise parallel.

    A probe works iff it is a common eigenray of all relatives within the
    class, so the eigenrays of any one non-phase-equal relative exhaust the
    candidates; a class of phase-equal factors is parallel under every
    probe.
    """
    mats = [factors[k] for k in members]
    base = mats[0]
    rels = [base.conj().T @ m for m in mats[1:]]
    nontrivial = [r for r in rels if not phase_equal(r, np.eye(2, dtype=complex))]
    if not nontrivial:
        return (), True
    good = []
    for ray in _dedup_rays(_eigenrays(nontrivial[0])):
        imgs = [m @ ray for m in mats]
        if all(_rays_parallel(imgs[0], v) for v in imgs[1:]):
            good.append(ray)
    return tuple(good), False


def _parallel_classes(evolved) -> list:
    classes: list[tuple[np.ndarray, list[int]]] = []
    for idx, v in enumerate(evolved):
        for ray, members in classes:
            if _rays_parallel(ray, v):
                members.append(idx)
                break
        else:
            classes.append((v, [idx]))
    return [(ray, tuple(members)) for ray, members in classes]


def _candidate_probes(factors, tol: Tolerances) -> list:
    rays = list(_AXIS_STATES)
    for a, b in combinations(factors, 2):
        rel = a.conj().T @ b
        if phase_equal(rel, np.eye(2, dtype=complex)):
            continue
        rays.extend(_eigenrays(rel))
        geom = pair_distinguishable(a, b, tol)
        if geom.min_norm <= tol.comparison:
            rays.append(build_pair_probe(a, b, geom, tol).probe.amplitudes)
    return _dedup_rays(rays)


def _completion_lp(class_rays):
    """Nonnegative weights making the kernel projectors sum to the identity.

    ``sum_a c_a |r_a^perp><r_a^perp| = 1`` on a qubit is four real linear
    equations in the weights; returns the weight vector or ``None``.
    """
    from .simplex import feasible_point

    if not class_rays:
        return None
    projs = [np.outer(_kernel_ray(r), _kernel_ray(r).conj()) for r in class_rays]
    a_eq = np.array(
        [
            [p[0, 0].real for p in projs],
            [p[1, 1].real for p in projs],
            [p[0, 1].real for p in projs],
            [p[0, 1].imag for p in projs],
        ]
    )
    b_eq = np.array([1.0, 1.0, 0.0, 0.0])
    res = feasible_point(a_eq, b_eq)
    if res.status != "optimal":
        return None
    return res.x


def _stage2_for_pair(uset, responder: str, i: int, j: int, tol: Tolerances) -> StageTwo:
    pp = build_pair_probe(
        uset.factor(i, responder), uset.factor(j, responder), None, tol
    )
    return StageTwo(
        party=responder,
        probe=pp.probe,
        ancilla_dim=pp.ancilla_dim,
        povm=tuple(pp.measurement),
        guesses=(i, j),
    )


def _sequential_tree(uset, start, responder, probe, classes, weights, tol):
    m = uset.size
    povm = []
    branches = []
    d = 2
    total = np.zeros((d, d), dtype=complex)
    for (ray, members), w in zip(classes, weights):
        if w <= 1e-12:
            continue
        kr = _kernel_ray(ray)
        el = w * np.outer(kr, kr.conj())
        total += el
        retained = tuple(k for k in range(m) if k not in members)
        if len(retained) == 2:
            branch = OutcomeBranch(
                retained=retained,
                stage2=_stage2_for_pair(uset, responder, *retained, tol),
            )
        elif len(retained) == 1:
            branch = OutcomeBranch(retained=retained, guess=retained[0])
        else:
            branch = OutcomeBranch(retained=(), guess=None)
        povm.append(el)
        branches.append(branch)
    rest = np.eye(d, dtype=complex) - total
    if np.max(np.abs(rest)) > 1e-12:
        povm.append(rest)
        branches.append(OutcomeBranch(retained=(), guess=None))
    return ProtocolTree(
        start=start,
        probe=StateVector(probe),
        ancilla_dim=1,
        povm=tuple(povm),
        branches=tuple(branches),
        note="single-system probes, elimination-first sequential protocol",
    )


def separable_start_analysis(
    uset: ProductUnitarySet,
    start: str,
    tol: Tolerances = DEFAULT_TOL,
) -> SeparableStartReport:
    """Decide the sequential product-probe strategy with ``start`` measuring
    first.

    Exact for qubit factors on both sides.  For four or fewer inputs the
    probe search is exhaustive; for five or more the disjointness of
    eliminated classes already forbids a solution.  With three inputs a
    failed search is only certified when the responder cannot finish any
    pair, otherwise the verdict stays open.
    """
    if start not in ("A", "B"):
        raise ValueError(f"start must be 'A' or 'B', got {start!r}")
    if uset.party_dims != (2, 2):
        raise ValueError("sequential product-probe analysis requires qubit factors")
    responder = "B" if start == "A" else "A"
    m = uset.size
    s_factors = _factor_mats(uset, start)

    if m <= 2:
        if m <= 1:
            tree = ProtocolTree(
                start=start,
                probe=StateVector(np.array([1.0, 0.0], dtype=complex)),
                ancilla_dim=1,
                povm=(np.eye(2, dtype=complex),),
                branches=(OutcomeBranch(retained=tuple(range(m)), guess=0 if m else None),),
                note="at most one input",
            )
            return SeparableStartReport(start, (), (), (), "distinguishable", tree,
                                        "at most one input")
        tree, fail_note = _pair_tree(uset, start, tol)
        pairs = tuple(sorted(_responder_pairs(uset, responder, tol)))
        if tree is not None:
            verdict, note = "distinguishable", "two inputs, single pair criterion"
        else:
            # for two inputs no strategy of any kind beats the pair criterion
            verdict, note = "infeasible_certified", fail_note
        return SeparableStartReport(start, pairs, ((),) if pairs else (), (),
                                    verdict, tree, note)

    good_pairs = _responder_pairs(uset, responder, tol)
    pair_list = tuple(sorted(good_pairs))
    necessary = tuple(
        tuple(k for k in range(m) if k not in pair) for pair in pair_list
    )
    eliminable = []
    for members in necessary:
        probes, any_probe = _class_probes(s_factors, members)
        if any_probe or probes:
            eliminable.append(
                EliminableClass(member_indices=members, probes=probes,
                                any_probe=any_probe)
            )

    # search over candidate probes for a completable elimination POVM
    for probe in _candidate_probes(s_factors, tol):
        evolved = [f @ probe for f in s_factors]
        classes = _parallel_classes(evolved)
        admissible = []
        for ray, members in classes:
            if len(members) < m - 2:
                continue
            retained = tuple(k for k in range(m) if k not in members)
            if len(retained) == 2 and retained not in good_pairs:
                continue
            admissible.append((ray, members))
        if not admissible:
            continue
        weights = _completion_lp([ray for ray, _ in admissible])
        if weights is None:
            continue
        tree = _sequential_tree(uset, start, responder, probe, admissible,
                                weights, tol)
        return SeparableStartReport(
            starting_party=start,
            responder_pairs=pair_list,
            necessary_sets=necessary,
            eliminable=tuple(eliminable),
            verdict="distinguishable",
            tree=tree,
            note="elimination probe found by exhaustive ray search",
        )

    if m >= 5:
        verdict = "infeasible_certified"
        note = (
            "any informative outcome on a qubit eliminates one parallel class of "
            f"at least {m - 2} inputs; two disjoint such classes would need "
            f"{2 * (m - 2)} > {m} inputs, so no elimination POVM exists"
        )
    elif m == 4:
        verdict = "infeasible_certified"
        note = (
            "exhaustive probe search failed; every completable structure pairs "
            "two orthogonal elimination rays, and all probes realizing one "
            "appear among the relative-factor eigenrays and balance points"
        )
    elif not good_pairs:
        verdict = "infeasible_certified"
        note = (
            "the responding party cannot finish any pair, and a single "
            "retained-pair class can never complete a POVM alone"
        )
    else:
        verdict = "not_found"
        note = "probe search failed; the three-input case is not certified"
    return SeparableStartReport(
        starting_party=start,
        responder_pairs=pair_list,
        necessary_sets=necessary,
        eliminable=tuple(eliminable),
        verdict=verdict,
        tree=None,
        note=note,
    )


# ---------------------------------------------------------------------------
# simultaneous branch


def _pauli_components(op: np.ndarray) -> tuple:
    """Expansion ``op = c 1 + r . sigma`` with complex ``c`` and ``r``."""
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
    sz = np.diag([1.0, -1.0]).astype(complex)
    c = np.trace(op) / 2.0
    r = np.array([np.trace(s @ op) / 2.0 for s in (sx, sy, sz)])
    return c, r


def _axis_system(ops, tol: float = 1e-9):
    """Unit axis vector ``n`` with ``<alpha|K|alpha> = 0`` for every ``K``.

    The expectation of ``K = c 1 + r . sigma`` in the state with axis ``n``
    is ``c + r . n``, so the constraints are affine in ``n``; feasibility
    on the unit sphere is settled exactly by the minimum-norm solution
    (orthogonal to the null space) plus a null-space extension when slack
    remains.
    """
    rows = []
    rhs = []
    for op in ops:
        c, r = _pauli_components(op)
        rows.append(r.real)
        rhs.append(-c.real)
        rows.append(r.imag)
        rhs.append(-c.imag)
    if not rows:
        return np.array([0.0, 0.0, 1.0])
    a = np.array(rows)
    b = np.array(rhs)
    u, sv, vt = np.linalg.svd(a)
    cutoff = 1e-10 * max(1.0, float(sv[0]) if sv.size else 1.0)
    rank = int(np.sum(sv > cutoff))
    n0 = np.zeros(3)
    for k in range(rank):
        n0 = n0 + (u[:, k] @ b) / sv[k] * vt[k]
    if np.linalg.norm(a @ n0 - b) > tol * max(1.0, np.linalg.norm(b)):
        return None
    norm = float(np.linalg.norm(n0))
    null = vt[rank:]
    if null.shape[0] == 0:
        if abs(norm - 1.0) <= tol:
            return n0 / norm
        return None
    if norm > 1.0 + tol:
        return None
    t = math.sqrt(max(0.0, 1.0 - min(norm, 1.0) ** 2))
    n = n0 + t * null[0]
    return n / np.linalg.norm(n)


def _state_from_axis(n: np.ndarray) -> np.ndarray:
    theta = math.acos(min(1.0, max(-1.0, float(n[2]))))
    phi = math.atan2(float(n[1]), float(n[0]))
    return np.array(
        [math.cos(theta / 2.0), np.exp(1j * phi) * math.sin(theta / 2.0)],
        dtype=complex,
    )


def _local_cell_witness(uset, alpha, beta):
    """Fixed local measurements whose joint outcomes isolate each input.

    Searches two-outcome projective measurements for both parties among the
    evolved rays and their orthogonal complements; an input occupies the
    cells its evolved factors can trigger, and the witness exists when the
    occupied cell sets are pairwise disjoint.
    """
    m = uset.size
    ev_a = [uset.factor(k, "A") @ alpha for k in range(m)]
    ev_b = [uset.factor(k, "B") @ beta for k in range(m)]
    cands_a = _dedup_rays(list(ev_a) + [_kernel_ray(v) for v in ev_a])
    cands_b = _dedup_rays(list(ev_b) + [_kernel_ray(v) for v in ev_b])

    def outcomes(states, ray):
        # which of the two projective outcomes each state can trigger
        occ = []
        for v in states:
            o = []
            if abs(np.vdot(_kernel_ray(ray), v)) > _PARALLEL_TOL:
                o.append(1)
            if abs(np.vdot(ray, v)) > _PARALLEL_TOL:
                o.append(0)
            occ.append(tuple(sorted(o)))
        return occ

    for ra in cands_a:
        occ_a = outcomes(ev_a, ra)
        for rb in cands_b:
            occ_b = outcomes(ev_b, rb)
            cells: dict = {}
            ok = True
            for i in range(m):
                for oa in occ_a[i]:
                    for ob in occ_b[i]:
                        if (oa, ob) in cells:
                            ok = False
                            break
                        cells[(oa, ob)] = i
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                continue
            pa = (np.outer(ra, ra.conj()),
                  np.outer(_kernel_ray(ra), _kernel_ray(ra).conj()))
            pb = (np.outer(rb, rb.conj()),
                  np.outer(_kernel_ray(rb), _kernel_ray(rb).conj()))
            povm = []
            guesses = []
            for oa in (0, 1):
                for ob in (0, 1):
                    povm.append(np.kron(pa[oa], pb[ob]))
                    guesses.append(cells.get((oa, ob)))
            return ProbeWitness(
                probe=StateVector(np.kron(alpha, beta)),
                ancilla_dim=1,
                povm=tuple(povm),
                guesses=tuple(guesses),
            )
    return None


def _simultaneous_check(uset, tol: Tolerances):
    """Fixed product probe, fixed local measurements on both sides.

    Every pair of inputs must be orthogonalized on one side or the other;
    sides are assigned exhaustively and each assignment is an exact sphere
    feasibility problem per party.  When no assignment admits probe axes
    the branch is certified infeasible; a feasible assignment is upgraded to
    a witness only if fixed local measurements with disjoint outcome cells
    exist.
    """
    m = uset.size
    if m <= 1:
        alpha = np.array([1.0, 0.0], dtype=complex)
        witness = _local_cell_witness(uset, alpha, alpha)
        return "distinguishable", witness, "at most one input"
    rel = {}
    side_ok = {"A": {}, "B": {}}
    pairs = list(combinations(range(m), 2))
    for i, j in pairs:
        for party in ("A", "B"):
            k = (
                uset.factor(i, party).conj().T
                @ uset.factor(j, party)
            )
            rel[(i, j, party)] = k
            res = pair_distinguishable(uset.factor(i, party),
                                       uset.factor(j, party), tol)
            side_ok[party][(i, j)] = res.min_norm <= tol.comparison

    dead = [p for p in pairs if not side_ok["A"][p] and not side_ok["B"][p]]
    if dead:
        i, j = dead[0]
        return (
            "infeasible_certified",
            None,
            f"pair ({i}, {j}) cannot be orthogonalized on either side",
        )
    forced = {
        "A": [p for p in pairs if not side_ok["B"][p]],
        "B": [p for p in pairs if not side_ok["A"][p]],
    }
    free = [p for p in pairs if side_ok["A"][p] and side_ok["B"][p]]
    if len(free) > 16:
        return "not_found", None, "too many free pairs to enumerate"

    axes_found = False
    for mask in range(1 << len(free)):
        assign_a = list(forced["A"])
        assign_b = list(forced["B"])
        for bit, p in enumerate(free):
            (assign_a if (mask >> bit) & 1 else assign_b).append(p)
        na = _axis_system([rel[(i, j, "A")] for i, j in assign_a])
        if na is None:
            continue
        nb = _axis_system([rel[(i, j, "B")] for i, j in assign_b])
        if nb is None:
            continue
        axes_found = True
        alpha = _state_from_axis(na)
        beta = _state_from_axis(nb)
        witness = _local_cell_witness(uset, alpha, beta)
        if witness is not None:
            return (
                "distinguishable",
                witness,
                "product probe with fixed local measurements",
            )

    if axes_found:
        return (
            "not_found",
            None,
            "orthogonalizing product probes exist but no fixed local "
            "measurement pair with disjoint outcome cells was found",
        )
    return (
        "infeasible_certified",
        None,
        "no assignment of pairs to sides admits probe axes on both spheres",
    )


# ---------------------------------------------------------------------------
# verdict assembly


def check_gda_separable(
    uset: ProductUnitarySet, tol: Tolerances = DEFAULT_TOL
) -> StrategyVerdict:
    """Global-answer discrimination with single-system probes only.

    Aggregates both sequential measurement orders and the simultaneous
    branch; the verdict is ``distinguishable`` with an explicit protocol or
    witness, ``indistinguishable_certified`` when all three branches are
    certified impossible, and ``not_found`` otherwise.  Fully decided for
    qubit factors; for other dimensions only sets of at most two inputs are
    decided (the pair criterion is probe-shape agnostic: a product of
    factor-wise hull points achieves any needed orthogonality).
    """
    strategy = "GDA_separable"
    m = uset.size
    if m <= 1:
        probe_dim = uset.party_dims[0] * uset.party_dims[1]
        vec = np.zeros(probe_dim, dtype=complex)
        vec[0] = 1.0
        witness = ProbeWitness(
            probe=StateVector(vec),
            ancilla_dim=1,
            povm=(np.eye(probe_dim, dtype=complex),),
            guesses=(0,) if m else (None,),
        )
        return StrategyVerdict(strategy, "either", "distinguishable",
                               witness=witness, note="at most one input")

    if m == 2:
        for party in ("A", "B"):
            res = pair_distinguishable(uset.factor(0, party),
                                       uset.factor(1, party), tol)
            if res.min_norm <= tol.comparison:
                other = "B" if party == "A" else "A"
                pp = build_pair_probe(uset.factor(0, party),
                                      uset.factor(1, party), res, tol)
                d_other = uset.party_dims[0 if other == "A" else 1]
                idle = np.zeros(d_other, dtype=complex)
                idle[0] = 1.0
                eye = np.eye(d_other, dtype=complex)
                if party == "A":
                    probe = np.kron(pp.probe.amplitudes, idle)
                    povm = tuple(np.kron(el, eye) for el in pp.measurement)
                else:
                    probe = np.kron(idle, pp.probe.amplitudes)
                    povm = tuple(np.kron(eye, el) for el in pp.measurement)
                witness = ProbeWitness(probe=StateVector(probe), ancilla_dim=1,
                                       povm=povm, guesses=(0, 1))
                return StrategyVerdict(
                    strategy, "either", "distinguishable", witness=witness,
                    note=f"pair criterion met by party {party}")
        return StrategyVerdict(
            strategy, "either", "indistinguishable_certified",
            note="two inputs and neither factor pair admits an "
                 "orthogonalizing probe; no probe shape can help")

    if uset.party_dims != (2, 2):
        return StrategyVerdict(
            strategy, "either", "not_found",
            note="exact product-probe analysis is implemented for qubit "
                 "factors only")

    rep_a = separable_start_analysis(uset, "A", tol)
    rep_b = separable_start_analysis(uset, "B", tol)
    sim_status, sim_witness, sim_note = _simultaneous_check(uset, tol)

    if rep_a.verdict == "distinguishable" and rep_a.tree is not None:
        return StrategyVerdict(strategy, "A", "distinguishable",
                               witness=rep_a.tree, note=rep_a.note)
    if rep_b.verdict == "distinguishable" and rep_b.tree is not None:
        return StrategyVerdict(strategy, "B", "distinguishable",
                               witness=rep_b.tree, note=rep_b.note)
    if sim_status == "distinguishable":
        return StrategyVerdict(strategy, "either", "distinguishable",
                               witness=sim_witness, note=sim_note)

    parts = [
        f"first-measurer A: {rep_a.verdict} ({rep_a.note})",
        f"first-measurer B: {rep_b.verdict} ({rep_b.note})",
        f"simultaneous: {sim_status} ({sim_note})",
    ]
    combined = "; ".join(parts)
    if (
        rep_a.verdict == "infeasible_certified"
        and rep_b.verdict == "infeasible_certified"
        and sim_status == "infeasible_certified"
    ):
        return StrategyVerdict(strategy, "either", "indistinguishable_certified",
                               note=combined)
    return StrategyVerdict(strategy, "either", "not_found", note=combined)
