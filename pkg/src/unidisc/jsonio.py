"""JSON encoding of sets, trees, witnesses, verdicts, and results.

Complex scalars serialize as two-element arrays ``[re, im]``; matrices as
row-major nested arrays of those pairs; vectors as flat arrays of pairs.
Every decoder validates shape and numeric content and raises
:class:`FormatError` naming the offending field, which the command line
maps to a usage-error exit.
"""

from __future__ import annotations

import json

import numpy as np

from .probefeas import InfeasibilityCertificate, ProbeFeasibility
from .protocols import (
    OutcomeBranch,
    ProbeWitness,
    ProductUnitarySet,
    ProtocolTree,
    StageTwo,
    StrategyVerdict,
)
from .qcore import StateVector

__all__ = [
    "FormatError",
    "dumps",
    "complex_to_json",
    "complex_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "vector_from_json",
    "set_to_json",
    "set_from_json",
    "tree_to_json",
    "tree_from_json",
    "probe_witness_to_json",
    "probe_witness_from_json",
    "witness_to_json",
    "witness_from_json",
    "feasibility_to_json",
    "certificate_from_json",
    "verdict_to_json",
    "seesaw_to_json",
]


class FormatError(ValueError):
    """Malformed serialized content; the message names the offending field."""


def dumps(obj) -> str:
    """Canonical serialization: sorted keys, two-space indent, newline end.

    Identical structures produce byte-identical text.
    """
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# scalars, vectors, matrices


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v, field: str) -> complex:
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        raise FormatError(f"{field}: expected a [re, im] number pair, got {v!r}")
    return complex(float(v[0]), float(v[1]))


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[complex_to_json(z) for z in row] for row in m]


def matrix_from_json(data, field: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise FormatError(f"{field}: expected a non-empty list of rows")
    width = None
    rows = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or not row:
            raise FormatError(f"{field}[{r}]: expected a non-empty row")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(
                f"{field}[{r}]: ragged row of length {len(row)}, expected {width}"
            )
        rows.append([complex_from_json(z, f"{field}[{r}][{c}]")
                     for c, z in enumerate(row)])
    return np.array(rows, dtype=complex)


def vector_to_json(v) -> list:
    v = np.asarray(v, dtype=complex).reshape(-1)
    return [complex_to_json(z) for z in v]


def vector_from_json(data, field: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise FormatError(f"{field}: expected a non-empty list of entries")
    return np.array(
        [complex_from_json(z, f"{field}[{k}]") for k, z in enumerate(data)],
        dtype=complex,
    )


def _expect_key(data: dict, key: str, field: str):
    if not isinstance(data, dict):
        raise FormatError(f"{field}: expected an object")
    if key not in data:
        raise FormatError(f"{field}.{key}: missing")
    return data[key]


# ---------------------------------------------------------------------------
# product unitary sets


def set_to_json(uset: ProductUnitarySet) -> dict:
    return {
        "party_dims": list(uset.party_dims),
        "items": [
            {
                "label": uset.labels[i],
                "A": matrix_to_json(uset.factor(i, "A")),
                "B": matrix_to_json(uset.factor(i, "B")),
            }
            for i in range(uset.size)
        ],
        "priors": [float(p) for p in uset.priors],
    }


def set_from_json(data, field: str = "set") -> ProductUnitarySet:
    dims = _expect_key(data, "party_dims", field)
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise FormatError(f"{field}.party_dims: expected two positive integers")
    items_data = _expect_key(data, "items", field)
    if not isinstance(items_data, list) or not items_data:
        raise FormatError(f"{field}.items: expected a non-empty list")
    items = []
    for k, it in enumerate(items_data):
        label = _expect_key(it, "label", f"{field}.items[{k}]")
        if not isinstance(label, str):
            raise FormatError(f"{field}.items[{k}].label: expected a string")
        a = matrix_from_json(_expect_key(it, "A", f"{field}.items[{k}]"),
                             f"{field}.items[{k}].A")
        b = matrix_from_json(_expect_key(it, "B", f"{field}.items[{k}]"),
                             f"{field}.items[{k}].B")
        items.append((label, a, b))
    priors = data.get("priors")
    if priors is not None:
        if (
            not isinstance(priors, list)
            or len(priors) != len(items)
            or not all(isinstance(p, (int, float)) and not isinstance(p, bool)
                       for p in priors)
        ):
            raise FormatError(
                f"{field}.priors: expected {len(items)} probabilities")
        priors = [float(p) for p in priors]
    try:
        return ProductUnitarySet((dims[0], dims[1]), items, priors=priors)
    except ValueError as exc:
        raise FormatError(f"{field}: {exc}") from exc


# ---------------------------------------------------------------------------
# trees and witnesses


def _stage2_to_json(st: StageTwo) -> dict:
    return {
        "party": st.party,
        "probe": vector_to_json(st.probe.amplitudes),
        "ancilla_dim": st.ancilla_dim,
        "povm": [matrix_to_json(el) for el in st.povm],
        "guesses": list(st.guesses),
        "correction": None if st.correction is None
        else matrix_to_json(st.correction),
    }


def _stage2_from_json(data, field: str) -> StageTwo:
    party = _expect_key(data, "party", field)
    probe = vector_from_json(_expect_key(data, "probe", field), f"{field}.probe")
    anc = _expect_key(data, "ancilla_dim", field)
    if not isinstance(anc, int) or isinstance(anc, bool) or anc < 1:
        raise FormatError(f"{field}.ancilla_dim: expected a positive integer")
    povm_data = _expect_key(data, "povm", field)
    if not isinstance(povm_data, list) or not povm_data:
        raise FormatError(f"{field}.povm: expected a non-empty list")
    povm = tuple(matrix_from_json(el, f"{field}.povm[{k}]")
                 for k, el in enumerate(povm_data))
    guesses = _expect_key(data, "guesses", field)
    if not isinstance(guesses, list) or len(guesses) != len(povm):
        raise FormatError(f"{field}.guesses: expected {len(povm)} entries")
    for k, g in enumerate(guesses):
        if g is not None and not isinstance(g, int):
            raise FormatError(f"{field}.guesses[{k}]: expected an index or null")
    corr = data.get("correction")
    correction = None if corr is None else matrix_from_json(
        corr, f"{field}.correction")
    return StageTwo(party=party, probe=StateVector(probe), ancilla_dim=anc,
                    povm=povm, guesses=tuple(guesses), correction=correction)


def tree_to_json(tree: ProtocolTree) -> dict:
    return {
        "start": tree.start,
        "probe": vector_to_json(tree.probe.amplitudes),
        "ancilla_dim": tree.ancilla_dim,
        "povm": [matrix_to_json(el) for el in tree.povm],
        "branches": [
            {
                "retained": list(br.retained),
                "guess": br.guess,
                "stage2": None if br.stage2 is None else _stage2_to_json(br.stage2),
            }
            for br in tree.branches
        ],
        "note": tree.note,
    }


def tree_from_json(data, field: str = "tree") -> ProtocolTree:
    start = _expect_key(data, "start", field)
    if start not in ("A", "B"):
        raise FormatError(f"{field}.start: expected 'A' or 'B', got {start!r}")
    probe = vector_from_json(_expect_key(data, "probe", field), f"{field}.probe")
    anc = _expect_key(data, "ancilla_dim", field)
    if not isinstance(anc, int) or isinstance(anc, bool) or anc < 1:
        raise FormatError(f"{field}.ancilla_dim: expected a positive integer")
    povm_data = _expect_key(data, "povm", field)
    if not isinstance(povm_data, list) or not povm_data:
        raise FormatError(f"{field}.povm: expected a non-empty list")
    povm = tuple(matrix_from_json(el, f"{field}.povm[{k}]")
                 for k, el in enumerate(povm_data))
    branches_data = _expect_key(data, "branches", field)
    if not isinstance(branches_data, list) or len(branches_data) != len(povm):
        raise FormatError(f"{field}.branches: expected {len(povm)} entries")
    branches = []
    for k, br in enumerate(branches_data):
        retained = _expect_key(br, "retained", f"{field}.branches[{k}]")
        if not isinstance(retained, list) or not all(
            isinstance(i, int) for i in retained
        ):
            raise FormatError(
                f"{field}.branches[{k}].retained: expected a list of indices")
        guess = br.get("guess")
        if guess is not None and not isinstance(guess, int):
            raise FormatError(
                f"{field}.branches[{k}].guess: expected an index or null")
        st_data = br.get("stage2")
        stage2 = None if st_data is None else _stage2_from_json(
            st_data, f"{field}.branches[{k}].stage2")
        branches.append(OutcomeBranch(retained=tuple(retained), guess=guess,
                                      stage2=stage2))
    note = data.get("note", "")
    return ProtocolTree(start=start, probe=StateVector(probe), ancilla_dim=anc,
                        povm=povm, branches=tuple(branches), note=note)


def probe_witness_to_json(w: ProbeWitness) -> dict:
    return {
        "probe": vector_to_json(w.probe.amplitudes),
        "ancilla_dim": w.ancilla_dim,
        "povm": [matrix_to_json(el) for el in w.povm],
        "guesses": list(w.guesses),
    }


def probe_witness_from_json(data, field: str = "witness") -> ProbeWitness:
    probe = vector_from_json(_expect_key(data, "probe", field), f"{field}.probe")
    anc = _expect_key(data, "ancilla_dim", field)
    if not isinstance(anc, int) or isinstance(anc, bool) or anc < 1:
        raise FormatError(f"{field}.ancilla_dim: expected a positive integer")
    povm_data = _expect_key(data, "povm", field)
    if not isinstance(povm_data, list) or not povm_data:
        raise FormatError(f"{field}.povm: expected a non-empty list")
    povm = tuple(matrix_from_json(el, f"{field}.povm[{k}]")
                 for k, el in enumerate(povm_data))
    guesses = _expect_key(data, "guesses", field)
    if not isinstance(guesses, list) or len(guesses) != len(povm):
        raise FormatError(f"{field}.guesses: expected {len(povm)} entries")
    return ProbeWitness(probe=StateVector(probe), ancilla_dim=anc, povm=povm,
                        guesses=tuple(guesses))


def witness_to_json(witness) -> dict | None:
    """Tagged encoding for either witness shape."""
    if witness is None:
        return None
    if isinstance(witness, ProtocolTree):
        return {"kind": "tree", "tree": tree_to_json(witness)}
    if isinstance(witness, ProbeWitness):
        return {"kind": "probe", "probe_witness": probe_witness_to_json(witness)}
    raise TypeError(f"cannot serialize witness of type {type(witness).__name__}")


def witness_from_json(data, field: str = "witness"):
    if data is None:
        return None
    kind = _expect_key(data, "kind", field)
    if kind == "tree":
        return tree_from_json(_expect_key(data, "tree", field), f"{field}.tree")
    if kind == "probe":
        return probe_witness_from_json(
            _expect_key(data, "probe_witness", field), f"{field}.probe_witness")
    raise FormatError(f"{field}.kind: expected 'tree' or 'probe', got {kind!r}")


# ---------------------------------------------------------------------------
# feasibility, certificates, verdicts


def feasibility_to_json(feas: ProbeFeasibility | None) -> dict | None:
    if feas is None:
        return None
    out = {
        "status": feas.status,
        "residual": feas.residual,
        "note": feas.note,
        "witness": None,
        "certificate": None,
    }
    if feas.witness is not None:
        out["witness"] = matrix_to_json(feas.witness.matrix)
    if feas.certificate is not None:
        cert = feas.certificate
        out["certificate"] = {
            "op_indices": list(cert.op_indices),
            # real (cRe, cIm) pairs flattened, two entries per operator
            "coeffs": [float(c) for c in cert.coeffs],
            "min_eig": float(cert.min_eig),
        }
    return out


def certificate_from_json(data, field: str = "certificate") -> InfeasibilityCertificate:
    idx = _expect_key(data, "op_indices", field)
    if not isinstance(idx, list) or not all(isinstance(i, int) for i in idx):
        raise FormatError(f"{field}.op_indices: expected a list of indices")
    coeffs_data = _expect_key(data, "coeffs", field)
    if (
        not isinstance(coeffs_data, list)
        or len(coeffs_data) != 2 * len(idx)
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool)
                   for c in coeffs_data)
    ):
        raise FormatError(
            f"{field}.coeffs: expected {2 * len(idx)} real coefficients")
    coeffs = np.array([float(c) for c in coeffs_data])
    min_eig = _expect_key(data, "min_eig", field)
    if not isinstance(min_eig, (int, float)) or isinstance(min_eig, bool):
        raise FormatError(f"{field}.min_eig: expected a number")
    return InfeasibilityCertificate(op_indices=tuple(idx), coeffs=coeffs,
                                    min_eig=float(min_eig))


def verdict_to_json(verdict: StrategyVerdict) -> dict:
    return {
        "strategy": verdict.strategy,
        "starting_party": verdict.starting_party,
        "status": verdict.status,
        "note": verdict.note,
        "witness": witness_to_json(verdict.witness),
        "feasibility": feasibility_to_json(verdict.feasibility),
    }


def seesaw_to_json(result, restarts: int) -> dict:
    return {
        "s_max": float(result.s_max),
        "restarts": int(restarts),
        "per_restart": [
            {"value": float(v), "sweeps": int(s)} for v, s in result.per_restart
        ],
        "povm": [matrix_to_json(el) for el in result.povm],
        "rho": matrix_to_json(result.rho.matrix),
    }
