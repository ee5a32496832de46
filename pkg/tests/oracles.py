"""Brute-force character tables, independent of the class-algebra code.

The regular representation is split numerically: averaging a random Hermitian
matrix over the group gives an operator commuting with every R(g); its
eigenspaces are irreducible subrepresentations (generically).  Characters are
then read off as eigenvalue multisets of the restricted matrices, which is
exactly the multiplicity-vector form used by the library.

Run as a script to regenerate tests/data/golden_tables.json.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import numpy as np

GOLDEN = Path(__file__).parent / "data" / "golden_tables.json"
GOLDEN_GROUPS = [f"C{n}" for n in range(1, 13)] + ["S3", "D8", "Q8", "A4", "S4", "SL23", "torus_t"]


def _orders(group, elts):
    out = []
    for g in elts.tolist():
        x, o = g, 1
        while x != group.identity:
            x = group.mul1(x, g)
            o += 1
        out.append(o)
    return out


def _brute_classes(group, elts):
    """Class id per element (by naive conjugation) and the smallest key of each class."""
    n = len(elts)
    pos = {int(k): i for i, k in enumerate(elts.tolist())}
    cls = [-1] * n
    reps = []
    for i, x in enumerate(elts.tolist()):
        if cls[i] >= 0:
            continue
        orbit = {pos[int(y)] for y in group.conj(np.full(n, x), elts).tolist()}
        for j in orbit:
            cls[j] = len(reps)
        reps.append(min(int(elts[j]) for j in orbit))
    return cls, reps


def regular_matrices(group):
    elts = group.elements
    n = len(elts)
    pos = {int(k): i for i, k in enumerate(elts.tolist())}
    mats = np.zeros((n, n, n))
    for a, g in enumerate(elts.tolist()):
        img = group.mul(np.full(n, g), elts)
        mats[a, [pos[int(k)] for k in img.tolist()], np.arange(n)] = 1.0
    return elts, mats


def irreducible_blocks(mats, seed=0, tol=1e-7):
    """Orthonormal bases of the irreducible pieces of a unitary representation."""
    n = mats.shape[1]
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    x = x + x.conj().T
    avg = sum(m @ x @ m.T for m in mats) / len(mats)
    vals, vecs = np.linalg.eigh(avg)
    cuts = [0] + [i for i in range(1, n) if vals[i] - vals[i - 1] > tol * max(1.0, abs(vals).max())] + [n]
    return [vecs[:, a:b] for a, b in zip(cuts, cuts[1:])]


def brute_force_table(group, seed=0):
    """{'exponent': e, 'rows': [{rep_key: {k: m}}]} with one row per irreducible character."""
    elts, mats = regular_matrices(group)
    n = len(elts)
    orders = _orders(group, elts)
    e = math.lcm(*orders)
    cls, reps = _brute_classes(group, elts)
    pos = {int(k): i for i, k in enumerate(elts.tolist())}
    seen = []
    rows = []
    for q in irreducible_blocks(mats, seed):
        chi = np.array([np.trace(q.conj().T @ m @ q) for m in mats])
        norm = (chi @ chi.conj()).real / n
        if abs(norm - 1) > 1e-6:
            raise AssertionError(f"block of dimension {q.shape[1]} is reducible (norm {norm})")
        if any(np.allclose(chi, s, atol=1e-6) for s in seen):
            continue
        # class functions must be constant on classes
        for i in range(n):
            if abs(chi[i] - chi[pos[reps[cls[i]]]]) > 1e-6:
                raise AssertionError("character is not a class function")
        seen.append(chi)
        row = {}
        for key in reps:
            m = q.conj().T @ mats[pos[key]] @ q
            eig = np.linalg.eigvals(m)
            ks = np.rint(np.angle(eig) / (2 * np.pi) * e).astype(int) % e
            if not np.allclose(np.exp(2j * np.pi * ks / e), eig, atol=1e-6):
                raise AssertionError("eigenvalue is not an e-th root of unity")
            vec = {}
            for k in ks.tolist():
                vec[k] = vec.get(k, 0) + 1
            row[key] = vec
        rows.append(row)
    if sum(int(round(s[pos[group.identity]].real)) ** 2 for s in seen) != n:
        raise AssertionError("degrees do not account for the regular representation")
    if len(rows) != len(reps):
        raise AssertionError(f"{len(rows)} characters for {len(reps)} classes")
    return {"exponent": e, "order": n, "rows": rows}


def _group(name):
    from codegree_lab.constructors import build_corpus_group, build_torus_T
    return build_torus_T() if name == "torus_t" else build_corpus_group(name)


def regenerate(path=GOLDEN):
    out = {}
    for name in GOLDEN_GROUPS:
        t = brute_force_table(_group(name))
        out[name] = {"exponent": t["exponent"], "order": t["order"],
                     "rows": [{str(k): {str(a): b for a, b in sorted(v.items())} for k, v in row.items()}
                              for row in t["rows"]]}
        print(name, t["order"], len(t["rows"]), file=sys.stderr)
    path.parent.mkdir(exist_ok=True)
    path.write_text(json.dumps(out, sort_keys=True, indent=1) + "\n")


if __name__ == "__main__":
    regenerate()
