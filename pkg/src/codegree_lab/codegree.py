"""Codegrees cod(chi) = |G : Ker chi| / chi(1) and the checks built on them."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .chartab import CharacterTable, restriction_norm
from .cyclotomic import is_zero_dense
from .errors import ConsistencyError, UnsupportedCaseError
from .fields import prime_factors
from .groups import (
    FiniteGroup,
    Subgroup,
    centralizer_in,
    generate_subgroup,
    hall_coprime_check,
    is_chief_factor_above_center,
    is_cyclic,
)


def pi_set(n: int) -> set[int]:
    if n < 1:
        raise ValueError("pi_set needs a positive integer")
    return set(prime_factors(n))


@dataclass
class CodegreeRecord:
    index: int
    degree: int
    kernel_size: int
    kernel_classes: list[int]
    cod: int
    pi_set: list[int]


def kernel_classes(tbl: CharacterTable) -> list[list[int]]:
    """Per character, the classes on which the value equals the degree."""
    dense = tbl.dense()
    diff = dense.copy()
    diff[:, :, 0] -= np.array(tbl.degrees)[:, None]
    hit = is_zero_dense(diff, tbl.exponent)
    return [np.nonzero(row)[0].tolist() for row in hit]


def codegrees(tbl: CharacterTable) -> tuple[list[CodegreeRecord], list[int]]:
    n = tbl.group_order
    records = []
    inv = tbl.inverse_class
    for a, (deg, ker) in enumerate(zip(tbl.degrees, kernel_classes(tbl))):
        if 0 not in ker or any(int(inv[j]) not in ker for j in ker):
            raise ConsistencyError(f"kernel of character {a} is not closed under inverses")
        ksize = int(tbl.class_sizes[ker].sum())
        if n % ksize or (n // ksize) % deg:
            raise ConsistencyError(f"non-integral codegree for character {a}")
        cod = n // ksize // deg
        records.append(CodegreeRecord(a, deg, ksize, ker, cod, sorted(pi_set(cod))))
    return records, sorted({r.cod for r in records})


def kernel_is_normal_subgroup(tbl: CharacterTable, ker: list[int]) -> bool:
    """The kernel classes must be inverse-closed and their union must be a subgroup."""
    if 0 not in ker or any(int(tbl.inverse_class[j]) not in ker for j in ker):
        return False
    size = int(tbl.class_sizes[ker].sum())
    if tbl.group_order % size:
        return False
    cd = tbl.classes
    if cd is None:
        return True
    members = np.concatenate([cd.members(j) for j in ker])
    closure = generate_subgroup(cd.group, members, limit=size)
    return closure is not None and len(closure) == size


# --- Question B --------------------------------------------------------------

@dataclass
class MoretoVerdict:
    index: int
    cod: int
    witness_class: int | None
    witness_order: int | None


@dataclass
class MoretoReport:
    verdicts: list[MoretoVerdict]
    violations: list[int]
    violating_codegrees: list[int]

    @property
    def negative_answer(self) -> bool:
        return bool(self.violations)


def moreto_check(tbl: CharacterTable, records: list[CodegreeRecord] | None = None) -> MoretoReport:
    """For each chi, look for g with pi(cod chi) inside pi(o(g))."""
    records = records or codegrees(tbl)[0]
    orders = [int(o) for o in tbl.element_orders]
    search = sorted(range(tbl.r), key=lambda j: (-orders[j], j))
    verdicts = []
    for rec in records:
        need = set(rec.pi_set)
        hit = next((j for j in search if need <= pi_set(orders[j])), None)
        verdicts.append(MoretoVerdict(rec.index, rec.cod, hit, None if hit is None else orders[hit]))
    bad = [v.index for v in verdicts if v.witness_class is None]
    return MoretoReport(verdicts, bad, sorted({v.cod for v in verdicts if v.witness_class is None}))


# --- Qian's divisibility -----------------------------------------------------

def qian_property_test(tbl: CharacterTable, codegree_set: list[int] | None = None) -> tuple[bool, list[int]]:
    """Every element order must divide some codegree; returns (ok, failing orders)."""
    cods = codegree_set or codegrees(tbl)[1]
    spectrum = sorted({int(o) for o in tbl.element_orders})
    failures = [o for o in spectrum if not any(c % o == 0 for c in cods)]
    return not failures, failures


# --- hypotheses and witnesses for faithful primitive characters ---------------

@dataclass
class WitnessCheck:
    index: int
    degree: int
    faithful: bool
    degree_squared_is_index: bool
    restriction_irreducible: bool
    vanishes_off_center: bool
    cod: int
    expected_cod: int


@dataclass
class Theorem23Certificate:
    group: str
    order: int
    fitting_order: int
    center_order: int
    nilpotent: bool
    center_of_fitting_is_center: bool
    z_cyclic: bool
    chief_factor: bool
    coprime: bool
    applicable: bool
    hypotheses_hold: bool
    witnesses: list[WitnessCheck] = field(default_factory=list)
    expected_cod: int | None = None
    quotient_orders: list[int] = field(default_factory=list)
    final_condition: bool | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _class_mask(tbl: CharacterTable, sub: Subgroup) -> np.ndarray:
    return sub.contains(tbl.classes.representatives)


def quotient_orders(tbl: CharacterTable, in_normal: np.ndarray) -> list[int]:
    """Orders of the images of the class representatives in G/N (N given by a class mask)."""
    out = []
    for j in range(tbl.r):
        s = next(s for s in range(1, tbl.exponent + 1) if in_normal[tbl.power_map[j, s % tbl.exponent]])
        out.append(s)
    return out


def verify_theorem23(group: FiniteGroup, F: Subgroup, Z: Subgroup, tbl: CharacterTable,
                     records: list[CodegreeRecord] | None = None) -> Theorem23Certificate:
    """Check the hypotheses and locate the faithful extensions of the fully ramified theta."""
    records = records or codegrees(tbl)[0]
    n = group.order
    notes = []
    nilpotent = F.order == n
    zf_is_z = centralizer_in(F, F).order == Z.order
    z_cyclic = is_cyclic(Z).cyclic
    try:
        chief = Z.order < F.order and is_chief_factor_above_center(group, F, Z)
    except UnsupportedCaseError as exc:
        chief = False
        notes.append(f"F/Z is not an elementary abelian chief factor: {exc}")
    coprime = hall_coprime_check(group, F)
    hypotheses = z_cyclic and chief and coprime
    applicable = not nilpotent and zf_is_z
    if nilpotent:
        notes.append("G is nilpotent; the result does not apply")
    if not zf_is_z:
        notes.append("Z(F(G)) != Z(G) (F(G) abelian modulo Z); no fully ramified character over Z exists")

    in_f = _class_mask(tbl, F)
    in_z = _class_mask(tbl, Z)
    q_orders = quotient_orders(tbl, in_f)
    top_primes = pi_set(n // F.order)
    final = not any(pi_set(o) >= top_primes for o in q_orders)

    cert = Theorem23Certificate(group.name, n, F.order, Z.order, nilpotent, zf_is_z, z_cyclic, chief,
                                coprime, applicable, hypotheses, quotient_orders=sorted(set(q_orders)),
                                final_condition=final, notes=notes)
    index = F.order // Z.order
    root = math.isqrt(index)
    if not (applicable and hypotheses):
        return cert
    if root * root != index:
        raise ConsistencyError(f"|F:Z| = {index} is not a square although the hypotheses hold")
    cert.expected_cod = n // root

    e = tbl.exponent
    off_center = in_f & ~in_z
    for rec in records:
        if rec.kernel_size != 1 or rec.degree != root:
            continue
        norm = restriction_norm(tbl, rec.index, in_f)
        irreducible = norm.equals(type(norm).integer(e, F.order))
        dense = tbl.dense()[rec.index][off_center]
        vanish = bool(is_zero_dense(dense, e).all()) if dense.size else True
        if irreducible and vanish:
            cert.witnesses.append(WitnessCheck(rec.index, rec.degree, True, True, True, True,
                                               rec.cod, cert.expected_cod))
    if not cert.witnesses:
        raise ConsistencyError("hypotheses hold but no faithful fully ramified extension was found")
    bad = [w.index for w in cert.witnesses if w.cod != w.expected_cod]
    if bad:
        raise ConsistencyError(f"witnesses {bad} have the wrong codegree")
    cert.notes.append("primitivity is certified only for these extensions; other faithful "
                      "primitive characters are not enumerated (unverified generality)")
    return cert


def verify_theorem22_consequence(tbl: CharacterTable, witnesses, records: list[CodegreeRecord] | None = None) -> bool:
    """pi(cod chi) = pi(|G|) for every given witness (a certificate or character indices)."""
    if isinstance(witnesses, Theorem23Certificate):
        indices = [w.index for w in witnesses.witnesses]
    else:
        indices = list(witnesses)
    if not indices:
        return False
    records = records or codegrees(tbl)[0]
    target = pi_set(tbl.group_order)
    return all(set(records[i].pi_set) == target for i in indices)
