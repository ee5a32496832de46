"""codegree-lab: build groups, compute character tables and codegrees, check the counterexample.

Every command prints one JSON document (sorted keys, exact integers) on stdout;
``--json FILE`` writes the same bytes to FILE as well.  Exit codes: 0 success,
10 Question-B violations found, 2 input error, 3 resource cap, 4 internal failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .chartab import CharacterTable, character_table
from .codegree import (
    codegrees,
    moreto_check,
    pi_set,
    qian_property_test,
    verify_theorem22_consequence,
    verify_theorem23,
)
from .constructors import (
    action_from_generators,
    build_corpus_group,
    build_extraspecial_E,
    build_paper_G,
    build_symplectic_data,
    build_torus_T,
)
from .cyclotomic import CyclotomicValue
from .errors import CodegreeLabError, ConsistencyError, ConstructionError, DescriptorError
from .groups import (
    CyclicGroup,
    FiniteGroup,
    SemidirectProduct,
    center,
    element_order_spectrum,
    fitting_subgroup,
    is_cyclic,
    whole_group,
)

FORMAT = 1
EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = 0, 10, 2, 3, 4
PAPER_CODEGREES = [1, 3, 5, 11, 15, 33, 1024, 2112, 5120, 10560]
PRESETS = ("paper_g", "torus_t", "extraspecial_e", "trivial", "D8", "Q8", "S3", "S4", "A4", "SL23",
           "extraspecial_p_small")


# --- descriptors -------------------------------------------------------------

def canonical(desc) -> str:
    return json.dumps(desc, sort_keys=True, separators=(",", ":"))


def descriptor_hash(desc) -> str:
    """64-bit content hash of the canonical serialization, as 16 hex digits."""
    return hashlib.sha256(canonical(desc).encode()).hexdigest()[:16]


def _validate(desc) -> None:
    if not isinstance(desc, dict) or len(desc) != 1:
        raise DescriptorError("a descriptor is an object with exactly one of preset, cyclic, semidirect")
    (kind, body), = desc.items()
    if kind == "preset":
        if not isinstance(body, str):
            raise DescriptorError("preset must be a string")
    elif kind == "cyclic":
        if not isinstance(body, int) or isinstance(body, bool) or body < 1:
            raise DescriptorError("cyclic needs a positive integer")
    elif kind == "semidirect":
        if not isinstance(body, dict) or set(body) != {"normal", "acting", "action"}:
            raise DescriptorError("semidirect needs exactly normal, acting and action")
        _validate(body["normal"])
        _validate(body["acting"])
        act = body["action"]
        if not isinstance(act, list) or not all(isinstance(p, list) for p in act):
            raise DescriptorError("action must be a list of permutations, one per acting generator")
    else:
        raise DescriptorError(f"unknown descriptor kind {kind!r}")


def load_descriptor(path: str):
    try:
        desc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DescriptorError(f"cannot read descriptor {path}: {exc}") from exc
    _validate(desc)
    return desc


def build_group(desc) -> FiniteGroup:
    _validate(desc)
    (kind, body), = desc.items()
    if kind == "cyclic":
        return CyclicGroup(body)
    if kind == "preset":
        if body == "paper_g":
            return build_paper_G()
        if body == "torus_t":
            return build_torus_T()
        if body == "extraspecial_e":
            return build_extraspecial_E(build_symplectic_data())
        return build_corpus_group(body)
    N, H = build_group(body["normal"]), build_group(body["acting"])
    perms = body["action"]
    if len(perms) != len(H.generators) or any(sorted(p) != list(range(N.order)) for p in perms):
        raise DescriptorError(f"action needs {len(H.generators)} permutations of range({N.order})")
    # generator h sends the j-th element of N to element perms[h][j]
    try:
        table = action_from_generators(N, H, perms)
        return SemidirectProduct(N, H, table, name=f"({N.name}):({H.name})")
    except ConstructionError as exc:
        raise DescriptorError(f"invalid action: {exc}") from exc


# --- table files -------------------------------------------------------------

def table_to_json(tbl: CharacterTable, desc) -> dict:
    records, cods = codegrees(tbl)
    return {
        "format": FORMAT,
        "descriptor": desc,
        "hash": descriptor_hash(desc),
        "name": tbl.name,
        "group_order": tbl.group_order,
        "exponent": tbl.exponent,
        "ell": tbl.ell,
        "z": tbl.z,
        "classes": [{"size": int(tbl.class_sizes[j]), "order": int(tbl.element_orders[j]),
                     "power_map": [int(x) for x in tbl.power_map[j]],
                     "inverse": int(tbl.inverse_class[j])} for j in range(tbl.r)],
        "characters": [{"degree": row[0].multiplicity_sum(),
                        "values": [{str(k): m for k, m in v.terms} for v in row]}
                       for row in tbl.characters],
        "codegrees": cods,
        "codegree_records": [{"index": r.index, "degree": r.degree, "kernel_size": r.kernel_size,
                              "kernel_classes": r.kernel_classes, "cod": r.cod, "pi_set": r.pi_set}
                             for r in records],
    }


def table_from_json(doc: dict, desc) -> CharacterTable:
    """Rebuild and fully re-verify a stored table; raises on any mismatch."""
    if doc.get("format") != FORMAT or doc.get("hash") != descriptor_hash(desc) or doc.get("descriptor") != desc:
        raise ConsistencyError("cache header does not match the descriptor")
    e = int(doc["exponent"])
    cls = doc["classes"]
    tbl = CharacterTable(
        group_order=int(doc["group_order"]),
        class_sizes=np.array([c["size"] for c in cls], dtype=np.int64),
        element_orders=np.array([c["order"] for c in cls], dtype=np.int64),
        power_map=np.array([c["power_map"] for c in cls], dtype=np.int64),
        inverse_class=np.array([c["inverse"] for c in cls], dtype=np.int64),
        exponent=e, ell=int(doc["ell"]), z=int(doc["z"]),
        characters=[[CyclotomicValue.from_dict(e, {int(k): int(m) for k, m in v.items()}) for v in ch["values"]]
                    for ch in doc["characters"]],
        name=doc.get("name", ""),
    )
    if [ch["degree"] for ch in doc["characters"]] != tbl.degrees:
        raise ConsistencyError("stored degrees disagree with the values")
    tbl.verify()
    if codegrees(tbl)[1] != doc["codegrees"]:
        raise ConsistencyError("stored codegrees disagree with the table")
    return tbl


def _warn(msg: str) -> None:
    print(f"codegree-lab: warning: {msg}", file=sys.stderr)


def obtain_table(desc, cache_dir: str | None, threads: int, group: FiniteGroup | None = None):
    """(group or None, table); a valid cache file is trusted only after re-verification."""
    path = None
    if cache_dir:
        path = Path(cache_dir) / f"{descriptor_hash(desc)}.v{FORMAT}.json"
        if path.exists():
            try:
                return group, table_from_json(json.loads(path.read_text()), desc)
            except (ValueError, KeyError, TypeError, IndexError, CodegreeLabError) as exc:
                _warn(f"ignoring corrupt cache file {path}: {exc}")
    group = group or build_group(desc)
    tbl = character_table(group, threads=threads)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dump(table_to_json(tbl, desc)))
    return group, tbl


def attach_classes(group: FiniteGroup, tbl: CharacterTable) -> CharacterTable:
    """Give a loaded table the class data of a freshly built group (checked to agree)."""
    if tbl.classes is None:
        cd = group.classes
        if not (np.array_equal(cd.sizes, tbl.class_sizes) and np.array_equal(cd.element_orders, tbl.element_orders)
                and np.array_equal(cd.power_map, tbl.power_map)):
            raise ConsistencyError("stored classes do not match the group")
        tbl.classes = cd
    return tbl


# --- commands ----------------------------------------------------------------

def dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def cmd_build(desc, args) -> tuple[dict, int]:
    G = build_group(desc)
    spectrum = element_order_spectrum(G)
    return {
        "format": FORMAT,
        "descriptor": desc,
        "hash": descriptor_hash(desc),
        "name": G.name,
        "order": G.order,
        "center_order": center(G).order,
        "fitting_order": fitting_subgroup(G).order,
        "cyclic": is_cyclic(whole_group(G)).cyclic,
        "spectrum": spectrum.orders,
        "maximal_pi_sets": [list(s) for s in spectrum.maximal_pi_sets],
    }, EXIT_OK


def cmd_chartab(desc, args) -> tuple[dict, int]:
    _, tbl = obtain_table(desc, args.cache, args.threads)
    return table_to_json(tbl, desc), EXIT_OK


def cmd_codegrees(desc, args) -> tuple[dict, int]:
    _, tbl = obtain_table(desc, args.cache, args.threads)
    records, cods = codegrees(tbl)
    return {
        "format": FORMAT,
        "descriptor": desc,
        "group_order": tbl.group_order,
        "codegrees": cods,
        "records": [{"index": r.index, "degree": r.degree, "kernel_size": r.kernel_size, "cod": r.cod,
                     "pi_set": r.pi_set} for r in records],
    }, EXIT_OK


def _moreto_json(tbl: CharacterTable, records) -> dict:
    rep = moreto_check(tbl, records)
    return {
        "negative_answer": rep.negative_answer,
        "violations": rep.violations,
        "violating_codegrees": rep.violating_codegrees,
        "verdicts": [{"index": v.index, "cod": v.cod, "witness_class": v.witness_class,
                      "witness_order": v.witness_order} for v in rep.verdicts],
    }


def cmd_moreto(desc, args) -> tuple[dict, int]:
    _, tbl = obtain_table(desc, args.cache, args.threads)
    records, _ = codegrees(tbl)
    rep = _moreto_json(tbl, records)
    doc = {"format": FORMAT, "descriptor": desc, "group_order": tbl.group_order, **rep}
    return doc, EXIT_VIOLATIONS if rep["negative_answer"] else EXIT_OK


def _check(ok: bool, **detail) -> dict:
    return {"pass": bool(ok), **detail}


def cmd_verify_paper(desc, args) -> tuple[dict, int]:
    G = build_group(desc)
    _, tbl = obtain_table(desc, args.cache, args.threads, group=G)
    attach_classes(G, tbl)
    F, Z = fitting_subgroup(G), center(G)
    records, cods = codegrees(tbl)
    cert = verify_theorem23(G, F, Z, tbl, records)
    spectrum = element_order_spectrum(G).orders
    qian_ok, qian_fail = qian_property_test(tbl, cods)
    moreto = _moreto_json(tbl, records)
    doc = {
        "format": FORMAT,
        "descriptor": desc,
        "group_order": G.order,
        "fitting_order": F.order,
        "center_order": Z.order,
        "codegrees": cods,
        "spectrum": spectrum,
        "certificate": cert.as_dict(),
        "question_b": {k: moreto[k] for k in ("negative_answer", "violations", "violating_codegrees")},
    }
    if not (cert.applicable and cert.hypotheses_hold):
        doc["status"] = "inapplicable"
        doc["checks"] = {"qian_divisibility": _check(qian_ok, failures=qian_fail)}
        return doc, EXIT_OK if qian_ok else EXIT_INTERNAL

    top = pi_set(G.order)
    full = math.prod(top)
    checks = {
        "hypotheses": _check(cert.hypotheses_hold and math.gcd(F.order, G.order // F.order) == 1,
                             z_cyclic=cert.z_cyclic, chief_factor=cert.chief_factor, coprime=cert.coprime),
        "fitting_formula": _check(bool(cert.witnesses) and all(w.cod == G.order // math.isqrt(F.order // Z.order)
                                                              for w in cert.witnesses),
                                  witnesses=[w.index for w in cert.witnesses], expected_cod=cert.expected_cod),
        "prime_divisors_of_codegree": _check(verify_theorem22_consequence(tbl, cert, records),
                                             pi_group=sorted(top)),
        "question_b_negative": _check(moreto["negative_answer"]
                                      and all(s % full for s in spectrum)
                                      and {r.index for r in records if set(r.pi_set) == top}
                                      == set(moreto["violations"]),
                                      violating_codegrees=moreto["violating_codegrees"]),
        "qian_divisibility": _check(qian_ok, failures=qian_fail),
    }
    if desc == {"preset": "paper_g"}:
        checks["order"] = _check(G.order == 337920 and F.order == 2048 and Z.order == 2,
                                 order=G.order, fitting=F.order, center=Z.order)
        checks["codegree_set"] = _check(cods == PAPER_CODEGREES,
                                        missing=sorted(set(PAPER_CODEGREES) - set(cods)),
                                        unexpected=sorted(set(cods) - set(PAPER_CODEGREES)))
        checks["fitting_is_E"] = _check(bool(np.array_equal(F.members, G.e_subgroup_keys)))
        doc["extraspecial_type"] = G.act.sym.form_type
    doc["checks"] = checks
    ok = all(c["pass"] for c in checks.values())
    doc["status"] = "pass" if ok else "fail"
    return doc, EXIT_OK if ok else EXIT_INTERNAL


COMMANDS = {
    "build": cmd_build,
    "chartab": cmd_chartab,
    "codegrees": cmd_codegrees,
    "moreto": cmd_moreto,
    "verify-paper": cmd_verify_paper,
}


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="codegree-lab", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--preset", help=f"named group: {', '.join(PRESETS)} or C_n")
    src.add_argument("--descriptor", help="group descriptor JSON file")
    ap.add_argument("--cache", default=os.environ.get("CODEGREE_LAB_CACHE"),
                    help="table cache directory (default: $CODEGREE_LAB_CACHE)")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for class matrices")
    ap.add_argument("--json", metavar="FILE", help="also write the JSON output to FILE")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise DescriptorError("--threads must be at least 1")
        if args.descriptor:
            desc = load_descriptor(args.descriptor)
        elif args.preset:
            desc = {"preset": args.preset}
        elif args.command == "verify-paper":
            desc = {"preset": "paper_g"}
        else:
            raise DescriptorError("give --preset or --descriptor")
        doc, code = COMMANDS[args.command](desc, args)
    except CodegreeLabError as exc:
        print(f"codegree-lab: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except MemoryError:
        print("codegree-lab: error: out of memory", file=sys.stderr)
        return EXIT_CAP
    text = dump(doc)
    sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
