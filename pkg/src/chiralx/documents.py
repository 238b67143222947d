"""Group-data documents: JSON schema, loading/validation, and the golden corpus.

A document carries everything the engine needs about one group: the Lie
algebra table, the coordinate ring with its rewrite rules, the stored left
and right invariant fields (left takes the value -v at the identity, right
takes +v), the adjoint coefficient matrix, the invariant coframe, the unit
point, named invariant forms, and optional finite-dimensional module data.

Shipped corpus: gm1 and gm2 (split tori of rank one and two), sl2, and the
Borel subgroup of sl2 (the non-unimodular example).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .bimodule import ModuleRep
from .group import GroupData, validate_group
from .liealg import BilinearForm, LieAlgebraData
from .ring import PolyRing, to_rat

SCHEMA = "chiralx.group.v1"


class DocumentError(ValueError):
    pass


@dataclass
class Bundle:
    name: str
    gd: GroupData
    forms: dict
    reps: dict
    raw: dict


def _require(doc, key, where="document"):
    if key not in doc:
        raise DocumentError(f"missing field {key!r} in {where}")
    return doc[key]


def load_document(path):
    """Load and structurally validate a group document from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"malformed JSON at byte offset {exc.pos} (line {exc.lineno}): {exc.msg}"
        ) from exc
    return bundle_from_dict(doc)


def bundle_from_dict(doc):
    if _require(doc, "schema") != SCHEMA:
        raise DocumentError(f"unsupported schema {doc['schema']!r}")
    name = _require(doc, "name")
    lie_doc = _require(doc, "lie")
    labels = _require(lie_doc, "labels", "lie")
    dim = int(_require(lie_doc, "dim", "lie"))
    if len(labels) != dim:
        raise DocumentError("lie.labels length disagrees with lie.dim")
    table = _require(lie_doc, "struct_const", "lie")
    L = LieAlgebraData.from_table(labels, table)

    ring_doc = _require(doc, "ring")
    gens = _require(ring_doc, "generators", "ring")
    degrees = ring_doc.get("degrees", [1] * len(gens))
    degree_rank = max(
        (len(d) if isinstance(d, list) else 1) for d in degrees
    )
    R = PolyRing(
        gens,
        degrees=degrees,
        graded=bool(ring_doc.get("graded", True)),
        degree_rank=degree_rank,
    )
    for rule in ring_doc.get("rewrite", []):
        lhs = R.parse(rule["lhs"]) if isinstance(rule["lhs"], str) else rule["lhs"]
        if len(lhs) != 1 or list(lhs.values())[0] != 1:
            raise DocumentError("rewrite lhs must be a single monic monomial")
        R.add_rule(next(iter(lhs)), R.parse(rule["rhs"]))
    relations = [R.parse(s) for s in ring_doc.get("relations", [])]

    fields_doc = _require(doc, "fields")

    def parse_table(rows, rows_n, cols_n, where):
        if len(rows) != rows_n or any(len(r) != cols_n for r in rows):
            raise DocumentError(f"{where} must be {rows_n} x {cols_n}")
        return [[R.parse(s) for s in row] for row in rows]

    left = parse_table(_require(fields_doc, "left", "fields"), dim, R.n, "fields.left")
    right = parse_table(_require(fields_doc, "right", "fields"), dim, R.n, "fields.right")
    ad = parse_table(_require(doc, "ad_coeff"), dim, dim, "ad_coeff")
    coframe = parse_table(_require(doc, "coframe"), dim, R.n, "coframe")
    unit = {k: to_rat(v) for k, v in _require(doc, "unit_point").items()}
    for g in gens:
        if g not in unit:
            raise DocumentError(f"unit_point missing generator {g!r}")

    gd = GroupData(
        name=name,
        ring=R,
        lie=L,
        left=left,
        right=right,
        ad=ad,
        coframe=coframe,
        unit_point=unit,
        relations=relations,
    )

    forms = {}
    for fname, rows in doc.get("forms", {}).items():
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise DocumentError(f"form {fname!r} must be {dim} x {dim}")
        forms[fname] = BilinearForm.from_rows(rows)

    reps = {}
    for rname, rep_doc in doc.get("reps", {}).items():
        m = int(_require(rep_doc, "dim", f"reps.{rname}"))
        actions = _require(rep_doc, "actions", f"reps.{rname}")
        if len(actions) != dim:
            raise DocumentError(f"reps.{rname}.actions must list one matrix per basis element")
        sigma = [[[to_rat(x) for x in row] for row in mat] for mat in actions]
        coaction = [[R.parse(s) for s in row] for row in _require(rep_doc, "coaction", f"reps.{rname}")]
        if len(coaction) != m or any(len(r) != m for r in coaction):
            raise DocumentError(f"reps.{rname}.coaction must be {m} x {m}")
        reps[rname] = ModuleRep(rname, m, sigma, coaction)

    return Bundle(name=name, gd=gd, forms=forms, reps=reps, raw=doc)


def golden_path(name):
    return resources.files("chiralx").joinpath(f"data/{name}.json")


def load_golden(name):
    return load_document(str(golden_path(name)))


GOLDEN_NAMES = ("gm1", "gm2", "sl2", "borel")


# -- golden corpus builders ------------------------------------------------------


def build_gm1():
    return {
        "schema": SCHEMA,
        "name": "gm1",
        "lie": {"dim": 1, "labels": ["v"], "struct_const": [[[0]]]},
        "ring": {
            "generators": ["x", "y"],
            "degrees": [1, -1],
            "graded": True,
            "relations": ["x*y - 1"],
            "rewrite": [{"lhs": "x*y", "rhs": "1"}],
        },
        "fields": {"left": [["-x", "y"]], "right": [["x", "-y"]]},
        "ad_coeff": [["-1"]],
        "coframe": [["-y", "0"]],
        "unit_point": {"x": 1, "y": 1},
        "forms": {
            "q0": [[0]],
            "q1": [[1]],
            "q2": [[2]],
            "qm3": [[-3]],
        },
        "reps": {
            "triv": {"dim": 1, "actions": [[[0]]], "coaction": [["1"]]},
            "char1": {"dim": 1, "actions": [[[-1]]], "coaction": [["x"]]},
        },
    }


def build_gm2():
    return {
        "schema": SCHEMA,
        "name": "gm2",
        "lie": {
            "dim": 2,
            "labels": ["v1", "v2"],
            "struct_const": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
        },
        "ring": {
            "generators": ["x1", "y1", "x2", "y2"],
            "degrees": [[1, 0], [-1, 0], [0, 1], [0, -1]],
            "graded": True,
            "relations": ["x1*y1 - 1", "x2*y2 - 1"],
            "rewrite": [
                {"lhs": "x1*y1", "rhs": "1"},
                {"lhs": "x2*y2", "rhs": "1"},
            ],
        },
        "fields": {
            "left": [["-x1", "y1", "0", "0"], ["0", "0", "-x2", "y2"]],
            "right": [["x1", "-y1", "0", "0"], ["0", "0", "x2", "-y2"]],
        },
        "ad_coeff": [["-1", "0"], ["0", "-1"]],
        "coframe": [["-y1", "0", "0", "0"], ["0", "0", "-y2", "0"]],
        "unit_point": {"x1": 1, "y1": 1, "x2": 1, "y2": 1},
        "forms": {
            "q0": [[0, 0], [0, 0]],
            "q11": [[1, 0], [0, 1]],
        },
        "reps": {
            "triv": {
                "dim": 1,
                "actions": [[[0]], [[0]]],
                "coaction": [["1"]],
            }
        },
    }


def build_sl2():
    zero3 = [0, 0, 0]
    sc = [[list(zero3) for _ in range(3)] for _ in range(3)]
    # basis order (h, e, f); [h,e] = 2e, [h,f] = -2f, [e,f] = h
    sc[0][1] = [0, 2, 0]
    sc[1][0] = [0, -2, 0]
    sc[0][2] = [0, 0, -2]
    sc[2][0] = [0, 0, 2]
    sc[1][2] = [1, 0, 0]
    sc[2][1] = [-1, 0, 0]
    return {
        "schema": SCHEMA,
        "name": "sl2",
        "lie": {"dim": 3, "labels": ["h", "e", "f"], "struct_const": sc},
        "ring": {
            "generators": ["a", "b", "c", "d"],
            "degrees": [1, 1, 1, 1],
            "graded": False,
            "relations": ["a*d - b*c - 1"],
            "rewrite": [{"lhs": "a*d", "rhs": "b*c + 1"}],
        },
        "fields": {
            "left": [
                ["-a", "b", "-c", "d"],
                ["0", "-a", "0", "-c"],
                ["-b", "0", "-d", "0"],
            ],
            "right": [
                ["a", "b", "-c", "-d"],
                ["c", "d", "0", "0"],
                ["0", "0", "a", "b"],
            ],
        },
        "ad_coeff": [
            ["-a*d - b*c", "-c*d", "a*b"],
            ["-2*b*d", "-d^2", "b^2"],
            ["2*a*c", "c^2", "-a^2"],
        ],
        "coframe": [
            ["-d", "0", "b", "0"],
            ["0", "-d", "0", "b"],
            ["c", "0", "-a", "0"],
        ],
        "unit_point": {"a": 1, "b": 0, "c": 0, "d": 1},
        "forms": {
            "k1": [[2, 0, 0], [0, 0, 1], [0, 1, 0]],
            "km2": [[-4, 0, 0], [0, 0, -2], [0, -2, 0]],
        },
        "reps": {
            "triv": {
                "dim": 1,
                "actions": [[[0]], [[0]], [[0]]],
                "coaction": [["1"]],
            },
            "std": {
                "dim": 2,
                "actions": [
                    [[-1, 0], [0, 1]],
                    [[0, 0], [-1, 0]],
                    [[0, -1], [0, 0]],
                ],
                "coaction": [["a", "c"], ["b", "d"]],
            },
        },
    }


def build_borel():
    sc = [[[0, 0], [0, 2]], [[0, -2], [0, 0]]]
    return {
        "schema": SCHEMA,
        "name": "borel",
        "lie": {"dim": 2, "labels": ["h", "e"], "struct_const": sc},
        "ring": {
            "generators": ["t", "u", "y"],
            "degrees": [1, 1, 1],
            "graded": False,
            "relations": ["t*y - 1"],
            "rewrite": [{"lhs": "t*y", "rhs": "1"}],
        },
        "fields": {
            "left": [["-t", "u", "y"], ["0", "-t", "0"]],
            "right": [["t", "u", "-y"], ["0", "y", "0"]],
        },
        "ad_coeff": [["-1", "0"], ["-2*u*y", "-y^2"]],
        "coframe": [["-y", "0", "0"], ["0", "-y", "u"]],
        "unit_point": {"t": 1, "u": 0, "y": 1},
        "forms": {
            "q0": [[0, 0], [0, 0]],
            "qh": [[1, 0], [0, 0]],
        },
        "reps": {
            "triv": {
                "dim": 1,
                "actions": [[[0]], [[0]]],
                "coaction": [["1"]],
            }
        },
    }


GOLDEN_BUILDERS = {
    "gm1": build_gm1,
    "gm2": build_gm2,
    "sl2": build_sl2,
    "borel": build_borel,
}


def write_golden_corpus(directory):
    """Regenerate the shipped document files (used by scripts/make_golden.py)."""
    import os

    os.makedirs(directory, exist_ok=True)
    for name, builder in GOLDEN_BUILDERS.items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(builder(), fh, indent=1, sort_keys=True)
            fh.write("\n")
    return sorted(GOLDEN_BUILDERS)
