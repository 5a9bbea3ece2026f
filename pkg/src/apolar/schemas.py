"""JSON schemas for every ``--json`` output of the command line tool."""

from __future__ import annotations

_INT_MAP = {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}}

GRADED = {
    "type": "object",
    "required": ["dims"],
    "properties": {
        "dims": _INT_MAP,
        "window": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "vanishing": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
    },
}

BETTI = {
    "type": "object",
    "required": ["0", "1", "2"],
    "properties": {k: _INT_MAP for k in ("0", "1", "2")},
    "additionalProperties": False,
}

HF = {"type": "array", "items": {"type": "integer", "minimum": 0}}

FIELD = {
    "type": "object",
    "required": ["type"],
    "properties": {"type": {"enum": ["fp", "rational"]}, "p": {"type": "integer"}},
}

TANGENT = {
    "type": "object",
    "required": ["window", "t0", "t1", "hom", "tnt", "concentrated_minus_one", "positive_vanishes", "char_ok"],
    "properties": {
        "window": {"type": "array", "items": {"type": "integer"}},
        "t0": GRADED,
        "t1": GRADED,
        "hom": GRADED,
        "tnt": {"type": "boolean"},
        "concentrated_minus_one": {"type": "boolean"},
        "positive_vanishes": {"type": "boolean"},
        "char_ok": {"type": "boolean"},
        "two_path_ok": {"type": ["boolean", "null"]},
        "inclusion_ok": {"type": ["boolean", "null"]},
    },
}

CONDITION = {
    "type": "object",
    "required": ["name", "passed", "tier", "evidence"],
    "properties": {
        "name": {"type": "string"},
        "passed": {"type": "boolean"},
        "tier": {"enum": ["MACHINE", "CITED"]},
        "evidence": {"type": "object"},
        "anchor": {"type": "string"},
    },
    "if": {"properties": {"tier": {"const": "CITED"}}},
    "then": {"required": ["anchor"]},
}

CERTIFICATE = {
    "type": "object",
    "required": [
        "schema_version",
        "field",
        "inputs",
        "seed",
        "setting",
        "extra",
        "tiers",
        "verdict",
        "evidence",
        "canonical_hash",
    ],
    "properties": {
        "schema_version": {"type": "string"},
        "field": FIELD,
        "inputs": {
            "type": "object",
            "required": ["F", "G"],
            "properties": {"F": {"type": "string"}, "G": {"type": "string"}},
        },
        "seed": {"type": ["integer", "null"]},
        "setting": {"type": "array", "items": CONDITION},
        "extra": {"type": "array", "items": CONDITION},
        "tiers": {"type": "object", "additionalProperties": {"enum": ["MACHINE", "CITED"]}},
        "verdict": {"enum": ["certified"]},
        "evidence": {"type": "object"},
        "canonical_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "timestamp": {"type": "string"},
    },
}

FAILURE = {
    "type": "object",
    "required": ["verdict", "failing"],
    "properties": {
        "verdict": {"const": "precondition-failed"},
        "failing": {"type": "array", "items": {"type": "string"}},
    },
}

_ALGEBRA = {
    "type": "object",
    "required": ["ring", "generators", "hilbert", "length"],
    "properties": {
        "ring": {"type": "array", "items": {"type": "string"}},
        "generators": {"type": "array", "items": {"type": "string"}},
        "hilbert": HF,
        "length": {"type": "integer"},
    },
}


def _command(name: str, props: dict, required: list[str]) -> dict:
    return {
        "type": "object",
        "required": ["command", "field"] + required,
        "properties": {"command": {"const": name}, "field": FIELD, **props},
    }


COMMANDS = {
    "apolar": _command("apolar", {"algebra": _ALGEBRA, "dual": {"type": "string"}}, ["algebra", "dual"]),
    "hilbert": _command("hilbert", {"hilbert": HF, "length": {"type": "integer"}}, ["hilbert", "length"]),
    "betti": _command("betti", {"betti": BETTI}, ["betti"]),
    "tangent": _command("tangent", {"tangent": TANGENT, "t2_residue": GRADED}, ["tangent", "t2_residue"]),
    "very-general": _command(
        "very-general",
        {
            "report": {
                "type": "object",
                "required": ["form", "hilbert_ok", "betti_ok", "tnt", "passed"],
                "properties": {
                    "hilbert_ok": {"type": "boolean"},
                    "betti_ok": {"type": "boolean"},
                    "tnt": {"type": "boolean"},
                    "passed": {"type": "boolean"},
                },
            }
        },
        ["report"],
    ),
    "union": _command(
        "union",
        {
            "algebra": _ALGEBRA,
            "socle_dim": {"type": "integer"},
            "bigraded": {"type": "object"},
        },
        ["algebra", "socle_dim"],
    ),
    "connect": _command(
        "connect",
        {"direct": _ALGEBRA, "quotient": _ALGEBRA, "agree": {"type": "boolean"}},
        ["direct", "quotient", "agree"],
    ),
    "fiber": _command(
        "fiber",
        {
            "fiber": {
                "type": "object",
                "required": ["generators", "hilbert", "length", "tangent_dim", "tangent_ok"],
                "properties": {"hilbert": HF, "tangent_ok": {"type": "boolean"}},
            }
        },
        ["fiber"],
    ),
    "certify": _command(
        "certify", {"certificate": {"oneOf": [CERTIFICATE, FAILURE]}}, ["certificate"]
    ),
    "search": _command(
        "search",
        {
            "summary": {
                "type": "object",
                "required": ["n", "trials", "seed", "counts", "frequencies"],
            },
            "records": {"type": "array", "items": {"type": "object"}},
        },
        ["summary", "records"],
    ),
    "paper-examples": _command(
        "paper-examples",
        {
            "examples": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["m", "cubic", "hilbert", "hilbert_ok", "concentrated_minus_one", "passed"],
                },
            },
            "passed": {"type": "boolean"},
        },
        ["examples", "passed"],
    ),
}

SEARCH_RECORD = {
    "type": "object",
    "required": [
        "n",
        "seed",
        "trial",
        "cubic",
        "hilbert_ok",
        "betti_ok",
        "tnt",
        "concentrated_minus_one",
        "t2_ok",
        "all_ok",
    ],
}
