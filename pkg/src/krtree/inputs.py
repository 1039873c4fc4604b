"""Reading SemigroupSpec documents and the built-in fixtures."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import InputError
from .semaphore import IdealSpec
from .semigroup import DEFAULT_CAP, FiniteSemigroup, from_table, from_transformations

FIXTURES = ("lz2", "t2", "sem41")
SEM41_IDEAL = IdealSpec("ab", ("aaa", "aab", "aba", "baa", "bab"), 4)
KINDS = ("transformations", "table")


@lru_cache(maxsize=None)
def schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("schema.json").read_text())


def _where(error: jsonschema.ValidationError) -> str:
    parts = []
    for p in error.absolute_path:
        parts.append(f"[{p}]" if isinstance(p, int) else f".{p}")
    return "".join(parts).lstrip(".") or "<document>"


def validate(doc) -> None:
    if not isinstance(doc, dict):
        raise InputError("a semigroup spec must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError(f"field 'kind': expected one of {KINDS}, got {kind!r}")
    sub = schema()["oneOf"][KINDS.index(kind)]
    error = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(sub).iter_errors(doc))
    if error is not None:
        raise InputError(f"field '{_where(error)}': {error.message}")


def parse_spec(doc: dict, *, cap: int | None = None) -> FiniteSemigroup:
    """Validate a SemigroupSpec document and build its semigroup."""
    validate(doc)
    cap = cap or doc.get("cap", DEFAULT_CAP)
    alphabet = doc["alphabet"]
    if doc["kind"] == "transformations":
        gens = {a: tuple(v) for a, v in doc["generators"].items()}
        return from_transformations(alphabet, gens, cap=cap, point_names=doc.get("points"))
    theta = doc["theta"]
    if set(theta) != set(alphabet):
        raise InputError(f"field 'theta': keys {sorted(theta)} differ from the alphabet")
    if len(doc["table"]) > cap:
        raise InputError(f"field 'table': {len(doc['table'])} elements exceed cap {cap}")
    return from_table(
        doc.get("names"),
        doc["table"],
        {a: theta[a] for a in alphabet},
        identity=doc.get("identity"),
        check_associativity=doc.get("check_associativity"),
    )


def read_json(path: str | Path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def load_spec(path: str | Path, *, cap: int | None = None) -> FiniteSemigroup:
    doc = read_json(path)
    try:
        return parse_spec(doc, cap=cap)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def fixture_doc(name: str) -> dict:
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    return json.loads(resources.files(__package__).joinpath(f"fixtures/{name}.json").read_text())


def load_fixture(name: str, *, cap: int | None = None) -> FiniteSemigroup:
    return parse_spec(fixture_doc(name), cap=cap)
