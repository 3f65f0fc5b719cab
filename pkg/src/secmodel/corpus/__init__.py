"""Bundled corpus of worked models with pinned expectations.

Each fixture is a directory under ``data/v1`` holding model files and a
``manifest.json`` describing them. Manifests pin externally checkable
facts (step counts, actuator tallies, named steps, state transitions) so
the code can be audited against its own examples: ``check_fixture``
replays every expectation and reports mismatches as plain strings.

Set ``SECMODEL_CORPUS_DIR`` to point the loader somewhere else.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from ..model import (
    CimModel,
    CombinedModel,
    DependencyModel,
    display_label,
    number_index,
)
from ..propagation import create_session, propagate, toggle_step
from ..xmlio import ModelDocument, read_model

ENV_VAR = "SECMODEL_CORPUS_DIR"
DATA_DIR = Path(__file__).resolve().parent / "data" / "v1"


def corpus_root(path: Path | str | None = None) -> Path:
    """Resolve the corpus directory: argument, environment, bundled data."""
    if path is not None:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else DATA_DIR


@dataclass(frozen=True)
class Expectation:
    """One pinned fact; ``spec`` is the raw manifest entry."""

    kind: str
    spec: dict


@dataclass(frozen=True)
class Fixture:
    name: str
    provenance: str
    path: Path
    models: tuple[str, ...]
    sources: dict[str, str]
    expectations: tuple[Expectation, ...]


def load_corpus(root: Path | str | None = None) -> list[Fixture]:
    base = corpus_root(root)
    fixtures: list[Fixture] = []
    for manifest_path in sorted(base.glob("*/manifest.json")):
        data = json.loads(manifest_path.read_text(encoding="utf-8"))
        fixtures.append(
            Fixture(
                name=data["name"],
                provenance=data["provenance"],
                path=manifest_path.parent,
                models=tuple(data.get("models", ())),
                sources=dict(data.get("sources", {})),
                expectations=tuple(
                    Expectation(item["kind"], item)
                    for item in data.get("expectations", ())
                ),
            )
        )
    if not fixtures:
        raise FileNotFoundError(f"no corpus fixtures under {base}")
    return fixtures


def load_documents(fixture: Fixture) -> dict[str, ModelDocument]:
    """Parse every model file the manifest lists (validated on read)."""
    return {
        name: read_model((fixture.path / name).read_bytes())
        for name in fixture.models
    }


def check_fixture(fixture: Fixture) -> list[str]:
    """Replay every pinned expectation; returns failure descriptions."""
    documents = load_documents(fixture)
    failures: list[str] = []
    for expectation in fixture.expectations:
        failures.extend(_check(fixture, documents, expectation))
    return failures


# ---------------------------------------------------------------------------
# expectation evaluation


def _cim_of(document: ModelDocument) -> CimModel:
    payload = document.payload
    if isinstance(payload, CombinedModel):
        return payload.cim
    if isinstance(payload, CimModel):
        return payload
    raise TypeError(f"document holds {type(payload).__name__}, not an intrusion model")


def _check(fixture: Fixture, documents: dict, expectation: Expectation) -> list[str]:
    spec = expectation.spec
    name = spec.get("file", fixture.models[0])
    if name not in documents:
        return [f"{fixture.name}: expectation names unknown file {name!r}"]
    document = documents[name]

    def fail(message: str) -> list[str]:
        return [f"{fixture.name}/{name}: [{expectation.kind}] {message}"]

    if expectation.kind == "STEP_COUNT":
        cim = _cim_of(document)
        actual = sum(1 for _ in cim.steps()) - 1
        if actual != spec["count"]:
            return fail(f"expected {spec['count']} steps, found {actual}")

    elif expectation.kind == "ACTUATOR_TALLY":
        cim = _cim_of(document)
        tally = Counter(
            step.actuator.value for step in cim.steps() if step is not cim.root
        )
        expected = {key: int(value) for key, value in spec["tally"].items()}
        if dict(tally) != expected:
            return fail(f"expected tally {expected}, found {dict(tally)}")

    elif expectation.kind == "NAMED_STEP":
        cim = _cim_of(document)
        wanted = spec["label"]
        number = spec.get("number")
        matches = [
            step
            for step in cim.steps()
            if display_label(step) == wanted
            and (number is None or step.number == number)
        ]
        if not matches:
            suffix = f" numbered {number}" if number is not None else ""
            return fail(f"no step displayed as {wanted!r}{suffix}")

    elif expectation.kind == "LINK_TRANSITION":
        payload = document.payload
        if not isinstance(payload, CombinedModel):
            return fail("file does not hold a combined model")
        numbers = spec["activate"]
        paragon = spec["paragon"]
        try:
            session = _activate(payload, numbers[:-1])
            before = session.states[paragon]
            session = _activate_one(session, payload, numbers[-1])
            after = session.states[paragon]
        except KeyError as exc:
            return fail(f"unknown step number or paragon: {exc}")
        if (before, after) != (spec["from"], spec["to"]):
            return fail(
                f"{paragon} moved {before} -> {after}, "
                f"expected {spec['from']} -> {spec['to']}"
            )

    elif expectation.kind == "ROOT_STATE":
        if "overrides" in spec:
            payload = document.payload
            if not isinstance(payload, DependencyModel):
                return fail("file does not hold a dependency model")
            overrides = {key: float(value) for key, value in spec["overrides"].items()}
            state = propagate(payload, overrides)[payload.root.id]
        else:
            payload = document.payload
            if not isinstance(payload, CombinedModel):
                return fail("file does not hold a combined model")
            try:
                session = _activate(payload, spec["activate"])
            except KeyError as exc:
                return fail(f"unknown step number: {exc}")
            state = session.states[payload.dm.root.id]
        if state != spec["state"]:
            return fail(f"root state {state}, expected {spec['state']}")

    else:
        return [f"{fixture.name}: unknown expectation kind {expectation.kind!r}"]
    return []


def _activate(payload: CombinedModel, numbers: list[int]):
    session = create_session(payload)
    for number in numbers:
        session = _activate_one(session, payload, number)
    return session


def _activate_one(session, payload: CombinedModel, number: int):
    step = number_index(payload.cim)[number]
    session, _ = toggle_step(session, step.id, True)
    return session
