"""Builds the corpus data files from the definitions in ``fixtures``.

Run as a module to (re)generate the bundled data:

    python -m secmodel.corpus.build [OUTDIR]

The output is deterministic; regenerating into a scratch directory and
comparing against ``data/v1`` is the corpus integrity test.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from ..convert import sand_to_cim
from ..model import Actuator, ExternalReference
from ..sandtext import parse_sand, serialize_sand
from ..xmlio import document_for, write_model
from . import DATA_DIR
from . import fixtures as fx


@dataclass(frozen=True)
class TreeSource:
    """One attack tree inside an intrusion fixture."""

    stem: str
    display: str
    text: str
    actuators: dict[int, Actuator] = field(default_factory=dict)
    model_refs: dict[int, str] = field(default_factory=dict)
    references: tuple[ExternalReference, ...] = ()

    @property
    def enriched(self) -> bool:
        return bool(self.actuators or self.model_refs or self.references)


@dataclass(frozen=True)
class FixtureBuild:
    """A fixture directory ready to be written: files plus manifest."""

    name: str
    provenance: str
    files: dict[str, bytes]
    models: list[str]
    sources: dict[str, str]
    expectations: list[dict]

    def manifest_bytes(self) -> bytes:
        manifest = {
            "name": self.name,
            "provenance": self.provenance,
            "models": self.models,
            "sources": self.sources,
            "expectations": self.expectations,
        }
        return (json.dumps(manifest, indent=2) + "\n").encode("utf-8")


def _intrusion(
    name: str,
    provenance: str,
    sources: tuple[TreeSource, ...],
    expectations: list[dict],
) -> FixtureBuild:
    files: dict[str, bytes] = {}
    models: list[str] = []
    converted_names: list[str] = []
    source_map: dict[str, str] = {}
    for src in sources:
        tree = parse_sand(src.text)
        files[f"{src.stem}.ctrees"] = serialize_sand(tree)
        converted = sand_to_cim(tree, name=src.display)
        if src.enriched:
            converted_name = f"{src.stem}.converted.cim.xml"
            files[converted_name] = write_model(document_for(converted))
            enriched = fx.enrich(
                converted, src.actuators, src.model_refs, src.references
            )
            files[f"{src.stem}.cim.xml"] = write_model(document_for(enriched))
            converted_names.append(converted_name)
        else:
            converted_name = f"{src.stem}.cim.xml"
            files[converted_name] = write_model(document_for(converted))
        models.append(f"{src.stem}.cim.xml")
        source_map[f"{src.stem}.ctrees"] = converted_name
    models.extend(converted_names)
    return FixtureBuild(name, provenance, files, models, source_map, expectations)


def _single_file(
    name: str, provenance: str, filename: str, payload, expectations: list[dict]
) -> FixtureBuild:
    files = {filename: write_model(document_for(payload))}
    return FixtureBuild(name, provenance, files, [filename], {}, expectations)


# ---------------------------------------------------------------------------
# fixture registry


def _become_root() -> FixtureBuild:
    return _intrusion(
        "become-root",
        "documented",
        (TreeSource("become-root", "Become Root", fx.BECOME_ROOT_TEXT),),
        [
            {"kind": "STEP_COUNT", "count": 8},
            {"kind": "NAMED_STEP", "label": "Gain user privileges(S)", "number": 2},
            {"kind": "NAMED_STEP", "label": "local buffer overflow(S)", "number": 5},
            {"kind": "NAMED_STEP", "label": "RSA key", "number": 8},
        ],
    )


def _blackenergy() -> FixtureBuild:
    return _intrusion(
        "blackenergy",
        "documented",
        (
            TreeSource(
                "blackenergy",
                "BlackEnergy",
                fx.BLACKENERGY_TEXT,
                actuators=fx._actuators(
                    manual=fx.BLACKENERGY_MANUAL,
                    automatic=fx.BLACKENERGY_AUTOMATIC,
                ),
                references=fx.BLACKENERGY_REFERENCES,
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 37},
            {"kind": "ACTUATOR_TALLY", "tally": {"MANUAL": 15, "AUTOMATIC": 22}},
            {
                "kind": "NAMED_STEP",
                "label": "Directory traversal vulnerability in CimWebServer.exe",
                "number": 27,
            },
            {"kind": "NAMED_STEP", "label": "Execute remote .cim/.bak file", "number": 28},
            {"kind": "NAMED_STEP", "label": "download 'newsfeed.xml'", "number": 30},
            {"kind": "NAMED_STEP", "label": "execute 'CimCMSafegs.exe'", "number": 37},
            {"kind": "NAMED_STEP", "label": "Detection Prevention(S)", "number": 17},
            {
                "kind": "NAMED_STEP",
                "label": "Initiate C2 communication channel(S)",
                "number": 14,
            },
        ],
    )


def _ukraine() -> FixtureBuild:
    return _intrusion(
        "ukraine-2015",
        "documented",
        (
            TreeSource(
                "ukraine-2015",
                "Ukraine 2015",
                fx.UKRAINE_TEXT,
                actuators=fx._actuators(
                    manual=fx.UKRAINE_MANUAL,
                    automatic=fx.UKRAINE_AUTOMATIC,
                    unknown=fx.UKRAINE_UNKNOWN,
                ),
                model_refs={9: "blackenergy"},
                references=fx.UKRAINE_REFERENCES,
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 22},
            {
                "kind": "ACTUATOR_TALLY",
                "tally": {"MANUAL": 6, "AUTOMATIC": 14, "UNKNOWN": 2},
            },
            {"kind": "NAMED_STEP", "label": "BlackEnergy(S)", "number": 9},
            {"kind": "NAMED_STEP", "label": "Telephone Denial of Service", "number": 21},
            {"kind": "NAMED_STEP", "label": "Erase master boot record(S)", "number": 20},
            {"kind": "NAMED_STEP", "label": "Email Spear-phishing", "number": 4},
        ],
    )


def _example_dm() -> FixtureBuild:
    return _single_file(
        "example-dm",
        "documented",
        "example-dm.dm.xml",
        fx.example_dm(),
        [
            {
                "kind": "ROOT_STATE",
                "overrides": {"1.1.2": 0.7, "1.3.2": 0.0},
                "state": 0.7,
            },
            {
                "kind": "ROOT_STATE",
                "overrides": {"1.3.1": 0.0, "1.3.2": 0.0},
                "state": 0.0,
            },
            {"kind": "ROOT_STATE", "overrides": {"1.3.2": 0.0}, "state": 1.0},
        ],
    )


def _scada_dm() -> FixtureBuild:
    return _single_file(
        "scada-dm",
        "documented",
        "scada-dm.dm.xml",
        fx.scada_dm(),
        [
            {"kind": "ROOT_STATE", "overrides": {}, "state": 1.0},
            {"kind": "ROOT_STATE", "overrides": {"airgap": 0.0}, "state": 0.0},
        ],
    )


def _ot_playbook() -> FixtureBuild:
    return _single_file(
        "ot-playbook",
        "documented",
        "ot-playbook.oiirp.xml",
        fx.ot_playbook(),
        [
            {
                "kind": "LINK_TRANSITION",
                "activate": [4],
                "paragon": "p-sec-hmi",
                "from": 1.0,
                "to": 1.0,
            },
            {
                "kind": "LINK_TRANSITION",
                "activate": [4, 5],
                "paragon": "p-pri-hmi",
                "from": 1.0,
                "to": 0.0,
            },
            {
                "kind": "LINK_TRANSITION",
                "activate": [4, 5, 8],
                "paragon": "p-pri-hmi",
                "from": 0.0,
                "to": 1.0,
            },
            {"kind": "ROOT_STATE", "activate": [4, 5, 8], "state": 1.0},
            {"kind": "ROOT_STATE", "activate": [5], "state": 0.0},
        ],
    )


def _blackenergy_scada() -> FixtureBuild:
    return _single_file(
        "blackenergy-scada",
        "documented",
        "blackenergy-scada.oiirp.xml",
        fx.blackenergy_scada(),
        [
            {
                "kind": "LINK_TRANSITION",
                "activate": [14],
                "paragon": "ids-ips",
                "from": 1.0,
                "to": 0.2,
            },
            {
                "kind": "LINK_TRANSITION",
                "activate": [17],
                "paragon": "ids-sensors",
                "from": 1.0,
                "to": 0.0,
            },
            {
                "kind": "LINK_TRANSITION",
                "activate": [26],
                "paragon": "airgap",
                "from": 1.0,
                "to": 0.0,
            },
            {
                "kind": "LINK_TRANSITION",
                "activate": [27],
                "paragon": "known-vulns",
                "from": 1.0,
                "to": 0.0,
            },
            {"kind": "ROOT_STATE", "activate": [14], "state": 0.2},
            {"kind": "ROOT_STATE", "activate": [14, 17, 26, 27], "state": 0.0},
        ],
    )


def _ukraine_scada() -> FixtureBuild:
    return _single_file(
        "ukraine-scada",
        "documented",
        "ukraine-scada.oiirp.xml",
        fx.ukraine_scada(),
        [
            {
                "kind": "LINK_TRANSITION",
                "activate": [12],
                "paragon": "plant-control-view",
                "from": 1.0,
                "to": 0.0,
            },
            {"kind": "ROOT_STATE", "activate": [6], "state": 0.8},
            {"kind": "ROOT_STATE", "activate": [6, 12, 15], "state": 0.0},
        ],
    )


def _stuxnet() -> FixtureBuild:
    dossier = (
        ExternalReference(
            title="W32.Stuxnet Dossier",
            url="https://docs.broadcom.com/doc/security-response-w32-stuxnet-dossier-11-en",
            publisher="Symantec",
        ),
    )
    return _intrusion(
        "stuxnet",
        "reconstructed",
        (
            TreeSource(
                "stuxnet-a",
                "Stuxnet: business network compromise",
                fx.STUXNET_A_TEXT,
                actuators=fx._actuators(
                    manual=(2, 3),
                    dual=(1,),
                    automatic=(4, 5, 6, 7, 8, 9),
                ),
                references=dossier,
            ),
            TreeSource(
                "stuxnet-b",
                "Stuxnet: centrifuge sabotage",
                fx.STUXNET_B_TEXT,
                actuators=fx._actuators(automatic=(1, 2, 3, 4, 5, 6, 7, 8)),
                references=dossier,
            ),
        ),
        [
            {"kind": "STEP_COUNT", "file": "stuxnet-a.cim.xml", "count": 9},
            {"kind": "STEP_COUNT", "file": "stuxnet-b.cim.xml", "count": 8},
            {
                "kind": "NAMED_STEP",
                "file": "stuxnet-a.cim.xml",
                "label": "User Inserts USB",
                "number": 2,
            },
            {
                "kind": "NAMED_STEP",
                "file": "stuxnet-a.cim.xml",
                "label": "User opens file project",
                "number": 3,
            },
            {
                "kind": "NAMED_STEP",
                "file": "stuxnet-b.cim.xml",
                "label": "Replay recorded sensor values",
            },
            {
                "kind": "ACTUATOR_TALLY",
                "file": "stuxnet-b.cim.xml",
                "tally": {"AUTOMATIC": 8},
            },
        ],
    )


def _havex() -> FixtureBuild:
    return _intrusion(
        "havex",
        "reconstructed",
        (
            TreeSource(
                "havex",
                "Havex",
                fx.HAVEX_TEXT,
                actuators=fx._actuators(
                    manual=(2, 4, 7),
                    automatic=(1, 3, 5, 6, 8, 9, 10),
                ),
                references=(
                    ExternalReference(
                        title="ICS Focused Malware",
                        url="https://www.cisa.gov/news-events/ics-alerts/ics-alert-14-176-02a",
                        publisher="ICS-CERT",
                    ),
                ),
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 10},
            {"kind": "NAMED_STEP", "label": "Watering hole attack", "number": 6},
            {"kind": "NAMED_STEP", "label": "Email Spear-phishing", "number": 7},
        ],
    )


def _steel_mill() -> FixtureBuild:
    return _intrusion(
        "german-steel-mill",
        "reconstructed",
        (
            TreeSource(
                "german-steel-mill",
                "German steel mill",
                fx.STEEL_MILL_TEXT,
                actuators=fx._actuators(
                    manual=(1, 2, 3),
                    automatic=(4, 5, 6, 7, 9),
                    dual=(8,),
                ),
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 9},
            {"kind": "NAMED_STEP", "label": "Email Spear-phishing", "number": 2},
        ],
    )


def _duqu2() -> FixtureBuild:
    return _intrusion(
        "duqu2",
        "reconstructed",
        (
            TreeSource(
                "duqu2",
                "Duqu 2.0",
                fx.DUQU2_TEXT,
                actuators=fx._actuators(
                    manual=(2,),
                    automatic=(1, 3, 4, 5, 6, 7, 8, 9, 10),
                ),
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 10},
            {"kind": "NAMED_STEP", "label": "Command and control(S)", "number": 9},
        ],
    )


def _ukraine_2017() -> FixtureBuild:
    return _intrusion(
        "ukraine-2017",
        "reconstructed",
        (
            TreeSource(
                "ukraine-2017",
                "Ukraine 2016/2017",
                fx.UKRAINE2_TEXT,
                actuators=fx._actuators(
                    manual=(1, 2, 3, 4),
                    automatic=(5, 6, 7, 8, 9, 10),
                ),
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 10},
            {"kind": "NAMED_STEP", "label": "Monitor IT staff behaviour(S)", "number": 3},
        ],
    )


def _crashoverride() -> FixtureBuild:
    return _intrusion(
        "crashoverride",
        "reconstructed",
        (
            TreeSource(
                "crashoverride",
                "CRASHOVERRIDE",
                fx.CRASHOVERRIDE_TEXT,
                actuators=fx._actuators(
                    manual=(2,),
                    automatic=(1, 3, 4, 5, 6, 7, 8, 9, 10, 11),
                ),
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 11},
            {
                "kind": "NAMED_STEP",
                "label": "Cycle circuit breakers via IEC-104",
                "number": 7,
            },
        ],
    )


def _trisis() -> FixtureBuild:
    return _intrusion(
        "trisis",
        "reconstructed",
        (
            TreeSource(
                "trisis",
                "TRISIS",
                fx.TRISIS_TEXT,
                actuators=fx._actuators(
                    manual=(1, 2, 3),
                    automatic=(4, 5, 6, 7, 8),
                ),
            ),
        ),
        [
            {"kind": "STEP_COUNT", "count": 8},
            {"kind": "NAMED_STEP", "label": "Upload TriStation payload", "number": 5},
            {
                "kind": "NAMED_STEP",
                "label": "Access SIS engineering workstation(S)",
                "number": 3,
            },
        ],
    )


_BUILDERS = (
    _become_root,
    _blackenergy,
    _ukraine,
    _example_dm,
    _scada_dm,
    _ot_playbook,
    _blackenergy_scada,
    _ukraine_scada,
    _stuxnet,
    _havex,
    _steel_mill,
    _duqu2,
    _ukraine_2017,
    _crashoverride,
    _trisis,
)


def build_all() -> list[FixtureBuild]:
    return [builder() for builder in _BUILDERS]


def write_corpus(root: Path) -> list[Path]:
    """Write every fixture under root; returns the paths written."""
    written: list[Path] = []
    for build in build_all():
        directory = root / build.name
        directory.mkdir(parents=True, exist_ok=True)
        for filename in sorted(build.files):
            path = directory / filename
            path.write_bytes(build.files[filename])
            written.append(path)
        manifest = directory / "manifest.json"
        manifest.write_bytes(build.manifest_bytes())
        written.append(manifest)
    return written


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="regenerate the bundled corpus")
    parser.add_argument(
        "outdir",
        nargs="?",
        type=Path,
        default=DATA_DIR,
        help=f"target directory (default: {DATA_DIR})",
    )
    args = parser.parse_args(argv)
    written = write_corpus(args.outdir)
    print(f"wrote {len(written)} files under {args.outdir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
