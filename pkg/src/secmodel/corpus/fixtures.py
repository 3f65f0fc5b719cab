"""Definitions for every bundled corpus fixture.

Each fixture is built in code and serialized by :mod:`secmodel.corpus.build`;
the checked-in files under ``data/v1`` are the output of that build, so a
regeneration must reproduce them byte for byte.

Two provenance grades:

* ``documented`` -- structure and counts pinned to public incident
  reporting (step totals, actuator tallies, specific named steps).
* ``reconstructed`` -- plausible structure assembled from public
  reporting; expectations limited to validity and a few named steps.
"""

from __future__ import annotations

from dataclasses import replace

from ..convert import assign_numbers, sand_to_cim
from ..model import (
    Actuator,
    AttackTree,
    CimModel,
    CimStep,
    CombinedModel,
    DependencyModel,
    ExternalReference,
    ImpactLink,
    Paragon,
    Refinement,
    Relationship,
    number_index,
)
from ..sandtext import parse_sand


def _text(*lines: str) -> str:
    return "\n".join(lines) + "\n"


def enrich(
    model: CimModel,
    actuators: dict[int, Actuator] | None = None,
    model_refs: dict[int, str] | None = None,
    references: tuple[ExternalReference, ...] = (),
    name: str | None = None,
) -> CimModel:
    """Apply actuator markings and cross-model references by step number."""
    actuators = actuators or {}
    model_refs = model_refs or {}

    def apply(step: CimStep) -> CimStep:
        new = step
        if step.number in actuators:
            new = replace(new, actuator=actuators[step.number])
        if step.number in model_refs:
            new = replace(new, model_ref=model_refs[step.number])
        return replace(new, children=tuple(apply(child) for child in step.children))

    return CimModel(
        name=name or model.name,
        root=apply(model.root),
        references=tuple(references),
        direction=model.direction,
    )


def _actuators(
    manual: tuple[int, ...] = (),
    automatic: tuple[int, ...] = (),
    dual: tuple[int, ...] = (),
    unknown: tuple[int, ...] = (),
) -> dict[int, Actuator]:
    out: dict[int, Actuator] = {}
    for numbers, kind in (
        (manual, Actuator.MANUAL),
        (automatic, Actuator.AUTOMATIC),
        (dual, Actuator.DUAL),
        (unknown, Actuator.UNKNOWN),
    ):
        for number in numbers:
            out[number] = kind
    return out


def link_by_number(
    cim: CimModel, number: int, paragon_id: str, target: float
) -> ImpactLink:
    return ImpactLink(number_index(cim)[number].id, paragon_id, target)


# ---------------------------------------------------------------------------
# become-root: the classic teaching tree


BECOME_ROOT_TEXT = _text(
    "Become Root ;OR",
    "\tNo-Auth ;SAND",
    "\t\tGain user privileges ;SAND",
    "\t\t\tFTP",
    "\t\t\tRSH",
    "\t\tlocal buffer overflow",
    "\tAuth ;AND",
    "\t\tssh",
    "\t\tRSA key",
)


def become_root_tree() -> AttackTree:
    return parse_sand(BECOME_ROOT_TEXT)


def become_root_cim() -> CimModel:
    return sand_to_cim(become_root_tree(), name="Become Root")


# ---------------------------------------------------------------------------
# example-dm: the abstract propagation walkthrough


def example_dm() -> DependencyModel:
    def leaf(pid: str) -> Paragon:
        return Paragon(
            id=pid,
            name=f"Goal {pid}",
            definition="Abstract sub-goal used to illustrate state propagation.",
        )

    def group(pid: str, relationship: Relationship) -> Paragon:
        return Paragon(
            id=pid,
            name=f"Goal {pid}",
            relationship=relationship,
            definition="Abstract composite goal.",
            children=(leaf(f"{pid}.1"), leaf(f"{pid}.2")),
        )

    root = Paragon(
        id="1",
        name="Goal 1",
        relationship=Relationship.AND,
        definition="Top-level goal of the propagation example.",
        children=(
            group("1.1", Relationship.AND),
            group("1.2", Relationship.AND),
            group("1.3", Relationship.OR),
        ),
    )
    return DependencyModel(name="State propagation example", root=root)


# ---------------------------------------------------------------------------
# ot-playbook: incident-response playbook tied to a twin-control-centre plant


def ot_playbook_cim() -> CimModel:
    root = CimStep(
        id="ir-root",
        label="Unauthorised Traffic Detected on OT Network",
        refinement=Refinement.AND,
        children=(
            CimStep(
                id="ir-analyse",
                label="Analyse",
                refinement=Refinement.OR,
                actuator=Actuator.AUTOMATIC,
                children=(
                    CimStep(
                        id="ir-triage",
                        label="Is it Malicious",
                        actuator=Actuator.MANUAL,
                    ),
                ),
            ),
            CimStep(
                id="ir-contain",
                label="Contain",
                refinement=Refinement.AND,
                actuator=Actuator.DUAL,
                children=(
                    CimStep(
                        id="ir-set-primary",
                        label="Set Device as Primary",
                        actuator=Actuator.AUTOMATIC,
                    ),
                    CimStep(
                        id="ir-disable-device",
                        label="Disable Malicious Device",
                        actuator=Actuator.AUTOMATIC,
                    ),
                ),
            ),
            CimStep(
                id="ir-eradicate",
                label="Eradicate",
                refinement=Refinement.AND,
                actuator=Actuator.MANUAL,
                children=(
                    CimStep(
                        id="ir-replace-device",
                        label="Replace Device",
                        actuator=Actuator.MANUAL,
                    ),
                    CimStep(
                        id="ir-setup-redundant",
                        label="Setup as Redundant Device",
                        actuator=Actuator.MANUAL,
                    ),
                ),
            ),
        ),
    )
    model = CimModel(
        name="Unauthorised Traffic Detected on OT Network",
        root=root,
        references=(
            ExternalReference(
                title="Computer Security Incident Handling Guide",
                url="https://doi.org/10.6028/NIST.SP.800-61r2",
                publisher="NIST",
                doi="10.6028/NIST.SP.800-61r2",
            ),
        ),
    )
    return assign_numbers(model)


def ot_dm() -> DependencyModel:
    def hmi(prefix: str) -> Paragon:
        return Paragon(
            id=f"{prefix}-hmi",
            name="HMI Workstations are OK",
            definition="Operator HMI workstations are available and trustworthy.",
            children=(
                Paragon(
                    id=f"{prefix}-hmi-host",
                    name="HMI host hardware is Ok",
                    definition="Workstation hardware is powered and healthy.",
                ),
                Paragon(
                    id=f"{prefix}-hmi-app",
                    name="HMI application is Ok",
                    definition="The HMI runtime is responsive and uncompromised.",
                ),
            ),
        )

    def centre(pid: str, short: str, name: str) -> Paragon:
        return Paragon(
            id=pid,
            name=name,
            definition=f"The {name.removesuffix(' is Ok').lower()} can supervise the process.",
            children=(
                hmi(short),
                Paragon(
                    id=f"{short}-hist",
                    name="Historian is Ok",
                    definition="Process data is being archived.",
                ),
            ),
        )

    root = Paragon(
        id="ot-root",
        name="SCADA service is Ok",
        definition="At least the plant can be safely supervised and controlled.",
        children=(
            centre("p-primary", "p-pri", "Primary Control Center is Ok"),
            centre("p-secondary", "p-sec", "Secondary Control Center is Ok"),
        ),
    )
    return DependencyModel(name="Twin control centre dependencies", root=root)


def ot_playbook() -> CombinedModel:
    cim = ot_playbook_cim()
    return CombinedModel(
        cim=cim,
        dm=ot_dm(),
        links=(
            ImpactLink("ir-set-primary", "p-sec-hmi", 1.0),
            ImpactLink("ir-disable-device", "p-pri-hmi", 0.0),
            ImpactLink("ir-setup-redundant", "p-pri-hmi", 1.0),
        ),
    )


# ---------------------------------------------------------------------------
# scada-dm: excerpt of a full SCADA dependency model


def scada_dm() -> DependencyModel:
    def p(pid: str, name: str, definition: str, *children: Paragon) -> Paragon:
        return Paragon(id=pid, name=name, definition=definition, children=children)

    security = p(
        "net-security",
        "Security is Ok",
        "Network security controls are in place and effective.",
        p(
            "ids-ips",
            "IDS/IPS is Ok",
            "Intrusion detection and prevention is deployed and operating.",
            p("ids-sensors", "IDS sensors are Ok", "Sensors see the traffic they are meant to see."),
            p("ids-management", "IDS management interface is Ok", "Alerts reach the people who act on them."),
        ),
        p(
            "isolation",
            "Isolation is Ok",
            "Network segments are separated as designed.",
            p(
                "logical-isolation",
                "Logical isolation is Ok",
                "Traffic between zones is constrained to what is allowed.",
                p("airgap", "Airgap is Ok", "No unmediated path exists between zones."),
                p("firewall-rules", "Firewall rulesets are Ok", "Rulesets match the approved security policy."),
            ),
        ),
        p(
            "known-vulns",
            "Known vulnerabilities are eliminated or otherwise addressed",
            "Published vulnerabilities are patched or mitigated.",
        ),
    )
    zones = p(
        "all-zones",
        "All zones are Ok",
        "Every network zone operates as designed.",
        p(
            "corp-zone",
            "Corporate zone is Ok",
            "The corporate business zone operates as designed.",
            p(
                "enterprise-lan",
                "Enterprise LAN is Ok",
                "Business network infrastructure is healthy.",
                p("other-systems", "Other systems are Ok", "Supporting business systems are behaving normally."),
                p("email-systems", "Email systems are Ok", "Mail flow is uncompromised."),
            ),
        ),
    )
    networks = p(
        "networks",
        "Networks are Ok",
        "All networks carry the traffic they should, and only that.",
        security,
        zones,
    )
    software = p(
        "software",
        "Software is Ok",
        "Deployed software behaves as specified.",
        p(
            "hmi-runtime",
            "HMI runtime software application(s) is Ok",
            "The HMI runtime applications function correctly.",
            p("plant-control-view", "Plant control & view is Ok", "Operators can see and steer the process."),
            p("alerting", "Alerting is Ok", "Abnormal conditions raise alarms."),
        ),
    )
    hardware = p(
        "hardware",
        "Hardware is Ok",
        "Computing and network hardware is serviceable.",
        p("power-supply", "Power supply is Ok", "Equipment receives clean, uninterrupted power."),
        p("server-hardware", "Server hardware is Ok", "Servers run without faults."),
    )
    root = p(
        "scada-root",
        "Secure and safe operation of a SCADA system",
        "The overall goal: the plant runs safely and securely.",
        p("mgmt", "Management is Ok", "Security governance and processes are established and followed."),
        p("data", "Data is Ok", "Operational data is accurate, timely and protected."),
        p("lifecycle", "System Life Cycle is Ok", "Systems are acquired, maintained and retired under control."),
        p("employees", "Employees are Ok", "Staff are trained, trustworthy and sufficient."),
        p("external-deps", "External Dependencies are Ok", "Outside services and suppliers deliver what is needed."),
        p(
            "sys-arch",
            "System Architecture is Ok",
            "The technical architecture supports safe operation.",
            networks,
            software,
            hardware,
        ),
    )
    return DependencyModel(name="SCADA dependency model (excerpt)", root=root)


# ---------------------------------------------------------------------------
# blackenergy: industrial BlackEnergy campaign against GE Cimplicity HMIs


BLACKENERGY_TEXT = _text(
    "BlackEnergy ;SAND",
    "\tPropagate ;SAND",
    "\t\tDeploy dropper software ;AND",
    "\t\t\tSpear-phishing email",
    "\t\t\tWeaponised Office document",
    "\t\tCompromise Domain Controller ;AND",
    "\t\t\tEscalate privileges",
    "\t\t\tHarvest credentials",
    "\t\tGain privileged network access ;AND",
    "\t\t\tLateral movement",
    "\t\t\tInstall persistent implant",
    "\t\tReconnaissance ;AND",
    "\t\t\tEnumerate network shares",
    "\t\t\tIdentify HMI servers",
    "\t\tInitiate C2 communication channel",
    "\tPayload ;AND",
    "\t\tGeneric payloads ;SAND",
    "\t\t\tDetection Prevention ;AND",
    "\t\t\t\tDisable antivirus",
    "\t\t\t\tClear event logs",
    "\t\t\t\tMasquerade malicious processes",
    "\t\t\tNetwork Enumeration ;AND",
    "\t\t\t\tScan internal subnets",
    "\t\t\t\tFingerprint services",
    "\t\t\t\tMap trust relationships",
    "\t\t\tData collection",
    "\t\tSCADA ;OR",
    "\t\t\tDirectory traversal vulnerability in CimWebServer.exe ;OR",
    "\t\t\t\tExecute remote .cim/.bak file ;AND",
    "\t\t\t\t\tConnect to WebView port",
    "\t\t\t\t\tdownload 'newsfeed.xml'",
    "\t\t\t\t\tParse configuration response",
    "\t\t\t\t\tWrite malicious DLL",
    "\t\t\t\t\tTrigger directory traversal write",
    "\t\t\t\t\tInstall service persistence",
    "\t\t\t\t\tRestart CimWebServer",
    "\t\t\t\t\tDrop 'CimCMSafegs.exe'",
    "\t\t\t\t\texecute 'CimCMSafegs.exe'",
)

BLACKENERGY_MANUAL = (1, 2, 3, 4, 8, 9, 10, 11, 12, 13, 17, 18, 19, 20, 28)
BLACKENERGY_AUTOMATIC = (
    5, 6, 7, 14, 15, 16, 21, 22, 23, 24, 25, 26, 27,
    29, 30, 31, 32, 33, 34, 35, 36, 37,
)

BLACKENERGY_REFERENCES = (
    ExternalReference(
        title="Ongoing Sophisticated Malware Campaign Compromising ICS",
        url="https://www.cisa.gov/news-events/ics-alerts/ics-alert-14-281-01b",
        publisher="ICS-CERT",
    ),
    ExternalReference(
        title="Analysis of the Cyber Attack on the Ukrainian Power Grid",
        url="https://ics.sans.org/media/E-ISAC_SANS_Ukraine_DUC_5.pdf",
        publisher="E-ISAC / SANS ICS",
    ),
    ExternalReference(
        title="When The Lights Went Out",
        url="https://www.boozallen.com/content/dam/boozallen/documents/2016/09/ukraine-report-when-the-lights-went-out.pdf",
        publisher="Booz Allen Hamilton",
    ),
)


def blackenergy_tree() -> AttackTree:
    return parse_sand(BLACKENERGY_TEXT)


def blackenergy_converted() -> CimModel:
    return sand_to_cim(blackenergy_tree(), name="BlackEnergy")


def blackenergy_cim() -> CimModel:
    return enrich(
        blackenergy_converted(),
        actuators=_actuators(manual=BLACKENERGY_MANUAL, automatic=BLACKENERGY_AUTOMATIC),
        references=BLACKENERGY_REFERENCES,
    )


def blackenergy_scada() -> CombinedModel:
    cim = blackenergy_cim()
    return CombinedModel(
        cim=cim,
        dm=scada_dm(),
        links=(
            # The C2 channel degrades detection without killing it outright.
            link_by_number(cim, 14, "ids-ips", 0.2),
            link_by_number(cim, 17, "ids-sensors", 0.0),
            link_by_number(cim, 26, "airgap", 0.0),
            link_by_number(cim, 27, "known-vulns", 0.0),
        ),
    )


# ---------------------------------------------------------------------------
# ukraine-2015: the December 2015 power distribution outage


UKRAINE_TEXT = _text(
    "Disrupt power distribution ;SAND",
    "\tPropagate ;OR",
    "\t\tBusiness Network ;OR",
    "\t\t\tDropper software ;OR",
    "\t\t\t\tEmail Spear-phishing",
    "\tExploit ;SAND",
    "\t\tCompromise Domain Controller ;SAND",
    "\t\t\tHarvest VPN credentials",
    "\t\t\tAccess SCADA VPN",
    "\t\tBlackEnergy",
    "\t\tGain HMI access",
    "\tPayload ;AND",
    "\t\tDisable converters ;SAND",
    "\t\t\tIdentify serial-to-Ethernet converters",
    "\t\t\tUpload corrupt firmware",
    "\t\tDisable UPS ;SAND",
    "\t\t\tAccess UPS management interface",
    "\t\t\tSchedule outage for UPS systems",
    "\t\tDisable Host from booting ;SAND",
    "\t\t\tDeploy KillDisk",
    "\t\t\tErase master boot record",
    "\t\tTelephone Denial of Service ;OR",
    "\t\t\tFlood call centre numbers",
)

UKRAINE_MANUAL = (1, 2, 3, 4, 8, 11)
UKRAINE_AUTOMATIC = (5, 6, 7, 9, 10, 12, 13, 14, 15, 16, 17, 18, 19, 20)
UKRAINE_UNKNOWN = (21, 22)

UKRAINE_REFERENCES = (
    ExternalReference(
        title="Analysis of the Cyber Attack on the Ukrainian Power Grid",
        url="https://ics.sans.org/media/E-ISAC_SANS_Ukraine_DUC_5.pdf",
        publisher="E-ISAC / SANS ICS",
    ),
    ExternalReference(
        title="Cyber-Attack Against Ukrainian Critical Infrastructure",
        url="https://www.cisa.gov/news-events/ics-alerts/ir-alert-h-16-056-01",
        publisher="ICS-CERT",
    ),
)


def ukraine_tree() -> AttackTree:
    return parse_sand(UKRAINE_TEXT)


def ukraine_converted() -> CimModel:
    return sand_to_cim(ukraine_tree(), name="Ukraine 2015")


def ukraine_cim() -> CimModel:
    return enrich(
        ukraine_converted(),
        actuators=_actuators(
            manual=UKRAINE_MANUAL,
            automatic=UKRAINE_AUTOMATIC,
            unknown=UKRAINE_UNKNOWN,
        ),
        model_refs={9: "blackenergy"},
        references=UKRAINE_REFERENCES,
    )


def ukraine_scada() -> CombinedModel:
    cim = ukraine_cim()
    return CombinedModel(
        cim=cim,
        dm=scada_dm(),
        links=(
            ImpactLink(cim.root.id, "scada-root", 0.0),
            # Compromising the domain controller touches every business
            # system; the closest condition is the catch-all one.
            link_by_number(cim, 6, "other-systems", 0.8),
            link_by_number(cim, 12, "plant-control-view", 0.0),
            link_by_number(cim, 15, "power-supply", 0.0),
        ),
    )


# ---------------------------------------------------------------------------
# reconstructed intrusions


STUXNET_A_TEXT = _text(
    "Compromise business network ;SAND",
    "\tInitial infection ;OR",
    "\t\tUser Inserts USB",
    "\t\tUser opens file project",
    "\tEstablish foothold ;AND",
    "\t\tInstall kernel rootkit",
    "\t\tContact C2 servers",
    "\tSpread towards engineering systems ;OR",
    "\t\tNetwork share propagation",
    "\t\tPrint spooler exploit",
)

STUXNET_B_TEXT = _text(
    "Sabotage centrifuge operation ;SAND",
    "\tInfect PLC development host ;OR",
    "\t\tReplace control-logic compiler DLL",
    "\tInject PLC payload ;SAND",
    "\t\tFingerprint target configuration",
    "\t\tModify frequency converter logic",
    "\tConceal manipulation ;AND",
    "\t\tReplay recorded sensor values",
    "\t\tSuppress alarms",
)

HAVEX_TEXT = _text(
    "Espionage on ICS networks ;SAND",
    "\tGain access to vendor sites ;OR",
    "\t\tCompromise vendor web server",
    "\tTrojanise ICS software installers ;OR",
    "\t\tRepackage OPC client installer",
    "\tDistribute to targets ;OR",
    "\t\tWatering hole attack",
    "\t\tEmail Spear-phishing",
    "\tHarvest OPC data ;AND",
    "\t\tEnumerate OPC servers",
    "\t\tExfiltrate tag data",
)

STEEL_MILL_TEXT = _text(
    "Disrupt blast furnace operation ;SAND",
    "\tCompromise office network ;OR",
    "\t\tEmail Spear-phishing",
    "\t\tSocial engineering of staff",
    "\tPivot into plant network ;SAND",
    "\t\tHarvest production credentials",
    "\t\tAccess plant systems",
    "\tDegrade control components ;AND",
    "\t\tManipulate furnace controls",
    "\t\tPrevent controlled shutdown",
)

DUQU2_TEXT = _text(
    "Persistent espionage platform ;SAND",
    "\tInitial compromise ;OR",
    "\t\tEmail Spear-phishing",
    "\tMemory-resident deployment ;AND",
    "\t\tExploit kernel vulnerability",
    "\t\tStage malware in RAM only",
    "\tLateral expansion ;SAND",
    "\t\tSteal domain credentials",
    "\t\tDeploy to peer hosts",
    "\tCommand and control ;OR",
    "\t\tTunnel traffic through network drivers",
)

UKRAINE2_TEXT = _text(
    "Disrupt transmission substation ;SAND",
    "\tProlonged intrusion ;SAND",
    "\t\tCompromise utility IT network",
    "\t\tMonitor IT staff behaviour",
    "\t\tMap OT network",
    "\tDeploy payload framework ;AND",
    "\t\tInstall launcher module",
    "\t\tConfigure protocol payloads",
    "\tOpen breakers at scale ;OR",
    "\t\tIssue IEC-101 commands",
    "\t\tIssue IEC-104 commands",
)

CRASHOVERRIDE_TEXT = _text(
    "Automated grid disruption ;SAND",
    "\tGain OT foothold ;OR",
    "\t\tReuse stolen VPN access",
    "\tInstall modular framework ;AND",
    "\t\tDeploy main backdoor",
    "\t\tStage data wiper",
    "\tExecute protocol attacks ;AND",
    "\t\tCycle circuit breakers via IEC-104",
    "\t\tScan and disable protection relays",
    "\tImpede restoration ;AND",
    "\t\tWipe engineering workstations",
    "\t\tLaunch denial of service on relays",
)

TRISIS_TEXT = _text(
    "Defeat safety instrumented system ;SAND",
    "\tReach safety network ;SAND",
    "\t\tCompromise engineering workstation",
    "\t\tAccess SIS engineering workstation",
    "\tDeploy controller implant ;AND",
    "\t\tUpload TriStation payload",
    "\t\tInstall logic backdoor",
    "\tModify safety logic ;OR",
    "\t\tReprogram shutdown thresholds",
)
