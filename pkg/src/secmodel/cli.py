"""Command line front end.

Thin client over the library: each subcommand reads files, calls into the
core modules, and prints either the result or a JSON error envelope on
stderr. Exit codes: 0 success, 1 parse failure, 2 model or validation
failure, 3 I/O failure.

Formats are sniffed from file suffixes (.ctrees, .graphml, .cim.xml,
.dm.xml, .oiirp.xml) and can be forced with --from / --to.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .convert import cim_to_sand, sand_to_cim
from .errors import (
    ModelError,
    ParseError,
    UnknownModelKindError,
    UnknownStepError,
    UnsupportedConversionError,
    ValidationFailedError,
)
from .graphmlio import from_pivot, read_graphml, to_pivot, write_graphml
from .model import (
    AttackTree,
    CimModel,
    CombinedModel,
    DependencyModel,
    format_state,
    number_index,
    require_valid,
    validate_attack_tree,
    validate_cim,
    validate_combined,
    validate_dm,
)
from .propagation import Mode, check_sequence, create_session, root_impact, toggle_step
from .render import cim_to_dot
from .sandtext import parse_sand, serialize_sand
from .xmlio import document_for, kind_for_path, read_model, write_model

KINDS = ("ctrees", "graphml", "cim", "dm", "oiirp")


def _sniff(name: str) -> str | None:
    if name.endswith(".ctrees"):
        return "ctrees"
    if name.endswith(".graphml"):
        return "graphml"
    return kind_for_path(name)


def _kind_or_sniff(kind: str | None, path: str, direction: str) -> str:
    if kind:
        return kind
    sniffed = _sniff(path) if path != "-" else None
    if sniffed is None:
        raise UnknownModelKindError(
            f"cannot infer {direction} format of {path!r}; use --from/--to"
        )
    return sniffed


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_out(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _load(path: str, kind: str):
    """Read a file into its domain object."""
    data = _read_bytes(path)
    if kind == "ctrees":
        return parse_sand(data)
    if kind == "graphml":
        return from_pivot(read_graphml(data))
    document = read_model(data)
    if document.kind != kind:
        raise UnknownModelKindError(
            f"{path!r} holds a {document.kind} document, expected {kind}"
        )
    return document.payload


def _dump(model, kind: str) -> bytes:
    """Serialize a domain object into the requested format, converting
    between tree and intrusion-model shapes where that is meaningful."""
    if kind == "ctrees":
        if isinstance(model, CimModel):
            model = cim_to_sand(model)
        if not isinstance(model, AttackTree):
            raise UnsupportedConversionError(
                f"cannot express {_describe(model)} as an attack tree"
            )
        return serialize_sand(model)
    if kind == "graphml":
        if isinstance(model, CombinedModel):
            raise UnsupportedConversionError(
                "combined models have no graph form; export the halves separately"
            )
        return write_graphml(to_pivot(model))
    if kind == "cim":
        if isinstance(model, AttackTree):
            model = sand_to_cim(model)
        if not isinstance(model, CimModel):
            raise UnsupportedConversionError(
                f"cannot express {_describe(model)} as an intrusion model"
            )
    elif kind == "dm":
        if not isinstance(model, DependencyModel):
            raise UnsupportedConversionError(
                f"cannot express {_describe(model)} as a dependency model"
            )
    elif kind == "oiirp":
        if not isinstance(model, CombinedModel):
            raise UnsupportedConversionError(
                f"cannot express {_describe(model)} as a combined model"
            )
    return write_model(document_for(model))


def _describe(model) -> str:
    if isinstance(model, AttackTree):
        return f"attack tree ({sum(1 for _ in model.nodes())} nodes)"
    if isinstance(model, CimModel):
        return f"intrusion model ({sum(1 for _ in model.steps())} steps)"
    if isinstance(model, DependencyModel):
        return f"dependency model ({sum(1 for _ in model.paragons())} paragons)"
    if isinstance(model, CombinedModel):
        return (
            f"combined model ({sum(1 for _ in model.cim.steps())} steps, "
            f"{sum(1 for _ in model.dm.paragons())} paragons, "
            f"{len(model.links)} links)"
        )
    return type(model).__name__


# ---------------------------------------------------------------------------
# subcommands


def cmd_convert(args: argparse.Namespace) -> int:
    src_kind = _kind_or_sniff(args.from_kind, args.in_path, "input")
    dst_kind = _kind_or_sniff(args.to_kind, args.out, "output")
    model = _load(args.in_path, src_kind)
    data = _dump(model, dst_kind)
    _write_out(args.out, data)
    if args.out != "-":
        print(f"{_describe(model)} in, {len(data)} bytes of {dst_kind} out")
    return 0


_VALIDATORS = {
    AttackTree: validate_attack_tree,
    CimModel: validate_cim,
    DependencyModel: validate_dm,
    CombinedModel: validate_combined,
}


def cmd_validate(args: argparse.Namespace) -> int:
    kind = _kind_or_sniff(args.from_kind, args.in_path, "input")
    model = _load(args.in_path, kind)
    require_valid(_VALIDATORS[type(model)](model))
    print(f"OK: {_describe(model)}")
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    kind = _kind_or_sniff(args.from_kind, args.in_path, "input")
    model = _load(args.in_path, kind)
    if isinstance(model, AttackTree):
        model = sand_to_cim(model)
    if not isinstance(model, CimModel):
        raise UnsupportedConversionError(f"cannot render {_describe(model)} as DOT")
    _write_out(args.out, cim_to_dot(model).encode("utf-8"))
    return 0


def _parse_script(text: str) -> list[tuple[str, str]]:
    """Lines of 'activate N' / 'deactivate N'; blank lines and # comments
    are skipped. N is a step number, or the word root."""
    commands: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("activate", "deactivate"):
            raise UnsupportedConversionError(
                f"script line {lineno}: expected 'activate N' or 'deactivate N', got {raw!r}"
            )
        commands.append((parts[0], parts[1]))
    return commands


def cmd_simulate(args: argparse.Namespace) -> int:
    model = _load(args.in_path, "oiirp")
    commands = _parse_script(_read_bytes(args.script).decode("utf-8"))
    numbers = number_index(model.cim)
    session = create_session(model, args.mode)
    for verb, token in commands:
        if token == "root":
            step = model.cim.root
        else:
            try:
                step = numbers[int(token)]
            except (KeyError, ValueError):
                raise UnknownStepError(f"no step numbered {token!r}") from None
        session, delta = toggle_step(session, step.id, verb == "activate")
        print(f"> {verb} {token}: {step.label}")
        if delta:
            for change in delta:
                print(
                    f"  {change.paragon_id}: "
                    f"{format_state(change.old)} -> {format_state(change.new)}"
                )
        else:
            print("  no state changes")
        for warning in check_sequence(session):
            active = next(s for s in model.cim.steps() if s.id == warning.step_id)
            missing = next(
                s for s in model.cim.steps() if s.id == warning.predecessor_id
            )
            print(
                f"  warning: step {active.number} is active "
                f"before step {missing.number}"
            )
    impact = root_impact(session)
    print(f"root state: {format_state(impact.state)}")
    print("witness: " + " -> ".join(impact.path))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.addr.rpartition(":")
    app = create_app(corpus_dir=args.corpus)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="info")
    return 0


# ---------------------------------------------------------------------------
# wiring


def _add_io_options(sub: argparse.ArgumentParser, out_default: str | None) -> None:
    sub.add_argument("--in", dest="in_path", required=True, help="input file (- for stdin)")
    sub.add_argument("--from", dest="from_kind", choices=KINDS, help="input format override")
    if out_default is not None:
        sub.add_argument("--out", default=out_default, help="output file (- for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secmodel",
        description="attack tree / intrusion model / dependency model toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser("convert", help="convert between model formats")
    _add_io_options(convert, out_default=None)
    convert.add_argument("--out", required=True, help="output file (- for stdout)")
    convert.add_argument("--to", dest="to_kind", choices=KINDS, help="output format override")
    convert.set_defaults(func=cmd_convert)

    validate = sub.add_parser("validate", help="check a model file")
    _add_io_options(validate, out_default=None)
    validate.set_defaults(func=cmd_validate)

    render = sub.add_parser("render", help="render an intrusion model to DOT")
    _add_io_options(render, out_default="-")
    render.set_defaults(func=cmd_render)

    simulate = sub.add_parser("simulate", help="replay a what-if script against a combined model")
    simulate.add_argument("--in", dest="in_path", required=True, help="combined model file")
    simulate.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.MINMAX.value)
    simulate.add_argument("script", help="script file (- for stdin)")
    simulate.set_defaults(func=cmd_simulate)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--addr", default="127.0.0.1:8000", help="host:port to bind")
    serve.add_argument("--corpus", default=None, help="corpus directory override")
    serve.set_defaults(func=cmd_serve)

    return parser


def _envelope(code: str, message: str, **extra) -> None:
    payload = {"error": code, "message": message, **extra}
    print(json.dumps(payload), file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailedError as exc:
        _envelope(
            exc.code,
            str(exc),
            violations=[
                {"code": v.code, "subject": v.subject, "message": v.message}
                for v in exc.violations
            ],
        )
        return 2
    except ParseError as exc:
        _envelope(exc.code, str(exc))
        return 1
    except ModelError as exc:
        _envelope(exc.code, str(exc))
        return 2
    except OSError as exc:
        _envelope("io-error", str(exc))
        return 3


if __name__ == "__main__":
    sys.exit(main())
