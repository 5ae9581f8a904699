"""
Command line interface.

Every subcommand reads JSON documents from files (or '-' for standard input)
and prints either a bare digit or a JSON document. Exit codes: 0 success,
1 internal error, 2 invalid input, 3 undefined on the given input.
"""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from qinv import codec, exceptions
from qinv.invariant import (
    form_of,
    pullback_by_diffeo,
    q_diffeo,
    q_system,
    quadruple_invariant,
    standard_embedding,
)
from qinv.oracle import verify_form_lemmas
from qinv.quadform import standard_form
from qinv.tsd import complete_to_tsd, find_tsd, psi, psi_hat, psi_hat_recipe

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace], Any]


class _Digit:
    """A 0/1 result; extra fields are only printed in plain output."""

    def __init__(self, value: int, **extra: int) -> None:
        self.value = value
        self.extra = extra


def _load(path: str, loader: Callable[[Any], Any]) -> Any:
    return loader(codec.load_json(path))


def _cmd_q(args: argparse.Namespace) -> _Digit:
    left = _load(args.left, codec.embedding_from_json)
    right = _load(args.right, codec.embedding_from_json)
    return _Digit(quadruple_invariant(left, right))


def _cmd_q_system(args: argparse.Namespace) -> _Digit:
    left = _load(args.left, codec.system_from_json)
    right = _load(args.right, codec.system_from_json)
    return _Digit(q_system(left, right))


def _cmd_psi(args: argparse.Namespace) -> _Digit:
    form = _load(args.form, codec.form_from_json)
    t = codec.matrix_from_json(codec.load_json(args.map), form.dim)
    return _Digit(psi(form, t))


def _cmd_psi_hat(args: argparse.Namespace) -> _Digit:
    left = _load(args.left, codec.tsd_from_json)
    right = _load(args.right, codec.tsd_from_json)
    value = psi_hat(left, right)
    if not args.recipe:
        return _Digit(value)
    recipe = psi_hat_recipe(left, right)
    if recipe != value:
        raise exceptions.InternalError(
            f"Transport gives {value} but the difference recipe gives {recipe}"
        )
    return _Digit(value, recipe=recipe)


def _cmd_q_diffeo(args: argparse.Namespace) -> _Digit:
    e = _load(args.embedding, codec.embedding_from_json)
    h = _load(args.map, codec.diffeo_from_json)
    return _Digit(q_diffeo(h, e))


def _cmd_pullback(args: argparse.Namespace) -> Dict[str, Any]:
    e = _load(args.embedding, codec.embedding_from_json)
    h = _load(args.map, codec.diffeo_from_json)
    return codec.embedding_to_json(pullback_by_diffeo(e, h))


def _cmd_complete(args: argparse.Namespace) -> Dict[str, Any]:
    form = _load(args.form, codec.form_from_json)
    if args.subspace is None:
        return codec.tsd_to_json(find_tsd(form))
    document = codec.load_json(args.subspace)
    if isinstance(document, dict):
        document = document["subspace"] if "subspace" in document else document.get("A")
    a = codec.subspace_from_json(document, form.dim)
    return codec.tsd_to_json(complete_to_tsd(form, a))


def _cmd_standard(args: argparse.Namespace) -> Dict[str, Any]:
    return codec.embedding_to_json(standard_embedding(args.genus))


def _cmd_check(args: argparse.Namespace) -> Dict[str, Any]:
    e = _load(args.embedding, codec.embedding_from_json)
    return {"valid": True, "genus": e.genus, "form": codec.form_to_json(form_of(e))}


def _cmd_oracle(args: argparse.Namespace) -> Dict[str, Any]:
    if args.form is not None:
        form = _load(args.form, codec.form_from_json)
    else:
        if args.dim % 2:
            raise exceptions.WrongDimension(f"Odd dimension {args.dim}")
        form = standard_form(args.dim // 2)
    return verify_form_lemmas(form, workers=args.workers).as_dict()


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qinv",
        description="Mod 2 quadruple point invariant of embedded surfaces.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to standard error (repeat for debug output).",
    )
    parser.add_argument(
        "--output",
        choices=("plain", "json"),
        default="plain",
        help="Print bare digits or a JSON document.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Handler, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(handler=handler)
        return p

    p = command("q", _cmd_q, "Q of two regularly homotopic embeddings.")
    p.add_argument("--left", required=True, help="Embedding data JSON.")
    p.add_argument("--right", required=True, help="Embedding data JSON.")

    p = command("q-system", _cmd_q_system, "Q summed over matching components.")
    p.add_argument("--left", required=True, help="System embedding JSON.")
    p.add_argument("--right", required=True, help="System embedding JSON.")

    p = command("psi", _cmd_psi, "psi of an orthogonal map.")
    p.add_argument("--form", required=True, help="Quadratic form JSON.")
    p.add_argument("--map", required=True, help="Matrix JSON.")

    p = command("psi-hat", _cmd_psi_hat, "Relative invariant of two TSDs.")
    p.add_argument("--left", required=True, help="TSD JSON.")
    p.add_argument("--right", required=True, help="TSD JSON.")
    p.add_argument(
        "--recipe",
        action="store_true",
        help="Cross-check against the good basis difference recipe.",
    )

    p = command("q-diffeo", _cmd_q_diffeo, "Q(i, i o h) for a diffeomorphism h.")
    p.add_argument("--embedding", required=True, help="Embedding data JSON.")
    p.add_argument("--map", required=True, help="Diffeomorphism data JSON.")

    p = command("pullback", _cmd_pullback, "Embedding data of e o h.")
    p.add_argument("--embedding", required=True, help="Embedding data JSON.")
    p.add_argument("--map", required=True, help="Diffeomorphism data JSON.")

    p = command("complete", _cmd_complete, "Complete a Lagrangian to a TSD.")
    p.add_argument("--form", required=True, help="Quadratic form JSON.")
    p.add_argument(
        "--subspace",
        help="Totally singular subspace JSON; without it some TSD is built.",
    )

    p = command("standard", _cmd_standard, "Embedding data of the standard surface.")
    p.add_argument("--genus", type=int, required=True)

    p = command("check", _cmd_check, "Validate embedding data.")
    p.add_argument("--embedding", required=True, help="Embedding data JSON.")

    p = command("oracle", _cmd_oracle, "Exhaustive checks in dimension 2 or 4.")
    p.add_argument("--dim", type=int, choices=(2, 4), default=4)
    p.add_argument("--form", help="Quadratic form JSON instead of the standard form.")
    p.add_argument("--workers", type=int, default=1, help="Scan threads.")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _emit(result: Any, output: str) -> None:
    if isinstance(result, _Digit):
        if output == "json":
            print(codec.dumps({"value": result.value}))
        else:
            print(result.value)
            for key, value in result.extra.items():
                print(f"{key}: {value}")
    else:
        print(codec.dumps(result))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    _configure_logging(args.verbose)
    logger.info("Running %s", args.command)
    try:
        result = args.handler(args)
    except exceptions.InputError as ex:
        print(f"{ex.reason}: {ex}", file=sys.stderr)
        return 2
    except exceptions.DomainError as ex:
        print(f"{ex.reason}: {ex}", file=sys.stderr)
        return 3
    except exceptions.Error as ex:
        print(f"{ex.reason}: {ex}", file=sys.stderr)
        return 1
    _emit(result, args.output)
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
