import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from .config import OUTPUT_FORMATS, EngineConfig
from .dsl import document_from_category, parse, print_document
from .dsl.document import DslDocument, NameArg, Task
from .errors import BudgetExceededError, ConfigError, DslError, EngineError
from .fixtures import FIXTURE_KINDS, POSET_SHAPES, build_fixture
from .interfaces import get_interface
from .interfaces.file_utils import read_document, write_output
from .messages import get_message
from .runner import TaskRunner
from .suite import AcceptanceSuite

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def setup_logging(verbosity: int = 0, log_file: Optional[str] = None) -> None:
    """Configure logging for the application"""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None)
    common.add_argument("--max-objects", type=int, default=None)
    common.add_argument("--max-morphisms", type=int, default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--seed", type=int, default=None, help="only changes scheduling order, never results")
    common.add_argument("--timing", action="store_true", help="include per-task timings in reports")
    common.add_argument("-o", "--output", default=None, help="write the rendered report here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--log-file", default=None)

    parser = argparse.ArgumentParser(prog="finloc", description="Localizations of finite categories")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="parse a document and check every declaration")
    check.add_argument("file")

    run = commands.add_parser("run", parents=[common], help="run the tasks of a document")
    run.add_argument("file")

    fixtures = commands.add_parser("fixtures", parents=[common], help="build a fixture category")
    fixtures.add_argument("kind", choices=FIXTURE_KINDS)
    fixtures.add_argument("--max-order", type=int, default=None)
    fixtures.add_argument("--chain", type=int, default=None)
    fixtures.add_argument("--antichain", type=int, default=None)
    fixtures.add_argument("--lattice", default=None)
    fixtures.add_argument("--relation", default=None)
    fixtures.add_argument("--emit", action="store_true", help="print the fixture as a DSL document")

    suite = commands.add_parser("suite", parents=[common], help="run the built-in acceptance suite")
    suite.add_argument("--quick", action="store_true", help="smallest fixtures only")
    suite.add_argument("--only", nargs="+", default=None, metavar="CHECK")
    return parser


def _config(args: argparse.Namespace) -> EngineConfig:
    return EngineConfig.from_env().with_overrides(
        output_format=args.output_format,
        max_objects=args.max_objects,
        max_morphisms=args.max_morphisms,
        workers=args.workers,
        seed=args.seed,
        verbosity=args.verbose,
        include_timing=True if args.timing else None,
    )


def _check_tasks(document: DslDocument) -> DslDocument:
    """The same document with one ``check`` task per declaration"""
    tasks = tuple(Task("check", (NameArg(name),)) for name in document.declared_names())
    return DslDocument(document.declarations, tasks, name=document.name)


def _run_file(args: argparse.Namespace, config: EngineConfig, checks_only: bool) -> int:
    text, name = read_document(args.file)
    document = parse(text, name=name)
    if checks_only:
        document = _check_tasks(document)
    report = TaskRunner.from_config(config).run(document)
    write_output(get_interface(config.output_format).render(report.to_dict()), args.output)
    return report.status


def _fixture_params(args: argparse.Namespace) -> dict:
    if args.kind in ("abelian", "groups"):
        return {} if args.max_order is None else {"max_order": args.max_order}
    return {k: getattr(args, k) for k in POSET_SHAPES if getattr(args, k) is not None}


def _fixtures(args: argparse.Namespace, config: EngineConfig) -> int:
    fixture = build_fixture(args.kind, _fixture_params(args), budget=config.budget)
    cat = fixture.category
    if args.emit:
        write_output(print_document(document_from_category(cat)), args.output)
        return EXIT_OK
    summary = {
        "schema_version": "1",
        "fixture": fixture.name,
        "objects": list(cat.objects),
        "morphisms": len(cat.morphisms),
        "hom_sizes": {f"{a}->{b}": len(cat.hom(a, b)) for a in cat.objects for b in cat.objects},
    }
    interface = get_interface(config.output_format)
    rendered = interface.render_suite(summary) if config.output_format == "structured" else _fixture_text(summary)
    write_output(rendered, args.output)
    return EXIT_OK


def _fixture_text(summary: dict) -> str:
    lines = [f"{summary['fixture']}: {len(summary['objects'])} objects, {summary['morphisms']} morphisms"]
    lines.append(f"  objects: {', '.join(summary['objects'])}")
    return "\n".join(lines) + "\n"


def _suite(args: argparse.Namespace, config: EngineConfig) -> int:
    report = AcceptanceSuite.from_config(config, quick=args.quick).run(args.only)
    write_output(get_interface(config.output_format).render_suite(report.to_dict()), args.output)
    return EXIT_OK if report.passed else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose, args.log_file)
    load_dotenv()
    try:
        config = _config(args)
        if args.command in ("check", "run"):
            return _run_file(args, config, checks_only=args.command == "check")
        elif args.command == "fixtures":
            return _fixtures(args, config)
        elif args.command == "suite":
            return _suite(args, config)
        else:
            raise ValueError(f"Unsupported command: {args.command}")
    except FileNotFoundError as e:
        print(get_message("file_not_found").format(path=e.filename or args.file), file=sys.stderr)
        return EXIT_USAGE
    except (DslError, ConfigError, ValueError) as e:
        print(get_message("error").format(message=e), file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(get_message("budget_exceeded").format(message=e), file=sys.stderr)
        return EXIT_FAILURE
    except EngineError as e:
        print(get_message("error").format(message=e), file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
