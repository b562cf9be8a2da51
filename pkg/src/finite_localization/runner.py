import asyncio
import logging
import random
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .adjunction import check_adjunction, check_monad, eilenberg_moore
from .category import check_category, check_functor, check_nat
from .comparison import adjoint_localization, commutation_criterion, compare
from .config import EngineConfig
from .dsl.document import DslDocument, Task, TaskArg, TheoremArg
from .dsl.workspace import Workspace
from .duality import duality_suite, transport_coherence
from .errors import BudgetExceededError, DslError, EngineError, TheoremViolation
from .induced import forgetful_commutation, induce_localization, module_readings
from .interfaces.report_utils import to_jsonable
from .localization import build_localization, check_localization

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
STATUSES = ("ok", "flagged", "failed", "violation", "error")

# (status, result, notes)
Outcome = Tuple[str, Dict[str, Any], List[str]]


@dataclass
class TaskReport:
    index: int
    command: str
    status: str
    result: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    exit_code: int = 0
    timing: Optional[float] = None

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "index": self.index,
            "command": self.command,
            "status": self.status,
            "result": to_jsonable(self.result),
            "notes": list(self.notes),
        }
        if include_timing and self.timing is not None:
            data["timing"] = round(self.timing, 6)
        return data


@dataclass
class Report:
    document: str
    tasks: List[TaskReport] = field(default_factory=list)
    include_timing: bool = False

    @property
    def status(self) -> int:
        return max((t.exit_code for t in self.tasks), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "document": self.document,
            "status": self.status,
            "tasks": [t.to_dict(self.include_timing) for t in self.tasks],
        }


def _positional(task: Task, index: int, what: str) -> TaskArg:
    args = task.positional
    if index >= len(args):
        raise DslError(f"{task.command} expects {what} as argument {index + 1}", task.line)
    return args[index]


def _keyed(task: Task, key: str, index: int, what: str) -> TaskArg:
    """``key: value`` if given, else the positional argument at ``index``"""
    return task.keyword(key) or _positional(task, index, what)


class TaskRunner:
    """Runs the tasks of a document against a workspace.

    Tasks are scheduled on a thread pool in an order shuffled by the
    configured seed; results are always merged back in document order.
    """

    def __init__(self, config: EngineConfig):
        self.config = config

    @classmethod
    def from_config(cls, config: EngineConfig) -> "TaskRunner":
        return cls(config)

    def run(self, document: DslDocument) -> Report:
        return asyncio.run(self.run_async(document))

    async def run_async(self, document: DslDocument) -> Report:
        workspace = Workspace.build(document, self.config.budget)
        tasks = document.tasks
        order = list(range(len(tasks)))
        random.Random(self.config.seed).shuffle(order)
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
            futures = {i: loop.run_in_executor(pool, self.execute, workspace, i, tasks[i]) for i in order}
            reports = await asyncio.gather(*(futures[i] for i in range(len(tasks))))
        report = Report(document.name, list(reports), self.config.include_timing)
        logger.info(f"[dsl:{document.name}] {len(tasks)} tasks finished with status {report.status}")
        return report

    def execute(self, workspace: Workspace, index: int, task: Task) -> TaskReport:
        logger.info(f"[task:{index}] {task.command} started")
        started = time.perf_counter()
        try:
            status, result, notes = self._dispatch(workspace, task)
            exit_code = 0 if status in ("ok", "flagged") else 1
        except TheoremViolation as e:
            logger.error(f"[task:{index}] theorem violation: {e}")
            status, result, notes, exit_code = "violation", {"error": str(e), "witness": e.witness}, [], 1
        except DslError as e:
            logger.error(f"[task:{index}] {e}")
            status, result, notes, exit_code = "error", {"error": str(e)}, [], 2
        except BudgetExceededError as e:
            logger.error(f"[task:{index}] {e}")
            status, result, notes, exit_code = "error", {"error": str(e)}, [], 1
        except EngineError as e:
            logger.error(f"[task:{index}] {e}")
            status, result, notes, exit_code = "error", {"error": str(e)}, [], 1
        except Exception as e:
            logger.error(f"[task:{index}] Error running {task.command}: {e}\n{traceback.format_exc()}")
            status, result, notes, exit_code = "error", {"error": f"{type(e).__name__}: {e}"}, [], 1
        elapsed = time.perf_counter() - started
        logger.info(f"[task:{index}] {task.command} finished: {status}")
        return TaskReport(index, task.command, status, result, notes, exit_code, elapsed)

    def _dispatch(self, workspace: Workspace, task: Task) -> Outcome:
        if task.command == "check":
            return self._check(workspace, task)
        elif task.command == "localize":
            return self._localize(workspace, task)
        elif task.command == "compare":
            return self._compare(workspace, task, offset=0, commutation=False)
        elif task.command == "induce":
            return self._induce(workspace, task, offset=0)
        elif task.command == "dualize":
            return self._dualize(workspace, task)
        elif task.command == "verify":
            return self._verify(workspace, task)
        else:
            raise DslError(f"Unsupported task: {task.command}", task.line)

    # -- commands ---------------------------------------------------------

    def _check(self, workspace: Workspace, task: Task) -> Outcome:
        arg = _positional(task, 0, "a declared name")
        kind, value = workspace.lookup(arg, task.line)
        if kind == "category":
            violations = check_category(value)
        elif kind == "functor":
            violations = check_functor(value)
        elif kind == "transformation":
            violations = check_nat(value)
        elif kind == "monad":
            violations = check_monad(value)
        elif kind == "adjunction":
            violations = check_adjunction(value)
        else:
            raise DslError(f"cannot check a {kind}", task.line)
        result = {"kind": kind, "name": value.name, "violations": [v.to_dict() for v in violations]}
        return ("failed" if violations else "ok"), result, []

    def _localize(self, workspace: Workspace, task: Task) -> Outcome:
        cat = workspace.category(_positional(task, 0, "a category"), task.line)
        f = workspace.morphism(cat, _keyed(task, "f", 1, "a morphism"), task.line)
        loc = build_localization(cat, f, workers=self.config.workers)
        result: Dict[str, Any] = {"category": cat.name, "f": f, "exists": loc is not None}
        if loc is None:
            return "flagged", result, [f"L_{f} does not exist in {cat.name}"]
        violations = check_localization(loc)
        result.update(
            {
                "local_objects": list(loc.local_objects),
                "table": loc.table(),
                "violations": [v.to_dict() for v in violations],
            }
        )
        return ("failed" if violations else "ok"), result, []

    def _compare(self, workspace: Workspace, task: Task, offset: int, commutation: bool) -> Outcome:
        functor = workspace.functor(_positional(task, offset, "a functor"), task.line)
        f1 = workspace.morphism(functor.source, _keyed(task, "f1", offset + 1, "f1"), task.line)
        f2 = workspace.morphism(functor.target, _keyed(task, "f2", offset + 2, "f2"), task.line)
        first, second = build_localization(functor.source, f1), build_localization(functor.target, f2)
        result: Dict[str, Any] = {"functor": functor.name, "f1": f1, "f2": f2}
        notes = [f"L_{g} does not exist" for g, loc in ((f1, first), (f2, second)) if loc is None]
        if notes:
            return "flagged", result, notes
        result["comparison"] = compare(functor, first, second).to_dict()
        if commutation:
            result["commutation"] = commutation_criterion(functor, first, second).to_dict()
        return "ok", result, []

    def _induce(self, workspace: Workspace, task: Task, offset: int) -> Outcome:
        cat = workspace.category(_positional(task, offset, "a category"), task.line)
        monad = workspace.monad(_positional(task, offset + 1, "a monad"), cat, task.line)
        f = workspace.morphism(cat, _keyed(task, "f", offset + 2, "a morphism"), task.line)
        loc = build_localization(cat, f)
        result: Dict[str, Any] = {"category": cat.name, "monad": monad.name, "f": f}
        if loc is None:
            return "flagged", result, [f"L_{f} does not exist in {cat.name}"]
        report = induce_localization(monad, loc)
        result.update(report.to_dict())
        result["all_conditions"] = all(report.conditions.values())
        return "ok", result, []

    def _dualize(self, workspace: Workspace, task: Task) -> Outcome:
        cat = workspace.category(_positional(task, 0, "a category"), task.line)
        a = workspace.object(cat, _keyed(task, "A", 1, "an object"), task.line)
        col = transport_coherence(cat, a)
        result: Dict[str, Any] = {"category": cat.name, "A": a, "exists": col is not None}
        if col is None:
            return "flagged", result, [f"no {a}-cellularization in {cat.name}"]
        result.update({"cellular_objects": list(col.colocal_objects), "table": col.table()})
        return "ok", result, []

    def _verify(self, workspace: Workspace, task: Task) -> Outcome:
        theorem = _positional(task, 0, "a theorem name")
        if not isinstance(theorem, TheoremArg):
            raise DslError("verify expects a theorem name such as thm4.2 first", task.line)
        name = theorem.theorem
        if name == "thm3.2":
            status, result, notes = self._compare(workspace, task, offset=1, commutation=True)
        elif name == "thm4.2":
            status, result, notes = self._induce(workspace, task, offset=1)
        elif name == "thm5.1":
            adj = workspace.adjunction(_positional(task, 1, "an adjunction"), task.line)
            f = workspace.morphism(adj.domain, _keyed(task, "f", 2, "a morphism"), task.line)
            report = adjoint_localization(adj, f)
            status, result, notes = ("flagged" if report.notes else "ok"), report.to_dict(), list(report.notes)
        elif name == "thm5.2":
            _, monad, f = self._monad_args(workspace, task)
            report = forgetful_commutation(monad, f)
            status, result, notes = ("ok" if report.complete else "flagged"), report.to_dict(), list(report.untestable)
        elif name == "eq9":
            status, result, notes = self._module_readings(workspace, task)
        elif name == "thm9":
            cat = workspace.category(_positional(task, 1, "a category"), task.line)
            monad = workspace.monad(_positional(task, 2, "a monad"), cat, task.line)
            a = workspace.object(cat, _keyed(task, "A", 3, "an object"), task.line)
            status, result, notes = "ok", duality_suite(monad, a).to_dict(), []
        else:
            raise DslError(f"Unsupported theorem: {name}", task.line)
        return status, {"theorem": name, **result}, notes

    def _monad_args(self, workspace: Workspace, task: Task):
        cat = workspace.category(_positional(task, 1, "a category"), task.line)
        monad = workspace.monad(_positional(task, 2, "a monad"), cat, task.line)
        f = workspace.morphism(cat, _keyed(task, "f", 3, "a morphism"), task.line)
        return cat, monad, f

    def _module_readings(self, workspace: Workspace, task: Task) -> Outcome:
        _, monad, f = self._monad_args(workspace, task)
        em = eilenberg_moore(monad)
        chosen = task.keyword("M")
        if chosen is not None:
            ident = getattr(chosen, "name", None)
            if ident not in {a.ident for a in em.algebras}:
                raise DslError(f"{ident} is not an algebra of {monad.name}", task.line)
            algebras = [ident]
        else:
            algebras = [a.ident for a in em.algebras]
        readings = {ident: module_readings(monad, f, ident, em) for ident in algebras}
        notes = sorted({note for r in readings.values() for note in r.untestable})
        result = {"f": f, "monad": monad.name, "algebras": {k: r.to_dict() for k, r in readings.items()}}
        return ("flagged" if notes else "ok"), result, notes
