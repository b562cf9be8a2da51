"""Built-in acceptance suite: exhaustive sweeps over the fixture categories.

Every check returns a ``SuiteCheck``; a ``TheoremViolation`` raised anywhere
in a sweep fails that check with the violation as its detail. ``quick`` mode
shrinks the sweeps to the smallest fixtures.
"""

import itertools
import logging
import time
import traceback
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .adjunction import EMCategory, Monad, check_adjunction, check_monad, eilenberg_moore
from .category import FiniteCategory, check_category, product_category
from .comparison import (
    adjoint_localization,
    colimit_comparison,
    commutation_criterion,
    join_alpha_agreement,
    mate_of,
    mate_of_beta,
)
from .config import EngineConfig
from .dsl import parse, print_document
from .duality import build_cellularization, cellular_module_readings, induce_colocalization, transport_coherence
from .errors import EngineError, TheoremViolation
from .fixtures import enumerate_test_morphisms
from .fixtures.abelian import gen_ab_skeleton, tensor_monad
from .fixtures.groups import abelianization_monad, check_abelianization_universal, gen_fingroup_skeleton
from .fixtures.posets import (
    closure_functor,
    closure_localization,
    closure_monad,
    closure_operators,
    enumerate_posets,
    galois_connections,
    lattices,
)
from .fixtures.sweeps import closure_pairs
from .induced import idempotent_case, induce_localization, module_readings
from .interfaces.file_utils import example_documents
from .interfaces.report_utils import dumps
from .localization import build_localization, check_localization
from .runner import SCHEMA_VERSION, TaskRunner

logger = logging.getLogger(__name__)


@dataclass
class SuiteCheck:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    mode: str
    checks: List[SuiteCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, object]:
        return {
            "schema_version": SCHEMA_VERSION,
            "mode": self.mode,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass(frozen=True)
class SweepSizes:
    abelian_orders: Sequence[int]
    group_order: int
    poset_size: int
    galois_size: int
    eq9_order: int

    @classmethod
    def for_mode(cls, quick: bool) -> "SweepSizes":
        if quick:
            return cls(abelian_orders=(4,), group_order=6, poset_size=3, galois_size=2, eq9_order=4)
        return cls(abelian_orders=(4, 8), group_order=8, poset_size=4, galois_size=3, eq9_order=4)


def _posets(max_size: int):
    return [p for n in range(1, max_size + 1) for p in enumerate_posets(n)]


def _rings(cat: FiniteCategory) -> List[int]:
    return [k for k in (2, 3) if cat.has_object(f"Z{k}")]


class AcceptanceSuite:
    def __init__(self, config: EngineConfig, quick: bool = False):
        self.config = config
        self.quick = quick
        self.sizes = SweepSizes.for_mode(quick)
        self._em: Dict[int, EMCategory] = {}

    @classmethod
    def from_config(cls, config: EngineConfig, quick: bool = False) -> "AcceptanceSuite":
        return cls(config, quick)

    def em(self, monad: Monad) -> EMCategory:
        key = id(monad)
        if key not in self._em:
            self._em[key] = eilenberg_moore(monad)
        return self._em[key]

    @property
    def checks(self) -> Dict[str, Callable[[], str]]:
        return {
            "laws": self.check_laws,
            "thm3.2": self.check_comparison,
            "thm4.2": self.check_induced,
            "eq9": self.check_module_readings,
            "idempotent": self.check_idempotent,
            "mates": self.check_mates,
            "colimits": self.check_colimits,
            "duality": self.check_duality,
            "dsl": self.check_dsl,
        }

    def run(self, only: Optional[Sequence[str]] = None) -> SuiteReport:
        report = SuiteReport("quick" if self.quick else "full")
        selected = list(only) if only else list(self.checks)
        for name in selected:
            if name not in self.checks:
                raise ValueError(f"Unsupported suite check: {name}. Supported checks: {', '.join(self.checks)}")
            started = time.perf_counter()
            try:
                detail = self.checks[name]()
                passed = True
            except (TheoremViolation, AssertionError) as e:
                passed, detail = False, str(e) or type(e).__name__
            except EngineError as e:
                passed, detail = False, f"{type(e).__name__}: {e}"
            except Exception as e:
                logger.error(f"[suite:{name}] Error: {e}\n{traceback.format_exc()}")
                passed, detail = False, f"{type(e).__name__}: {e}"
            elapsed = time.perf_counter() - started
            logger.info(f"[suite:{name}] {'pass' if passed else 'FAIL'} in {elapsed:.1f}s: {detail}")
            report.checks.append(SuiteCheck(name, passed, detail, elapsed))
        return report

    # -- checks -----------------------------------------------------------
    # Each returns a short detail string or raises.

    def _require(self, condition: bool, message: str) -> None:
        if not condition:
            raise AssertionError(message)

    def check_laws(self) -> str:
        budget = self.config.budget
        counted = {"categories": 0, "monads": 0, "adjunctions": 0, "localizations": 0}

        def expect_clean(violations, what: str) -> None:
            self._require(not violations, f"{what}: {violations[0].to_dict() if violations else ''}")

        for order in self.sizes.abelian_orders:
            skeleton = gen_ab_skeleton(order, budget=budget)
            expect_clean(check_category(skeleton.category), skeleton.category.name)
            counted["categories"] += 1
            for k in _rings(skeleton.category):
                monad = tensor_monad(skeleton, k)
                expect_clean(check_monad(monad), monad.name)
                em = self.em(monad)
                expect_clean(check_category(em.category), em.category.name)
                expect_clean(check_adjunction(em.adjunction), f"free/forgetful of {monad.name}")
                counted["monads"] += 1
                counted["adjunctions"] += 1

        groups = gen_fingroup_skeleton(self.sizes.group_order, budget=budget)
        expect_clean(check_category(groups.category), groups.category.name)
        monad = abelianization_monad(groups)
        expect_clean(check_monad(monad), monad.name)
        expect_clean(check_abelianization_universal(groups, monad), "abelianization universal property")
        counted["categories"] += 1
        counted["monads"] += 1

        for poset in _posets(self.sizes.poset_size):
            expect_clean(check_category(poset.category), poset.name)
            counted["categories"] += 1
            for i, closure in enumerate(closure_operators(poset)):
                expect_clean(check_monad(closure_monad(poset, closure)), f"closure {i} on {poset.name}")
                expect_clean(check_localization(closure_localization(poset, closure)), f"closure {i} on {poset.name}")
                counted["monads"] += 1
                counted["localizations"] += 1
        small = _posets(self.sizes.galois_size)
        for source, target in itertools.product(small, small):
            for adj in galois_connections(source, target):
                expect_clean(check_adjunction(adj), adj.name)
                counted["adjunctions"] += 1
        return ", ".join(f"{v} {k}" for k, v in counted.items())

    def check_comparison(self) -> str:
        instances, positive, negative = 0, 0, 0
        for poset in _posets(3):
            closures = closure_operators(poset)
            locs = [closure_localization(poset, c) for c in closures]
            for c in closures:
                functor = closure_functor(poset, c)
                for first, second in itertools.product(locs, locs):
                    report = commutation_criterion(functor, first, second)
                    instances += 1
                    if report.isomorphism is not None:
                        positive += 1
                    else:
                        negative += 1
        skeleton = gen_ab_skeleton(4, budget=self.config.budget)
        cat = skeleton.category
        for k in _rings(cat):
            functor = tensor_monad(skeleton, k).functor
            locs = [loc for loc in (build_localization(cat, f) for f in enumerate_test_morphisms(cat, True)) if loc]
            for first, second in itertools.product(locs, locs):
                report = commutation_criterion(functor, first, second)
                instances += 1
                positive += report.isomorphism is not None
                negative += report.isomorphism is None
        self._require(instances >= 10, f"only {instances} comparison instances")
        self._require(positive >= 2 and negative >= 2, f"{positive} positive / {negative} negative commutation instances")
        return f"{instances} instances, {positive} commuting, {negative} not"

    def check_induced(self) -> str:
        instances, negatives = 0, 0
        for poset in _posets(self.sizes.poset_size):
            for monad, loc in closure_pairs(poset):
                report = induce_localization(monad, loc, self.em(monad))
                instances += 1
                negatives += not any(report.conditions.values())
        for order in self.sizes.abelian_orders:
            skeleton = gen_ab_skeleton(order, budget=self.config.budget)
            cat = skeleton.category
            for k in _rings(cat):
                monad = tensor_monad(skeleton, k)
                for f in enumerate_test_morphisms(cat, up_to_iso=True):
                    loc = build_localization(cat, f)
                    if loc is None:
                        continue
                    report = induce_localization(monad, loc, self.em(monad))
                    instances += 1
                    negatives += not any(report.conditions.values())
        self._require(negatives >= 1, "no instance with all four induced-localization conditions false")
        return f"{instances} instances agree, {negatives} with all conditions false"

    def check_module_readings(self) -> str:
        skeleton = gen_ab_skeleton(self.sizes.eq9_order, budget=self.config.budget)
        cat = skeleton.category
        tested, skipped = 0, 0
        for k in _rings(cat):
            monad = tensor_monad(skeleton, k)
            em = self.em(monad)
            for f in enumerate_test_morphisms(cat):
                for algebra in em.algebras:
                    report = module_readings(monad, f, algebra.ident, em)
                    if report.untestable:
                        skipped += 1
                    else:
                        tested += 1
        self._require(tested > 0, "no testable module instance")
        return f"{tested} module readings agree, {skipped} untestable"

    def check_idempotent(self) -> str:
        groups = gen_fingroup_skeleton(self.sizes.group_order, budget=self.config.budget)
        monad = abelianization_monad(groups)
        tested, skipped = 0, 0
        for f in enumerate_test_morphisms(groups.category, up_to_iso=True):
            report = idempotent_case(monad, f)
            if "L_f I ~ L_Tf I" in report.clauses:
                tested += 1
            else:
                skipped += 1
        self._require(tested > 0, "no morphism where L_f and L_f_ab both preserve abelian groups")
        return f"{tested} morphisms with L_f A ~ L_f_ab A, {skipped} outside the hypotheses"

    def check_mates(self) -> str:
        adjunctions = []
        small = _posets(self.sizes.galois_size)
        for source, target in itertools.product(small, small):
            adjunctions.extend(galois_connections(source, target))
        skeleton = gen_ab_skeleton(4, budget=self.config.budget)
        for k in _rings(skeleton.category):
            adjunctions.append(self.em(tensor_monad(skeleton, k)).adjunction)

        instances = 0
        for adj in adjunctions:
            for f in enumerate_test_morphisms(adj.domain, up_to_iso=True):
                report = adjoint_localization(adj, f)
                if report.alpha is None:
                    continue
                first = build_localization(adj.domain, f)
                second = build_localization(adj.codomain, adj.left.mor(f))
                beta = mate_of(report.alpha, adj, first, second)
                back = mate_of_beta(beta, adj, first, second)
                self._require(
                    dict(back.components) == dict(report.alpha.components),
                    f"mate of the mate differs from alpha for {adj.name}, f={f}",
                )
                instances += 1
        self._require(instances > 0, "no adjunction instance with both localizations")
        return f"{instances} (adjunction, f) instances, mates agree"

    def check_colimits(self) -> str:
        comparisons = 0
        agreements = 0
        for lattice in lattices(self.sizes.poset_size):
            cat = lattice.category
            square = product_category(cat, cat)
            for closure in closure_operators(lattice):
                loc = closure_localization(lattice, closure)
                for size in range(1, len(lattice.elements) + 1):
                    for diagram in itertools.combinations(lattice.elements, size):
                        colimit_comparison(cat, loc, diagram)
                        comparisons += 1
                join_alpha_agreement(cat, loc, square)
                agreements += 1
        return f"{comparisons} join diagrams, {agreements} join functors agree with alpha"

    def check_duality(self) -> str:
        categories: List[FiniteCategory] = [gen_ab_skeleton(4, budget=self.config.budget).category]
        categories.append(gen_fingroup_skeleton(min(self.sizes.group_order, 6), budget=self.config.budget).category)
        categories.extend(p.category for p in _posets(3))
        transported = 0
        for cat in categories:
            for a in cat.objects:
                transport_coherence(cat, a)
                transported += 1

        induced = 0
        for poset in _posets(3):
            cat = poset.category
            colocalizations = [col for col in (build_cellularization(cat, a) for a in cat.objects) if col]
            for closure in closure_operators(poset):
                monad = closure_monad(poset, closure)
                for col in colocalizations:
                    induce_colocalization(monad, col, self.em(monad))
                    induced += 1

        readings = 0
        skeleton = gen_ab_skeleton(4, budget=self.config.budget)
        for k in _rings(skeleton.category):
            monad = tensor_monad(skeleton, k)
            em = self.em(monad)
            for a in skeleton.category.objects:
                for algebra in em.algebras:
                    report = cellular_module_readings(monad, a, algebra.ident, em)
                    readings += not report.untestable
        return f"{transported} transports, {induced} induced colocalizations, {readings} cellular module readings"

    def check_dsl(self) -> str:
        documents = example_documents()
        self._require(bool(documents), "no bundled example documents")
        for name, text in documents:
            printed = print_document(parse(text, name=name))
            self._require(printed == text, f"{name} does not round-trip byte for byte")
        light = documents if not self.quick else [d for d in documents if d[0] in ("chain3.fl", "reflection.fl")]
        for name, text in light:
            document = parse(text, name=name)
            outputs = set()
            for workers, seed in ((1, 0), (4, self.config.seed + 1)):
                runner = TaskRunner.from_config(
                    self.config.with_overrides(workers=workers, seed=seed, include_timing=False)
                )
                report = runner.run(document)
                self._require(report.status == 0, f"{name}: exit status {report.status}")
                outputs.add(dumps(report.to_dict()))
            self._require(len(outputs) == 1, f"{name}: report differs between worker counts and seeds")
        return f"{len(documents)} documents round-trip, {len(light)} run clean and identically across workers and seeds"


def run_suite(config: EngineConfig, quick: bool = False, only: Optional[Sequence[str]] = None) -> SuiteReport:
    return AcceptanceSuite.from_config(config, quick).run(only)
