"""Candidate morphisms and instance lists for exhaustive sweeps."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..adjunction import Monad
from ..category import FiniteCategory
from ..localization import Localization, build_localization
from .posets import Poset, closure_localization, closure_monad, closure_operators

logger = logging.getLogger(__name__)


def automorphisms(cat: FiniteCategory, x: str) -> np.ndarray:
    xi = cat.object_index(x)
    endos = cat.hom_indices(xi, xi)
    return endos[cat.inverse_indices[endos] >= 0]


def _orbit(cat: FiniteCategory, g: int) -> np.ndarray:
    """``{v . g . u}`` over automorphisms ``u`` of the source and ``v`` of the target"""
    local = cat.local_positions
    a, b = int(cat.source_indices[g]), int(cat.target_indices[g])
    right = automorphisms(cat, cat.objects[a])
    left = automorphisms(cat, cat.objects[b])
    once = cat.block(a, a, b)[local[g], local[right]]
    twice = cat.block(a, b, b)[np.ix_(local[left], local[once])]
    return np.unique(twice)


def enumerate_test_morphisms(cat: FiniteCategory, up_to_iso: bool = False) -> List[str]:
    """Non-identity morphisms in canonical order.

    With ``up_to_iso`` only the first morphism of each orbit under
    ``Aut(A) x Aut(B)`` is kept; ``L_f`` depends on ``f`` only up to that
    action.
    """
    identities = set(cat.identity_indices.tolist())
    candidates = [m for m in range(len(cat.morphisms)) if m not in identities]
    if not up_to_iso:
        return [cat.morphisms[m] for m in candidates]
    seen = np.zeros(len(cat.morphisms), dtype=bool)
    kept = []
    for m in candidates:
        if seen[m]:
            continue
        kept.append(cat.morphisms[m])
        seen[_orbit(cat, m)] = True
    logger.debug(f"[category:{cat.name}] {len(kept)} of {len(candidates)} test morphisms up to isomorphism")
    return kept


def localization_sweep(
    cat: FiniteCategory, morphisms: Optional[Iterable[str]] = None, workers: int = 1
) -> Dict[str, Optional[Localization]]:
    """``L_f`` for every test morphism, ``None`` where it does not exist; keys keep input order"""
    chosen = list(morphisms) if morphisms is not None else enumerate_test_morphisms(cat, up_to_iso=True)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            built = list(pool.map(lambda f: build_localization(cat, f), chosen))
    else:
        built = [build_localization(cat, f) for f in chosen]
    return dict(zip(chosen, built))


def closure_pairs(poset: Poset) -> List[Tuple[Monad, Localization]]:
    """Every (closure monad, closure localization) pair on ``poset``"""
    closures = closure_operators(poset)
    monads = [closure_monad(poset, c, name=f"closure({i})") for i, c in enumerate(closures)]
    localizations = [closure_localization(poset, c, name=f"L({i})") for i, c in enumerate(closures)]
    return [(t, loc) for t in monads for loc in localizations]
