"""Product-set enumeration, growth-rate brackets and free-semigroup checks.

Product sets follow the n-fold product S^n (not the cumulative ball); when
the identity belongs to S the two coincide and the sets are nested, which
lets the enumeration expand frontier shells only.  Expansion order is
deterministic: frontier elements in insertion order, generators in index
order, so two runs produce identical element orderings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import GeneratingSet
from .errors import BudgetExceededError, SpecRadLabError
from .estimates import Certificate, SpectralEstimate
from .groups import GroupElement, get_group

DEFAULT_ELEMENT_CAP = 50_000_000


@dataclass
class ProductSetSequence:
    """Exact cardinalities |S|, |S^2|, ..., plus the last product set."""

    group_id: str
    sizes: list[int]
    frontier: tuple[GroupElement, ...]  # the full last computed product set
    nested: bool
    truncated: bool = False

    @property
    def completed_n(self) -> int:
        return len(self.sizes)


def product_set_sequence(S: GeneratingSet, N: int,
                         max_elements: int = DEFAULT_ELEMENT_CAP,
                         on_budget: str = "raise") -> ProductSetSequence:
    """Sizes of S, S^2, ..., S^N by breadth-first frontier expansion.

    ``on_budget`` is "raise" (default, contract behaviour) or "truncate";
    either way the largest completed n is reported.
    """
    if N < 1:
        raise SpecRadLabError("N must be >= 1")
    g = get_group(S.group_id)
    gens = S.payloads()
    mul = g.multiply_payloads

    if S.contains_identity:
        seen = dict.fromkeys(gens)  # ordered set
        frontier = list(seen)
        sizes = [len(seen)]
        for _ in range(1, N):
            new = []
            for u in frontier:
                for p in gens:
                    w = mul(u, p)
                    if w not in seen:
                        seen[w] = None
                        new.append(w)
            if len(seen) > max_elements:
                return _budget_stop(S, sizes, seen, True, on_budget, max_elements)
            sizes.append(len(seen))
            if not new:
                # group generated by S is exhausted; sizes stay constant
                sizes.extend([len(seen)] * (N - len(sizes)))
                break
            frontier = new
        elements = tuple(GroupElement(S.group_id, p) for p in seen)
        return ProductSetSequence(S.group_id, sizes[:N], elements, nested=True)

    # without the identity the product sets need not be nested: full products
    current = dict.fromkeys(gens)
    sizes = [len(current)]
    for _ in range(1, N):
        nxt = {}
        for u in current:
            for p in gens:
                w = mul(u, p)
                if w not in nxt:
                    nxt[w] = None
        if len(nxt) > max_elements:
            return _budget_stop(S, sizes, current, False, on_budget, max_elements)
        current = nxt
        sizes.append(len(current))
    elements = tuple(GroupElement(S.group_id, p) for p in current)
    return ProductSetSequence(S.group_id, sizes, elements, nested=False)


def _budget_stop(S, sizes, last_set, nested, on_budget, max_elements):
    elements = tuple(GroupElement(S.group_id, p) for p in last_set)
    partial = ProductSetSequence(S.group_id, list(sizes), elements, nested=nested,
                                 truncated=True)
    if on_budget == "truncate":
        return partial
    raise BudgetExceededError(
        f"product-set expansion exceeded {max_elements} elements at n={len(sizes)}",
        partial=partial,
    )


def growth_rate_estimate(seq: ProductSetSequence) -> SpectralEstimate:
    """Bracket for the exponential growth rate lim |S^n|^(1/n).

    Submultiplicativity |S^(m+n)| <= |S^m||S^n| makes every |S^n|^(1/n) an
    upper bound (Fekete), so the upper certificate is the running minimum of
    those roots.  No nontrivial lower bound is available from finitely many
    sizes, so the lower bound is the trivial 1.  The reported point estimate
    is the frontier-difference ratio

        (|S^(n+1)| - |S^n|) / (|S^n| - |S^(n-1)|)

    for nested sequences (it converges far faster than the raw size ratio and
    is exact for free groups), falling back to the raw ratio |S^(n+1)|/|S^n|
    when the sets are not nested; it is an estimate, never a bound.
    """
    sizes = seq.sizes
    if len(sizes) < 2:
        raise SpecRadLabError("growth estimate needs at least two product sets")
    roots = [s ** (1.0 / n) for n, s in enumerate(sizes, start=1)]
    running_min = []
    cur = math.inf
    for r in roots:
        cur = min(cur, r)
        running_min.append(cur)
    upper = running_min[-1] * (1 + 1e-13)

    ratios = [sizes[i + 1] / sizes[i] for i in range(len(sizes) - 1)]
    if seq.nested:
        diffs = [sizes[i + 1] - sizes[i] for i in range(len(sizes) - 1)]
        if len(diffs) >= 2 and diffs[-2] > 0:
            point = diffs[-1] / diffs[-2]
        else:
            point = 1.0 if (diffs and diffs[-1] == 0) else ratios[-1]
        if diffs and diffs[-1] == 0:
            point = 1.0  # closure reached: the generated group is finite
    else:
        point = ratios[-1]

    return SpectralEstimate(
        lower=1.0,
        upper=upper,
        lower_certificate=Certificate("trivial growth lower bound", [1.0] * len(sizes)),
        upper_certificate=Certificate("running min of |S^n|^(1/n)", running_min),
        method="bfs-product-sets",
        target="nu_S",
        point_estimate=point,
        extras={
            "sizes": list(sizes),
            "roots": roots,
            "ratios": ratios,
            "truncated": seq.truncated,
        },
    )


def verify_free_semigroup(s: GroupElement, t: GroupElement, depth: int,
                          max_words: int = 2_000_000) -> bool:
    """True iff all positive words in {s, t} up to the given length are
    pairwise distinct group elements (exhaustive normal-form check)."""
    if s.group_id != t.group_id:
        raise SpecRadLabError("free-semigroup check needs elements of one group")
    g = get_group(s.group_id)
    mul = g.multiply_payloads
    expected = 2 ** (depth + 1) - 2
    if expected > max_words:
        raise BudgetExceededError(
            f"free-semigroup check needs {expected} words, budget {max_words}"
        )
    seen = set()
    words_added = 0
    level = [s.payload, t.payload]
    for _ in range(depth):
        seen.update(level)
        words_added += len(level)
        if len(seen) < words_added:
            return False  # two positive words collided
        level = [mul(p, q) for p in level for q in (s.payload, t.payload)]
    return len(seen) == expected
