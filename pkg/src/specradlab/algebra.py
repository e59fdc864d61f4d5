"""Exact convolution arithmetic for finitely supported complex functions.

Coefficients are double-precision complex numbers; exactness claims are
combinatorial (support sets, counts) plus floating arithmetic.  Truncation is
never silent: pruned l1 mass accumulates in ``dropped_mass`` and propagates
through products by Young's inequality, so ``dropped_mass`` always bounds
||f_exact - f_computed||_1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceededError, GroupMismatchError, SpecRadLabError
from .groups import GroupElement, get_group

DEFAULT_MAX_SUPPORT = 2_000_000
DEFAULT_MAX_PAIRS = 40_000_000


@dataclass(frozen=True)
class PrunePolicy:
    """Coefficients with modulus strictly below ``threshold`` are pruned and
    their total modulus is added to the dropped-mass ledger.  The default
    threshold 0 keeps everything (exact arithmetic)."""

    threshold: float = 0.0

    def is_exact(self) -> bool:
        return self.threshold == 0.0


EXACT = PrunePolicy(0.0)


class AlgebraElement:
    """A finitely supported function on a catalog group.

    The support maps group-element payloads to complex coefficients; exact
    zeros produced by cancellation are not stored.  Instances are treated as
    immutable values; all operations return new elements.
    """

    __slots__ = ("group_id", "_support", "dropped_mass")

    def __init__(self, group_id: str, support: dict, dropped_mass: float = 0.0):
        self.group_id = group_id
        self._support = {p: complex(c) for p, c in support.items() if c != 0}
        self.dropped_mass = float(dropped_mass)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_pairs(group_id: str, pairs) -> "AlgebraElement":
        sup: dict = {}
        for el, c in pairs:
            if isinstance(el, GroupElement):
                if el.group_id != group_id:
                    raise GroupMismatchError("element from a different group")
                p = el.payload
            else:
                p = el
            sup[p] = sup.get(p, 0j) + complex(c)
        return AlgebraElement(group_id, sup)

    @staticmethod
    def delta(el: GroupElement, coeff: complex = 1.0) -> "AlgebraElement":
        return AlgebraElement(el.group_id, {el.payload: complex(coeff)})

    @staticmethod
    def uniform(group_id: str, elements) -> "AlgebraElement":
        """Normalized indicator of a finite set: the walk kernel h_S = 1_S/|S|."""
        payloads = [el.payload if isinstance(el, GroupElement) else el for el in elements]
        payloads = list(dict.fromkeys(payloads))
        w = 1.0 / len(payloads)
        return AlgebraElement(group_id, {p: w for p in payloads})

    @staticmethod
    def zero(group_id: str) -> "AlgebraElement":
        return AlgebraElement(group_id, {})

    # -- views ----------------------------------------------------------------

    def support_size(self) -> int:
        return len(self._support)

    def payload_items(self):
        return self._support.items()

    def items_sorted(self):
        """(GroupElement, coeff) pairs in canonical normal-form order."""
        g = get_group(self.group_id)
        for p in sorted(self._support, key=g.sort_key):
            yield GroupElement(self.group_id, p), self._support[p]

    def coeff(self, el: GroupElement) -> complex:
        return self._support.get(el.payload, 0j)

    def support_payloads(self):
        return set(self._support)

    def is_exact(self) -> bool:
        return self.dropped_mass == 0.0

    def __len__(self) -> int:
        return len(self._support)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.group_id == other.group_id
            and self._support == other._support
        )

    def __repr__(self) -> str:
        return f"AlgebraElement({self.group_id}, |supp|={len(self._support)})"

    # -- linear structure ------------------------------------------------------

    def scaled(self, a: complex) -> "AlgebraElement":
        return AlgebraElement(self.group_id,
                              {p: a * c for p, c in self._support.items()},
                              abs(a) * self.dropped_mass)

    def add(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same_group(self, other)
        sup = dict(self._support)
        for p, c in other._support.items():
            sup[p] = sup.get(p, 0j) + c
        return AlgebraElement(self.group_id, sup,
                              self.dropped_mass + other.dropped_mass)

    def to_json(self):
        """JSON list of (normal-form word, re, im) triples."""
        return [[str(el), c.real, c.imag] for el, c in self.items_sorted()]


def _check_same_group(f: AlgebraElement, g: AlgebraElement):
    if f.group_id != g.group_id:
        raise GroupMismatchError(
            f"cannot combine elements over {f.group_id} and {g.group_id}"
        )


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def involute(f: AlgebraElement) -> AlgebraElement:
    """f*(s) = conj(f(s^-1)); an isometry for every p-norm."""
    g = get_group(f.group_id)
    sup = {g.inverse_payload(p): c.conjugate() for p, c in f.payload_items()}
    return AlgebraElement(f.group_id, sup, f.dropped_mass)


def is_hermitian(f: AlgebraElement, tol: float = 1e-12) -> bool:
    diff = f.add(involute(f).scaled(-1))
    scale = max(1.0, p_norm(f, 1))
    return p_norm(diff, 1) <= tol * scale


def p_norm(f: AlgebraElement, p) -> float:
    """(sum |f(s)|^p)^(1/p); max modulus for p = inf."""
    if not f._support:
        return 0.0
    moduli = [abs(c) for c in f._support.values()]
    if p == math.inf or p == "inf":
        return max(moduli)
    p = float(p)
    if p < 1:
        raise SpecRadLabError(f"p-norm needs p >= 1, got {p}")
    if p == 1.0:
        return math.fsum(moduli)
    if p == 2.0:
        return math.sqrt(math.fsum(m * m for m in moduli))
    return math.fsum(m ** p for m in moduli) ** (1.0 / p)


def weighted_l2_moment(f: AlgebraElement) -> float:
    """||f||_2^2 via exactly rounded summation (order independent)."""
    return math.fsum((c.real * c.real + c.imag * c.imag) for c in f._support.values())


def convolve(f: AlgebraElement, g: AlgebraElement,
             policy: PrunePolicy = EXACT,
             max_support: int = DEFAULT_MAX_SUPPORT,
             max_pairs: int = DEFAULT_MAX_PAIRS) -> AlgebraElement:
    """(f*g)(t) = sum_s f(s) g(s^-1 t), exact over the finite supports.

    Raises BudgetExceededError before doing quadratic work that would blow the
    pair budget, and after the fact if the result support exceeds the cap.
    """
    _check_same_group(f, g)
    npairs = len(f._support) * len(g._support)
    if npairs > max_pairs:
        raise BudgetExceededError(
            f"convolution pair count {npairs} exceeds budget {max_pairs}"
        )
    grp = get_group(f.group_id)
    mul = grp.multiply_payloads
    out: dict = {}
    for pa, ca in f.payload_items():
        for pb, cb in g.payload_items():
            t = mul(pa, pb)
            if t in out:
                out[t] += ca * cb
            else:
                out[t] = ca * cb
    pruned = 0.0
    if policy.threshold > 0.0:
        thr = policy.threshold
        kept = {}
        for p, c in out.items():
            if abs(c) < thr:
                pruned += abs(c)
            else:
                kept[p] = c
        out = kept
    if len(out) > max_support:
        raise BudgetExceededError(
            f"convolution support {len(out)} exceeds budget {max_support}"
        )
    # Young propagation: ||f_ex*g_ex - fg|| <= d_f ||g|| + d_g ||f|| + d_f d_g + pruned
    d = 0.0
    if f.dropped_mass or g.dropped_mass:
        nf, ng = p_norm(f, 1), p_norm(g, 1)
        d = f.dropped_mass * ng + g.dropped_mass * nf + f.dropped_mass * g.dropped_mass
    return AlgebraElement(f.group_id, out, d + pruned)


def apply_operator(f: AlgebraElement, v: AlgebraElement, **kwargs) -> AlgebraElement:
    """The regular representation applied to a finitely supported vector.

    Identical to convolution; kept as a named operation because estimators
    treat v as a vector rather than an algebra element.
    """
    return convolve(f, v, **kwargs)


def convolution_power(f: AlgebraElement, n: int,
                      policy: PrunePolicy = EXACT,
                      max_support: int = DEFAULT_MAX_SUPPORT,
                      max_pairs: int = DEFAULT_MAX_PAIRS) -> AlgebraElement:
    """f^n by repeated squaring; dropped mass tracks the total l1 error."""
    if n < 1:
        raise SpecRadLabError("convolution power needs n >= 1")
    if n == 1:
        return f
    acc = None
    base = f
    m = n
    while m:
        if m & 1:
            acc = base if acc is None else convolve(acc, base, policy=policy,
                                                    max_support=max_support,
                                                    max_pairs=max_pairs)
        m >>= 1
        if m:
            base = convolve(base, base, policy=policy,
                            max_support=max_support, max_pairs=max_pairs)
    return acc


def power_sequence(f: AlgebraElement, n_max: int,
                   policy: PrunePolicy = EXACT,
                   max_support: int = DEFAULT_MAX_SUPPORT,
                   max_pairs: int = DEFAULT_MAX_PAIRS):
    """Yield (n, f^n) for n = 1..n_max by linear iteration, stopping early
    (without raising) when the support budget is hit."""
    cur = f
    yield 1, cur
    for n in range(2, n_max + 1):
        try:
            cur = convolve(cur, f, policy=policy,
                           max_support=max_support, max_pairs=max_pairs)
        except BudgetExceededError:
            return
        yield n, cur


def doubling_sequence(f: AlgebraElement, max_doublings: int,
                      policy: PrunePolicy = EXACT,
                      max_support: int = DEFAULT_MAX_SUPPORT,
                      max_pairs: int = DEFAULT_MAX_PAIRS):
    """Yield (k, f^(2^k)) for k = 0..max_doublings, stopping at the budget."""
    cur = f
    yield 0, cur
    for k in range(1, max_doublings + 1):
        try:
            cur = convolve(cur, cur, policy=policy,
                           max_support=max_support, max_pairs=max_pairs)
        except BudgetExceededError:
            return
        yield k, cur


def random_hermitian(group_id: str, support_elements, rng,
                     complex_coeffs: bool = True,
                     normalize: str = "l1") -> AlgebraElement:
    """Random Hermitian element supported in the symmetrization of the given
    set: coefficients satisfy f(s^-1) = conj(f(s)).  Deterministic given rng."""
    g = get_group(group_id)
    payloads = []
    for el in support_elements:
        p = el.payload if isinstance(el, GroupElement) else el
        if p not in payloads:
            payloads.append(p)
        q = g.inverse_payload(p)
        if q not in payloads:
            payloads.append(q)
    sup: dict = {}
    done = set()
    for p in payloads:
        if p in done:
            continue
        q = g.inverse_payload(p)
        if q == p:
            sup[p] = complex(rng.standard_normal())  # fixed points must be real
            done.add(p)
        else:
            c = complex(rng.standard_normal(),
                        rng.standard_normal() if complex_coeffs else 0.0)
            sup[p] = c
            sup[q] = c.conjugate()
            done.update((p, q))
    f = AlgebraElement(group_id, sup)
    if normalize == "l1":
        n1 = p_norm(f, 1)
        if n1 > 0:
            f = f.scaled(1.0 / n1)
    return f
