"""Generating sets and the catalog listing used by the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import groups
from .errors import SpecRadLabError
from .groups import GroupElement, get_group


@dataclass(frozen=True)
class GeneratingSet:
    """A finite, duplicate-free list of group elements with closure flags.

    ``symmetric`` and ``contains_identity`` are computed, never trusted from
    input, so they always reflect the actual element list.
    """

    group_id: str
    elements: tuple[GroupElement, ...]
    symmetric: bool
    contains_identity: bool

    @staticmethod
    def from_elements(elements) -> "GeneratingSet":
        elements = list(elements)
        if not elements:
            raise SpecRadLabError("generating set must be nonempty")
        gid = elements[0].group_id
        seen = set()
        uniq = []
        for el in elements:
            if el.group_id != gid:
                raise SpecRadLabError("generating set mixes groups")
            if el.payload not in seen:
                seen.add(el.payload)
                uniq.append(el)
        payloads = {el.payload for el in uniq}
        g = get_group(gid)
        symmetric = all(g.inverse_payload(p) in payloads for p in payloads)
        contains_identity = g.identity_payload() in payloads
        return GeneratingSet(gid, tuple(uniq), symmetric, contains_identity)

    @staticmethod
    def from_words(group_id: str, words, include_identity: bool = False,
                   symmetrize: bool = False) -> "GeneratingSet":
        els = [groups.parse_element(group_id, w) for w in words]
        if symmetrize:
            els = els + [e.inverse() for e in els]
        if include_identity:
            els = [groups.identity(group_id)] + els
        return GeneratingSet.from_elements(els)

    def __len__(self) -> int:
        return len(self.elements)

    def payloads(self):
        return [el.payload for el in self.elements]

    def words(self) -> list[str]:
        return [groups.format_element(el) for el in self.elements]


def default_generating_set(group_id: str, include_identity: bool = True) -> GeneratingSet:
    """Symmetrized default generators, with the identity unless asked otherwise.

    With the identity included the n-fold product sets are the balls of the
    word metric, which is what the growth experiments expect.
    """
    g = get_group(group_id)
    names = g.default_generator_names()
    return GeneratingSet.from_words(group_id, names, include_identity=include_identity,
                                    symmetrize=True)


EXPERIMENT_KINDS = {
    "growth": "product-set sizes |S^n| and growth-rate bracket",
    "l1-spectrum": "power certificates for the l1 spectral radius",
    "cstar-spectrum": "trace-moment bracket for the reduced-C* radius (Hermitian)",
    "opnorm": "certified bracket for the convolution operator norm on l^p",
    "pfstar-bracket": "spectral-radius bracket in the max(p,q) operator algebra",
    "pf-interpolation": "three-exponent interpolation inequality check",
    "growth-chain": "norm chain ||f^n||_1 <= ||f^(n-1)||op ||f||_p |S^n|^(1/q)",
    "spectral-growth": "radius vs growth bound with a q-sweep",
    "kesten-lemma": "growth-rate lower bound against the random-walk radius",
    "kesten-probe": "amenability consistency probe for the walk kernel h_S",
    "jenkins": "free-semigroup witness separating l1 and C*-radius",
    "rd-bound": "weighted-l2 rapid-decay consistency check",
    "pytlik-radius": "weighted vs plain vs exact radius agreement",
    "differential": "weighted-algebra differential-norm inequality sweep",
}


def catalog_text() -> str:
    """Stable, human-readable listing of groups, generators and experiment kinds."""
    lines = ["catalog groups:"]
    for gid in groups.catalog_ids():
        g = get_group(gid)
        S = default_generating_set(gid)
        gens = ", ".join(g.default_generator_names())
        lines.append(f"  {gid:22s} {g.description}")
        lines.append(f"  {'':22s} generators: {gens}; default |S| = {len(S)} (symmetric, with e)")
    lines.append("experiment kinds:")
    for kind, doc in EXPERIMENT_KINDS.items():
        lines.append(f"  {kind:22s} {doc}")
    return "\n".join(lines) + "\n"
