"""Exact arithmetic for the fixed catalog of finitely generated discrete groups.

Every group element is stored in a unique normal form, so equality of
elements is equality of payloads.  Payloads are small hashable values:

  free rank k        tuple of nonzero signed letters, freely reduced
                     (letter i in 1..k, sign = inverse)
  Z^d                tuple of d integers
  Heisenberg H3(Z)   triple (x, y, z) with
                     (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+x*y')
  lamplighter Z2wrZ  (lamps, shift): sorted tuple of lit positions, integer shift
  BS(1,2)            (k, num, m) for the affine map x -> 2^k x + num/2^m,
                     num/2^m in lowest dyadic terms (num odd, or num=0, m=0)
  symmetric tower    permutation as a tuple of images with trailing fixed
                     points trimmed (identity = empty tuple)
  direct sum of Z2   nonnegative integer bitmask, product = xor

Normal forms are closed under multiplication and inversion; multiplication
re-normalizes after every product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterable

from .errors import (
    BudgetExceededError,
    GroupMismatchError,
    UnknownGroupError,
    WordParseError,
)

Payload = Hashable


@dataclass(frozen=True)
class GroupElement:
    """An element of a catalog group in canonical normal form."""

    group_id: str
    payload: Payload

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return inverse(self)

    def __str__(self) -> str:
        return format_element(self)


class Group:
    """Base class for catalog groups; subclasses implement payload arithmetic."""

    family: str = ""
    is_abelian: bool = False
    description: str = ""

    def __init__(self, group_id: str):
        self.group_id = group_id
        self._length_cache: dict[Payload, int] | None = None

    # -- payload arithmetic -------------------------------------------------

    def identity_payload(self) -> Payload:
        raise NotImplementedError

    def multiply_payloads(self, a: Payload, b: Payload) -> Payload:
        raise NotImplementedError

    def inverse_payload(self, a: Payload) -> Payload:
        raise NotImplementedError

    def sort_key(self, a: Payload):
        """Total order used for deterministic support iteration."""
        raise NotImplementedError

    def format_payload(self, a: Payload) -> str:
        raise NotImplementedError

    # -- generators ----------------------------------------------------------

    def named_generators(self) -> dict[str, Payload]:
        """Generator name -> payload; names are the vocabulary of words."""
        raise NotImplementedError

    def default_generator_names(self) -> list[str]:
        """Generators (without inverses) spanning the default symmetric set."""
        return list(self.named_generators())

    # -- optional extras -----------------------------------------------------

    def word_length(self, a: Payload, max_elements: int = 200_000) -> int:
        """Word length w.r.t. the default generating set.

        Groups with a closed form override this; the fallback builds a BFS
        distance table, which raises once the ball exceeds ``max_elements``.
        """
        if self._length_cache is None:
            self._length_cache = {self.identity_payload(): 0}
            self._length_frontier = [self.identity_payload()]
            self._length_radius = 0
        cache = self._length_cache
        gens = self._symmetric_generator_payloads()
        while a not in cache:
            if len(cache) > max_elements:
                raise BudgetExceededError(
                    f"word-length table for {self.group_id} exceeded {max_elements} elements"
                )
            nxt = []
            for u in self._length_frontier:
                for g in gens:
                    w = self.multiply_payloads(u, g)
                    if w not in cache:
                        cache[w] = self._length_radius + 1
                        nxt.append(w)
            if not nxt:
                raise WordParseError(f"element not reachable from generators of {self.group_id}")
            self._length_frontier = nxt
            self._length_radius += 1
        return cache[a]

    def _symmetric_generator_payloads(self) -> list[Payload]:
        out = []
        for p in self.named_generators().values():
            if p not in out:
                out.append(p)
            q = self.inverse_payload(p)
            if q not in out:
                out.append(q)
        return out

    # -- element helpers -----------------------------------------------------

    def identity(self) -> GroupElement:
        return GroupElement(self.group_id, self.identity_payload())

    def element(self, payload: Payload) -> GroupElement:
        return GroupElement(self.group_id, payload)


# ---------------------------------------------------------------------------
# catalog families
# ---------------------------------------------------------------------------

_FREE_LETTERS = "abcd"


class FreeGroup(Group):
    family = "free"
    description = "free group of rank k, reduced words"

    def __init__(self, group_id: str, rank: int):
        super().__init__(group_id)
        if not 1 <= rank <= 4:
            raise UnknownGroupError(f"free rank {rank} outside catalog (1..4)")
        self.rank = rank
        self.is_abelian = rank == 1

    def identity_payload(self):
        return ()

    def multiply_payloads(self, a, b):
        a = list(a)
        i = 0
        while a and i < len(b) and a[-1] == -b[i]:
            a.pop()
            i += 1
        return tuple(a) + tuple(b[i:])

    def inverse_payload(self, a):
        return tuple(-x for x in reversed(a))

    def sort_key(self, a):
        return (len(a), tuple((abs(x), x < 0) for x in a))

    def format_payload(self, a):
        if not a:
            return "e"
        parts = []
        i = 0
        while i < len(a):
            j = i
            while j < len(a) and a[j] == a[i]:
                j += 1
            name = _FREE_LETTERS[abs(a[i]) - 1]
            exp = (j - i) * (1 if a[i] > 0 else -1)
            parts.append(name if exp == 1 else f"{name}^{exp}")
            i = j
        return "*".join(parts)

    def named_generators(self):
        return {_FREE_LETTERS[i]: (i + 1,) for i in range(self.rank)}

    def word_length(self, a, max_elements: int = 200_000) -> int:
        return len(a)


class IntegerLattice(Group):
    family = "zd"
    is_abelian = True
    description = "Z^d under addition"

    def __init__(self, group_id: str, dim: int):
        super().__init__(group_id)
        if not 1 <= dim <= 4:
            raise UnknownGroupError(f"lattice dimension {dim} outside catalog (1..4)")
        self.dim = dim

    def identity_payload(self):
        return (0,) * self.dim

    def multiply_payloads(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse_payload(self, a):
        return tuple(-x for x in a)

    def sort_key(self, a):
        return (sum(abs(x) for x in a), a)

    def format_payload(self, a):
        parts = [f"e{i+1}" if x == 1 else f"e{i+1}^{x}" for i, x in enumerate(a) if x != 0]
        return "*".join(parts) if parts else "e"

    def named_generators(self):
        gens = {}
        for i in range(self.dim):
            v = [0] * self.dim
            v[i] = 1
            gens[f"e{i+1}"] = tuple(v)
        return gens

    def word_length(self, a, max_elements: int = 200_000) -> int:
        return sum(abs(x) for x in a)


class Heisenberg(Group):
    family = "heisenberg"
    description = "integer Heisenberg group H3(Z), triples (x, y, z)"

    def identity_payload(self):
        return (0, 0, 0)

    def multiply_payloads(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def inverse_payload(self, a):
        x, y, z = a
        return (-x, -y, x * y - z)

    def sort_key(self, a):
        return (abs(a[0]) + abs(a[1]) + abs(a[2]), a)

    def format_payload(self, a):
        x, y, z = a
        c = z - x * y  # (x,y,z) = X^x Y^y Z^(z-xy)
        parts = []
        for name, exp in (("x", x), ("y", y), ("z", c)):
            if exp:
                parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts) if parts else "e"

    def named_generators(self):
        return {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}

    def default_generator_names(self):
        return ["x", "y"]


class Lamplighter(Group):
    family = "lamplighter"
    description = "wreath product Z2 wr Z: (lit lamps, shift)"

    def identity_payload(self):
        return ((), 0)

    def multiply_payloads(self, a, b):
        lamps_a, k = a
        lamps_b, m = b
        lamps = set(lamps_a)
        for p in lamps_b:
            lamps.symmetric_difference_update({p + k})
        return (tuple(sorted(lamps)), k + m)

    def inverse_payload(self, a):
        lamps, k = a
        return (tuple(sorted(p - k for p in lamps)), -k)

    def sort_key(self, a):
        lamps, k = a
        return (len(lamps), abs(k), k, lamps)

    def format_payload(self, a):
        lamps, k = a
        parts = []
        pos = 0
        for p in lamps:
            if p != pos:
                parts.append(f"t^{p - pos}" if p - pos != 1 else "t")
            parts.append("a")
            pos = p
        if k != pos:
            parts.append(f"t^{k - pos}" if k - pos != 1 else "t")
        return "*".join(parts) if parts else "e"

    def named_generators(self):
        return {"t": ((), 1), "a": ((0,), 0)}


class BaumslagSolitar12(Group):
    family = "bs"
    description = "BS(1,2) as affine maps x -> 2^k x + num/2^m"

    def identity_payload(self):
        return (0, 0, 0)

    @staticmethod
    def _normalize(k: int, num: int, m: int):
        if num == 0:
            return (k, 0, 0)
        while m < 0:
            num *= 2
            m += 1
        while m > 0 and num % 2 == 0:
            num //= 2
            m -= 1
        return (k, num, m)

    def multiply_payloads(self, a, b):
        k1, n1, m1 = a
        k2, n2, m2 = b
        # q = 2^k1 * (n2 / 2^m2) + n1 / 2^m1 over the common denominator 2^M
        M = max(m2 - k1, m1, 0)
        num = n2 * 2 ** (M - (m2 - k1)) + n1 * 2 ** (M - m1)
        return self._normalize(k1 + k2, num, M)

    def inverse_payload(self, a):
        k, n, m = a
        return self._normalize(-k, -n, m + k)

    def sort_key(self, a):
        return (abs(a[0]) + abs(a[1]) + a[2], a)

    def format_payload(self, a):
        k, n, m = a
        parts = []
        if m:
            parts.append(f"t^{-m}")
        if n:
            parts.append("a" if n == 1 else f"a^{n}")
        if m + k:
            parts.append("t" if m + k == 1 else f"t^{m + k}")
        return "*".join(parts) if parts else "e"

    def named_generators(self):
        return {"a": (0, 1, 0), "t": (1, 0, 0)}

    def free_semigroup_pair(self):
        """The doubling maps x -> 2x and x -> 2x+1, which generate a free
        semigroup (the binary expansion of the affine offset recovers the word)."""
        return self.element((1, 0, 0)), self.element((1, 1, 0))


class SymmetricTower(Group):
    family = "symtower"
    description = "union of S_n: finite permutations, tower S2 < S3 < S4 < S5"

    tower_levels = (2, 3, 4, 5)

    def identity_payload(self):
        return ()

    @staticmethod
    def _trim(images: list[int]):
        n = len(images)
        while n > 0 and images[n - 1] == n - 1:
            n -= 1
        return tuple(images[:n])

    def multiply_payloads(self, a, b):
        n = max(len(a), len(b))
        ea = list(a) + list(range(len(a), n))
        eb = list(b) + list(range(len(b), n))
        return self._trim([ea[eb[i]] for i in range(n)])

    def inverse_payload(self, a):
        inv = [0] * len(a)
        for i, x in enumerate(a):
            inv[x] = i
        return self._trim(inv)

    def sort_key(self, a):
        return (len(a), a)

    def format_payload(self, a):
        if not a:
            return "e"
        # bubble-sort decomposition into adjacent transpositions s1..s(n-1)
        images = list(a)
        parts = []
        for end in range(len(images) - 1, 0, -1):
            for i in range(end):
                if images[i] > images[i + 1]:
                    images[i], images[i + 1] = images[i + 1], images[i]
                    parts.append(f"s{i+1}")
        parts.reverse()
        return "*".join(parts) if parts else "e"

    def named_generators(self):
        gens = {}
        top = self.tower_levels[-1]
        for i in range(1, top):
            images = list(range(i + 1))
            images[i - 1], images[i] = images[i], images[i - 1]
            gens[f"s{i}"] = self._trim(images)
        return gens

    def word_length(self, a, max_elements: int = 200_000) -> int:
        # inversion count = adjacent-transposition word length
        return sum(
            1
            for i in range(len(a))
            for j in range(i + 1, len(a))
            if a[i] > a[j]
        )

    def level(self, a: Payload) -> int:
        """Smallest tower index i with the element inside S_{levels[i-1]}."""
        deg = max(len(a), self.tower_levels[0])
        for i, n in enumerate(self.tower_levels):
            if deg <= n:
                return i + 1
        raise WordParseError(f"permutation degree {deg} beyond tower top")

    def subgroup_payloads(self, n: int) -> list[Payload]:
        """All elements of S_n, deterministic order."""
        import itertools

        out = [self._trim(list(p)) for p in itertools.permutations(range(n))]
        return sorted(out, key=self.sort_key)


class Z2DirectSum(Group):
    family = "z2sum"
    is_abelian = True
    description = "direct sum of countably many Z2 factors, bitmask payloads"

    named_bits = 16

    def identity_payload(self):
        return 0

    def multiply_payloads(self, a, b):
        return a ^ b

    def inverse_payload(self, a):
        return a

    def sort_key(self, a):
        return (a.bit_count(), a)

    def format_payload(self, a):
        parts = [f"g{i+1}" for i in range(a.bit_length()) if a >> i & 1]
        return "*".join(parts) if parts else "e"

    def named_generators(self):
        return {f"g{i+1}": 1 << i for i in range(self.named_bits)}

    def default_generator_names(self):
        return [f"g{i+1}" for i in range(6)]

    def word_length(self, a, max_elements: int = 200_000) -> int:
        return a.bit_count()

    def level(self, a: Payload) -> int:
        """Tower level: G_i = masks supported on the first i bits."""
        return max(a.bit_length(), 1)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

def _build_registry() -> dict[str, Group]:
    reg: dict[str, Group] = {}
    for k in range(1, 5):
        gid = f"free.F{k}"
        reg[gid] = FreeGroup(gid, k)
    for d in range(1, 5):
        gid = f"zd.Z{d}"
        reg[gid] = IntegerLattice(gid, d)
    reg["heisenberg.H3Z"] = Heisenberg("heisenberg.H3Z")
    reg["lamplighter.Z2wrZ"] = Lamplighter("lamplighter.Z2wrZ")
    reg["bs.BS12"] = BaumslagSolitar12("bs.BS12")
    reg["symtower.SN"] = SymmetricTower("symtower.SN")
    reg["z2sum.Z2oplus"] = Z2DirectSum("z2sum.Z2oplus")
    return reg


_REGISTRY = _build_registry()


def get_group(group_id: str) -> Group:
    try:
        return _REGISTRY[group_id]
    except KeyError:
        raise UnknownGroupError(
            f"unknown group {group_id!r}; see the catalog listing for valid ids"
        ) from None


def catalog_ids() -> list[str]:
    return list(_REGISTRY)


# ---------------------------------------------------------------------------
# element-level operations
# ---------------------------------------------------------------------------

def _require_same_group(a: GroupElement, b: GroupElement):
    if a.group_id != b.group_id:
        raise GroupMismatchError(f"elements of {a.group_id} and {b.group_id} cannot be combined")


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    _require_same_group(a, b)
    g = get_group(a.group_id)
    return GroupElement(a.group_id, g.multiply_payloads(a.payload, b.payload))


def inverse(a: GroupElement) -> GroupElement:
    g = get_group(a.group_id)
    return GroupElement(a.group_id, g.inverse_payload(a.payload))


def identity(group_id: str) -> GroupElement:
    return get_group(group_id).identity()


def power(a: GroupElement, n: int) -> GroupElement:
    g = get_group(a.group_id)
    if n < 0:
        return power(inverse(a), -n)
    acc = g.identity_payload()
    base = a.payload
    while n:
        if n & 1:
            acc = g.multiply_payloads(acc, base)
        base = g.multiply_payloads(base, base)
        n >>= 1
    return GroupElement(a.group_id, acc)


def sort_key(a: GroupElement):
    return get_group(a.group_id).sort_key(a.payload)


def format_element(a: GroupElement) -> str:
    return get_group(a.group_id).format_payload(a.payload)


def parse_element(group_id: str, word: str) -> GroupElement:
    """Parse a generator word like ``a*b^-1*a^2`` (or ``e``) into normal form."""
    g = get_group(group_id)
    word = word.strip()
    if word in ("", "e"):
        return g.identity()
    gens = g.named_generators()
    acc = g.identity()
    for tok in word.replace(" ", "").split("*"):
        if not tok:
            raise WordParseError(f"empty factor in word {word!r}")
        name, _, exp_s = tok.partition("^")
        if name not in gens:
            raise WordParseError(f"unknown generator {name!r} for group {group_id}")
        try:
            exp = int(exp_s) if exp_s else 1
        except ValueError:
            raise WordParseError(f"bad exponent in token {tok!r}") from None
        acc = multiply(acc, power(GroupElement(group_id, gens[name]), exp))
    return acc


def word_length(a: GroupElement, max_elements: int = 200_000) -> int:
    return get_group(a.group_id).word_length(a.payload, max_elements=max_elements)
