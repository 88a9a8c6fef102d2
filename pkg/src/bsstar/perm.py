"""Permutation algebra on vertex labels of the bubble-sort star graph.

Positions are 1-based everywhere in the public surface. A permutation is
stored as a tuple of its symbols, so ``Permutation((4, 1, 2, 5, 3))`` is the
label usually written ``(41253)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, ParseError, VertexRangeError

MIN_N = 3


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Permutation:
    """An arrangement of the symbols ``1..n``."""

    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        symbols = tuple(int(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        n = len(symbols)
        if n < MIN_N:
            raise DimensionError(f"permutations need n >= {MIN_N}, got n={n}")
        if sorted(symbols) != list(range(1, n + 1)):
            raise ParseError(f"{symbols} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse ``"45123"`` (n <= 9) or ``"1,2,...,10"``.

        Surrounding parentheses and whitespace are tolerated.
        """
        body = text.strip().strip("()").strip()
        if not body:
            raise ParseError("empty permutation string")
        try:
            if "," in body:
                symbols = tuple(int(tok) for tok in body.split(","))
            else:
                if not body.isdigit():
                    raise ValueError(body)
                symbols = tuple(int(ch) for ch in body)
        except ValueError as exc:
            raise ParseError(f"cannot parse permutation {text!r}") from exc
        if len(set(symbols)) != len(symbols):
            raise ParseError(f"duplicate symbols in {text!r}")
        return cls(symbols)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, pos: int) -> int:
        return self.symbols[pos]


@dataclass(frozen=True, order=True)
class Transposition:
    """An unordered swap of positions ``i < j`` (1-based)."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if not 1 <= self.i < self.j:
            raise VertexRangeError(f"transposition needs 1 <= i < j, got ({self.i},{self.j})")

    @classmethod
    def parse(cls, text: str) -> Transposition:
        body = text.strip().strip("()")
        try:
            a, b = (int(tok) for tok in body.split(","))
        except ValueError as exc:
            raise ParseError(f"cannot parse transposition {text!r}") from exc
        return cls(min(a, b), max(a, b))

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


def inversion_count(p: Permutation) -> int:
    s = p.symbols
    return sum(1 for a, b in itertools.combinations(range(len(s)), 2) if s[a] > s[b])


def parity(p: Permutation) -> Parity:
    return Parity.ODD if inversion_count(p) % 2 else Parity.EVEN


def apply_transposition(p: Permutation, t: Transposition) -> Permutation:
    if t.j > p.n:
        raise DimensionError(f"transposition {t} does not fit n={p.n}")
    s = list(p.symbols)
    s[t.i - 1], s[t.j - 1] = s[t.j - 1], s[t.i - 1]
    return Permutation(tuple(s))


def rotate(p: Permutation, k: int) -> Permutation:
    """Cyclic left shift by ``k`` positions, so ``rotate(p, 1)[0] == p[1]``."""
    if k < 0:
        raise VertexRangeError(f"rotation amount must be non-negative, got {k}")
    k %= p.n
    return Permutation(p.symbols[k:] + p.symbols[:k])


def rank(p: Permutation) -> int:
    """Lehmer rank; coincides with the lexicographic index among all n! labels."""
    s = p.symbols
    n = len(s)
    r = 0
    for a in range(n):
        smaller = sum(1 for b in range(a + 1, n) if s[b] < s[a])
        r += smaller * math.factorial(n - 1 - a)
    return r


def unrank(idx: int, n: int) -> Permutation:
    if n < MIN_N:
        raise DimensionError(f"n must be >= {MIN_N}, got {n}")
    if not 0 <= idx < math.factorial(n):
        raise VertexRangeError(f"rank {idx} outside 0..{math.factorial(n) - 1}")
    pool = list(range(1, n + 1))
    out = []
    for a in range(n - 1, -1, -1):
        digit, idx = divmod(idx, math.factorial(a))
        out.append(pool.pop(digit))
    return Permutation(tuple(out))


def generator_set(n: int) -> list[Transposition]:
    """Star swaps ``(1,j)`` plus adjacent swaps ``(i,i+1)``, sorted, 2n-3 of them."""
    if n < MIN_N:
        raise DimensionError(f"n must be >= {MIN_N}, got {n}")
    gens = {Transposition(1, j) for j in range(2, n + 1)}
    gens |= {Transposition(i, i + 1) for i in range(2, n)}
    return sorted(gens)


def _block_arrangements(seq: Sequence[int]) -> Iterator[tuple[int, ...]]:
    blocks = [tuple(seq[a:a + 2]) for a in range(0, len(seq), 2)]
    for order in itertools.permutations(blocks):
        yield tuple(itertools.chain.from_iterable(order))


def paired_permutation_set(u: Permutation) -> frozenset[Permutation]:
    """Vertices reachable from ``u`` by reordering its consecutive symbol pairs.

    Pairs move as rigid blocks and are never reversed. For odd ``n`` the set is
    the union of two families: pairs of ``u[0:n-1]`` with the last symbol
    pinned, and pairs of ``u`` minus its second symbol with that symbol pinned
    at position 2. Sizes are ``(n/2)!`` and ``2*((n-1)/2)! - 1``.
    """
    n = u.n
    if n < 4:
        raise DimensionError(f"paired permutation sets need n >= 4, got n={n}")
    s = u.symbols
    if n % 2 == 0:
        return frozenset(Permutation(p) for p in _block_arrangements(s))
    last_pinned = {p + (s[-1],) for p in _block_arrangements(s[:-1])}
    second_pinned = {
        (p[0], s[1]) + p[1:] for p in _block_arrangements((s[0],) + s[2:])
    }
    return frozenset(Permutation(p) for p in last_pinned | second_pinned)


# Index patterns (1-based) of the two five-vertex families used at n = 5.
_ROTATION_FAMILY = ((1, 2, 3, 4, 5), (2, 3, 4, 5, 1), (3, 4, 5, 1, 2), (4, 5, 1, 2, 3), (5, 1, 2, 3, 4))
_SHIFTED_FAMILY = ((1, 2, 4, 5, 3), (2, 3, 5, 1, 4), (3, 4, 1, 2, 5), (4, 5, 2, 3, 1), (5, 1, 3, 4, 2))


def o1_o2_sets(u: Permutation) -> tuple[frozenset[Permutation], frozenset[Permutation]]:
    """The rotation family and its companion family of a 5-symbol label."""
    if u.n != 5:
        raise DimensionError(f"the n=5 families need n=5, got n={u.n}")

    def realize(patterns: Iterable[tuple[int, ...]]) -> frozenset[Permutation]:
        return frozenset(Permutation(tuple(u[i - 1] for i in pat)) for pat in patterns)

    return realize(_ROTATION_FAMILY), realize(_SHIFTED_FAMILY)


def all_permutations(n: int) -> Iterator[Permutation]:
    """Every label of size ``n`` in rank order."""
    for s in itertools.permutations(range(1, n + 1)):
        yield Permutation(s)
