"""Transpositions, minimal factorizations of the n-cycle, and their statistics.

Labels are 1-based everywhere.  A factorization (t_1, ..., t_{n-1}) is
applied with t_1 first; it is minimal when the composed product maps every
k to k+1 (mod n).  The exhaustive generator below is the direct brute-force
oracle the rest of the library is checked against.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from minfact.errors import CapExceededError, DomainError, ParseError, ValidationError

ENUM_FACTORIZATION_CAP = 6


@dataclass(frozen=True, order=True)
class Transposition:
    """Unordered pair stored normalized with a < b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if a == b:
            raise ValidationError(f"transposition needs two distinct points, got ({a} {b})")
        if a < 1 or b < 1:
            raise ValidationError(f"labels must be >= 1, got ({a} {b})")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    def apply(self, point: int) -> int:
        if point == self.a:
            return self.b
        if point == self.b:
            return self.a
        return point

    def __str__(self) -> str:
        return f"({self.a} {self.b})"


@dataclass(frozen=True)
class Factorization:
    """An (n-1)-tuple of transpositions over {1..n}, applied left to right."""

    n: int
    taus: tuple[Transposition, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValidationError(f"cycle size must be >= 2, got {self.n}")
        if len(self.taus) != self.n - 1:
            raise ValidationError(
                f"expected {self.n - 1} transpositions for n={self.n}, got {len(self.taus)}"
            )
        for tau in self.taus:
            if tau.b > self.n:
                raise ValidationError(f"label {tau.b} outside 1..{self.n} in {tau}")

    def __str__(self) -> str:
        return "".join(str(tau) for tau in self.taus)

    def permutation(self) -> list[int]:
        """Image of each point under the full left-to-right product.

        Entry k-1 is the image of k under t_{n-1} o ... o t_1.
        """
        image = list(range(1, self.n + 1))
        for tau in self.taus:
            image = [tau.apply(p) for p in image]
        return image


def is_minimal(f: Factorization) -> bool:
    """True iff the product realizes the cycle k -> k+1 (mod n, 1-based)."""
    image = f.permutation()
    return all(image[k - 1] == k % f.n + 1 for k in range(1, f.n + 1))


def _check_point(f: Factorization, k: int) -> None:
    if not 1 <= k <= f.n:
        raise ValidationError(f"point {k} outside 1..{f.n}")


def stat_T(f: Factorization, k: int) -> int:
    """Number of transpositions of f containing the point k."""
    _check_point(f, k)
    return sum(1 for tau in f.taus if k in (tau.a, tau.b))


def stat_M(f: Factorization, k: int) -> int:
    """Number of steps at which the trajectory of k actually moves."""
    _check_point(f, k)
    moves = 0
    x = k
    for tau in f.taus:
        nxt = tau.apply(x)
        if nxt != x:
            moves += 1
            x = nxt
    return moves


def gamma(n: int, k: int) -> int:
    """Representative of 3 - k (mod n) in {1..n}; an involution."""
    if not 1 <= k <= n:
        raise ValidationError(f"point {k} outside 1..{n}")
    return (3 - k) % n or n


def phi(f: Factorization) -> Factorization:
    """Involution exchanging the multiplicities of 1 and 2.

    The l-th output transposition is the (n-l)-th input transposition
    conjugated by gamma.  Swaps stat_T at 1 and 2, preserves stat_M at 1.
    """
    if not is_minimal(f):
        raise DomainError("phi is only defined on minimal factorizations")
    n = f.n
    taus = tuple(
        Transposition(gamma(n, tau.a), gamma(n, tau.b)) for tau in reversed(f.taus)
    )
    return Factorization(n, taus)


def enumerate_factorizations(n: int) -> Iterator[Factorization]:
    """All minimal factorizations of the n-cycle, in lex order of the
    normalized transposition sequences.

    Depth-first search over transposition sequences; a prefix is pruned as
    soon as its transpositions close a cycle as graph edges, since the edge
    multiset of any minimal factorization forms a tree.  Correctness only
    requires the final is_minimal check.
    """
    if not 2 <= n <= ENUM_FACTORIZATION_CAP:
        raise CapExceededError(
            f"factorization enumeration is capped at 2 <= n <= {ENUM_FACTORIZATION_CAP} "
            f"(search space grows like C(n,2)^(n-1)); got n={n}"
        )
    all_taus = [
        Transposition(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
    ]
    parent = list(range(n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    prefix: list[Transposition] = []

    def search() -> Iterator[Factorization]:
        if len(prefix) == n - 1:
            f = Factorization(n, tuple(prefix))
            if is_minimal(f):
                yield f
            return
        for tau in all_taus:
            ra, rb = find(tau.a), find(tau.b)
            if ra == rb:
                continue  # would close a cycle: cannot extend to a tree
            parent[ra] = rb
            prefix.append(tau)
            yield from search()
            prefix.pop()
            parent[ra] = ra

    yield from search()


_PAIR_RE = re.compile(r"\(\s*(\d+)\s+(\d+)\s*\)")


def parse_factorization(text: str, n: int | None = None) -> Factorization:
    """Parse the text form ``(a b)(c d)...`` (tau_1 leftmost).

    Whitespace-insensitive.  If n is omitted it is inferred as one more
    than the number of pairs.
    """
    stripped = re.sub(r"\s+", "", text)
    pairs = _PAIR_RE.findall(text)
    # Reject garbage between/around pairs.
    consumed = "".join(f"({a} {b})" for a, b in pairs)
    canonical = re.sub(r"\s+", "", consumed)
    if canonical != stripped:
        raise ParseError(f"cannot parse factorization text: {text!r}")
    if not pairs:
        raise ParseError("empty factorization text")
    size = n if n is not None else len(pairs) + 1
    if len(pairs) != size - 1:
        raise ParseError(
            f"expected {size - 1} transpositions for n={size}, got {len(pairs)}"
        )
    try:
        taus = tuple(Transposition(int(a), int(b)) for a, b in pairs)
        return Factorization(size, taus)
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
