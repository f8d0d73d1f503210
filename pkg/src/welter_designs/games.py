"""Game graphs and their outcomes.

Welter's game Wel(v, k) has the k-subsets of [v] as positions; a move replaces
some p in P by a smaller q not in P.  Every move lowers the element sum, so
sorting positions by sum gives a topological order for free.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Iterable

from .core import check_ground, iter_k_subsets, popcount, subset_sum
from .designs import Design


class Outcome(enum.Enum):
    P = "P"
    N = "N"

    def __str__(self) -> str:
        return self.value


class GameError(ValueError):
    pass


class GameGraph:
    """Common interface: position membership and neighbor queries."""

    def positions(self) -> Iterable:
        raise NotImplementedError

    def __contains__(self, P) -> bool:
        raise NotImplementedError

    def out_neighbors(self, P) -> set:
        raise NotImplementedError

    def in_neighbors(self, P) -> set:
        raise NotImplementedError

    def _check(self, P) -> None:
        if P not in self:
            raise GameError(f"{P!r} is not a position of {self}")


@dataclass(frozen=True)
class ExplicitGame(GameGraph):
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vs = set(self.vertices)
        out = {x: set() for x in self.vertices}
        inn = {x: set() for x in self.vertices}
        for a, b in self.edges:
            if a not in vs or b not in vs:
                raise GameError(f"edge ({a!r}, {b!r}) leaves the vertex set")
            out[a].add(b)
            inn[b].add(a)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inn)

    @classmethod
    def of(cls, vertices: Iterable[Hashable], edges: Iterable[tuple]) -> ExplicitGame:
        return cls(tuple(vertices), tuple(tuple(e) for e in edges))

    def positions(self):
        return self.vertices

    def __contains__(self, P) -> bool:
        return P in self._out

    def out_neighbors(self, P) -> set:
        self._check(P)
        return set(self._out[P])

    def in_neighbors(self, P) -> set:
        self._check(P)
        return set(self._in[P])


@dataclass(frozen=True)
class Welter(GameGraph):
    v: int
    k: int

    def __post_init__(self):
        check_ground(self.v)
        if not 0 <= self.k <= self.v:
            raise GameError(f"need 0 <= k <= v, got k={self.k}, v={self.v}")

    def positions(self):
        return iter_k_subsets(self.v, self.k)

    def __contains__(self, P) -> bool:
        return isinstance(P, int) and 0 <= P < (1 << self.v) and popcount(P) == self.k

    def out_neighbors(self, P: int) -> set[int]:
        self._check(P)
        return set(welter_moves(P))

    def in_neighbors(self, P: int) -> set[int]:
        self._check(P)
        return set(welter_unmoves(P, self.v))

    def __str__(self) -> str:
        return f"Wel({self.v},{self.k})"


def welter_moves(P: int):
    """Options of P in Welter's game: replace p in P by a smaller q not in P."""
    rest = P
    while rest:
        pbit = rest & -rest
        rest ^= pbit
        q = 1
        while q < pbit:
            if not P & q:
                yield P ^ pbit ^ q
            q <<= 1


def welter_unmoves(P: int, v: int):
    """Positions having P as an option: replace p in P by a larger q < v not in P."""
    rest = P
    top = 1 << v
    while rest:
        pbit = rest & -rest
        rest ^= pbit
        q = pbit << 1
        while q < top:
            if not P & q:
                yield P ^ pbit ^ q
            q <<= 1


@dataclass(frozen=True)
class WelterM(GameGraph):
    """Edges are walks of length 1..m in Welter's game."""

    v: int
    k: int
    m: int

    def __post_init__(self):
        check_ground(self.v)
        if self.m < 1:
            raise GameError("need m >= 1")

    def positions(self):
        return iter_k_subsets(self.v, self.k)

    def __contains__(self, P) -> bool:
        return isinstance(P, int) and 0 <= P < (1 << self.v) and popcount(P) == self.k

    def _reach(self, P: int, step) -> set[int]:
        frontier = {P}
        seen: set[int] = set()
        for _ in range(self.m):
            nxt = set()
            for x in frontier:
                nxt.update(step(x))
            nxt -= seen
            seen |= nxt
            frontier = nxt
        seen.discard(P)
        return seen

    def out_neighbors(self, P: int) -> set[int]:
        self._check(P)
        return self._reach(P, welter_moves)

    def in_neighbors(self, P: int) -> set[int]:
        self._check(P)
        return self._reach(P, lambda x: welter_unmoves(x, self.v))

    def __str__(self) -> str:
        return f"Wel^{self.m}({self.v},{self.k})"


@dataclass(frozen=True)
class Induced(GameGraph):
    base: GameGraph
    kept: frozenset = field(repr=False)

    def positions(self):
        return self.kept

    def __contains__(self, P) -> bool:
        return P in self.kept

    def out_neighbors(self, P) -> set:
        self._check(P)
        return {Q for Q in self.base.out_neighbors(P) if Q in self.kept}

    def in_neighbors(self, P) -> set:
        self._check(P)
        return {R for R in self.base.in_neighbors(P) if R in self.kept}

    def __str__(self) -> str:
        return f"{self.base}|{len(self.kept)}"


def induced(g: GameGraph, positions: Iterable) -> Induced:
    kept = frozenset(positions)
    for P in kept:
        if P not in g:
            raise GameError(f"{P!r} is not a position of {g}")
    return Induced(g, kept)


def _welter_based(g: GameGraph) -> bool:
    while isinstance(g, Induced):
        g = g.base
    return isinstance(g, (Welter, WelterM))


def validate_game(g: ExplicitGame) -> tuple | None:
    """None if g is acyclic, otherwise a directed cycle (first vertex repeated at the end)."""
    ts = TopologicalSorter({x: g._out[x] for x in g.vertices})
    try:
        ts.prepare()
    except CycleError as e:
        cyc = list(e.args[1])
        # graphlib lists the cycle against edge direction; reverse it into a walk
        return tuple(reversed(cyc))
    return None


def _topological(g: GameGraph) -> list:
    """Positions ordered so that every option precedes the positions moving to it."""
    if _welter_based(g):
        return sorted(g.positions(), key=lambda P: (subset_sum(P), P))
    if isinstance(g, Induced):
        order = _topological(g.base)
        return [P for P in order if P in g.kept]
    if isinstance(g, ExplicitGame):
        cyc = validate_game(g)
        if cyc is not None:
            raise GameError(f"not a game: cycle {cyc}")
        return list(TopologicalSorter({x: g._out[x] for x in g.vertices}).static_order())
    raise GameError(f"no evaluation order for {type(g).__name__}")


def outcomes(g: GameGraph) -> dict:
    """Outcome of every position under normal play."""
    table = {}
    for P in _topological(g):
        table[P] = Outcome.N if any(table[Q] is Outcome.P for Q in g.out_neighbors(P)) else Outcome.P
    return table


def winning_set(g: GameGraph) -> set:
    return {P for P, o in outcomes(g).items() if o is Outcome.P}


def is_independent(g: GameGraph, B: Iterable) -> bool:
    """True iff no move of g joins two members of B."""
    bs = set(B)
    return not any(Q in bs for P in bs for Q in g.out_neighbors(P))


def b_position(g: GameGraph, B: Iterable) -> set:
    """B together with every position that has a member of B as an option."""
    bs = set(B)
    out = set(bs)
    for b in bs:
        out |= g.in_neighbors(b)
    return out


def phi_membership(g: GameGraph, B: Iterable, Q: Iterable) -> bool:
    """True iff the game induced on Q has P-position set exactly B."""
    bs = set(B)
    if not is_independent(g, bs):
        raise GameError("B is not independent")
    qs = set(Q)
    if not bs <= qs:
        return False
    return winning_set(induced(g, qs)) == bs


def game_for_design(D: Design) -> Induced:
    """Welter's game restricted to the blocks and their in-neighbors."""
    g = Welter(D.v, D.k)
    if not is_independent(g, D.blocks):
        raise GameError(f"blocks of {D.params()} are not independent in {g}")
    return induced(g, b_position(g, D.blocks))


def hexad_positions() -> frozenset[int]:
    return frozenset(P for P in iter_k_subsets(12, 6) if subset_sum(P) >= 21)


def hexad_game() -> Induced:
    return Induced(Welter(12, 6), hexad_positions())
