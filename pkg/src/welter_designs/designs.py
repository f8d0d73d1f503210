"""t-designs and Steiner systems on the point set [v], blocks stored as sorted masks."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

from .core import (
    Permutation,
    check_ground,
    elements,
    fmt_subset,
    iter_k_subsets,
    mask_of,
    popcount,
    subset_image,
)


class DesignError(ValueError):
    pass


@dataclass(frozen=True)
class Design:
    v: int
    k: int
    t: int
    lam: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        check_ground(self.v)
        if not 0 <= self.t <= self.k <= self.v:
            raise DesignError(f"need 0 <= t <= k <= v, got t={self.t} k={self.k} v={self.v}")
        if self.lam < 1:
            raise DesignError("lambda must be positive")
        full = (1 << self.v) - 1
        prev = -1
        for b in self.blocks:
            if b & ~full:
                raise DesignError(f"block {fmt_subset(b)} has points outside [{self.v}]")
            if popcount(b) != self.k:
                raise DesignError(f"block {fmt_subset(b)} does not have {self.k} points")
            if b <= prev:
                raise DesignError("blocks must be strictly sorted with no duplicates")
            prev = b

    @classmethod
    def from_blocks(cls, v: int, k: int, t: int, lam: int, blocks: Iterable[int]) -> Design:
        bs = sorted(set(blocks))
        return cls(v, k, t, lam, tuple(bs))

    @property
    def block_set(self) -> frozenset[int]:
        return frozenset(self.blocks)

    @property
    def is_steiner(self) -> bool:
        return self.lam == 1

    def params(self) -> str:
        if self.lam == 1:
            return f"S({self.t},{self.k},{self.v})"
        return f"{self.t}-({self.v},{self.k},{self.lam})"

    def __str__(self) -> str:
        return f"{self.params()} with {len(self.blocks)} blocks"


@dataclass(frozen=True)
class DesignReport:
    ok: bool
    witness: int | None = None
    count: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def lambda_i(D: Design, i: int) -> int:
    """Number of blocks through any fixed i points."""
    if not 0 <= i <= D.t:
        raise ValueError(f"need 0 <= i <= t, got i={i}, t={D.t}")
    num = comb(D.v - i, D.t - i) * D.lam
    den = comb(D.k - i, D.t - i)
    if num % den:
        raise DesignError(f"lambda_{i} = {num}/{den} is not integral for {D.params()}")
    return num // den


def is_design(D: Design) -> DesignReport:
    """Check that every t-subset of [v] lies in exactly ``lam`` blocks."""
    counts: Counter[int] = Counter()
    for b in D.blocks:
        for T in combinations(elements(b), D.t):
            counts[mask_of(T)] += 1
    for T in iter_k_subsets(D.v, D.t):
        c = counts.get(T, 0)
        if c != D.lam:
            return DesignReport(False, T, c, f"{fmt_subset(T)} lies in {c} blocks, expected {D.lam}")
    try:
        n0 = lambda_i(D, 0)
    except DesignError as e:
        return DesignReport(False, reason=str(e))
    if n0 != len(D.blocks):
        return DesignReport(False, reason=f"{len(D.blocks)} blocks, expected {n0}")
    return DesignReport(True)


def validated(D: Design) -> Design:
    rep = is_design(D)
    if not rep:
        raise DesignError(f"not a {D.params()}: {rep.reason}")
    return D


def make_matching_design(w: int) -> Design:
    """The S(1, 2, 2w) with blocks {0,1}, {2,3}, ..., {2w-2, 2w-1}."""
    if w < 1:
        raise ValueError("need w >= 1")
    blocks = [mask_of((2 * i, 2 * i + 1)) for i in range(w)]
    return validated(Design.from_blocks(2 * w, 2, 1, 1, blocks))


def make_projective_sts(d: int) -> Design:
    """Points and lines of PG(d, 2); point j is the vector whose binary value is j + 1."""
    if d < 1:
        raise ValueError("need d >= 1")
    v = 2 ** (d + 1) - 1
    blocks = set()
    for p in range(1, v + 1):
        for q in range(p + 1, v + 1):
            blocks.add(mask_of((p - 1, q - 1, (p ^ q) - 1)))
    return validated(Design.from_blocks(v, 3, 2, 1, blocks))


def make_affine_sts(d: int) -> Design:
    """Lines of AG(d, 3); point j is the vector of base-3 digits of j."""
    if d < 1:
        raise ValueError("need d >= 1")
    v = 3 ** d

    def digits(j):
        return [(j // 3 ** i) % 3 for i in range(d)]

    def number(ds):
        return sum(x * 3 ** i for i, x in enumerate(ds))

    blocks = set()
    for p in range(v):
        for q in range(p + 1, v):
            r = number([(-a - b) % 3 for a, b in zip(digits(p), digits(q))])
            blocks.add(mask_of((p, q, r)))
    return validated(Design.from_blocks(v, 3, 2, 1, blocks))


def _orbit_closure(seed: int, gens: Sequence[Sequence[int]]) -> set[int]:
    seen = {seed}
    queue = deque([seed])
    while queue:
        b = queue.popleft()
        for g in gens:
            c = subset_image(b, g)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return seen


def shuffle_generators() -> tuple[tuple[int, ...], tuple[int, ...]]:
    """i -> 11 - i and the Mongean shuffle i -> min(2i, 23 - 2i) on [12]."""
    rev = tuple(11 - i for i in range(12))
    mongean = tuple(min(2 * i, 23 - 2 * i) for i in range(12))
    return rev, mongean


def make_shuffle_s5612() -> Design:
    """S(5, 6, 12) in the shuffle numbering: orbit of {0,1,2,3,4,11} under the shuffle group."""
    blocks = _orbit_closure(mask_of((0, 1, 2, 3, 4, 11)), shuffle_generators())
    if len(blocks) != 132:
        raise DesignError(f"shuffle orbit has {len(blocks)} blocks, expected 132")
    return validated(Design.from_blocks(12, 6, 5, 1, blocks))


def make_cyclic_design(v: int, base_blocks: Iterable[Iterable[int] | int], k: int, t: int,
                       lam: int = 1) -> Design:
    """Develop base blocks mod v. Short orbits collapse; the result is not validated."""
    seen: dict[int, int] = {}
    for idx, base in enumerate(base_blocks):
        bm = base if isinstance(base, int) else mask_of(base)
        pts = elements(bm)
        if len(pts) != k or (pts and pts[-1] >= v):
            raise DesignError(f"base block {fmt_subset(bm)} is not a {k}-subset of [{v}]")
        for j in range(v):
            c = mask_of((p + j) % v for p in pts)
            owner = seen.setdefault(c, idx)
            if owner != idx:
                raise DesignError(f"block {fmt_subset(c)} arises from base blocks {owner} and {idx}")
    return Design.from_blocks(v, k, t, lam, seen)


def derived_design(D: Design, x: int) -> Design:
    """Blocks through x with x removed, relabelled order-preservingly onto [v-1]."""
    if not 0 <= x < D.v:
        raise DesignError(f"point {x} outside [{D.v}]")
    if D.t < 1:
        raise DesignError("derived design needs t >= 1")
    low = (1 << x) - 1
    blocks = []
    for b in D.blocks:
        if b >> x & 1:
            rest = b & ~(1 << x)
            blocks.append((rest & low) | ((rest >> (x + 1)) << x))
    return Design.from_blocks(D.v - 1, D.k - 1, D.t - 1, D.lam, blocks)


def apply_permutation(D: Design, pi: Permutation | Sequence[int]) -> Design:
    img = pi.image if isinstance(pi, Permutation) else tuple(pi)
    if len(img) != D.v:
        raise ValueError("permutation size does not match the design")
    return Design.from_blocks(D.v, D.k, D.t, D.lam, (subset_image(b, img) for b in D.blocks))


def _require_sts(D: Design) -> None:
    if (D.t, D.k, D.lam) != (2, 3, 1):
        raise DesignError(f"expected a Steiner triple system, got {D.params()}")


def third_point_table(D: Design) -> list[list[int]]:
    """third[a][b] = the point completing the block through a and b (STS only)."""
    _require_sts(D)
    third = [[-1] * D.v for _ in range(D.v)]
    for b in D.blocks:
        x, y, z = elements(b)
        third[x][y] = third[y][x] = z
        third[x][z] = third[z][x] = y
        third[y][z] = third[z][y] = x
    return third


def vy_violation(D: Design) -> tuple[int, int, int] | None:
    """Blocks {a,b,c}, {a,d,e}, {b,d,f} with {c,e,f} not a block, or None if none exist."""
    _require_sts(D)
    third = third_point_table(D)
    bset = D.block_set
    for B in D.blocks:
        pts = elements(B)
        for a in pts:
            for b in pts:
                if b == a:
                    continue
                c = third[a][b]
                for d in range(D.v):
                    if d in pts:
                        continue
                    e = third[a][d]
                    f = third[b][d]
                    if mask_of((c, e, f)) not in bset:
                        return B, mask_of((a, d, e)), mask_of((b, d, f))
    return None


def is_projective_vy(D: Design) -> bool:
    """Quadrilateral closure test for projectivity of a Steiner triple system."""
    return vy_violation(D) is None


# --- text format -----------------------------------------------------------

def format_design(D: Design) -> str:
    lines = [f"v={D.v} k={D.k} t={D.t} lambda={D.lam}"]
    lines += [" ".join(map(str, elements(b))) for b in D.blocks]
    return "\n".join(lines) + "\n"


def parse_design(text: str) -> Design:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise DesignError("empty design file")
    header = {}
    for tok in lines[0].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise DesignError(f"bad header token {tok!r}")
        try:
            header[key] = int(val)
        except ValueError:
            raise DesignError(f"bad header value {tok!r}") from None
    missing = {"v", "k", "t", "lambda"} - header.keys()
    if missing:
        raise DesignError(f"header missing {sorted(missing)}")
    v, k = header["v"], header["k"]
    blocks = []
    seen = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            pts = [int(x) for x in ln.split()]
        except ValueError:
            raise DesignError(f"line {lineno}: non-integer label") from None
        if len(pts) != k:
            raise DesignError(f"line {lineno}: block has {len(pts)} points, expected {k}")
        if any(p < 0 or p >= v for p in pts):
            raise DesignError(f"line {lineno}: label outside [{v}]")
        if any(p >= q for p, q in zip(pts, pts[1:])):
            raise DesignError(f"line {lineno}: labels not strictly ascending")
        m = mask_of(pts)
        if m in seen:
            raise DesignError(f"line {lineno}: duplicate block")
        seen.add(m)
        blocks.append(m)
    return Design.from_blocks(v, k, header["t"], header["lambda"], blocks)


def read_design(path: str | Path) -> Design:
    return parse_design(Path(path).read_text(encoding="utf-8"))


def write_design(D: Design, path: str | Path) -> None:
    Path(path).write_text(format_design(D), encoding="utf-8", newline="\n")
