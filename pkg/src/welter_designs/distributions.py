"""Game distributions over the Sym([v])-orbit of a design.

Every orbit member D' is scored by its out-block vector ``a(D')``: ``a[i]`` counts
non-blocks with exactly ``i`` blocks among their Welter options.  The number of
positions of the induced game is ``lambda_0 + sum(a[1:])`` and the component
index is ``alpha = a[0] + a[k]``.
"""

from __future__ import annotations

import json
import math
import secrets
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Literal

import numpy as np

from .core import Permutation, elements, iter_k_subsets, mask_of
from .designs import Design, DesignError, _require_sts, lambda_i
from .games import Welter, b_position, welter_moves, welter_unmoves

DEFAULT_CAP = 10**7


class OrbitCapExceeded(RuntimeError):
    def __init__(self, estimate: int, cap: int, exact: bool):
        self.estimate = estimate
        self.cap = cap
        self.exact = exact
        rel = "=" if exact else ">"
        super().__init__(
            f"orbit size {rel} {estimate:.3g} exceeds the cap of {cap:.3g} designs; "
            "use sampling mode or raise the cap"
        )


# --- out-block vectors -------------------------------------------------------

def a_counts(D: Design) -> tuple[int, ...]:
    """Out-block vector by direct scan of every non-block position."""
    bset = D.block_set
    hist: Counter[int] = Counter()
    for P in iter_k_subsets(D.v, D.k):
        if P in bset:
            continue
        hist[sum(1 for Q in welter_moves(P) if Q in bset)] += 1
    size = max(D.k + 1, max(hist, default=0) + 1)
    return tuple(hist.get(i, 0) for i in range(size))


class Evaluator:
    """Vectorised out-block vectors for block sets of a fixed (v, k)."""

    def __init__(self, v: int, k: int):
        self.v, self.k = v, k
        self.positions = np.fromiter(iter_k_subsets(v, k), dtype=np.int64)
        n = len(self.positions)
        self.n_all = n
        self._rank = {int(P): i for i, P in enumerate(self.positions)}
        if v <= 24:
            self._dense = np.full(1 << v, -1, dtype=np.int64)
            self._dense[self.positions] = np.arange(n)
        else:
            self._dense = None
        width = max(k * (v - k), 1)
        innb = np.full((n, width), n, dtype=np.int64)
        for i, P in enumerate(self.positions):
            row = [self._rank[R] for R in welter_unmoves(int(P), v)]
            innb[i, : len(row)] = row
        self._innb = innb

    def ranks(self, blocks) -> np.ndarray:
        arr = np.asarray(blocks, dtype=np.int64)
        if self._dense is not None:
            return self._dense[arr]
        return np.array([self._rank[int(b)] for b in arr], dtype=np.int64)

    def avector(self, blocks) -> tuple[int, ...]:
        idx = self.ranks(blocks)
        counts = np.bincount(self._innb[idx].ravel(), minlength=self.n_all + 1)[: self.n_all]
        nonblock = np.ones(self.n_all, dtype=bool)
        nonblock[idx] = False
        hist = np.bincount(counts[nonblock], minlength=self.k + 1)
        return tuple(int(x) for x in hist)


@lru_cache(maxsize=8)
def evaluator(v: int, k: int) -> Evaluator:
    return Evaluator(v, k)


def positions_from_avector(a: tuple[int, ...], n_blocks: int) -> int:
    return n_blocks + sum(a[1:])


def alpha_from_avector(a: tuple[int, ...], k: int) -> int:
    return a[0] + (a[k] if k < len(a) else 0)


def n_positions(D: Design) -> int:
    """Number of positions of the game built from D."""
    return positions_from_avector(evaluator(D.v, D.k).avector(D.blocks), len(D.blocks))


# --- in-neighbor intersections for triple systems -------------------------

def intersection_I_brute(B: int, C: int, v: int) -> int:
    return len(set(welter_unmoves(B, v)) & set(welter_unmoves(C, v)))


def intersection_I_closed(B: int, C: int) -> int:
    """Common in-neighbors of two 3-sets meeting in exactly one point."""
    x = B & C
    if bin(x).count("1") != 1:
        raise ValueError("closed form needs 3-sets sharing exactly one point")
    b, b2 = elements(B & ~x)
    c, c2 = elements(C & ~x)
    if c < b:
        b, b2, c, c2 = c, c2, b, b2
    return int(c < b2) + int(c2 < b2)


def intersection_I(B: int, C: int, v: int) -> int:
    if B == C:
        raise ValueError("B and C must differ")
    shared = bin(B & C).count("1")
    if bin(B).count("1") == 3 and bin(C).count("1") == 3:
        if shared == 0:
            return 0
        if shared == 1:
            return intersection_I_closed(B, C)
    return intersection_I_brute(B, C, v)


def sts_pair_sum(D: Design) -> int:
    """Sum of I(B, C) over unordered block pairs, via pairs meeting in one point."""
    _require_sts(D)
    through = [[] for _ in range(D.v)]
    for b in D.blocks:
        for p in elements(b):
            through[p].append(b)
    total = 0
    for bs in through:
        for B, C in combinations(bs, 2):
            total += intersection_I_closed(B, C)
    return total


def a0_plus_a3_fast(D: Design) -> int:
    v = D.v
    return sts_pair_sum(D) - v * (v - 1) * (v - 3) // 12


def projective_alpha(v: int) -> int:
    return v * (v - 1) * (v - 3) // 24


# --- orbit enumeration -------------------------------------------------------

def _order_points(D: Design) -> list[int]:
    order: list[int] = []
    seen = set()
    for b in D.blocks:
        for p in elements(b):
            if p not in seen:
                seen.add(p)
                order.append(p)
    order += [p for p in range(D.v) if p not in seen]
    return order


def count_automorphisms(D: Design, limit: int | None = None) -> int:
    """|Aut(D)| by backtracking over point images; stops early once ``limit`` is reached."""
    v, t = D.v, D.t
    bset = D.block_set
    order = _order_points(D)
    pos = {p: i for i, p in enumerate(order)}
    steiner = D.lam == 1 and t >= 1
    t_block = {}
    if steiner:
        for b in D.blocks:
            for T in combinations(elements(b), t):
                t_block[mask_of(T)] = b
    # per depth: blocks that constrain the new point, and blocks it completes
    constrain: list[list[tuple[int, ...]]] = []
    complete: list[list[tuple[int, ...]]] = []
    for depth, p in enumerate(order):
        cons, comp = [], []
        for b in D.blocks:
            if not b >> p & 1:
                continue
            pts = elements(b)
            earlier = [x for x in pts if pos[x] < depth]
            if steiner and len(earlier) >= t:
                cons.append(tuple(earlier[:t]))
            if len(earlier) == len(pts) - 1:
                comp.append(pts)
        constrain.append(cons)
        complete.append(comp)

    full = (1 << v) - 1
    img = [-1] * v
    count = 0

    def rec(depth: int, used: int) -> bool:
        nonlocal count
        if depth == v:
            count += 1
            return limit is not None and count >= limit
        p = order[depth]
        cand = full & ~used
        for T in constrain[depth]:
            blk = t_block.get(mask_of(img[x] for x in T))
            if blk is None:
                return False
            cand &= blk
        while cand:
            qbit = cand & -cand
            cand ^= qbit
            img[p] = qbit.bit_length() - 1
            if all(mask_of(img[x] for x in pts) in bset for pts in complete[depth]):
                if rec(depth + 1, used | qbit):
                    return True
            img[p] = -1
        return False

    rec(0, 0)
    return count


def orbit_size_estimate(D: Design, cap: int = DEFAULT_CAP) -> tuple[int, bool]:
    """(estimate, exact).  Exact when |Aut| was counted fully; otherwise the orbit fits the cap."""
    vf = math.factorial(D.v)
    if vf <= cap:
        return vf // count_automorphisms(D), True
    limit = -(-vf // cap)
    aut = count_automorphisms(D, limit=limit)
    if aut >= limit:
        return vf // aut, False
    return vf // aut, True


def _swap_bits(arr: np.ndarray, i: int) -> np.ndarray:
    d = ((arr >> i) ^ (arr >> (i + 1))) & 1
    out = arr ^ ((d << i) | (d << (i + 1)))
    out.sort()
    return out


@dataclass(frozen=True)
class OrbitMember:
    perm: Permutation
    blocks: tuple[int, ...]

    def design(self, D: Design) -> Design:
        return Design(D.v, D.k, D.t, D.lam, self.blocks)


def _orbit_arrays(D: Design, cap: int) -> Iterator[tuple[tuple[int, ...], np.ndarray]]:
    start = np.array(D.blocks, dtype=np.int64)
    seen = {start.tobytes()}
    queue = deque([(tuple(range(D.v)), start)])
    while queue:
        perm, arr = queue.popleft()
        yield perm, arr
        for i in range(D.v - 1):
            child = _swap_bits(arr, i)
            key = child.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > cap:
                raise OrbitCapExceeded(len(seen), cap, exact=False)
            cperm = list(perm)
            for j, x in enumerate(cperm):
                if x == i:
                    cperm[j] = i + 1
                elif x == i + 1:
                    cperm[j] = i
            queue.append((tuple(cperm), child))


def orbit_members(D: Design, cap: int = DEFAULT_CAP, check_cap: bool = True) -> Iterator[OrbitMember]:
    """Each distinct relabelling D^pi once, in BFS order under adjacent transpositions."""
    if check_cap:
        est, exact = orbit_size_estimate(D, cap)
        if est > cap:
            raise OrbitCapExceeded(est, cap, exact)
    for perm, arr in _orbit_arrays(D, cap):
        yield OrbitMember(Permutation(perm), tuple(int(x) for x in arr))


def orbit_enumerate(D: Design, cap: int = DEFAULT_CAP, check_cap: bool = True) -> Iterator[Design]:
    for m in orbit_members(D, cap, check_cap):
        yield m.design(D)


# --- reports ---------------------------------------------------------------

@dataclass(frozen=True)
class Extreme:
    n: int
    count: int
    witness: tuple[int, ...]
    perm: Permutation


@dataclass
class DistributionReport:
    v: int
    k: int
    t: int
    lam: int
    mode: Literal["exhaustive", "sample"]
    orbit_size: int
    freq: dict[int, int]
    components: dict[int, dict[int, int]]
    avectors: dict[tuple[int, ...], int]
    min: Extreme
    max: Extreme
    seed: int | None = None
    alpha_witness: dict[int, tuple[Permutation, tuple[int, ...]]] = field(default_factory=dict, repr=False)

    @property
    def s_values(self) -> list[int]:
        return sorted(self.components)

    @property
    def automorphism_group_order(self) -> int | None:
        if self.mode != "exhaustive":
            return None
        return math.factorial(self.v) // self.orbit_size

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "k": self.k,
            "t": self.t,
            "lambda": self.lam,
            "orbit_size": self.orbit_size,
            "mode": self.mode,
            "seed": self.seed,
            "freq": {str(n): c for n, c in sorted(self.freq.items())},
            "components": {
                str(a): {str(n): c for n, c in sorted(row.items())}
                for a, row in sorted(self.components.items(), reverse=True)
            },
            "s_values": self.s_values,
            "min": {"n": self.min.n, "count": self.min.count},
            "max": {"n": self.max.n, "count": self.max.count},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_tsv(self, components: bool = True) -> str:
        ns = list(range(min(self.freq), max(self.freq) + 1))
        rows = [["n", *map(str, ns), "Total"]]
        if components:
            for a in sorted(self.components, reverse=True):
                row = self.components[a]
                rows.append([f"Freq[{a}]", *(str(row[n]) if n in row else "" for n in ns),
                             str(sum(row.values()))])
        rows.append(["Freq", *(str(self.freq.get(n, 0)) for n in ns), str(sum(self.freq.values()))])
        return "\n".join("\t".join(r) for r in rows) + "\n"


def _eval_chunk(args) -> list[tuple[int, ...]]:
    v, k, chunk = args
    ev = evaluator(v, k)
    return [ev.avector(b) for b in chunk]


def _evaluate_stream(D: Design, stream, jobs: int, chunk: int = 256):
    """Yield (perm, blocks, avector) preserving stream order."""
    ev = evaluator(D.v, D.k)
    if jobs <= 1:
        for perm, arr in stream:
            yield perm, arr, ev.avector(arr)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        batch = []

        def flush(batch):
            parts = [batch[i:i + chunk] for i in range(0, len(batch), chunk)]
            results = pool.map(_eval_chunk, [(D.v, D.k, [arr for _, arr in p]) for p in parts])
            for p, res in zip(parts, results):
                for (perm, arr), a in zip(p, res):
                    yield perm, arr, a

        for item in stream:
            batch.append(item)
            if len(batch) >= chunk * jobs * 4:
                yield from flush(batch)
                batch = []
        if batch:
            yield from flush(batch)


def _sample_stream(D: Design, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    base = np.array(D.blocks, dtype=np.int64)
    bits = np.array([[(int(b) >> i) & 1 for i in range(D.v)] for b in base], dtype=np.int64)
    for _ in range(samples):
        perm = rng.permutation(D.v)
        weights = np.left_shift(1, perm.astype(np.int64))
        arr = np.sort(bits @ weights)
        yield tuple(int(x) for x in perm), arr


def _aggregate(D: Design, results, mode, seed) -> DistributionReport:
    nb = len(D.blocks)
    freq: Counter[int] = Counter()
    comps: dict[int, Counter[int]] = {}
    avecs: Counter[tuple[int, ...]] = Counter()
    lo = hi = None
    alpha_witness = {}
    total = 0
    for perm, arr, a in results:
        total += 1
        n = positions_from_avector(a, nb)
        alpha = alpha_from_avector(a, D.k)
        freq[n] += 1
        comps.setdefault(alpha, Counter())[n] += 1
        avecs[a] += 1
        if alpha not in alpha_witness:
            alpha_witness[alpha] = (Permutation(tuple(perm)), tuple(int(x) for x in arr))
        if lo is None or n < lo[0]:
            lo = (n, perm, arr)
        if hi is None or n > hi[0]:
            hi = (n, perm, arr)
    if total == 0:
        raise ValueError("empty orbit")

    def extreme(e):
        n, perm, arr = e
        return Extreme(n, freq[n], tuple(int(x) for x in arr), Permutation(tuple(perm)))

    return DistributionReport(
        v=D.v, k=D.k, t=D.t, lam=D.lam, mode=mode, orbit_size=total,
        freq=dict(sorted(freq.items())),
        components={a: dict(sorted(c.items())) for a, c in sorted(comps.items(), reverse=True)},
        avectors=dict(avecs), min=extreme(lo), max=extreme(hi), seed=seed,
        alpha_witness=alpha_witness,
    )


def game_distribution(D: Design, mode: Literal["exhaustive", "sample"] = "exhaustive",
                      samples: int = 1000, seed: int | None = None, jobs: int = 1,
                      cap: int = DEFAULT_CAP, force: bool = False) -> DistributionReport:
    """Frequency of game sizes over the orbit of D (or over random relabellings)."""
    if mode == "exhaustive":
        if not force:
            est, exact = orbit_size_estimate(D, cap)
            if est > cap:
                raise OrbitCapExceeded(est, cap, exact)
        stream = _orbit_arrays(D, cap if not force else 1 << 62)
        return _aggregate(D, _evaluate_stream(D, stream, jobs), "exhaustive", None)
    if mode == "sample":
        if samples < 1:
            raise ValueError("need at least one sample")
        if seed is None:
            seed = secrets.randbits(63)
        stream = _sample_stream(D, samples, seed)
        return _aggregate(D, _evaluate_stream(D, stream, jobs), "sample", seed)
    raise ValueError(f"unknown mode {mode!r}")


def s_values(D: Design, **kw) -> list[int]:
    return game_distribution(D, **kw).s_values


# --- projectivity ------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivityVerdict:
    status: Literal["projective", "non-projective", "consistent-with-projective"]
    s_values: tuple[int, ...]
    mode: str
    witnesses: tuple = ()
    seed: int | None = None
    samples: int = 0

    @property
    def projective(self) -> bool | None:
        if self.status == "projective":
            return True
        if self.status == "non-projective":
            return False
        return None


def projective_by_distribution(D: Design, mode: Literal["exhaustive", "sample"] = "exhaustive",
                               samples: int = 1000, seed: int | None = None, jobs: int = 1,
                               cap: int = DEFAULT_CAP) -> ProjectivityVerdict:
    """Projective iff every relabelling gives the same a0 + a3."""
    _require_sts(D)
    if mode == "exhaustive":
        rep = game_distribution(D, "exhaustive", jobs=jobs, cap=cap)
        s = tuple(rep.s_values)
        if len(s) == 1:
            return ProjectivityVerdict("projective", s, mode)
        w = tuple(rep.alpha_witness[a] for a in s[:2])
        return ProjectivityVerdict("non-projective", s, mode, witnesses=w)
    if samples < 1:
        raise ValueError("need at least one sample")
    if seed is None:
        seed = secrets.randbits(63)
    ev = evaluator(D.v, D.k)
    seen: dict[int, tuple] = {}
    drawn = 0
    for perm, arr in _sample_stream(D, samples, seed):
        drawn += 1
        alpha = alpha_from_avector(ev.avector(arr), D.k)
        seen.setdefault(alpha, (Permutation(perm), tuple(int(x) for x in arr)))
        if len(seen) > 1:
            return ProjectivityVerdict("non-projective", tuple(sorted(seen)), mode,
                                       witnesses=tuple(seen.values()), seed=seed, samples=drawn)
    s = tuple(seen)
    status = "consistent-with-projective" if s == (projective_alpha(D.v),) else "non-projective"
    return ProjectivityVerdict(status, s, mode, seed=seed, samples=drawn)


# --- S(1, 2, 2w) generating function -----------------------------------------

def gf_s12v(w: int) -> list[int]:
    """Coefficients (index = exponent) of x^(w^2) * prod_{i=1..w} (1 + x + ... + x^(2i-2))."""
    if w < 1:
        raise ValueError("need w >= 1")
    poly = np.zeros(1, dtype=object)
    poly[0] = 1
    for i in range(1, w + 1):
        poly = np.convolve(poly, np.ones(2 * i - 1, dtype=object))
    return [0] * (w * w) + [int(c) for c in poly]


def complement_distribution_identity_check(D: Design, cap: int = DEFAULT_CAP) -> bool:
    """Non-position counts (from a0) mirror game sizes (from the games module)."""
    if (D.t, D.k, D.lam) != (1, 2, 1):
        raise DesignError(f"expected an S(1,2,2w), got {D.params()}")
    total = math.comb(D.v, 2)
    g = Welter(D.v, D.k)
    freq: Counter[int] = Counter()
    freq_non: Counter[int] = Counter()
    for m in orbit_members(D, cap):
        freq[len(b_position(g, m.blocks))] += 1
        freq_non[a_counts(m.design(D))[0]] += 1
    ns = set(freq_non) | {total - n for n in freq}
    return all(freq_non.get(n, 0) == freq.get(total - n, 0) for n in ns)


@dataclass(frozen=True)
class ConstantCountVerdict:
    expected: int
    observed: dict[int, int]
    seed: int

    @property
    def ok(self) -> bool:
        return set(self.observed) == {self.expected}


def constant_count_check_m_gt_1(D: Design, samples: int = 100, seed: int | None = None) -> ConstantCountVerdict:
    """For k - t >= 2 every relabelling should give lambda_0 (1 + k(v-k)/2) positions."""
    if D.k - D.t < 2:
        raise DesignError(f"need k - t >= 2, got {D.params()}")
    if seed is None:
        seed = secrets.randbits(63)
    l0 = lambda_i(D, 0)
    expected = l0 + l0 * D.k * (D.v - D.k) // 2
    g = Welter(D.v, D.k)
    observed: Counter[int] = Counter()
    for _, arr in _sample_stream(D, samples, seed):
        observed[len(b_position(g, (int(x) for x in arr)))] += 1
    return ConstantCountVerdict(expected, dict(observed), seed)
