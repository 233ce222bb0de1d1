"""Orders of the quotients G/δ^p_i(G) of the derived exponent-p series.

δ^p_0(G) = G and δ^p_i(G) = [δ^p_{i-1}, δ^p_{i-1}] (δ^p_{i-1})^p.  Each layer
δ^p_i/δ^p_{i+1} is elementary abelian of rank d_i = dim H_1(δ^p_i; F_p),
read off the relator exponent-sum matrix of a presentation of δ^p_i.  The
next presentation is obtained by Reidemeister–Schreier from the regular
action of G on the layer, so no subgroup generators are ever guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .coset import CosetTable, EnumLimits, LimitExceeded, table_from_homomorphism
from .linalg import quotient_map_mod_p, smith_normal_form
from .presentation import Presentation
from .schreier import SubgroupPresentation, rewrite_in_subgroup, subgroup_presentation, tietze_simplify
from .words import Word


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def _check_prime(p: int) -> None:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"{p} is not a prime")


def relator_matrix(pr: Presentation) -> np.ndarray:
    m = np.zeros((len(pr.relators), pr.ngens), dtype=np.int64)
    for k, r in enumerate(pr.relators):
        m[k] = r.exponent_sums(pr.ngens)
    return m


def mod_p_layer_rank(pr: Presentation, p: int) -> int:
    """Rank of the largest elementary abelian p-quotient of ``pr``."""
    _check_prime(p)
    return layer_map(pr, p).shape[1]


def layer_map(pr: Presentation, p: int) -> np.ndarray:
    """Generator images (rows) of the surjection onto (Z/p)^d, d = layer rank."""
    return quotient_map_mod_p(relator_matrix(pr) % p, pr.ngens, p)


@dataclass
class Level:
    """One rung of the ladder: a presentation of δ^p_i and its layer map."""

    i: int
    presentation: Presentation
    images: np.ndarray
    # how this level's generators sit inside the previous level
    table: CosetTable | None = None
    sp: SubgroupPresentation | None = None

    @property
    def d(self) -> int:
        return self.images.shape[1]


class Ladder:
    """Lazily built presentations of δ^p_0 ⊇ δ^p_1 ⊇ ... of one group.

    ``level(i)`` raises :class:`LimitExceeded` when opening level ``i``
    would need a kernel table with more than ``max_cosets`` cosets.
    """

    def __init__(self, pr: Presentation, p: int, limits: EnumLimits | None = None, tietze_budget: int = 100_000):
        _check_prime(p)
        self.p = p
        self.limits = limits or EnumLimits()
        self.tietze_budget = tietze_budget
        self.levels = [Level(0, pr, layer_map(pr, p))]

    def level(self, i: int) -> Level:
        while len(self.levels) <= i:
            prev = self.levels[-1]
            if prev.d == 0:
                self.levels.append(Level(prev.i + 1, prev.presentation, prev.images, None, None))
                continue
            table = table_from_homomorphism(prev.presentation, prev.images, self.p, self.limits)
            sp = tietze_simplify(subgroup_presentation(prev.presentation, table), self.tietze_budget)
            pres = sp.presentation
            self.levels.append(Level(prev.i + 1, pres, layer_map(pres, self.p), table, sp))
        return self.levels[i]

    def descend(self, w: Word, i: int) -> Word:
        """Rewrite ``w`` (a word in level ``i - 1``, lying in δ^p_i) over level ``i``."""
        lev = self.level(i)
        if lev.table is None:
            return w
        return rewrite_in_subgroup(lev.sp, lev.table, w)


@dataclass
class PSeriesReport:
    """Exponents e_i = log_p |G/δ^p_i(G)| and layer ranks d_i.

    ``levels`` holds ``(i, e_i, d_i)``; ``d_i`` is ``None`` for the last
    computed level when its layer was not opened.
    """

    p: int
    levels: list[tuple[int, int, int | None]] = field(default_factory=list)
    truncated: bool = False
    reason: str | None = None

    @property
    def exponents(self) -> list[int]:
        return [e for _, e, _ in self.levels]

    def orders(self) -> list[int]:
        return [self.p**e for e in self.exponents]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "levels": [{"i": i, "e": e, "d": d} for i, e, d in self.levels],
            "orders": self.orders(),
            "truncated": self.truncated,
            "reason": self.reason,
        }


def delta_orders(pr: Presentation, p: int, depth: int, limits: EnumLimits | None = None) -> PSeriesReport:
    """Compute |G/δ^p_i(G)| = p^{e_i} for i = 0..depth (until limits)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    ladder = Ladder(pr, p, limits)
    return ladder_report(ladder, depth)


def ladder_report(ladder: Ladder, depth: int) -> PSeriesReport:
    rep = PSeriesReport(ladder.p)
    e = 0
    for i in range(depth + 1):
        if i == depth:
            rep.levels.append((i, e, None))
            break
        try:
            d = ladder.level(i).d
        except LimitExceeded as exc:
            rep.truncated = True
            rep.reason = f"level {i}: {exc}"
            break
        rep.levels.append((i, e, d))
        e += d
    if any(b[1] < a[1] for a, b in zip(rep.levels, rep.levels[1:])):
        raise AssertionError("e_i must be nondecreasing")
    return rep


def compare_invariants(a: PSeriesReport, b: PSeriesReport) -> int | None:
    """First level whose exponents differ, or ``None`` if identical over the common range."""
    if a.p != b.p:
        raise ValueError("reports use different primes")
    for (i, ea, _), (_, eb, _) in zip(a.levels, b.levels):
        if ea != eb:
            return i
    return None


def free_group_oracle(rank: int, p: int, depth: int) -> list[int]:
    """Exponents e_0..e_depth for a free group from the Schreier rank recursion."""
    es, r, e = [0], rank, 0
    for i in range(depth):
        e += r
        es.append(e)
        if i + 1 < depth:  # the rank after the last layer can be astronomically large
            r = (r - 1) * p**r + 1
    return es


@dataclass
class Membership:
    """Result of a δ-series membership test.

    ``level`` is the smallest v with w ∉ δ^p_v, or ``None`` if undecided or
    trivial.  ``in_all`` marks a word lying in every computed level (e.g. the
    identity); ``reached`` is the deepest level known to contain w.
    ``witness`` names the certificate that fixed the answer.
    """

    level: int | None
    reached: int
    in_all: bool = False
    witness: str = "layer"
    reason: str | None = None

    @property
    def decided(self) -> bool:
        return self.level is not None


def _valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _abelian_valuation(pr: Presentation, w: Word, p: int) -> int | None:
    """Largest k with the image of ``w`` in H_1(pr; Z) lying in p^k H_1.

    Any homomorphism onto an abelian group A maps δ^p_j into p^j A, so ``w``
    lies outside δ^p_{k+1}.  Returns ``None`` when the image is p^k-divisible
    for every k (no information).
    """
    vec = w.exponent_sums(pr.ngens)
    m = relator_matrix(pr)
    if m.shape[0] == 0:
        coords, diag = vec, [0] * pr.ngens
    else:
        diag, v = smith_normal_form(m.tolist())
        coords = [sum(vec[i] * v[i][j] for i in range(pr.ngens)) for j in range(pr.ngens)]
    best = None
    for c, n in zip(coords, diag):
        if n == 0:
            if c == 0:
                continue
            k = _valuation(c, p)
        else:
            c %= n
            a = _valuation(n, p)
            if c == 0 or _valuation(c, p) >= a:
                continue
            k = _valuation(c, p)
        best = k if best is None else min(best, k)
    return best


def membership_level(
    pr: Presentation,
    p: int,
    w: Word,
    limits: EnumLimits | None = None,
    max_depth: int = 32,
    ladder: Ladder | None = None,
) -> Membership:
    """Smallest v with ``w`` ∉ δ^p_v(G), tested layer by layer.

    At each opened level the image of ``w`` in the elementary abelian layer
    decides membership exactly.  When the next level cannot be opened within
    ``limits``, an abelian certificate at the deepest level (see
    ``_abelian_valuation``) may still pin v exactly; otherwise the result is
    undecided.
    """
    ladder = ladder or Ladder(pr, p, limits)
    cur = w
    i = 0
    while True:
        if not cur:
            return Membership(None, i, in_all=True, reason="trivial word")
        lev = ladder.level(i)
        img = np.array(cur.exponent_sums(lev.presentation.ngens), dtype=np.int64) @ lev.images % p
        if img.any():
            return Membership(i + 1, i)
        # cur ∈ δ^p_{i+1}
        if i + 1 >= max_depth:
            return Membership(None, i + 1, reason=f"max_depth {max_depth} reached")
        try:
            nxt = ladder.level(i + 1)
        except LimitExceeded as exc:
            k = _abelian_valuation(lev.presentation, cur, p)
            # cur ∈ δ_{i+1}(G) = δ_1(level i); abelian bound: cur ∉ δ_{i+k+1}(G)
            if k is not None and k == 1:
                return Membership(i + 2, i + 1, witness="abelian")
            return Membership(None, i + 1, reason=f"level {i + 1}: {exc}")
        if nxt.table is not None:
            cur = rewrite_in_subgroup(nxt.sp, nxt.table, cur)
        i += 1


def words_up_to(ngens: int, max_len: int) -> Iterator[Word]:
    """All nonempty freely reduced words of length <= max_len, shortlex order."""
    letters = [a for i in range(1, ngens + 1) for a in (i, -i)]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        for w in nxt:
            yield Word._trusted(w)
        frontier = nxt
