"""Coset enumeration and coset tables.

Columns of a table are indexed by ``2*i`` (generator ``i``) and ``2*i + 1``
(its inverse).  Cosets are numbered from 0; coset 0 is the subgroup itself.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .presentation import Presentation
from .words import Word


class LimitExceeded(RuntimeError):
    """A resource limit stopped a computation before it finished.

    ``kind`` is ``"cosets"`` or ``"time"``.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class EnumLimits:
    max_cosets: int = 200_000
    max_time: float = 60.0

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        if self.max_time <= 0:
            raise ValueError("max_time must be positive")


def col(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


@dataclass(frozen=True)
class CosetTable:
    """Closed permutation action of the generators on the cosets of a subgroup."""

    ngens: int
    table: tuple[tuple[int, ...], ...]
    n_defined: int = 0
    n_coincidences: int = 0
    _perm_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n_cosets(self) -> int:
        return len(self.table)

    def index(self) -> int:
        return len(self.table)

    def act(self, coset: int, letter: int) -> int:
        return self.table[coset][col(letter)]

    def trace(self, w: Word, start: int = 0) -> int:
        c = start
        tab = self.table
        for a in w.letters:
            c = tab[c][2 * (a - 1) if a > 0 else -2 * a - 1]
        return c

    def validate(self, presentation: Presentation, subgroup_gens: Sequence[Word] = ()) -> None:
        """Raise ``AssertionError`` unless the table is a closed, consistent action."""
        n = self.n_cosets
        for c, row in enumerate(self.table):
            if len(row) != 2 * self.ngens:
                raise AssertionError(f"row {c} has wrong width")
            for j, d in enumerate(row):
                if not 0 <= d < n:
                    raise AssertionError(f"entry ({c}, {j}) undefined")
                if self.table[d][j ^ 1] != c:
                    raise AssertionError(f"entry ({c}, {j}) is not inverted by column {j ^ 1}")
        for r in presentation.relators:
            for c in range(n):
                if self.trace(r, c) != c:
                    raise AssertionError(f"relator {r} does not fix coset {c}")
        for h in subgroup_gens:
            if self.trace(h, 0) != 0:
                raise AssertionError(f"subgroup generator {h} does not fix coset 0")

    def permutations(self) -> np.ndarray:
        """Array ``perm[i, c]`` = image of coset ``c`` under generator ``i``."""
        if "perm" not in self._perm_cache:
            arr = np.array(self.table, dtype=np.int64).reshape(self.n_cosets, 2 * self.ngens)
            self._perm_cache["perm"] = arr[:, 0::2].T.copy()
        return self._perm_cache["perm"]


def coset_action(t: CosetTable, w: Word, start: int = 0) -> int:
    return t.trace(w, start)


def index(t: CosetTable) -> int:
    return t.n_cosets


class _Enumerator:
    def __init__(self, ngens: int, limits: EnumLimits):
        self.ncols = 2 * ngens
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.n_defined = 1
        self.n_coincidences = 0
        self.limits = limits
        self.deadline = time.perf_counter() + limits.max_time

    def define(self, c: int, x: int) -> None:
        if self.live >= self.limits.max_cosets:
            raise LimitExceeded("cosets", f"more than {self.limits.max_cosets} live cosets needed")
        if self.n_defined % 1024 == 0 and time.perf_counter() > self.deadline:
            raise LimitExceeded("time", f"enumeration exceeded {self.limits.max_time} s")
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c
        self.live += 1
        self.n_defined += 1

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def merge(self, k: int, l: int, queue: list) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)
        self.live -= 1
        self.n_coincidences += 1

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        tab = self.table
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = tab[e][x]
                if f < 0:
                    continue
                tab[f][x ^ 1] = -1
                mu, nu = self.rep(e), self.rep(f)
                if tab[mu][x] >= 0:
                    self.merge(nu, tab[mu][x], queue)
                elif tab[nu][x ^ 1] >= 0:
                    self.merge(mu, tab[nu][x ^ 1], queue)
                else:
                    tab[mu][x] = nu
                    tab[nu][x ^ 1] = mu

    def scan_and_fill(self, c: int, w: Sequence[int]) -> None:
        tab = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and tab[f][w[i]] >= 0:
                f = tab[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and tab[b][w[j] ^ 1] >= 0:
                b = tab[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                tab[f][w[i]] = b
                tab[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def compact(self) -> tuple[tuple[int, ...], ...]:
        alive = [c for c in range(len(self.table)) if self.is_live(c)]
        renum = {c: k for k, c in enumerate(alive)}
        return tuple(tuple(renum[self.rep(d)] for d in self.table[c]) for c in alive)


def enumerate_cosets(
    p: Presentation,
    subgroup_gens: Sequence[Word] = (),
    limits: EnumLimits | None = None,
) -> CosetTable:
    """HLT coset enumeration of ``subgroup_gens`` in ``p``.

    Deterministic for fixed inputs.  Raises :class:`LimitExceeded` when the
    coset or time budget runs out before the table closes.
    """
    if p.ngens == 0:
        raise ValueError("coset enumeration needs a nonempty alphabet")
    limits = limits or EnumLimits()
    en = _Enumerator(p.ngens, limits)
    rels = [[col(a) for a in r.letters] for r in p.relators]
    for h in subgroup_gens:
        if h.letters:
            en.scan_and_fill(0, [col(a) for a in h.letters])
    c = 0
    while c < len(en.table):
        if en.is_live(c):
            for r in rels:
                if not en.is_live(c):
                    break
                en.scan_and_fill(c, r)
            if en.is_live(c):
                for x in range(en.ncols):
                    if en.table[c][x] < 0:
                        en.define(c, x)
        c += 1
    t = CosetTable(p.ngens, _standardize(en.compact()), en.n_defined, en.n_coincidences)
    t.validate(p, subgroup_gens)
    return t


def _standardize(table) -> tuple[tuple[int, ...], ...]:
    """Renumber cosets in breadth-first order from coset 0."""
    order = [0]
    seen = {0: 0}
    k = 0
    while k < len(order):
        for d in table[order[k]]:
            if d not in seen:
                seen[d] = len(order)
                order.append(d)
        k += 1
    if len(order) != len(table):
        raise AssertionError("coset table action is not transitive")
    return tuple(tuple(seen[d] for d in table[c]) for c in order)


def schreier_transversal(t: CosetTable) -> list[Word]:
    """Prefix-closed coset representatives, indexed by coset; coset 0 gets the empty word."""
    reps: list[Word | None] = [None] * t.n_cosets
    reps[0] = Word()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(2 * t.ngens):
            d = t.table[c][x]
            if reps[d] is None:
                letter = x // 2 + 1 if x % 2 == 0 else -(x // 2 + 1)
                reps[d] = Word._trusted(reps[c].letters + (letter,))
                queue.append(d)
    return reps


def table_from_homomorphism(
    p: Presentation,
    images: Sequence[Sequence[int]],
    prime: int,
    limits: EnumLimits | None = None,
) -> CosetTable:
    """Coset table of the kernel of ``G -> (Z/prime)^d`` given by generator images.

    Cosets are the vectors of ``(Z/prime)^d`` (coset 0 is the zero vector);
    vector ``v`` has number ``sum(v[k] * prime**k)``.
    """
    d = len(images[0]) if len(images) else 0
    if len(images) != p.ngens:
        raise ValueError("need one image vector per generator")
    imgs = np.array(images, dtype=np.int64).reshape(p.ngens, d) % prime
    for r in p.relators:
        v = np.array(r.exponent_sums(p.ngens), dtype=np.int64) @ imgs % prime
        if v.any():
            raise ValueError(f"relator {r} has nonzero image {v.tolist()}")
    from .linalg import rank_mod_p

    if rank_mod_p(imgs, prime) != d:
        raise ValueError("images do not span the target; the map is not onto")
    n = prime**d
    limits = limits or EnumLimits()
    if n > limits.max_cosets:
        raise LimitExceeded("cosets", f"kernel index {prime}^{d} exceeds max_cosets={limits.max_cosets}")
    weights = prime ** np.arange(d, dtype=np.int64)
    vecs = np.array(list(product(range(prime), repeat=d)), dtype=np.int64)[:, ::-1] if d else np.zeros((1, 0), np.int64)
    ids = vecs @ weights
    order = np.argsort(ids)
    vecs = vecs[order]
    cols = []
    for i in range(p.ngens):
        cols.append(((vecs + imgs[i]) % prime) @ weights)
        cols.append(((vecs - imgs[i]) % prime) @ weights)
    rows = np.stack(cols, axis=1) if cols else np.zeros((n, 0), np.int64)
    return CosetTable(p.ngens, tuple(tuple(int(x) for x in row) for row in rows), n, 0)
