"""Numeric laboratory for hyperbolic triangle groups.

Isometries of the hyperbolic plane are 3x3 matrices preserving the form
J = diag(1, 1, -1).  All geometric checks use the word metric of a finite
Cayley ball, never distances in the plane.

Tolerances: relation residuals <= 1e-9 at construction, identity and
de-duplication tolerance 1e-6 for products of length <= 20.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .presentation import parse_word
from .words import Alphabet, Word, cyclic_reduce

J = np.diag([1.0, 1.0, -1.0])

RELATION_TOL = 1e-9
IDENTITY_TOL = 1e-6
DEDUP_TOL = 1e-6


class BallAmbiguity(RuntimeError):
    """Two matrices are too close to tell apart but too far to merge safely."""


@dataclass(frozen=True)
class TriangleGroupSpec:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if min(self.p, self.q, self.r) < 2:
            raise ValueError("triangle group orders must be >= 2")
        if Fraction(1, self.p) + Fraction(1, self.q) + Fraction(1, self.r) >= 1:
            raise ValueError(f"({self.p},{self.q},{self.r}) is not hyperbolic: 1/p + 1/q + 1/r >= 1")

    @classmethod
    def parse(cls, text: str) -> "TriangleGroupSpec":
        p, q, r = (int(x) for x in text.split(","))
        return cls(p, q, r)


@dataclass(frozen=True)
class Isometry:
    matrix: np.ndarray
    tol: float = RELATION_TOL

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("isometry must be a 3x3 matrix")
        if form_residual(m) > self.tol * max(1.0, np.abs(m).max() ** 2):
            raise ValueError(f"matrix does not preserve J (residual {form_residual(m):.3g})")
        object.__setattr__(self, "matrix", m)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    @property
    def orientation(self) -> int:
        return 1 if self.det > 0 else -1

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix, max(self.tol, other.tol) * 10)

    def inverse(self) -> "Isometry":
        return Isometry(J @ self.matrix.T @ J, self.tol)


def form_residual(m: np.ndarray) -> float:
    return float(np.abs(m.T @ J @ m - J).max())


def j_inverse(m: np.ndarray) -> np.ndarray:
    return J @ m.T @ J


def build_reflections(spec: TriangleGroupSpec) -> tuple[Isometry, Isometry, Isometry]:
    """Reflections a, b, c with (ab)^p = (bc)^q = (ac)^r = 1.

    Built from the Gram matrix of the three mirrors (off-diagonal entries
    -cos(pi/m)), then conjugated so that the invariant form becomes J.
    """
    cp, cq, cr = (math.cos(math.pi / n) for n in (spec.p, spec.q, spec.r))
    gram = np.array([[1.0, -cp, -cr], [-cp, 1.0, -cq], [-cr, -cq, 1.0]])
    evals, evecs = np.linalg.eigh(gram)
    order = np.argsort(-evals)  # two positive eigenvalues first, the negative one last
    evals, evecs = evals[order], evecs[:, order]
    if not (evals[0] > 0 and evals[1] > 0 and evals[2] < 0):
        raise ValueError("Gram matrix does not have signature (2, 1)")
    # gram = P^T J P
    P = np.diag(np.sqrt(np.abs(evals))) @ evecs.T
    Pinv = np.linalg.inv(P)
    mats = []
    for i in range(3):
        s = np.eye(3)
        s[i, :] -= 2 * gram[i, :]  # s(e_j) = e_j - 2 B(e_i, e_j) e_i, columns are images
        mats.append(P @ s @ Pinv)
    a, b, c = (Isometry(m) for m in mats)
    for (u, v), n in zip(((a, b), (b, c), (a, c)), (spec.p, spec.q, spec.r)):
        res = np.abs(np.linalg.matrix_power(u.matrix @ v.matrix, n) - np.eye(3)).max()
        if res > RELATION_TOL:
            raise AssertionError(f"relation residual {res:.3g} exceeds {RELATION_TOL}")
    return a, b, c


def relation_residuals(spec: TriangleGroupSpec) -> dict[str, float]:
    a, b, c = build_reflections(spec)
    out = {}
    for name, (u, v), n in zip(("ab", "bc", "ac"), ((a, b), (b, c), (a, c)), (spec.p, spec.q, spec.r)):
        out[name] = float(np.abs(np.linalg.matrix_power(u.matrix @ v.matrix, n) - np.eye(3)).max())
    for name, u in zip("abc", (a, b, c)):
        out[name] = float(np.abs(u.matrix @ u.matrix - np.eye(3)).max())
    return out


def reflection_generators(spec: TriangleGroupSpec) -> tuple[Alphabet, list[np.ndarray]]:
    a, b, c = build_reflections(spec)
    return Alphabet("abc"), [a.matrix, b.matrix, c.matrix]


def orientation_generators(spec: TriangleGroupSpec) -> tuple[Alphabet, list[np.ndarray]]:
    """Generators x = ab and y = bc of the orientation-preserving subgroup."""
    a, b, c = build_reflections(spec)
    return Alphabet("xy"), [a.matrix @ b.matrix, b.matrix @ c.matrix]


def element_order(m: np.ndarray, max_order: int = 16, tol: float = IDENTITY_TOL) -> int | None:
    p = np.eye(3)
    for k in range(1, max_order + 1):
        p = p @ m
        if np.abs(p - np.eye(3)).max() <= tol:
            return k
    return None


@dataclass
class CayleyBall:
    """Radius-R ball of a Cayley graph, built breadth first.

    ``letters`` is the symmetrized generating set as signed letters over
    ``alphabet``; letters whose matrices coincide (involutions) are kept
    once.  ``adj[v, k]`` is the neighbour of ``v`` along ``letters[k]`` or -1
    if it lies outside the ball.
    """

    alphabet: Alphabet
    base: list[np.ndarray]
    letters: list[int]
    radius: int
    dedup_tol: float
    mats: np.ndarray = field(repr=False)
    words: list[tuple[int, ...]] = field(repr=False)
    dist: np.ndarray = field(repr=False)
    adj: np.ndarray = field(repr=False)
    _buckets: dict = field(repr=False, default_factory=dict)
    _grid: float = 1e-2

    @property
    def n_vertices(self) -> int:
        return len(self.words)

    def letter_matrix(self, a: int) -> np.ndarray:
        m = self.base[abs(a) - 1]
        return m if a > 0 else j_inverse(m)

    def word_matrix(self, w: Word | Sequence[int]) -> np.ndarray:
        m = np.eye(3)
        for a in w:
            m = m @ self.letter_matrix(a)
        return m

    def parse(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def _keys(self, m: np.ndarray, probe: bool = True):
        """Hash keys for ``m``: a magnitude class plus entries rounded on a grid
        proportional to it.  With ``probe``, neighbouring classes and grid
        cells are also produced when ``m`` sits near a boundary."""
        scale = max(1.0, float(np.abs(m).max()))
        e0 = int(math.floor(math.log10(scale)))
        classes = [e0]
        if probe:
            if e0 > 0 and scale < 10.0**e0 * (1 + 1e-3):
                classes.append(e0 - 1)
            if scale > 10.0 ** (e0 + 1) * (1 - 1e-3):
                classes.append(e0 + 1)
        slack = 10 * self.dedup_tol * scale
        for e in classes:
            grid = self._grid * 10.0**e
            scaled = m.ravel() / grid
            base = np.floor(scaled + 0.5)
            frac = scaled - base
            base = base.astype(np.int64)
            near = [i for i in range(9) if abs(abs(frac[i]) - 0.5) * grid < slack] if probe else []
            for shifts in product((0, 1), repeat=len(near)):
                k = base.copy()
                for i, sh in zip(near, shifts):
                    if sh:
                        k[i] += 1 if frac[i] > 0 else -1
                yield (e,) + tuple(k.tolist())

    def _add(self, v: int, m: np.ndarray) -> None:
        self._buckets.setdefault(next(self._keys(m, probe=False)), []).append(v)

    def find(self, m: np.ndarray) -> int | None:
        """Vertex whose matrix is within ``dedup_tol`` (relative to the entry scale) of ``m``."""
        tol = self.dedup_tol * max(1.0, float(np.abs(m).max()))
        for key in self._keys(m):
            for v in self._buckets.get(key, ()):
                diff = np.abs(self.mats[v] - m).max()
                if diff <= tol:
                    return v
                if diff <= 10 * tol:
                    raise BallAmbiguity(
                        f"matrices differ by {diff:.3g}, between dedup_tol and 10*dedup_tol; "
                        "use a smaller radius or a tighter tolerance"
                    )
        return None

    def vertex_of(self, w: Word) -> int | None:
        return self.find(self.word_matrix(w))

    def path(self, start: int, w: Word | Sequence[int]) -> list[int] | None:
        """Vertices visited reading ``w`` from ``start``; ``None`` if it leaves the ball."""
        out = [start]
        v = start
        m = self.mats[start]
        for a in w:
            m = m @ self.letter_matrix(a)
            v = self.find(m)
            if v is None:
                return None
            out.append(v)
        return out

    def bfs(self, sources: Sequence[int], max_dist: int | None = None) -> np.ndarray:
        """Ball-graph distances from a set of vertices (-1 = unreachable)."""
        d = np.full(self.n_vertices, -1, dtype=np.int64)
        queue = deque()
        for s in sources:
            if d[s] < 0:
                d[s] = 0
                queue.append(s)
        adj = self.adj
        while queue:
            u = queue.popleft()
            du = d[u]
            if max_dist is not None and du >= max_dist:
                continue
            for w in adj[u]:
                if w >= 0 and d[w] < 0:
                    d[w] = du + 1
                    queue.append(w)
        return d

    def geodesic(self, u: int, v: int, from_u: np.ndarray | None = None) -> list[int]:
        """One ball-graph geodesic from u to v (deterministic)."""
        du = self.bfs([u]) if from_u is None else from_u
        if du[v] < 0:
            raise ValueError("vertices are not connected inside the ball")
        path = [v]
        while path[-1] != u:
            x = path[-1]
            for w in self.adj[x]:
                if w >= 0 and du[w] == du[x] - 1:
                    path.append(w)
                    break
        return path[::-1]

    def edges(self) -> list[tuple[int, str, int]]:
        out = []
        for v in range(self.n_vertices):
            for k, a in enumerate(self.letters):
                w = self.adj[v, k]
                if w >= 0:
                    out.append((v, self.letter_name(a), int(w)))
        return out

    def letter_name(self, a: int) -> str:
        name = self.alphabet.names[abs(a) - 1]
        return name if a > 0 else name + "^-1"

    def word_text(self, v: int) -> str:
        return "*".join(self.letter_name(a) for a in self.words[v])

    def validate(self) -> None:
        if np.abs(self.mats[0] - np.eye(3)).max() > self.dedup_tol:
            raise AssertionError("vertex 0 is not the identity")
        inv_col = {k: self.letters.index(self.inverse_letter(a)) for k, a in enumerate(self.letters)}
        for v in range(self.n_vertices):
            for k in range(len(self.letters)):
                w = self.adj[v, k]
                if w >= 0 and self.adj[w, inv_col[k]] != v:
                    raise BallAmbiguity(f"edge {v} -{k}-> {w} is not inverted; a merge went wrong")
                if w < 0 and self.dist[v] < self.radius:
                    raise AssertionError(f"interior vertex {v} lacks a neighbour")

    def inverse_letter(self, a: int) -> int:
        if -a in self.letters:
            return -a
        return a  # involution kept once


def _symmetrize(base: Sequence[np.ndarray], tol: float) -> list[int]:
    letters = []
    mats = []
    for i, m in enumerate(base):
        for a, mm in ((i + 1, m), (-(i + 1), j_inverse(m))):
            if not any(np.abs(mm - x).max() <= tol for x in mats):
                letters.append(a)
                mats.append(mm)
    return letters


def cayley_ball(
    alphabet: Alphabet,
    base: Sequence[np.ndarray],
    radius: int,
    dedup_tol: float = DEDUP_TOL,
) -> CayleyBall:
    """Breadth-first radius-``radius`` ball with matrix-hash de-duplication."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    base = [np.asarray(m, dtype=float) for m in base]
    letters = _symmetrize(base, dedup_tol)
    ball = CayleyBall(alphabet, base, letters, radius, dedup_tol, np.zeros((0, 3, 3)), [], np.zeros(0), np.zeros((0, 0)))
    mats = [np.eye(3)]
    words = [()]
    dist = [0]
    adj = [[-1] * len(letters)]
    ball.mats = np.array(mats)
    ball._add(0, mats[0])
    letter_mats = [ball.letter_matrix(a) for a in letters]
    k = 0
    cap = 1024
    store = np.zeros((cap, 3, 3))
    store[0] = mats[0]
    while k < len(words):
        ball.mats = store
        for j, (a, lm) in enumerate(zip(letters, letter_mats)):
            m = store[k] @ lm
            v = ball.find(m)
            if v is None:
                if dist[k] >= radius:
                    continue
                v = len(words)
                if v == cap:
                    cap *= 2
                    bigger = np.zeros((cap, 3, 3))
                    bigger[:v] = store[:v]
                    store = bigger
                    ball.mats = store
                store[v] = m
                words.append(words[k] + (a,))
                dist.append(dist[k] + 1)
                adj.append([-1] * len(letters))
                ball._add(v, m)
            adj[k][j] = v
        k += 1
    ball.mats = store[: len(words)].copy()
    ball.words = words
    ball.dist = np.array(dist, dtype=np.int64)
    ball.adj = np.array(adj, dtype=np.int64).reshape(len(words), len(letters))
    ball.validate()
    return ball


def triangle_ball(spec: TriangleGroupSpec, radius: int, orientation: bool = True, dedup_tol: float = DEDUP_TOL) -> CayleyBall:
    alphabet, base = orientation_generators(spec) if orientation else reflection_generators(spec)
    return cayley_ball(alphabet, base, radius, dedup_tol)


@dataclass
class TorsionProfile:
    orders: Counter
    n_infinite_or_large: int
    max_order: int

    def finite_orders(self) -> list[int]:
        return sorted(self.orders)

    def to_dict(self) -> dict:
        return {
            "orders": {str(k): v for k, v in sorted(self.orders.items())},
            "exceeds_max_order": self.n_infinite_or_large,
            "max_order": self.max_order,
        }


def torsion_profile(ball: CayleyBall, max_order: int = 16, tol: float = IDENTITY_TOL) -> TorsionProfile:
    """Orders of the orientation-preserving vertices of ``ball`` (up to ``max_order``)."""
    dets = np.linalg.det(ball.mats)
    idx = np.nonzero(dets > 0)[0]
    m = ball.mats[idx]
    powers = m.copy()
    order = np.zeros(len(idx), dtype=np.int64)
    eye = np.eye(3)
    for k in range(1, max_order + 1):
        hit = (np.abs(powers - eye).max(axis=(1, 2)) <= tol) & (order == 0)
        order[hit] = k
        powers = powers @ m
    counts = Counter(int(o) for o in order if o > 0)
    return TorsionProfile(counts, int((order == 0).sum()), max_order)


@dataclass
class Slimness:
    delta_hat: int
    n_used: int
    n_skipped: int
    seed: int

    @property
    def skip_rate(self) -> float:
        total = self.n_used + self.n_skipped
        return self.n_skipped / total if total else 0.0

    def to_dict(self) -> dict:
        return {"delta_hat": self.delta_hat, "n_used": self.n_used, "n_skipped": self.n_skipped,
                "skip_rate": self.skip_rate, "seed": self.seed}


def triangle_slimness(ball: CayleyBall, sides: Sequence[Sequence[int]]) -> int:
    """Max over sides of the max distance from a side vertex to the other sides."""
    worst = 0
    for k, side in enumerate(sides):
        others = [v for j, s in enumerate(sides) if j != k for v in s]
        if not others:
            continue
        d = ball.bfs(others)
        vals = d[list(side)]
        if (vals < 0).any():
            raise ValueError("side vertex disconnected from the other sides")
        worst = max(worst, int(vals.max()))
    return worst


def empirical_slimness(
    ball: CayleyBall,
    samples: int,
    seed: int,
    sample_radius: int | None = None,
) -> Slimness:
    """Estimate the thinness constant from random geodesic triangles.

    Vertices are drawn from the ball of radius ``sample_radius`` (default
    ``radius // 2``).  A triple is skipped when some pair (u, v) violates
    ``|u| + |v| + d(u, v) <= 2R``, i.e. when a true geodesic could leave the
    ball.
    """
    rng = np.random.default_rng(seed)
    sr = ball.radius // 2 if sample_radius is None else sample_radius
    pool = np.nonzero(ball.dist <= sr)[0]
    delta = 0
    used = skipped = 0
    for _ in range(samples):
        tri = [int(x) for x in rng.choice(pool, size=3)]
        dists = [ball.bfs([u]) for u in tri]
        ok = True
        for i in range(3):
            for j in range(i + 1, 3):
                u, v = tri[i], tri[j]
                if dists[i][v] < 0 or ball.dist[u] + ball.dist[v] + dists[i][v] > 2 * ball.radius:
                    ok = False
        if not ok:
            skipped += 1
            continue
        sides = [ball.geodesic(tri[0], tri[1], dists[0]),
                 ball.geodesic(tri[1], tri[2], dists[1]),
                 ball.geodesic(tri[0], tri[2], dists[0])]
        delta = max(delta, triangle_slimness(ball, sides))
        used += 1
    return Slimness(delta, used, skipped, seed)


@dataclass
class QuasiFit:
    lam: float
    c: float
    witness: tuple[int, int]  # subword [i, j) of B^m attaining the bound
    effective_m: int
    word_length: int

    def holds_for(self, pairs: dict[tuple[int, int], int]) -> bool:
        return all(self.lam * (j - i) - self.c <= d + 1e-12 for (i, j), d in pairs.items())

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "c": self.c, "witness": list(self.witness),
                "effective_m": self.effective_m, "word_length": self.word_length}


def _is_conjugate_shorter(ball: CayleyBall, B: Word) -> bool:
    mb = ball.word_matrix(B)
    reach = (ball.radius - len(B)) // 2
    for u in np.nonzero(ball.dist <= reach)[0]:
        mu = ball.mats[u]
        v = ball.find(mu @ mb @ j_inverse(mu))
        if v is not None and ball.dist[v] < len(B):
            return True
    return False


def subword_distances(ball: CayleyBall, B: Word, m: int) -> dict[tuple[int, int], int] | None:
    """d(q_-, q_+) for every subword q = [i, j) of B^m, or None if one leaves the ball."""
    letters = list(B.letters) * m
    mats = [ball.letter_matrix(a) for a in letters]
    out = {}
    n = len(letters)
    for i in range(n):
        # multiply forward from i; P_i^-1 P_j would lose precision to cancellation
        acc = np.eye(3)
        for j in range(i + 1, n + 1):
            acc = acc @ mats[j - 1]
            v = ball.find(acc)
            if v is None:
                return None
            out[(i, j)] = int(ball.dist[v])
    return out


def quasigeodesic_fit(ball: CayleyBall, B: Word, max_power: int, c_max: float | None = None) -> QuasiFit:
    """Tightest (lambda, c) on the grid lambda in {0.05k}, c in {0.5k} for B^m.

    ``m`` is lowered automatically until every subword of ``B^m`` stays in
    the ball (``effective_m``).  Larger lambda is preferred, then smaller c,
    subject to ``c <= c_max`` (default ``4 * len(B)``).
    """
    B = cyclic_reduce(B)
    if not B or np.abs(ball.word_matrix(B) - np.eye(3)).max() <= IDENTITY_TOL:
        raise ValueError("B represents the identity")
    if _is_conjugate_shorter(ball, B):
        raise ValueError("B is not cyclically reduced: a shorter conjugate exists in the ball")
    c_max = 4.0 * len(B) if c_max is None else c_max
    pairs = None
    m_eff = 0
    for m in range(1, max_power + 1):
        got = subword_distances(ball, B, m)
        if got is None:
            break
        pairs, m_eff = got, m
    if pairs is None:
        raise ValueError("B itself leaves the ball")
    # exact arithmetic: lambda = k/20, c = h/2
    for k in range(20, 0, -1):
        need, wit = 0, (0, 0)
        for (i, j), d in pairs.items():
            val = k * (j - i) - 20 * d  # 20 * (lambda*|q| - d)
            if val > need:
                need, wit = val, (i, j)
        h = -(-need // 10)  # smallest h with 20*h/2 >= need
        if h / 2 <= c_max:
            return QuasiFit(k / 20, h / 2, wit, m_eff, len(B))
    raise ValueError(f"no (lambda, c) on the grid with c <= {c_max}")


@dataclass
class ApeScan:
    verdict: str  # "periodic-witness", "aperiodic-at-scale" or "undecided"
    witness: dict | None
    caps: dict

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness, "caps": self.caps}


def _geodesics(ball: CayleyBall, target: int, limit: int) -> list[list[int]]:
    back = ball.bfs([target])
    n = int(ball.dist[target])
    out: list[list[int]] = []

    def walk(path):
        if len(out) >= limit:
            return
        x = path[-1]
        if x == target:
            out.append(list(path))
            return
        for w in ball.adj[x]:
            if w >= 0 and ball.dist[w] == ball.dist[x] + 1 and back[w] == n - ball.dist[w]:
                path.append(int(w))
                walk(path)
                path.pop()

    walk([0])
    return out


def candidate_periods(ball: CayleyBall, max_len: int, max_order: int = 16) -> list[Word]:
    """Cyclically reduced words of infinite order (proxy) up to ``max_len``.

    Involutions count as their own inverses when reducing.  One
    representative per rotation class; every rotation must be a geodesic
    word in the ball.
    """
    out = []
    seen = set()
    for n in range(1, max_len + 1):
        for letters in product(ball.letters, repeat=n):
            if any(letters[(k + 1) % n] == ball.inverse_letter(letters[k]) for k in range(n)):
                continue
            rots = [letters[k:] + letters[:k] for k in range(n)]
            key = min(rots)
            if key in seen:
                continue
            seen.add(key)
            if element_order(ball.word_matrix(letters), max_order) is not None:
                continue
            geo = True
            for r in rots:
                v = ball.find(ball.word_matrix(r))
                if v is None or ball.dist[v] != n:
                    geo = False
                    break
            if geo:
                out.append(Word._trusted(letters))
    return out


def aperiodicity_scan(
    ball: CayleyBall,
    g: Word,
    Lambda: int,
    t: float,
    period_cap: int = 3,
    length_cap: int | None = None,
    max_geodesics: int = 16,
) -> ApeScan:
    """Search for a Z-periodic path q of length >= t|Z| with both ends Lambda-close to a geodesic for g."""
    target = ball.vertex_of(g)
    caps = {"Lambda": Lambda, "t": t, "period_cap": period_cap, "max_geodesics": max_geodesics}
    if target is None:
        return ApeScan("undecided", None, {**caps, "reason": "g lies outside the ball"})
    length_cap = 2 * ball.radius if length_cap is None else length_cap
    caps["length_cap"] = length_cap
    periods = candidate_periods(ball, period_cap)
    lengths_possible = [Z for Z in periods if math.ceil(t * len(Z)) <= length_cap]
    if not lengths_possible:
        return ApeScan("undecided", None, {**caps, "reason": "caps admit no period of length >= t|Z|"})
    geos = _geodesics(ball, target, max_geodesics)
    for p in geos:
        near = ball.bfs(p, max_dist=Lambda)
        nbhd = np.nonzero(near >= 0)[0]
        in_nbhd = near >= 0
        for Z in lengths_possible:
            zl = Z.letters
            n = len(zl)
            for off in range(n):
                rot = zl[off:] + zl[:off]
                lo = max(1, math.ceil(t * n))
                for L in range(lo, length_cap + 1):
                    V = tuple(rot[k % n] for k in range(L))
                    mv = ball.word_matrix(V)
                    for s in nbhd:
                        e = ball.find(ball.mats[s] @ mv)
                        if e is not None and in_nbhd[e]:
                            witness = {
                                "Z": "*".join(ball.letter_name(a) for a in zl),
                                "V": "*".join(ball.letter_name(a) for a in V),
                                "start": ball.word_text(int(s)),
                                "end": ball.word_text(int(e)),
                                "geodesic": [ball.word_text(v) for v in p],
                            }
                            return ApeScan("periodic-witness", witness, caps)
    return ApeScan("aperiodic-at-scale", None, {**caps, "n_periods": len(lengths_possible), "n_geodesics": len(geos)})
