"""Reidemeister–Schreier presentations of finite-index subgroups.

A :class:`SubgroupPresentation` keeps, next to the subgroup's own
presentation, the ambient word of every subgroup generator and a rewriting map
``(coset, generator) -> word over subgroup generators``.  Tietze moves update
that map, so rewriting stays valid after simplification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coset import CosetTable, _standardize, schreier_transversal
from .presentation import Presentation
from .words import Alphabet, Word, cyclic_canonical, cyclic_reduce


class NotInSubgroup(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupPresentation:
    presentation: Presentation
    ambient: Presentation
    gen_words: tuple[Word, ...]
    schreier_map: tuple[tuple[Word, ...], ...]
    n_raw_relators: int
    final: bool = True

    @property
    def ngens(self) -> int:
        return self.presentation.ngens

    @property
    def relators(self) -> tuple[Word, ...]:
        return self.presentation.relators

    def back_substitute(self, w: Word) -> Word:
        """Ambient word represented by a word over the subgroup generators."""
        out = Word()
        for a in w.letters:
            g = self.gen_words[abs(a) - 1]
            out = out * (g if a > 0 else g.inverse())
        return out

    def rewrite(self, t: CosetTable, w: Word, start: int = 0) -> tuple[Word, int]:
        """Reidemeister rewrite of ``w`` read from coset ``start``; returns ``(word, end coset)``."""
        smap = self.schreier_map
        tab = t.table
        c = start
        letters: list[int] = []
        for a in w.letters:
            if a > 0:
                i = a - 1
                letters.extend(smap[c][i].letters)
                c = tab[c][2 * i]
            else:
                i = -a - 1
                c = tab[c][2 * i + 1]
                letters.extend(-b for b in reversed(smap[c][i].letters))
        return Word(letters), c

    def summary(self) -> dict:
        return {
            "n_generators": self.ngens,
            "n_relators": len(self.relators),
            "relator_lengths": sorted(len(r) for r in self.relators),
            "simplified": self.final,
        }


def schreier_rank(ambient_rank: int, idx: int) -> int:
    """Rank of an index-``idx`` subgroup of a free group of rank ``ambient_rank``."""
    if ambient_rank < 1 or idx < 1:
        raise ValueError("rank and index must be positive")
    return (ambient_rank - 1) * idx + 1


def subgroup_presentation(p: Presentation, t: CosetTable) -> SubgroupPresentation:
    """Raw Reidemeister–Schreier presentation of the subgroup with coset table ``t``.

    Schreier generators along transversal tree edges are trivial and dropped.
    Relators are the rewrites of every ambient relator from every coset;
    rewrites that reduce to the empty word are omitted from the presentation
    but counted in ``n_raw_relators``.
    """
    if t.ngens != p.ngens:
        raise ValueError("coset table and presentation have different alphabets")
    reps = schreier_transversal(t)
    names: list[str] = []
    gen_words: list[Word] = []
    smap = []
    gens = p.gens()
    for c in range(t.n_cosets):
        row = []
        for i in range(p.ngens):
            d = t.table[c][2 * i]
            w = reps[c] * gens[i] * reps[d].inverse()
            if not w:
                row.append(Word())
            else:
                names.append(f"{p.alphabet.names[i]}_{c}")
                gen_words.append(w)
                row.append(Word((len(names),)))
        smap.append(tuple(row))
    sp = SubgroupPresentation(Presentation(Alphabet(names)), p, tuple(gen_words), tuple(smap), 0)
    rels = []
    for r in p.relators:
        for c in range(t.n_cosets):
            w, end = sp.rewrite(t, r, c)
            if end != c:
                raise AssertionError(f"relator {r} does not close at coset {c}")
            w = cyclic_reduce(w)
            if w:
                rels.append(w)
    return SubgroupPresentation(
        Presentation(Alphabet(names), rels),
        p,
        tuple(gen_words),
        tuple(smap),
        len(p.relators) * t.n_cosets,
    )


def _substitute(w: tuple, g: int, repl: tuple) -> tuple:
    """Replace generator ``g`` (1-based) by ``repl`` and shift higher generators down."""
    inv = tuple(-a for a in reversed(repl))
    out: list[int] = []
    for a in w:
        if abs(a) == g:
            out.extend(repl if a > 0 else inv)
        elif abs(a) > g:
            out.append(a - 1 if a > 0 else a + 1)
        else:
            out.append(a)
    return Word(out).letters


def tietze_simplify(
    sp: SubgroupPresentation,
    budget: int = 10_000,
    eliminate: bool = True,
    max_eliminator_length: int | None = None,
) -> SubgroupPresentation:
    """Conservative Tietze simplification.

    Always: cyclically reduce relators, drop empty ones and duplicates up to
    rotation and inversion.  Then repeatedly (one step each, at most
    ``budget`` steps) eliminate a generator via a relator of length 1, or via
    a relator in which that generator occurs exactly once, substituting its
    expression everywhere else.  ``eliminate=False`` keeps every generator.
    The result is flagged ``final=False`` when the budget ran out first.
    """
    names = list(sp.presentation.alphabet.names)
    gen_words = list(sp.gen_words)
    smap = [[w.letters for w in row] for row in sp.schreier_map]
    rels = [r.letters for r in sp.relators]

    def normalize(rels):
        seen = set()
        out = []
        for r in rels:
            key = cyclic_canonical(Word._trusted(r))
            if key and key not in seen:
                seen.add(key)
                out.append(cyclic_reduce(Word._trusted(r)).letters)
        return out

    def pick(rels):
        counts: dict[int, int] = {}
        for r in rels:
            for a in r:
                counts[abs(a)] = counts.get(abs(a), 0) + 1
        best = None
        for k, r in enumerate(rels):
            if max_eliminator_length is not None and len(r) > max_eliminator_length and len(r) > 1:
                continue
            local: dict[int, int] = {}
            for a in r:
                local[abs(a)] = local.get(abs(a), 0) + 1
            for g, n in local.items():
                if n == 1:
                    key = (len(r), counts[g], -g, k)
                    if best is None or key < best[0]:
                        best = (key, k, g)
        return best

    rels = normalize(rels)
    steps = 0
    final = True
    while eliminate:
        choice = pick(rels)
        if choice is None:
            break
        if steps >= budget:
            final = False
            break
        _, k, g = choice
        r = rels[k]
        pos = next(j for j, a in enumerate(r) if abs(a) == g)
        rot = r[pos + 1 :] + r[:pos]  # r ~ g^e * rot  =>  g^e = rot^-1
        e = 1 if r[pos] > 0 else -1
        expr = Word._trusted(rot).inverse() if e == 1 else Word._trusted(rot)
        # expr is over the old numbering and does not contain g
        repl = _substitute(expr.letters, g, ())
        del rels[k]
        rels = normalize([_substitute(x, g, repl) for x in rels])
        smap = [[_substitute(w, g, repl) for w in row] for row in smap]
        del names[g - 1]
        del gen_words[g - 1]
        steps += 1

    return SubgroupPresentation(
        Presentation(Alphabet(names), [Word._trusted(r) for r in rels]),
        sp.ambient,
        tuple(gen_words),
        tuple(tuple(Word._trusted(w) for w in row) for row in smap),
        sp.n_raw_relators,
        final,
    )


def rewrite_in_subgroup(sp: SubgroupPresentation, t: CosetTable, w: Word) -> Word:
    """Express a subgroup element ``w`` as a word over the subgroup generators."""
    out, end = sp.rewrite(t, w, 0)
    if end != 0:
        raise NotInSubgroup(f"word {w} is not in the subgroup (ends at coset {end})")
    return out


def compose_tables(outer: CosetTable, sp: SubgroupPresentation, inner: CosetTable) -> CosetTable:
    """Coset table of K <= G from tables of H <= G and K <= H.

    ``sp`` is the presentation of H derived from ``outer``; ``inner`` is a
    coset table over ``sp``'s generators.  Coset ``K h t_i`` is sent by a
    generator ``g`` to ``K h s t_{i g}`` where ``s`` is the Schreier word.
    """
    if inner.ngens != sp.ngens:
        raise ValueError("inner table does not match the subgroup presentation")
    n_out, n_in = outer.n_cosets, inner.n_cosets
    ngens = outer.ngens
    table = []
    for k in range(n_in):
        for i in range(n_out):
            row = []
            for g in range(ngens):
                j = outer.table[i][2 * g]
                kk = inner.trace(sp.schreier_map[i][g], k)
                row.append(kk * n_out + j)
                j = outer.table[i][2 * g + 1]
                kk = inner.trace(sp.schreier_map[j][g].inverse(), k)
                row.append(kk * n_out + j)
            table.append(tuple(row))
    return CosetTable(ngens, _standardize(tuple(table)), n_out * n_in, 0)


def with_generators(sp: SubgroupPresentation, names: Sequence[str]) -> SubgroupPresentation:
    """Rename the subgroup generators."""
    return SubgroupPresentation(
        Presentation(Alphabet(names), sp.relators),
        sp.ambient,
        sp.gen_words,
        sp.schreier_map,
        sp.n_raw_relators,
        sp.final,
    )
