"""Finite-prefix driver for the branch construction of periodic quotients.

Starting from a group G with a finite-index normal subgroup N, every bit of
a binary string adjoins one relator ``g^n``: ``n = p^s`` for bit 0 and
``n = p^q'`` for bit 1, where ``q'`` is the first δ-level of N avoided by
``g^(p^s)``.  Sibling branches then differ in ``|N/δ^p_{q'}(N)|``, which is
what :func:`divergence_check` measures.

Only finite shadows are computed.  The integer ``m`` of each step comes from
the schedule (it is not effectively computable), the elements ``g`` are
taken from the schedule as given, and "infinite order" is replaced by the
proxy "nonzero image in some computed δ-layer of N".
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from .coset import EnumLimits, LimitExceeded, enumerate_cosets
from .presentation import Presentation, format_word, parse_word
from .pseries import Ladder, PSeriesReport, ladder_report, membership_level
from .schreier import NotInSubgroup, rewrite_in_subgroup, subgroup_presentation, tietze_simplify
from .words import Word


class ScheduleError(ValueError):
    pass


class StepRefused(RuntimeError):
    """membership_level could not decide within limits; no value is guessed."""


@dataclass(frozen=True)
class ScheduleEntry:
    candidate: Word
    m: int
    s_override: int | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ScheduleError("m must be >= 1")


@dataclass(frozen=True)
class StepRecord:
    bit: int
    relator: Word
    exponent: int
    s: int
    v: int
    r: int
    q: int
    candidate_level: int | None

    def to_dict(self, alphabet) -> dict:
        return {
            "bit": self.bit,
            "relator": format_word(self.relator, alphabet),
            "exponent": self.exponent,
            "s": self.s,
            "v": self.v,
            "r": self.r,
            "q": self.q,
            "candidate_level": self.candidate_level,
        }


@dataclass(frozen=True)
class BranchState:
    base: Presentation
    subgroup_gens: tuple[Word, ...]
    r: int = 0
    q: int = 0
    history: tuple[StepRecord, ...] = ()

    @property
    def quotient(self) -> Presentation:
        return self.base.with_relators(h.relator for h in self.history)

    @property
    def bits(self) -> str:
        return "".join(str(h.bit) for h in self.history)


@dataclass
class _SubgroupView:
    """Presentation of the image of N in the current quotient, plus rewriting."""

    table: object
    sp: object

    def rewrite(self, w: Word) -> Word:
        return rewrite_in_subgroup(self.sp, self.table, w)


def subgroup_view(st: BranchState, limits: EnumLimits | None = None) -> _SubgroupView:
    quotient = st.quotient
    table = enumerate_cosets(quotient, st.subgroup_gens, limits)
    sp = tietze_simplify(subgroup_presentation(quotient, table))
    return _SubgroupView(table, sp)


def branch_step(
    st: BranchState,
    bit: int,
    entry: ScheduleEntry,
    p: int,
    limits: EnumLimits | None = None,
) -> BranchState:
    """Adjoin ``g^(p^s)`` (bit 0) or ``g^(p^v)`` (bit 1), g = ``entry.candidate``.

    ``s = max(r + m, q)`` (or ``entry.s_override``, which may not be below
    ``q``); ``v`` is the smallest level with ``g^(p^s)`` outside δ^p_v(N).
    The new counters are ``r + m`` and ``v``.
    """
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    view = subgroup_view(st, limits)
    g = entry.candidate
    try:
        g_sub = view.rewrite(g)
    except NotInSubgroup:
        raise ScheduleError(f"candidate {g} is not in the subgroup N") from None
    ladder = Ladder(view.sp.presentation, p, limits)
    g_level = membership_level(view.sp.presentation, p, g_sub, ladder=ladder)
    if g_level.in_all:
        raise ScheduleError(f"candidate {g} is trivial in the current quotient")
    if not g_level.decided:
        raise StepRefused(f"cannot certify a nonzero δ-layer image for {g}: {g_level.reason}")
    s = max(st.r + entry.m, st.q)
    if entry.s_override is not None:
        if entry.s_override < st.q:
            raise ScheduleError(f"s_override {entry.s_override} is below q = {st.q}")
        s = entry.s_override
    gs = g_sub ** (p**s)
    mem = membership_level(view.sp.presentation, p, gs, ladder=ladder)
    if not mem.decided:
        raise StepRefused(f"membership of g^(p^{s}) undecided: {mem.reason}")
    v = mem.level
    if v <= s:
        raise AssertionError(f"g^(p^{s}) must lie in δ^p_{s}; got v = {v}")
    exponent = p**s if bit == 0 else p**v
    record = StepRecord(bit, g ** exponent, exponent, s, v, st.r + entry.m, v, g_level.level)
    return replace(st, r=st.r + entry.m, q=v, history=st.history + (record,))


def subgroup_report(st: BranchState, p: int, depth: int, limits: EnumLimits | None = None) -> PSeriesReport:
    view = subgroup_view(st, limits)
    return ladder_report(Ladder(view.sp.presentation, p, limits), depth)


@dataclass
class Divergence:
    level: int
    e0: int | None
    e1: int | None
    strict: bool
    conclusive: bool
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "e0": self.e0,
            "e1": self.e1,
            "strict": self.strict,
            "conclusive": self.conclusive,
            "reason": self.reason,
        }


def divergence_check(st0: BranchState, st1: BranchState, p: int, limits: EnumLimits | None = None) -> Divergence:
    """Compare |N/δ^p_v(N)| of two sibling branches at their recorded level v."""
    v = st0.q
    if st1.q != v:
        raise ValueError("states do not share a recorded level; are they siblings?")
    try:
        reps = [subgroup_report(st, p, v, limits) for st in (st0, st1)]
    except LimitExceeded as exc:
        return Divergence(v, None, None, False, False, str(exc))
    if any(r.truncated for r in reps):
        return Divergence(v, None, None, False, False, "; ".join(r.reason for r in reps if r.reason))
    e0, e1 = reps[0].exponents[v], reps[1].exponents[v]
    return Divergence(v, e0, e1, e0 < e1, True)


@dataclass
class OmegaRun:
    states: list[BranchState]
    report: PSeriesReport

    def audit(self) -> dict:
        final = self.states[-1]
        alphabet = final.base.alphabet
        return {
            "bits": final.bits,
            "steps": [h.to_dict(alphabet) for h in final.history],
            "p_series": self.report.to_dict(),
        }


def run_omega(
    base: Presentation,
    subgroup_gens: Sequence[Word],
    p: int,
    bits: str,
    schedule: Sequence[ScheduleEntry],
    limits: EnumLimits | None = None,
    report_depth: int | None = None,
) -> OmegaRun:
    """Fold :func:`branch_step` along ``bits``; report the δ-orders of the final N-image.

    ``report_depth`` defaults to the last recorded level ``q``.
    """
    if any(b not in "01" for b in bits):
        raise ValueError(f"bit string {bits!r} contains characters other than 0/1")
    if len(schedule) < len(bits):
        raise ScheduleError("schedule is shorter than the bit string")
    st = BranchState(base, tuple(subgroup_gens))
    states = [st]
    for bit, entry in zip(bits, schedule):
        st = branch_step(st, int(bit), entry, p, limits)
        states.append(st)
    depth = st.q if report_depth is None else report_depth
    return OmegaRun(states, subgroup_report(st, p, depth, limits))


def parse_schedule(text: str, alphabet) -> list[ScheduleEntry]:
    """One entry per line: ``candidate_word m [s_override]``; ``#`` starts a comment."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ScheduleError(f"line {lineno}: expected 'candidate m [s_override]'")
        try:
            w = parse_word(parts[0], alphabet)
            m = int(parts[1])
            s = int(parts[2]) if len(parts) == 3 else None
        except ValueError as exc:
            raise ScheduleError(f"line {lineno}: {exc}") from None
        entries.append(ScheduleEntry(w, m, s))
    return entries
