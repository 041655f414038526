"""Backdoor evaluation: candidate enumeration plus the subset minimality check.

Given a strong Horn backdoor x, every truth assignment over x yields a Horn*
reduct with at most one answer set (the least model of its definite core), so
the candidate space is the 2^|x| sets L u tau^-1(1).  A candidate M survives
iff it models the program and no proper submodel of the GL reduct exists; the
latter is decided by scanning subsets X1 of M n x and propagating a Horn
program per subset, which keeps the check fixed-parameter in |x|.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from itertools import combinations

from .horn import is_model, propagate_definite
from .program import Program, rule_flags
from .reducts import TruthAssignment

ENUM_GUARD = 30
MATERIALIZE_GUARD = 20
SUBSET_GUARD = 30


@dataclass(frozen=True)
class Candidate:
    """One candidate per truth assignment: reduct answer set and its lift."""

    tau: TruthAssignment
    m_reduct: frozenset[int]
    combined: frozenset[int]


@dataclass(frozen=True)
class EvalReport:
    backdoor: frozenset[int]
    answer_sets: frozenset[frozenset[int]]
    candidates_total: int
    candidates_rejected: int


def _prepare(p: Program, x) -> tuple[list[int], list[tuple[int, int, int, int, frozenset[int]]]]:
    """Domain atoms of x and mask-compiled rules for reduct enumeration.

    Rules whose head sits inside x never survive a reduct and tautological
    rules never affect one, so both are compiled away.  Raises when some
    non-tautological rule would leave a non-Horn reduct rule: x is then not
    a strong Horn backdoor, whatever the assignment.
    """
    xx = frozenset(x)
    for a in xx:
        if not (0 <= a < p.n_atoms):
            raise ValueError(f"unknown atom id {a} in backdoor")
    dom = sorted(xx & p.occurring_atoms())
    if len(dom) > ENUM_GUARD:
        raise ValueError(f"backdoor too large to enumerate (> {ENUM_GUARD} atoms)")
    bit = {a: 1 << i for i, a in enumerate(dom)}
    xset = frozenset(dom)
    compiled = []
    for r in p.rules:
        if rule_flags(r).tautological or r.head <= xset:
            continue
        h = r.head - xset
        bn = r.neg_body - xset
        if len(h) != 1 or bn:
            raise ValueError(
                "some truth assignment reduct is not Horn*: "
                "x is not a strong Horn backdoor")
        hm = sum(bit[a] for a in r.head if a in bit)
        pm = sum(bit[a] for a in r.pos_body if a in bit)
        nm = sum(bit[a] for a in r.neg_body if a in bit)
        compiled.append((hm, pm, nm, next(iter(h)), r.pos_body - xset))
    return dom, compiled


def _least_for_mask(compiled, full: int, t: int) -> frozenset[int]:
    t0 = full ^ t
    definite = [(h, bp) for hm, pm, nm, h, bp in compiled
                if not (hm & t or pm & t0 or nm & t)]
    return propagate_definite(definite)


def _true_atoms(dom: list[int], t: int) -> frozenset[int]:
    return frozenset(a for i, a in enumerate(dom) if t >> i & 1)


def candidate_sets(p: Program, x) -> tuple[Candidate, ...]:
    """All candidates in truth assignment order (mask bit i = i-th domain atom)."""
    dom, compiled = _prepare(p, x)
    if len(dom) > MATERIALIZE_GUARD:
        raise ValueError(f"refusing to materialize 2^{len(dom)} candidates")
    full = (1 << len(dom)) - 1
    out = []
    for t in range(full + 1):
        lm = _least_for_mask(compiled, full, t)
        tau = TruthAssignment({a: (t >> i & 1) for i, a in enumerate(dom)})
        out.append(Candidate(tau, lm, lm | _true_atoms(dom, t)))
    return tuple(out)


def check_answer_set(p: Program, x, m) -> bool:
    """Is m an answer set of p?  Fixed-parameter in |x| for Horn backdoors x.

    First checks that m models p, then hunts for a proper submodel of the GL
    reduct by scanning subsets X1 of m n x in size-then-lexicographic order,
    short-circuiting on the first counterexample.
    """
    return _check_minimal(p, x, m, None)


def _check_minimal(p: Program, x, m, subset_order) -> bool:
    xx = frozenset(x)
    mm = frozenset(m)
    for a in xx | mm:
        if not (0 <= a < p.n_atoms):
            raise ValueError(f"unknown atom id {a}")
    if not is_model(p, mm):
        return False
    # non-tautological GL reduct survivors; their erased negative bodies and
    # the dropped tautological rules are satisfied by every subset of mm
    surv = [(r.head, r.pos_body) for r in p.rules
            if not rule_flags(r).tautological and not r.neg_body & mm]
    inter = sorted(mm & xx)
    if len(inter) > SUBSET_GUARD:
        raise ValueError(f"m n x too large to scan (> {SUBSET_GUARD} atoms)")
    if subset_order is None:
        subset_order = (frozenset(c) for size in range(len(inter) + 1)
                        for c in combinations(inter, size))
    m_minus_x = mm - xx
    for x1 in subset_order:
        if _submodel_at(surv, xx, mm, m_minus_x, x1):
            return False
    return True


def _submodel_at(surv, xx, mm, m_minus_x, x1) -> bool:
    """Does the Horn propagation at X1 expose a proper submodel of the reduct?"""
    definite = []
    for h, bp in surv:
        if h & x1:
            continue
        hh = h - xx
        if len(hh) > 1:
            raise ValueError(
                "reduct head minus backdoor has 2 or more atoms: "
                "x is not a strong Horn backdoor")
        if hh:
            definite.append((next(iter(hh)), bp - x1))
    lm = propagate_definite(definite)
    if not lm <= m_minus_x:
        return False
    cand = lm | x1
    if cand == mm:
        return False
    for h, bp in surv:
        if not h & cand and not bp - cand:
            return False
    return True


def _eval_range(p: Program, x, lo: int, hi: int) -> tuple[int, list[frozenset[int]]]:
    dom, compiled = _prepare(p, x)
    full = (1 << len(dom)) - 1
    accepted = []
    for t in range(lo, hi):
        combined = _least_for_mask(compiled, full, t) | _true_atoms(dom, t)
        if check_answer_set(p, x, combined):
            accepted.append(combined)
    return hi - lo, accepted


def answer_sets(p: Program, x, jobs: int = 1) -> EvalReport:
    """Evaluate p through the backdoor x, streaming over truth assignments.

    Candidates are never materialized as a whole; jobs > 1 forks workers over
    contiguous assignment ranges and aggregates in range order.
    """
    xx = frozenset(x)
    dom, _ = _prepare(p, xx)
    total = 1 << len(dom)
    if jobs <= 1 or total < 256:
        _, accepted = _eval_range(p, xx, 0, total)
    else:
        jobs = min(jobs, total)
        bounds = [total * i // (jobs * 4) for i in range(jobs * 4 + 1)]
        ranges = [(p, xx, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            parts = pool.starmap(_eval_range, ranges)
        accepted = [s for _, chunk in parts for s in chunk]
    out = frozenset(accepted)
    return EvalReport(frozenset(dom), out, total, total - len(accepted))


REASON_MODES = ("consistency", "brave", "cautious", "count", "enumerate")


def reason(p: Program, x, mode: str, atom: int | None = None, jobs: int = 1):
    """Reasoning through a backdoor.

    consistency -> bool; count -> int; enumerate -> list of answer sets sorted
    by their sorted id-vectors; brave -> atom in some answer set; cautious ->
    atom in every answer set (vacuously true when there are none).
    """
    if mode not in REASON_MODES:
        raise ValueError(f"mode must be one of {REASON_MODES}")
    if mode in ("brave", "cautious"):
        if atom is None:
            raise ValueError(f"mode {mode!r} needs an atom")
        if not (0 <= atom < p.n_atoms):
            raise ValueError(f"unknown atom id {atom}")
    rep = answer_sets(p, x, jobs=jobs)
    sets = rep.answer_sets
    if mode == "consistency":
        return bool(sets)
    if mode == "count":
        return len(sets)
    if mode == "enumerate":
        return [frozenset(s) for s in sorted(sets, key=sorted)]
    if mode == "brave":
        return any(atom in s for s in sets)
    return all(atom in s for s in sets)
