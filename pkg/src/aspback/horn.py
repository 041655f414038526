"""Horn engine: model checking, least models, Horn* answer sets."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .program import Program, TargetClass, core, in_target_class
from .reducts import gl_reduct


def is_model(p: Program, m: Iterable[int]) -> bool:
    """Classical satisfaction: every rule r has (H u B-) meeting M or B+ \\ M nonempty."""
    mm = frozenset(m)
    for r in p.rules:
        if (r.head | r.neg_body) & mm:
            continue
        if r.pos_body - mm:
            continue
        return False
    return True


def propagate_definite(definite: list[tuple[int, frozenset[int]]]) -> frozenset[int]:
    """Least model of (head, positive body) pairs by counting unit propagation."""
    count = [len(body) for _, body in definite]
    occ: dict[int, list[int]] = {}
    for i, (_, body) in enumerate(definite):
        for a in body:
            occ.setdefault(a, []).append(i)

    derived: set[int] = set()
    queue: deque[int] = deque()
    for i, (h, _) in enumerate(definite):
        if count[i] == 0 and h not in derived:
            derived.add(h)
            queue.append(h)
    while queue:
        a = queue.popleft()
        for i in occ.get(a, ()):
            count[i] -= 1
            if count[i] == 0:
                h = definite[i][0]
                if h not in derived:
                    derived.add(h)
                    queue.append(h)
    return frozenset(derived)


def least_model(p: Program) -> tuple[frozenset[int], bool]:
    """Least model of a Horn program via counter-based unit propagation.

    Returns (lm, sat): lm is the least model of the definite rules, sat tells
    whether lm also satisfies the constraints (Horn programs have a model iff
    their least model satisfies every constraint).  Raises on non-Horn input.
    Linear in the total size of the program.
    """
    definite: list[tuple[int, frozenset[int]]] = []
    constraints: list[frozenset[int]] = []
    for r in p.rules:
        if r.neg_body or len(r.head) > 1:
            raise ValueError("least_model requires a Horn program")
        if r.head:
            definite.append((next(iter(r.head)), r.pos_body))
        else:
            constraints.append(r.pos_body)

    lm = propagate_definite(definite)
    sat = all(body - lm for body in constraints)
    return lm, sat


def horn_star_answer_sets(p: Program) -> set[frozenset[int]]:
    """Answer sets of a Horn* program (at most one exists).

    The only candidate is the least model L of core(p) (all of whose rules
    are definite); L is an answer set iff it models the GL reduct of the full
    program, which covers tautological rules and constraints.
    """
    if not in_target_class(p, TargetClass.HORN):
        raise ValueError("program is not Horn*")
    q = core(p)
    lm, _ = least_model(q)
    if is_model(gl_reduct(p, lm), lm):
        return {lm}
    return set()
