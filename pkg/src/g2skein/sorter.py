"""Strand sorting: drive every term into the basis-readable form.

A crossing-free term is "sorted" on a strand when every front pass
sits below every behind pass there.  Sorting repeatedly picks the
lowest offending (front, behind) height pair, slides the two passes
past each other (swapping their heights), and pays for the slide by
inserting the self-crossings the move creates, which are resolved on
the spot.  Two adjacent passes cost one crossing (a twist); separated
passes cost a pair of opposite crossings.  Each step removes exactly
one height inversion from every child, which is what guarantees
termination and what the progress monitor checks.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import replace
from typing import Callable, Iterable, NamedTuple, Optional

from . import resolver
from .diagram import (
    Component,
    Expression,
    SelfPass,
    SkeinDiagram,
    StrandPass,
    Term,
    rotate_component,
)
from .errors import InternalInvariantError, StepLimitExceeded
from .laurent import LaurentPoly

__all__ = [
    "StrandPartition",
    "SwapChoice",
    "partition",
    "is_sorted",
    "is_fully_sorted",
    "inversion_count",
    "induction_decision",
    "next_decision",
    "induce_crossings",
    "sort_step",
    "sort_expression",
    "default_step_budget",
]


class StrandPartition(NamedTuple):
    """Heights of front passes (over) and behind passes (under), ascending."""

    over: tuple
    under: tuple

    @property
    def all_heights(self) -> tuple:
        return tuple(sorted(self.over + self.under))


class SwapChoice(NamedTuple):
    under_height: int
    over_height: int


def partition(d: SkeinDiagram, strand: int) -> StrandPartition:
    """Pool pass heights for one strand across every component."""
    cached = d._memo.get(strand)
    if cached is not None:
        return cached
    over: list[int] = []
    under: list[int] = []
    for c in d.components:
        for e, h, _q in c.triples():
            if isinstance(e, StrandPass) and e.strand == strand:
                (over if e.over else under).append(h)
    p = StrandPartition(tuple(sorted(over)), tuple(sorted(under)))
    d._memo[strand] = p
    return p


def is_sorted(d: SkeinDiagram, strand: int) -> bool:
    p = partition(d, strand)
    if not p.over or not p.under:
        return True
    return p.over[-1] < p.under[0]


def is_fully_sorted(d: SkeinDiagram) -> bool:
    return is_sorted(d, 1) and is_sorted(d, 2)


def inversion_count(d: SkeinDiagram) -> int:
    """Number of (front, behind) height pairs in the wrong order, both strands."""
    cached = d._memo.get("inv")
    if cached is not None:
        return cached
    total = 0
    for strand in (1, 2):
        p = partition(d, strand)
        for h in p.over:
            total += bisect_left(p.under, h)
    d._memo["inv"] = total
    return total


def induction_decision(p: StrandPartition) -> Optional[SwapChoice]:
    """Pick the height pair to swap next, or None when already sorted.

    Walks the pooled heights bottom-up past the sorted prefix of front
    passes; the first front pass above some behind pass is paired with
    the highest behind pass underneath it.  The two passes are always
    height-adjacent on the strand.
    """
    overs = sorted(p.over)
    unders = sorted(p.under)
    if not overs or not unders:
        return None
    both = sorted(overs + unders)
    k = 0
    while k < len(overs) and both[k] == overs[k]:
        k += 1
    if k == len(overs):
        return None
    c = overs[k]
    idx = bisect_left(unders, c) - 1
    if idx < 0:
        raise InternalInvariantError("inversion vanished mid-decision")
    return SwapChoice(under_height=unders[idx], over_height=c)


def next_decision(d: SkeinDiagram) -> Optional[tuple[int, SwapChoice]]:
    """First strand still unsorted and the swap chosen for it, if any."""
    for strand in (1, 2):
        choice = induction_decision(partition(d, strand))
        if choice is not None:
            return strand, choice
    return None


# ---------------------------------------------------------------------------
# crossing induction

def _locate_pass(d: SkeinDiagram, height: int, over: bool) -> tuple[int, int, StrandPass]:
    for li, c in enumerate(d.components):
        for j, (e, h, _q) in enumerate(c.triples()):
            if isinstance(e, StrandPass) and h == height:
                if e.over != over:
                    kind = "front" if over else "behind"
                    raise InternalInvariantError(
                        f"pass at height {height} is not a {kind} pass"
                    )
                return li, j, e
    raise InternalInvariantError(f"no strand pass at height {height}")


def _travels_right_to_left(e: StrandPass, q: int) -> bool:
    return q == 4 if e.strand == 1 else q == 5


def _with_component(d: SkeinDiagram, li: int, c: Component) -> SkeinDiagram:
    comps = d.components[:li] + (c,) + d.components[li + 1 :]
    return SkeinDiagram(comps, d.sign_pairs)


def _swap_heights(d: SkeinDiagram, spot_a: tuple[int, int], spot_b: tuple[int, int]) -> SkeinDiagram:
    (la, ja), (lb, jb) = spot_a, spot_b
    ha = d.components[la].heights[ja]
    hb = d.components[lb].heights[jb]
    comps = list(d.components)
    for (li, j, h) in ((la, ja, hb), (lb, jb, ha)):
        c = comps[li]
        heights = c.heights[:j] + (h,) + c.heights[j + 1 :]
        comps[li] = Component(c.entries, heights, c.orients)
    return SkeinDiagram(tuple(comps), d.sign_pairs)


def _insert_entries(c: Component, inserts: Iterable[tuple[int, SelfPass]]) -> Component:
    """Insert marker branches at the given slots (computed pre-insertion)."""
    ents, heights, orients = list(c.entries), list(c.heights), list(c.orients)
    for pos, entry in sorted(inserts, key=lambda iv: iv[0], reverse=True):
        ents.insert(pos, entry)
        heights.insert(pos, 0)
        orients.insert(pos, 0)
    return Component.make(ents, heights, orients)


def induce_crossings(t: Term, a: int, c: int) -> Term:
    """Swap the heights of the behind pass at a and front pass at c, and
    insert the self-crossings that pay for the slide.

    Adjacent passes on one component (including across the traversal
    seam) get a single twist crossing, with the term coefficient scaled
    by the twist compensation -t^(-3 sign); everything else gets a
    cancelling crossing pair on the two sides of the strand.  New
    branches carry placeholder height 0 and code 0; the sign table of
    the result holds exactly the new crossings.
    """
    if t.diagram.sign_pairs:
        raise InternalInvariantError("crossing induction on an unresolved term")
    if not a < c:
        raise InternalInvariantError(f"swap pair out of order: {a} >= {c}")
    d = t.diagram
    la, ja, pa = _locate_pass(d, a, over=False)
    lc, jc, pc = _locate_pass(d, c, over=True)
    if pa.strand != pc.strand:
        raise InternalInvariantError("swap pair spans both strands")

    d = _swap_heights(d, (la, ja), (lc, jc))

    same = la == lc
    m = len(d.components[la]) if same else 0
    adjacent = same and (abs(ja - jc) == 1 or (m > 2 and {ja, jc} == {0, m - 1}))

    if adjacent:
        if {ja, jc} == {0, m - 1} and abs(ja - jc) != 1:
            # bring the seam-straddling pair together; the start point of
            # the traversal is arbitrary, so this is the same curve
            d = _with_component(d, la, rotate_component(d.components[la], m - 1))
            ja, jc = (0, 1) if ja == m - 1 else (1, 0)
        first, second = (ja, jc) if ja < jc else (jc, ja)
        comp = d.components[la]
        over_first = first == jc
        eps = 1 if _travels_right_to_left(
            comp.entries[first], comp.orients[first]
        ) else -1
        head = SelfPass(1, over_first)
        tail = SelfPass(1, not over_first)
        comp = _insert_entries(comp, [(first, head), (second + 1, tail)])
        d = _with_component(d, la, comp)
        new_signs = {1: eps}
        coeff = t.coeff * LaurentPoly.monomial(-3 * eps, -1)
    else:
        dir_a = _travels_right_to_left(pa, d.components[la].orients[ja])
        dir_c = _travels_right_to_left(pc, d.components[lc].orients[jc])
        eps1 = 1 if dir_a == dir_c else -1
        new_signs = {1: eps1, 2: -eps1}

        def flank(j: int, rtl: bool, over: bool) -> list[tuple[int, SelfPass]]:
            before_id, after_id = (2, 1) if rtl else (1, 2)
            return [
                (j, SelfPass(before_id, over)),
                (j + 1, SelfPass(after_id, over)),
            ]

        if same:
            comp = _insert_entries(
                d.components[la],
                flank(ja, dir_a, False) + flank(jc, dir_c, True),
            )
            d = _with_component(d, la, comp)
        else:
            d = _with_component(
                d, la, _insert_entries(d.components[la], flank(ja, dir_a, False))
            )
            d = _with_component(
                d, lc, _insert_entries(d.components[lc], flank(jc, dir_c, True))
            )
        coeff = t.coeff

    out = SkeinDiagram.make(d.components, new_signs)
    return replace(t, coeff=coeff, diagram=out)


# ---------------------------------------------------------------------------
# the sorting loop

def default_step_budget(d: SkeinDiagram) -> int:
    m = d.strand_pass_count()
    return 4 * m * m


def sort_step(
    t: Term,
    max_steps: int | None = None,
    decision: Optional[tuple[int, SwapChoice]] = None,
) -> Optional[list[Term]]:
    """One slide on the first unsorted strand; None when nothing to do.

    Children carry an incremented step counter; exceeding the budget
    raises instead of silently truncating.  Every child must come back
    with strictly fewer inversions (or strictly fewer strand passes)
    than the parent, otherwise the progress monitor aborts.  A caller
    that already ran ``next_decision`` can pass the result along.
    """
    d = t.diagram
    if d.sign_pairs:
        raise InternalInvariantError("sorting requires all crossings resolved")
    if decision is None:
        decision = next_decision(d)
    if decision is None:
        return None
    _strand, choice = decision

    budget = max_steps if max_steps is not None else default_step_budget(d)
    if t.steps + 1 > budget:
        raise StepLimitExceeded(
            f"sorting exceeded {budget} steps for one term"
        )

    before_inv = inversion_count(d)
    before_passes = d.strand_pass_count()

    staged = induce_crossings(t, choice.under_height, choice.over_height)
    staged = replace(staged, steps=t.steps + 1)
    pending = [staged]
    for cid in sorted(staged.diagram.signs()):
        nxt = []
        for term in pending:
            nxt.extend(resolver.resolve_crossing(term, cid))
        pending = nxt

    for child in pending:
        if not (
            inversion_count(child.diagram) < before_inv
            or child.diagram.strand_pass_count() < before_passes
        ):
            raise InternalInvariantError("sorting step made no progress")
    return pending


def sort_expression(
    e: Expression,
    *,
    max_steps: int | None = None,
    compact: Callable[[Expression], Expression] | None = None,
    mapper: Callable | None = None,
) -> Expression:
    """Run sort_step to a fixed point over the whole expression.

    ``compact`` (typically deduplication) is applied after every round;
    ``mapper`` lets the caller parallelize the per-term steps.
    """
    run = mapper if mapper is not None else lambda f, xs: [f(x) for x in xs]
    current = list(e)
    while True:
        results = run(lambda term: sort_step(term, max_steps), current)
        nxt: list[Term] = []
        dirty = False
        for term, children in zip(current, results):
            if children is None:
                nxt.append(term)
            else:
                dirty = True
                nxt.extend(children)
        if compact is not None:
            nxt = compact(nxt)
        if not dirty:
            return nxt
        current = nxt
