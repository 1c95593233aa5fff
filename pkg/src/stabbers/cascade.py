"""The cascading classification engine.

Segments move through the classified / waiting / unknown partition: coloring
one endpoint forces its partner opposite, region growth is re-scanned through
the endpoint index, and every hit drags another segment into the waiting
queue. A journal of fine-grained events supports checkpoints at quiescence
and exact rollback, which the sweep phases of the 3-rectangle solver rely on.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .core import (
    Classification,
    Color,
    DoubleAssignmentConflict,
    EndpointId,
    Instance,
    InternalInvariantViolation,
    StaleCheckpoint,
)
from .index import EndpointIndex
from .regions import Contradiction, QueryBox

UNKNOWN, WAITING, CLASSIFIED = 0, 1, 2

_EVT_ENQ = 0  # (seg,)                segment pulled U -> W, index rows dropped
_EVT_CLS = 1  # (seg, pending_pair)   segment colored W -> C
_EVT_REG = 2  # (undo_token,)         one region mutation


class Checkpoint(NamedTuple):
    position: int
    state_id: int


@dataclass(frozen=True)
class RunResult:
    quiescent: bool
    witness: EndpointId | None = None

    @property
    def contradiction(self) -> bool:
        return not self.quiescent


QUIESCENT = RunResult(True)


class CascadeState:
    """One solver run's mutable state; single-threaded, cheaply cloneable."""

    def __init__(self, inst: Instance, regions, *, discipline: str = "fifo",
                 index: EndpointIndex | None = None):
        if discipline not in ("fifo", "lifo"):
            raise ValueError("queue discipline must be 'fifo' or 'lifo'")
        self.inst = inst
        self.regions = regions
        self.discipline = discipline
        n = inst.n
        self.colors: list[Color | None] = [None] * (2 * n)
        self.status = [UNKNOWN] * n
        self.pending: dict[int, tuple[Color, Color]] = {}
        self.wq: deque[int] = deque()
        self.journal: list[tuple] = []
        self.index = index if index is not None else EndpointIndex(inst)
        self._state_id = 0

    # -- seeding ---------------------------------------------------------

    def seed(self, assignments: Iterable[tuple[EndpointId, Color]]) -> RunResult:
        """Queue explicit colorings; partners implicitly get the opposite
        color. Conflicting colors on one endpoint raise; a segment whose two
        endpoints are forced to the same color is a contradiction outcome."""
        per_seg: dict[int, dict[str, Color]] = {}
        for eid, color in assignments:
            slot = per_seg.setdefault(eid.seg, {})
            old = slot.get(eid.end)
            if old is not None and old is not color:
                raise DoubleAssignmentConflict(f"endpoint {eid} seeded with both colors")
            slot[eid.end] = color
        for seg in sorted(per_seg):
            slot = per_seg[seg]
            if len(slot) == 2 and slot["A"] is slot["B"]:
                return RunResult(False, EndpointId(seg, "A"))
        for seg in per_seg:
            if self.status[seg] != UNKNOWN:
                raise InternalInvariantViolation(f"seeded segment {seg} is not unknown")
        for seg, slot in sorted(per_seg.items()):
            if "A" in slot:
                ca = slot["A"]
            else:
                ca = slot["B"].opposite()
            self._enqueue(seg, ca)
        return QUIESCENT

    def _enqueue(self, seg: int, color_a: Color) -> None:
        self.status[seg] = WAITING
        self.pending[seg] = (color_a, color_a.opposite())
        self.index.deactivate(EndpointId(seg, "A"))
        self.index.deactivate(EndpointId(seg, "B"))
        self.wq.append(seg)
        self.journal.append((_EVT_ENQ, seg))

    def absorb(self, query: QueryBox) -> None:
        """Pull every unknown segment with an endpoint in the red box into W
        as red-at-that-endpoint (blue boxes symmetric via ``absorb_blue``)."""
        self._absorb(query, Color.RED)

    def absorb_blue(self, query: QueryBox) -> None:
        self._absorb(query, Color.BLUE)

    def _absorb(self, query: QueryBox, color: Color) -> None:
        hits = self.index.report(*query)
        for eid in sorted(hits):
            if self.status[eid.seg] != UNKNOWN:
                # partner matched the same box; the region update on the
                # pending pair will surface the contradiction if any
                continue
            self._enqueue(eid.seg, color if eid.end == "A" else color.opposite())

    def register_region_delta(self, delta) -> None:
        """Journal a region mutation made directly by the solver (seeding)
        and re-scan the newly covered areas."""
        undo, queries = delta
        self.journal.append((_EVT_REG, undo))
        for qcolor, box in queries:
            self._absorb(box, qcolor)

    # -- the cascade loop --------------------------------------------------

    def run(self) -> RunResult:
        """Classify until the waiting queue empties or a contradiction hits.

        Deterministic for a fixed queue discipline; no segment is classified
        more than once per call.
        """
        enqueued_this_run: set[int] = set()
        pop = self.wq.popleft if self.discipline == "fifo" else self.wq.pop
        while self.wq:
            seg = pop()
            pair = self.pending.pop(seg)
            if seg in enqueued_this_run:
                raise InternalInvariantViolation(f"segment {seg} classified twice in one run")
            enqueued_this_run.add(seg)
            self.journal.append((_EVT_CLS, seg, pair))
            self.status[seg] = CLASSIFIED
            ia, ib = 2 * seg, 2 * seg + 1
            self.colors[ia], self.colors[ib] = pair
            # red endpoint first: regions always see red before its blue mate
            order = (ia, ib) if pair[0] is Color.RED else (ib, ia)
            for idx in order:
                color = self.colors[idx]
                try:
                    undo, queries = self.regions.add_point(
                        self.inst.xs[idx], self.inst.ys[idx], color
                    )
                except Contradiction:
                    return RunResult(False, EndpointId.from_index(idx))
                self.journal.append((_EVT_REG, undo))
                for qcolor, box in queries:
                    self._absorb(box, qcolor)
        return QUIESCENT

    # -- checkpoints -------------------------------------------------------

    def checkpoint(self) -> Checkpoint:
        if self.wq or self.pending:
            raise InternalInvariantViolation("checkpoints are only taken at quiescence")
        self._state_id += 1
        return Checkpoint(len(self.journal), self._state_id)

    def rollback(self, cp: Checkpoint) -> None:
        """Restore the exact state (partition, colors, regions, index) the
        checkpoint was taken at."""
        if cp.position > len(self.journal):
            raise StaleCheckpoint("journal was truncated past this checkpoint")
        while len(self.journal) > cp.position:
            evt = self.journal.pop()
            tag = evt[0]
            if tag == _EVT_REG:
                self.regions.apply_undo(evt[1])
            elif tag == _EVT_CLS:
                seg, pair = evt[1], evt[2]
                self.colors[2 * seg] = self.colors[2 * seg + 1] = None
                self.status[seg] = WAITING
                self.pending[seg] = pair
            else:  # _EVT_ENQ
                seg = evt[1]
                self.pending.pop(seg, None)
                self.status[seg] = UNKNOWN
                self.index.activate(EndpointId(seg, "A"))
                self.index.activate(EndpointId(seg, "B"))
        self.wq.clear()
        if self.pending:
            raise InternalInvariantViolation("rollback target was not quiescent")

    def clone(self) -> "CascadeState":
        other = object.__new__(CascadeState)
        other.inst = self.inst
        other.regions = _clone_regions(self.regions)
        other.discipline = self.discipline
        other.colors = list(self.colors)
        other.status = list(self.status)
        other.pending = dict(self.pending)
        other.wq = deque(self.wq)
        other.journal = list(self.journal)
        other.index = self.index.clone()
        other._state_id = self._state_id
        return other

    # -- inspection ---------------------------------------------------------

    def unknown_segments(self) -> list[int]:
        return [s for s in range(self.inst.n) if self.status[s] == UNKNOWN]

    def color_of(self, eid: EndpointId) -> Color | None:
        return self.colors[eid.index]

    def red_endpoints(self) -> list[EndpointId]:
        return [EndpointId.from_index(i) for i, c in enumerate(self.colors)
                if c is Color.RED]

    def classification(self) -> Classification:
        out = Classification()
        for i, c in enumerate(self.colors):
            if c is not None:
                out.assign(EndpointId.from_index(i), c)
        return out

    def journal_colorings(self) -> list[tuple[int, Color, Color]]:
        """The (segment, colorA, colorB) classification sequence, in order."""
        return [(e[1], e[2][0], e[2][1]) for e in self.journal if e[0] == _EVT_CLS]


def _clone_regions(regions):
    cls = type(regions)
    other = object.__new__(cls)
    for name in cls.__slots__:
        value = getattr(regions, name)
        setattr(other, name, list(value) if isinstance(value, list) else value)
    return other
