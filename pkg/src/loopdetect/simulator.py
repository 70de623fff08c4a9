"""Deterministic single-packet forwarding simulation.

Topologies are functional graphs: every node has exactly one successor
(a per-destination next hop) or a terminal, so a packet's path is a walk
that either exits the network or enters a cycle. The simulator drives
core.receive_packet hop by hop and records a full trace. Runs are
synchronous and single-packet; queuing, loss, and reordering do not
affect what is being checked here.

Each run owns its graph and trace, so independent runs may execute in
parallel without synchronization.
"""

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Sequence

from .core import MAX_NODE_ID, HopOverflow, initialize_packet, is_power_of_two, receive_packet


class BadArity(ValueError):
    """Explicit id list does not match the requested topology size."""


class BadIndex(IndexError):
    """Node index outside the graph, or positions that must differ do not."""


@dataclass(frozen=True)
class FunctionalGraph:
    """Forwarding topology: node ids by index, one successor (or None) each.

    Ids repeat only if a duplicate was injected on purpose; the builders
    below always draw them distinct.
    """

    ids: tuple[int, ...]
    succ: tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "succ", tuple(self.succ))
        n = len(self.ids)
        if n < 1:
            raise ValueError("graph needs at least one node")
        if len(self.succ) != n:
            raise ValueError("ids and succ must have equal length")
        for value in self.ids:
            if not 0 <= value <= MAX_NODE_ID:
                raise ValueError(f"node id out of range: {value!r}")
        for nxt in self.succ:
            if nxt is not None and not 0 <= nxt < n:
                raise ValueError(f"successor index out of range: {nxt!r}")

    def __len__(self) -> int:
        return len(self.ids)


class Outcome(Enum):
    DETECTED = "detected"
    TERMINATED = "terminated"
    BUDGET_EXHAUSTED = "budget_exhausted"
    HOP_OVERFLOW = "hop_overflow"


class TraceStep(NamedTuple):
    hop: int
    node: int
    tortoise_after: int
    snapshot_taken: bool


@dataclass(frozen=True)
class SimTrace:
    """Step-by-step record of one run plus its outcome.

    ``at_hop`` is the detection hop for DETECTED, and for TERMINATED the
    index of the hop that would have left the graph; it is None for the
    budget and overflow outcomes.
    """

    steps: tuple[TraceStep, ...]
    outcome: Outcome
    at_hop: Optional[int]


def build_rho(
    mu: int,
    lam: int,
    ids: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> FunctionalGraph:
    """Tail of ``mu`` nodes feeding a cycle of ``lam`` nodes.

    Node 0 is the walk's start; the cycle is mu -> mu+1 -> ... -> mu+lam-1
    -> mu. Ids may be given explicitly (length must be mu + lam) or are
    drawn distinct from the 64-bit space using ``seed``.
    """
    if mu < 0:
        raise ValueError("tail length must be >= 0")
    if lam < 1:
        raise ValueError("cycle length must be >= 1")
    n = mu + lam
    node_ids = _resolve_ids(n, ids, seed)
    succ = tuple(range(1, n)) + (mu,)
    return FunctionalGraph(node_ids, succ)


def build_chain(
    length: int,
    ids: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
) -> FunctionalGraph:
    """Loop-free path of ``length`` nodes ending in a terminal."""
    if length < 1:
        raise ValueError("chain length must be >= 1")
    node_ids = _resolve_ids(length, ids, seed)
    succ = tuple(range(1, length)) + (None,)
    return FunctionalGraph(node_ids, succ)


def random_functional_graph(
    n: int, terminal_prob: float, seed: Optional[int] = None
) -> FunctionalGraph:
    """Uniform random successor per node, replaced by a terminal with
    probability ``terminal_prob``. Deterministic for a fixed seed."""
    if n < 1:
        raise ValueError("need at least one node")
    if not 0.0 <= terminal_prob <= 1.0:
        raise ValueError("terminal_prob must be within [0, 1]")
    rng = random.Random(seed)
    succ: list[Optional[int]] = []
    for _ in range(n):
        if rng.random() < terminal_prob:
            succ.append(None)
        else:
            succ.append(rng.randrange(n))
    return FunctionalGraph(tuple(_draw_distinct_ids(rng, n)), tuple(succ))


def inject_duplicate(
    graph: FunctionalGraph, position_a: int, position_b: int
) -> FunctionalGraph:
    """Copy of ``graph`` with node position_b's id replaced by position_a's.

    Positional so false-positive geometry is precisely controllable: the
    duplicate fires only if position_a's id is still the tortoise when the
    packet reaches position_b.
    """
    n = len(graph)
    for position in (position_a, position_b):
        if not 0 <= position < n:
            raise BadIndex(f"position {position} outside graph of {n} nodes")
    if position_a == position_b:
        raise BadIndex("duplicate positions must differ")
    ids = list(graph.ids)
    ids[position_b] = ids[position_a]
    return FunctionalGraph(tuple(ids), graph.succ)


def simulate(
    graph: FunctionalGraph, start: int, max_hops: Optional[int] = None
) -> SimTrace:
    """Forward one packet from ``start`` until it loops, exits, or expires.

    Initializes the header at the start node, then repeatedly moves to the
    successor and applies receive_packet. All terminal conditions are
    encoded in the outcome, never raised. The default budget of
    4 * (n + 1) hops sits comfortably above the detection bound, so
    BUDGET_EXHAUSTED under the default always indicates a bug.
    """
    n = len(graph)
    if not 0 <= start < n:
        raise BadIndex(f"start {start} outside graph of {n} nodes")
    if max_hops is None:
        max_hops = 4 * (n + 1)
    if max_hops < 1:
        raise ValueError("max_hops must be >= 1")
    ids = graph.ids
    succ = graph.succ
    header = initialize_packet(ids[start])
    steps: list[TraceStep] = []
    pos = start
    for hop in range(1, max_hops + 1):
        nxt = succ[pos]
        if nxt is None:
            return SimTrace(tuple(steps), Outcome.TERMINATED, hop)
        node_id = ids[nxt]
        try:
            detected, updated = receive_packet(header, node_id)
        except HopOverflow:
            return SimTrace(tuple(steps), Outcome.HOP_OVERFLOW, None)
        if detected:
            steps.append(TraceStep(hop, node_id, header.tortoise, False))
            return SimTrace(tuple(steps), Outcome.DETECTED, hop)
        header = updated
        steps.append(TraceStep(hop, node_id, header.tortoise, is_power_of_two(hop)))
        pos = nxt
    return SimTrace(tuple(steps), Outcome.BUDGET_EXHAUSTED, None)


def hop_limit_baseline(structure, ttl: int) -> int:
    """Hop at which a pure hop-limit scheme halts a looping packet.

    The packet loops until the budget is spent, so the answer is exactly
    ``ttl`` regardless of the loop's shape.
    """
    if ttl < 1:
        raise ValueError("ttl must be >= 1")
    if structure.lam < 1:
        raise ValueError("cycle length must be >= 1")
    return ttl


TRACE_CSV_HEADER = "hop,node_id_hex,tortoise_hex,snapshot,outcome"


def trace_csv(trace: SimTrace) -> str:
    """Render a trace as CSV, one row per step; the final row carries the
    outcome. Node ids print as 16-digit lowercase hex."""
    label = _outcome_label(trace)
    lines = [TRACE_CSV_HEADER]
    if not trace.steps:
        lines.append(f",,,,{label}")
    last = len(trace.steps) - 1
    for i, step in enumerate(trace.steps):
        lines.append(
            f"{step.hop},{step.node:016x},{step.tortoise_after:016x},"
            f"{int(step.snapshot_taken)},{label if i == last else ''}"
        )
    return "\n".join(lines) + "\n"


def _outcome_label(trace: SimTrace) -> str:
    if trace.at_hop is None:
        return trace.outcome.value
    return f"{trace.outcome.value}({trace.at_hop})"


def _resolve_ids(
    n: int, ids: Optional[Sequence[int]], seed: Optional[int]
) -> tuple[int, ...]:
    if ids is not None:
        explicit = tuple(ids)
        if len(explicit) != n:
            raise BadArity(f"need {n} ids, got {len(explicit)}")
        return explicit
    return tuple(_draw_distinct_ids(random.Random(seed), n))


def _draw_distinct_ids(rng: random.Random, count: int) -> Iterable[int]:
    drawn: list[int] = []
    seen: set[int] = set()
    while len(drawn) < count:
        value = rng.getrandbits(64)
        if value not in seen:
            seen.add(value)
            drawn.append(value)
    return drawn
