"""Per-packet forwarding-loop detection state.

A packet carries exactly two fields: the id of one previously visited node
(the tortoise) and a hop count. Every node that forwards the packet
increments the hop count, reports a loop if its own id matches the
tortoise, and otherwise overwrites the tortoise with its own id whenever
the new hop count is a power of two. The packet is the only state; nodes
cache nothing.
"""

from typing import NamedTuple

NODE_ID_BITS = 64
MAX_NODE_ID = 2**NODE_ID_BITS - 1
MAX_HOPS = 2**16 - 1


class HopOverflow(OverflowError):
    """Hop counter would exceed its 16-bit width; the packet must be dropped.

    This is a TTL-style expiry, not a detected loop. Wrapping is never an
    option because it would corrupt the power-of-two snapshot schedule.
    """


class LoopHeader(NamedTuple):
    """In-band loop-detection state: tortoise node id plus hop count."""

    tortoise: int
    hops: int


class ReceiveOutcome(NamedTuple):
    """Result of one receive step.

    ``updated_header`` is None exactly when ``loop_detected`` is true; a
    detected packet is handed to forwarding policy, not forwarded again.
    """

    loop_detected: bool
    updated_header: LoopHeader | None


def is_power_of_two(hops: int) -> bool:
    """True iff ``hops`` is one of 1, 2, 4, ..., 32768.

    The bit trick ``hops & (hops - 1) == 0`` alone would classify 0 as a
    power of two; 0 is defined false so the predicate is total for external
    callers. The receive path never evaluates it at 0 because the hop count
    is incremented before the test.
    """
    return hops != 0 and (hops & (hops - 1)) == 0


def initialize_packet(origin: int) -> LoopHeader:
    """Fresh header at the originating node: tortoise = origin, hops = 0."""
    _check_node_id(origin)
    return LoopHeader(tortoise=origin, hops=0)


def receive_packet(header: LoopHeader, receiver: int) -> ReceiveOutcome:
    """Process one forwarding step at the node ``receiver``.

    Increments the hop count, then compares the tortoise against the
    receiving node's id, and only then takes the power-of-two snapshot.
    The comparison must precede the snapshot: a revisit that lands exactly
    on a snapshot hop is still caught, and a node whose next hop is itself
    is caught at hop 1 against the origin's own initialization snapshot.

    Raises HopOverflow when the hop counter is already saturated; whether
    a detected loop means drop, log, or signal upstream is forwarding
    policy and out of scope here.
    """
    _check_node_id(receiver)
    if header.hops >= MAX_HOPS:
        raise HopOverflow(f"hop counter saturated at {header.hops}")
    hops = header.hops + 1
    if header.tortoise == receiver:
        return ReceiveOutcome(True, None)
    if is_power_of_two(hops):
        return ReceiveOutcome(False, LoopHeader(receiver, hops))
    return ReceiveOutcome(False, LoopHeader(header.tortoise, hops))


def _check_node_id(value: int) -> None:
    if not 0 <= value <= MAX_NODE_ID:
        raise ValueError(f"node id out of range: {value!r}")
