"""Wire form of the loop header: 14 bytes, fixed layout, network byte order.

    bytes [0, 8)    tortoise   unsigned 64-bit big-endian
    bytes [8, 10)   hops       unsigned 16-bit big-endian
    bytes [10, 14)  nonce      unsigned 32-bit big-endian

No padding, no optional fields, no version byte. Only tortoise and hops
are loop-prevention state; the nonce rides along so every hop can derive
the packet digest for virtual node ids, and it is an input to that
digest, never excluded from it.
"""

import struct

from .core import MAX_HOPS, MAX_NODE_ID, LoopHeader
from .vid import MAX_NONCE

HEADER_LEN = 14
_LAYOUT = struct.Struct(">QHI")


class Truncated(ValueError):
    """Fewer than 14 bytes available to decode."""


def encode(header: LoopHeader, nonce: int) -> bytes:
    """Pack a header and nonce into the 14-byte wire form."""
    if not 0 <= header.tortoise <= MAX_NODE_ID:
        raise ValueError(f"tortoise out of range: {header.tortoise!r}")
    if not 0 <= header.hops <= MAX_HOPS:
        raise ValueError(f"hops out of range: {header.hops!r}")
    if not 0 <= nonce <= MAX_NONCE:
        raise ValueError(f"nonce out of range: {nonce!r}")
    return _LAYOUT.pack(header.tortoise, header.hops, nonce)


def decode(wire: bytes) -> tuple[LoopHeader, int]:
    """Inverse of encode on the first 14 bytes; trailing bytes are payload
    and are not consumed."""
    if len(wire) < HEADER_LEN:
        raise Truncated(f"need {HEADER_LEN} bytes, got {len(wire)}")
    tortoise, hops, nonce = _LAYOUT.unpack_from(wire, 0)
    return LoopHeader(tortoise, hops), nonce
