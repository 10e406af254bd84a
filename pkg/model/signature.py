"""
Tree signatures and the LA-SIG v1 file format.

A signature is the Euler traversal of a rooted tree written as ASCII digits:
'1' for every step down an edge, '0' for every step back up. A tree with n
nodes has a signature of 2(n-1) digits; the empty signature is the
single-node tree.

LA-SIG v1 is one signature line terminated by LF, nothing else.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import MalformedSignature

logger = logging.getLogger(__name__)

DOWN = 0x31  # '1'
UP = 0x30    # '0'


def _check_bytes(raw):
    """
    Validate raw signature bytes.
    Args:
        raw (bytes): ASCII '1'/'0' characters, no line terminator.
    Returns:
        numpy.ndarray: int8 steps, +1 for '1' and -1 for '0'.
    Raises:
        MalformedSignature: on an illegal byte, a prefix with more '0' than
            '1', odd length, or unequal counts.
    """
    codes = np.frombuffer(raw, dtype=np.uint8)
    illegal = (codes != DOWN) & (codes != UP)
    if illegal.any():
        offset = int(np.argmax(illegal))
        raise MalformedSignature(offset, f"illegal byte {raw[offset:offset + 1]!r}")
    steps = np.where(codes == DOWN, 1, -1).astype(np.int8)
    if steps.size == 0:
        return steps
    prefix = np.cumsum(steps, dtype=np.int64)
    below = prefix < 0
    if below.any():
        offset = int(np.argmax(below))
        raise MalformedSignature(offset, "ascends above the root")
    if steps.size % 2:
        raise MalformedSignature(steps.size, "odd length")
    if prefix[-1] != 0:
        raise MalformedSignature(steps.size, f"ends {int(prefix[-1])} levels below the root")
    return steps


@dataclass(frozen=True)
class TreeSignature:
    """
    Validated Euler signature of a rooted tree.
    Attributes:
        bits (str): The '1'/'0' digits, length 2(n-1).
    """
    bits: str = ""

    def __post_init__(self):
        try:
            raw = self.bits.encode("ascii")
        except UnicodeEncodeError as exc:
            raise MalformedSignature(len(self.bits[:exc.start].encode("utf-8")), "non-ASCII character") from None
        _check_bytes(raw)

    @property
    def n(self):
        """Number of nodes of the encoded tree."""
        return len(self.bits) // 2 + 1

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return self.bits

    def steps(self):
        """
        Return the Euler steps of this signature.
        Returns:
            numpy.ndarray: int8 array, +1 for descent and -1 for ascent.
        """
        return np.where(self.codes() == DOWN, 1, -1).astype(np.int8)

    def codes(self):
        """Return the signature as a read-only uint8 array of ASCII codes."""
        return np.frombuffer(self.bits.encode("ascii"), dtype=np.uint8)

    @staticmethod
    def from_codes(codes):
        """
        Build a signature from an array of ASCII codes (as written by the
        tree generator).
        Args:
            codes (numpy.ndarray): uint8 array of 0x31/0x30 values.
        Returns:
            TreeSignature: The validated signature.
        """
        return TreeSignature(np.asarray(codes, dtype=np.uint8).tobytes().decode("ascii"))


def read_signature_file(path):
    """
    Read an LA-SIG v1 file.
    Args:
        path (str | os.PathLike): File to read.
    Returns:
        TreeSignature: The signature on the file's only line.
    Raises:
        MalformedSignature: with the byte offset of the first bad byte, also
            for content after the terminating LF.
    """
    with open(path, "rb") as f:
        raw = f.read()
    line, sep, rest = raw.partition(b"\n")
    if rest:
        raise MalformedSignature(len(line) + 1, "content after the signature line")
    if line.endswith(b"\r"):
        raise MalformedSignature(len(line) - 1, "carriage return before LF")
    _check_bytes(line)
    if not sep:
        logger.debug("%s has no terminating LF", path)
    return TreeSignature(line.decode("ascii"))


def write_signature_file(path, signature):
    """
    Write *signature* as an LA-SIG v1 file (the digits and one LF).
    Args:
        path (str | os.PathLike): Destination file.
        signature (TreeSignature): Signature to write.
    """
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(signature.bits)
        f.write("\n")
