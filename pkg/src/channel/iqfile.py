"""
IQF1 binary frame format for replay and debugging.

Layout (little-endian):
    magic "IQF1" | u32 M | u64 N | f64 sample_rate | M*N complex samples as interleaved f64 (re, im),
    antenna-major (all of antenna 0, then antenna 1, ...)
"""
import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np

from ..utils.errors import IQFormatError, OutputError
from .frame import IQFrame

logger = logging.getLogger(__name__)

MAGIC = b"IQF1"
HEADER = struct.Struct("<4sIQd")
SAMPLE_DTYPE = np.dtype("<c16")


def encode_iq_frame(frame: IQFrame) -> bytes:
    """Serialize a frame to IQF1 bytes"""
    header = HEADER.pack(MAGIC, frame.n_antennas, frame.n_samples, frame.sample_rate_hz)
    body = np.ascontiguousarray(frame.samples, dtype=SAMPLE_DTYPE).tobytes()
    return header + body


def decode_iq_frame(data: bytes) -> IQFrame:
    """Parse IQF1 bytes back into a frame"""
    if len(data) < HEADER.size:
        raise IQFormatError(f"IQF1 data too short for header: {len(data)} bytes")
    magic, m, n, sample_rate = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise IQFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    expected = HEADER.size + m * n * SAMPLE_DTYPE.itemsize
    if len(data) != expected:
        raise IQFormatError(f"IQF1 frame {m}x{n} needs {expected} bytes, got {len(data)}")
    samples = np.frombuffer(data, dtype=SAMPLE_DTYPE, offset=HEADER.size).reshape(m, n)
    return IQFrame(samples.astype(np.complex128), sample_rate)


def write_iq_frame(frame: IQFrame, path: Union[str, Path]) -> None:
    """Write one frame to an IQF1 file"""
    path = Path(path)
    try:
        path.write_bytes(encode_iq_frame(frame))
    except OSError as e:
        raise OutputError(f"cannot write IQ frame to {path}: {e}") from e
    logger.debug("wrote %r to %s", frame, path)


def read_iq_frame(path: Union[str, Path]) -> IQFrame:
    """Read one frame from an IQF1 file"""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise OutputError(f"cannot read IQ frame from {path}: {e}") from e
    return decode_iq_frame(data)
