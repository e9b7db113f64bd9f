"""Netpbm codecs: binary PPM (P6) for RGB images and PBM (P4) for masks.

Images are numpy arrays: RGB rasters are ``(h, w, 3)`` uint8, masks are
``(h, w)`` bool.  The encoders emit the canonical header form
``P6\\n<w> <h>\\n255\\n`` so encode/decode round-trips are byte-exact.
"""

import numpy as np

from ..errors import CaneSentinelError


class PpmError(CaneSentinelError):
    """Base for netpbm decode failures."""


class BadMagic(PpmError):
    pass


class BadHeader(PpmError):
    pass


class MaxvalUnsupported(PpmError):
    pass


class TruncatedPixelData(PpmError):
    pass


_WHITESPACE = frozenset(b" \t\n\r\x0b\x0c")
_HASH = ord("#")


def _read_header_tokens(data: bytes, offset: int, count: int):
    """Read whitespace-separated header tokens, skipping ``#`` comments.

    Returns (tokens, offset) where offset points just past the single
    whitespace byte that terminates the header.
    """
    tokens = []
    i = offset
    n = len(data)
    while len(tokens) < count:
        # skip whitespace and comment lines
        while i < n and (data[i] in _WHITESPACE or data[i] == _HASH):
            if data[i] == _HASH:
                while i < n and data[i] != ord("\n"):
                    i += 1
            else:
                i += 1
        start = i
        while i < n and data[i] not in _WHITESPACE and data[i] != _HASH:
            i += 1
        if i == start:
            raise BadHeader("incomplete header")
        tokens.append(data[start:i])
        if len(tokens) == count:
            if i >= n or data[i] not in _WHITESPACE:
                raise BadHeader("missing separator after header")
            i += 1
    return tokens, i


def _int_token(tok: bytes) -> int:
    if not tok.isdigit():
        raise BadHeader(f"non-numeric header field {tok!r}")
    return int(tok)


def load_ppm(data: bytes) -> np.ndarray:
    """Decode a binary PPM (P6, maxval 255) into an (h, w, 3) uint8 array."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise TypeError("load_ppm expects bytes")
    data = bytes(data)
    if data[:2] != b"P6":
        raise BadMagic(f"expected P6 magic, got {data[:2]!r}")
    tokens, offset = _read_header_tokens(data, 2, 3)
    width = _int_token(tokens[0])
    height = _int_token(tokens[1])
    maxval = _int_token(tokens[2])
    if width < 1 or height < 1:
        raise BadHeader(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise MaxvalUnsupported(f"maxval {maxval} unsupported, need 255")
    expected = width * height * 3
    raster = data[offset:]
    if len(raster) < expected:
        raise TruncatedPixelData(f"need {expected} raster bytes, got {len(raster)}")
    if len(raster) > expected:
        raise BadHeader(f"{len(raster) - expected} trailing bytes after raster")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3).copy()


def encode_ppm(img: np.ndarray) -> bytes:
    """Encode an (h, w, 3) uint8 array as canonical binary PPM."""
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3 or img.dtype != np.uint8:
        raise ValueError("encode_ppm expects an (h, w, 3) uint8 array")
    h, w = img.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + img.tobytes()


def load_pbm(data: bytes) -> np.ndarray:
    """Decode a binary PBM (P4) into an (h, w) bool mask (1-bit = True)."""
    data = bytes(data)
    if data[:2] != b"P4":
        raise BadMagic(f"expected P4 magic, got {data[:2]!r}")
    tokens, offset = _read_header_tokens(data, 2, 2)
    width = _int_token(tokens[0])
    height = _int_token(tokens[1])
    if width < 1 or height < 1:
        raise BadHeader(f"bad dimensions {width}x{height}")
    row_bytes = (width + 7) // 8
    expected = row_bytes * height
    raster = data[offset:]
    if len(raster) < expected:
        raise TruncatedPixelData(f"need {expected} raster bytes, got {len(raster)}")
    if len(raster) > expected:
        raise BadHeader(f"{len(raster) - expected} trailing bytes after raster")
    rows = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
    bits = np.unpackbits(rows, axis=1)[:, :width]
    return bits.astype(bool)


def encode_pbm(mask: np.ndarray) -> bytes:
    """Encode an (h, w) bool mask as binary PBM."""
    mask = np.asarray(mask)
    if mask.ndim != 2 or mask.dtype != bool:
        raise ValueError("encode_pbm expects an (h, w) bool array")
    h, w = mask.shape
    packed = np.packbits(mask.astype(np.uint8), axis=1)
    return b"P4\n%d %d\n" % (w, h) + packed.tobytes()
