"""Minimal single-band TIFF reader for radiometric thermal rasters.

Supports classic little- or big-endian TIFF with one sample per pixel,
strip organization, no compression or Deflate, and IEEE float32 or unsigned
16-bit samples (the latter mapped to Celsius through an optional linear
scale/offset). Everything else fails loudly with the offending tag id and
byte offset rather than guessing.

Tag subset: ImageWidth (256), ImageLength (257), BitsPerSample (258),
Compression (259), StripOffsets (273), SamplesPerPixel (277),
StripByteCounts (279), SampleFormat (339). RowsPerStrip is not needed:
strips are decoded in listed order and validated against the pixel count.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .raster import RasterFormatError, ThermalRaster

TAG_IMAGE_WIDTH = 256
TAG_IMAGE_LENGTH = 257
TAG_BITS_PER_SAMPLE = 258
TAG_COMPRESSION = 259
TAG_STRIP_OFFSETS = 273
TAG_SAMPLES_PER_PIXEL = 277
TAG_STRIP_BYTE_COUNTS = 279
TAG_SAMPLE_FORMAT = 339

COMPRESSION_NONE = 1
COMPRESSION_DEFLATE_ADOBE = 8
COMPRESSION_DEFLATE_OLD = 32946

SAMPLEFORMAT_UINT = 1
SAMPLEFORMAT_IEEEFP = 3

# TIFF field types we accept, with element size in bytes.
_TYPE_SIZES = {1: 1, 3: 2, 4: 4}
_TYPE_CODES = {1: "B", 3: "H", 4: "I"}


def _read_entry_values(buf: bytes, order: str, entry_off: int) -> tuple[int, list[int]]:
    """Decode one 12-byte IFD entry, following the offset for spilled values."""
    tag, ftype, count = struct.unpack_from(order + "HHI", buf, entry_off)
    if ftype not in _TYPE_SIZES:
        raise RasterFormatError(
            f"unsupported field type {ftype}", offset=entry_off, tag=tag
        )
    size = _TYPE_SIZES[ftype] * count
    if size <= 4:
        value_off = entry_off + 8
    else:
        (value_off,) = struct.unpack_from(order + "I", buf, entry_off + 8)
        if value_off + size > len(buf):
            raise RasterFormatError(
                "value offset past end of file", offset=entry_off, tag=tag
            )
    values = list(struct.unpack_from(order + _TYPE_CODES[ftype] * count, buf, value_off))
    return tag, values


def load_thermal_tiff(
    path: str | Path,
    *,
    scale: float | None = None,
    offset: float | None = None,
    nodata: float | None = None,
) -> ThermalRaster:
    """Load a single-band radiometric thermal TIFF as a ThermalRaster.

    ``scale``/``offset`` map raw samples to Celsius (``raw * scale + offset``),
    which is how unsigned 16-bit rasters encode temperature. ``nodata`` is
    compared against the raw sample value before conversion; matching pixels
    become invalid.
    """
    buf = Path(path).read_bytes()
    if len(buf) < 8:
        raise RasterFormatError("file too short for a TIFF header", offset=0)
    byte_order = buf[0:2]
    if byte_order == b"II":
        order = "<"
    elif byte_order == b"MM":
        order = ">"
    else:
        raise RasterFormatError(f"not a TIFF: byte order mark {byte_order!r}", offset=0)
    magic, ifd_off = struct.unpack_from(order + "HI", buf, 2)
    if magic != 42:
        raise RasterFormatError(f"not a classic TIFF: magic {magic}", offset=2)
    if ifd_off + 2 > len(buf):
        raise RasterFormatError("IFD offset past end of file", offset=4)

    (n_entries,) = struct.unpack_from(order + "H", buf, ifd_off)
    if ifd_off + 2 + 12 * n_entries > len(buf):
        raise RasterFormatError("IFD truncated", offset=ifd_off)

    tags: dict[int, list[int]] = {}
    entry_offsets: dict[int, int] = {}
    for i in range(n_entries):
        entry_off = ifd_off + 2 + 12 * i
        tag, values = _read_entry_values(buf, order, entry_off)
        tags[tag] = values
        entry_offsets[tag] = entry_off

    def _require(tag: int, name: str) -> list[int]:
        if tag not in tags:
            raise RasterFormatError(f"missing required tag {name}", offset=ifd_off, tag=tag)
        return tags[tag]

    width = _require(TAG_IMAGE_WIDTH, "ImageWidth")[0]
    height = _require(TAG_IMAGE_LENGTH, "ImageLength")[0]
    if width < 1 or height < 1:
        raise RasterFormatError(f"degenerate dimensions {width}x{height}", offset=ifd_off)

    samples = tags.get(TAG_SAMPLES_PER_PIXEL, [1])[0]
    if samples != 1:
        raise RasterFormatError(
            f"multi-band unsupported (SamplesPerPixel={samples})",
            offset=entry_offsets.get(TAG_SAMPLES_PER_PIXEL, ifd_off),
            tag=TAG_SAMPLES_PER_PIXEL,
        )

    bits = _require(TAG_BITS_PER_SAMPLE, "BitsPerSample")[0]
    fmt = tags.get(TAG_SAMPLE_FORMAT, [SAMPLEFORMAT_UINT])[0]
    if (bits, fmt) == (32, SAMPLEFORMAT_IEEEFP):
        sample_dtype = np.dtype(order + "f4")
    elif (bits, fmt) == (16, SAMPLEFORMAT_UINT):
        sample_dtype = np.dtype(order + "u2")
    else:
        raise RasterFormatError(
            f"unsupported sample layout: {bits}-bit, SampleFormat={fmt}",
            offset=entry_offsets.get(TAG_BITS_PER_SAMPLE, ifd_off),
            tag=TAG_BITS_PER_SAMPLE,
        )

    compression = tags.get(TAG_COMPRESSION, [COMPRESSION_NONE])[0]
    if compression not in (COMPRESSION_NONE, COMPRESSION_DEFLATE_ADOBE, COMPRESSION_DEFLATE_OLD):
        raise RasterFormatError(
            f"unsupported compression {compression}",
            offset=entry_offsets.get(TAG_COMPRESSION, ifd_off),
            tag=TAG_COMPRESSION,
        )

    strip_offsets = _require(TAG_STRIP_OFFSETS, "StripOffsets")
    strip_counts = _require(TAG_STRIP_BYTE_COUNTS, "StripByteCounts")
    if len(strip_offsets) != len(strip_counts):
        raise RasterFormatError(
            f"{len(strip_offsets)} strip offsets vs {len(strip_counts)} byte counts",
            offset=entry_offsets[TAG_STRIP_BYTE_COUNTS],
            tag=TAG_STRIP_BYTE_COUNTS,
        )

    chunks: list[bytes] = []
    for strip_off, strip_len in zip(strip_offsets, strip_counts):
        if strip_off + strip_len > len(buf):
            raise RasterFormatError(
                "strip extends past end of file", offset=strip_off, tag=TAG_STRIP_OFFSETS
            )
        raw = buf[strip_off : strip_off + strip_len]
        if compression == COMPRESSION_NONE:
            chunks.append(raw)
        else:
            try:
                chunks.append(zlib.decompress(raw))
            except zlib.error as exc:
                raise RasterFormatError(
                    f"bad Deflate strip: {exc}", offset=strip_off, tag=TAG_COMPRESSION
                ) from exc

    data = b"".join(chunks)
    expected = width * height * sample_dtype.itemsize
    if len(data) != expected:
        raise RasterFormatError(
            f"dimension/strip mismatch: decoded {len(data)} bytes, "
            f"expected {expected} for {width}x{height}",
            offset=entry_offsets[TAG_STRIP_OFFSETS],
            tag=TAG_STRIP_OFFSETS,
        )

    raw_samples = np.frombuffer(data, dtype=sample_dtype).reshape(height, width)
    valid = np.ones(raw_samples.shape, dtype=bool)
    if nodata is not None:
        valid &= raw_samples != np.asarray(nodata, dtype=sample_dtype)

    temps = raw_samples.astype(np.float64)
    if scale is not None or offset is not None:
        temps = temps * float(scale if scale is not None else 1.0) + float(offset or 0.0)
    return ThermalRaster.from_array(temps, valid)
