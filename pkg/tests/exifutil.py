"""Builder for minimal JPEG files carrying an Exif GPS IFD, for fixtures."""

from __future__ import annotations

import struct


def _rational(value: float, den: int = 10000) -> tuple[int, int]:
    return round(value * den), den


def build_gps_jpeg(
    *,
    lat_dms: tuple[float, float, float] | None = (34.0, 12.0, 36.0),
    lat_ref: str = "N",
    lon_dms: tuple[float, float, float] | None = (118.0, 30.0, 0.0),
    lon_ref: str = "W",
    alt: float | None = 150.0,
    alt_ref: int = 0,
    include_gps_ifd: bool = True,
    zero_denominator: bool = False,
    endian: str = "little",
) -> bytes:
    """Return JPEG bytes with an APP1 Exif segment holding a GPS IFD."""
    order = "<" if endian == "little" else ">"

    def dms_blob(dms):
        out = b""
        for i, v in enumerate(dms):
            num, den = _rational(v)
            if zero_denominator and i == 0:
                den = 0
            out += struct.pack(order + "II", num, den)
        return out

    # TIFF layout: header(8) | IFD0(2+12+4) | GPS IFD(2+n*12+4) | rational data
    gps_ifd_off = 8 + 2 + 12 + 4
    entries = []
    data = b""
    data_off = [0]  # resolved after the GPS IFD size is known

    def add_entry(tag, ftype, count, payload_inline=None, payload_data=None):
        nonlocal data
        if payload_inline is not None:
            raw = payload_inline + b"\0" * (4 - len(payload_inline))
            entries.append((tag, ftype, count, raw))
        else:
            entries.append((tag, ftype, count, len(data)))  # placeholder rel offset
            data += payload_data

    if lat_dms is not None:
        add_entry(1, 2, 2, payload_inline=lat_ref.encode() + b"\0")
        add_entry(2, 5, 3, payload_data=dms_blob(lat_dms))
    if lon_dms is not None:
        add_entry(3, 2, 2, payload_inline=lon_ref.encode() + b"\0")
        add_entry(4, 5, 3, payload_data=dms_blob(lon_dms))
    if alt is not None:
        add_entry(5, 1, 1, payload_inline=bytes([alt_ref]))
        num, den = _rational(abs(alt))
        add_entry(6, 5, 1, payload_data=struct.pack(order + "II", num, den))

    gps_ifd_size = 2 + 12 * len(entries) + 4
    data_base = gps_ifd_off + gps_ifd_size

    tiff = struct.pack(order + "2sHI", b"II" if endian == "little" else b"MM", 42, 8)
    # IFD0: single entry pointing at the GPS IFD (or none to omit GPS).
    if include_gps_ifd:
        tiff += struct.pack(order + "H", 1)
        tiff += struct.pack(order + "HHII", 0x8825, 4, 1, gps_ifd_off)
        tiff += struct.pack(order + "I", 0)
    else:
        tiff += struct.pack(order + "H", 0) + struct.pack(order + "I", 0)
        jpeg_payload = b"Exif\x00\x00" + tiff
        app1 = b"\xff\xe1" + struct.pack(">H", 2 + len(jpeg_payload)) + jpeg_payload
        return b"\xff\xd8" + app1 + b"\xff\xd9"

    tiff += struct.pack(order + "H", len(entries))
    for tag, ftype, count, payload in entries:
        if isinstance(payload, bytes):
            tiff += struct.pack(order + "HHI", tag, ftype, count) + payload
        else:
            tiff += struct.pack(order + "HHII", tag, ftype, count, data_base + payload)
    tiff += struct.pack(order + "I", 0)
    tiff += data

    jpeg_payload = b"Exif\x00\x00" + tiff
    app1 = b"\xff\xe1" + struct.pack(">H", 2 + len(jpeg_payload)) + jpeg_payload
    return b"\xff\xd8" + app1 + b"\xff\xd9"
