"""UAV height above ground level from GPS metadata, a geoid grid, and a DEM.

The chain is: EXIF GPS gives the ellipsoidal altitude h, a geoid undulation
grid converts it to orthometric height (h - N), and an SRTM elevation tile
supplies the local ground elevation, so AGL = (h - N) - ground. AGL is then
binned into the flight-altitude answer categories.
"""

from __future__ import annotations

import json
import math
import re
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# DJI M30T thermal camera defaults used when EXIF carries no overrides.
DEFAULT_FOV_DIAG_DEG = 61.0
DEFAULT_THERMAL_WIDTH_PX = 640

SRTM_VOID = -32768

ALTITUDE_BIN_LABELS = ("0–50 m", "50–100 m", "100–150 m", ">150 m")


class GeodesyError(Exception):
    """Base error for geodesy lookups and metadata parsing."""


class OutsideCoverageError(GeodesyError):
    """Query point not covered by the loaded grid or tile set."""


class DemVoidError(GeodesyError):
    """An SRTM void cell participates in the interpolation."""


class ExifError(GeodesyError):
    """JPEG lacks usable GPS metadata or carries malformed values."""


@dataclass(frozen=True)
class FrameMeta:
    """Per-frame UAV metadata driving geodesy and ground sampling distance."""

    lat: float
    lon: float
    alt_ellipsoidal_m: float
    fov_diag_deg: float = DEFAULT_FOV_DIAG_DEG
    thermal_width_px: int = DEFAULT_THERMAL_WIDTH_PX

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon < 180.0:
            raise ValueError(f"longitude {self.lon} outside [-180, 180)")
        if not 0.0 < self.fov_diag_deg < 180.0:
            raise ValueError(f"diagonal FOV {self.fov_diag_deg} outside (0, 180)")
        if self.thermal_width_px < 1:
            raise ValueError("thermal width must be >= 1 px")


def _bilinear(q00: float, q10: float, q01: float, q11: float, fx: float, fy: float) -> float:
    """Interpolate within a unit cell; q``xy`` with x east, y north."""
    bottom = q00 * (1.0 - fx) + q10 * fx
    top = q01 * (1.0 - fx) + q11 * fx
    return bottom * (1.0 - fy) + top * fy


@dataclass(frozen=True)
class GeoidGrid:
    """Regular lat/lon grid of geoid undulations (meters above the ellipsoid).

    Row 0 is the southernmost row and column 0 the westernmost; rows step
    north and columns east by ``spacing_deg``.
    """

    origin_lat: float
    origin_lon: float
    spacing_deg: float
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.spacing_deg <= 0:
            raise ValueError("grid spacing must be positive")
        if self.values.ndim != 2 or min(self.values.shape) < 2:
            raise ValueError("geoid grid needs at least 2x2 nodes")
        self.values.setflags(write=False)

    @classmethod
    def from_json(cls, path: str | Path) -> GeoidGrid:
        """Load a grid from JSON; values inline or in a sidecar binary file."""
        path = Path(path)
        doc = json.loads(path.read_text())
        nrows, ncols = int(doc["nrows"]), int(doc["ncols"])
        if "values" in doc:
            values = np.asarray(doc["values"], dtype=np.float64).reshape(nrows, ncols)
        else:
            endian = "<" if doc.get("endian", "little") == "little" else ">"
            blob = (path.parent / doc["data"]).read_bytes()
            values = np.frombuffer(blob, dtype=endian + "f4").astype(np.float64)
            values = values.reshape(nrows, ncols)
        return cls(
            origin_lat=float(doc["origin_lat"]),
            origin_lon=float(doc["origin_lon"]),
            spacing_deg=float(doc["spacing_deg"]),
            values=values,
        )

    def _fractional_index(self, lat: float, lon: float) -> tuple[int, int, float, float]:
        nrows, ncols = self.values.shape
        fy = (lat - self.origin_lat) / self.spacing_deg
        fx = (lon - self.origin_lon) / self.spacing_deg
        if fy < 0 or fy > nrows - 1 or fx < 0 or fx > ncols - 1:
            raise OutsideCoverageError(
                f"point ({lat}, {lon}) outside geoid grid coverage"
            )
        iy, ix = min(int(fy), nrows - 2), min(int(fx), ncols - 2)
        return iy, ix, fx - ix, fy - iy


def geoid_undulation(grid: GeoidGrid, lat: float, lon: float) -> float:
    """Bilinear geoid undulation N at (lat, lon), in meters."""
    iy, ix, fx, fy = grid._fractional_index(lat, lon)
    v = grid.values
    return _bilinear(v[iy, ix], v[iy, ix + 1], v[iy + 1, ix], v[iy + 1, ix + 1], fx, fy)


_HGT_NAME = re.compile(r"^([NS])(\d{2})([EW])(\d{3})$")


@dataclass(frozen=True)
class DemTile:
    """One SRTM .hgt tile: a square grid of orthometric elevations.

    ``anchor`` is the integer-degree south-west corner encoded in the file
    name (e.g. N34W119). Rows run north to south per the SRTM convention.
    """

    anchor_lat: int
    anchor_lon: int
    elevations: np.ndarray  # int16, (n, n) with n in {1201, 3601}

    def __post_init__(self) -> None:
        n = self.elevations.shape[0]
        if self.elevations.shape != (n, n) or n not in (1201, 3601):
            raise ValueError(f"SRTM tile must be 1201^2 or 3601^2, got {self.elevations.shape}")
        self.elevations.setflags(write=False)

    @classmethod
    def from_hgt(cls, path: str | Path) -> DemTile:
        path = Path(path)
        m = _HGT_NAME.match(path.stem)
        if not m:
            raise GeodesyError(f"cannot parse tile anchor from file name {path.name!r}")
        lat = int(m.group(2)) * (1 if m.group(1) == "N" else -1)
        lon = int(m.group(4)) * (1 if m.group(3) == "E" else -1)
        blob = path.read_bytes()
        n_cells = len(blob) // 2
        side = int(math.isqrt(n_cells))
        if side * side * 2 != len(blob) or side not in (1201, 3601):
            raise GeodesyError(f"{path.name}: unexpected size {len(blob)} bytes")
        grid = np.frombuffer(blob, dtype=">i2").reshape(side, side)
        return cls(anchor_lat=lat, anchor_lon=lon, elevations=grid)


class DemTileSet:
    """Lazy directory-backed collection of SRTM tiles keyed by anchor."""

    def __init__(self, directory: str | Path | None = None, tiles: list[DemTile] | None = None):
        self._dir = Path(directory) if directory is not None else None
        self._tiles: dict[tuple[int, int], DemTile] = {}
        for t in tiles or []:
            self._tiles[(t.anchor_lat, t.anchor_lon)] = t

    @staticmethod
    def _tile_name(key: tuple[int, int]) -> str:
        ns = "N" if key[0] >= 0 else "S"
        ew = "E" if key[1] >= 0 else "W"
        return f"{ns}{abs(key[0]):02d}{ew}{abs(key[1]):03d}.hgt"

    def _lookup(self, key: tuple[int, int]) -> DemTile | None:
        if key not in self._tiles:
            if self._dir is None:
                return None
            path = self._dir / self._tile_name(key)
            if not path.exists():
                return None
            self._tiles[key] = DemTile.from_hgt(path)
        return self._tiles[key]

    def tile_for(self, lat: float, lon: float) -> DemTile:
        # Tiles share their edge rows/columns, so a query exactly on a tile
        # boundary is also covered by the tile south/west of it.
        lat_keys = [math.floor(lat)]
        lon_keys = [math.floor(lon)]
        if lat == math.floor(lat):
            lat_keys.append(math.floor(lat) - 1)
        if lon == math.floor(lon):
            lon_keys.append(math.floor(lon) - 1)
        for klat in lat_keys:
            for klon in lon_keys:
                tile = self._lookup((klat, klon))
                if tile is not None:
                    return tile
        primary = (math.floor(lat), math.floor(lon))
        raise OutsideCoverageError(f"missing DEM tile {self._tile_name(primary)}")


def dem_elevation(tiles: DemTileSet, lat: float, lon: float) -> float:
    """Bilinear SRTM ground elevation at (lat, lon), in meters.

    Raises DemVoidError when any of the four interpolation nodes is the SRTM
    void marker.
    """
    tile = tiles.tile_for(lat, lon)
    n = tile.elevations.shape[0]
    # Row 0 is the tile's north edge; columns run west to east.
    fx = (lon - tile.anchor_lon) * (n - 1)
    fy = (tile.anchor_lat + 1.0 - lat) * (n - 1)
    fx = min(max(fx, 0.0), n - 1.0)
    fy = min(max(fy, 0.0), n - 1.0)
    ix, iy = min(int(fx), n - 2), min(int(fy), n - 2)
    quad = tile.elevations[iy : iy + 2, ix : ix + 2]
    if (quad == SRTM_VOID).any():
        raise DemVoidError(f"DEM void among interpolation nodes at ({lat}, {lon})")
    # q00 at (iy+1, ix) is the south-west node since rows run north to south.
    return _bilinear(
        float(quad[1, 0]),
        float(quad[1, 1]),
        float(quad[0, 0]),
        float(quad[0, 1]),
        fx - ix,
        (iy + 1) - fy,
    )


def agl(meta: FrameMeta, geoid: GeoidGrid, dem: DemTileSet) -> float:
    """UAV height above ground: (h - N) - ground elevation, in meters.

    May be negative when metadata or terrain data are inconsistent; callers
    should treat negative values as suspect rather than clamping them.
    """
    n = geoid_undulation(geoid, meta.lat, meta.lon)
    ground = dem_elevation(dem, meta.lat, meta.lon)
    return (meta.alt_ellipsoidal_m - n) - ground


@dataclass(frozen=True)
class AltitudeBin:
    """Flight-altitude category plus a flag for physically suspect input."""

    label: str
    suspect: bool = False


def altitude_bin(agl_m: float) -> AltitudeBin:
    """Bin AGL into half-open categories [0,50), [50,100), [100,150), [150,inf).

    Negative AGL maps to the lowest bin with ``suspect`` set.
    """
    if not math.isfinite(agl_m):
        raise ValueError(f"AGL must be finite, got {agl_m}")
    if agl_m < 0:
        return AltitudeBin(ALTITUDE_BIN_LABELS[0], suspect=True)
    if agl_m < 50.0:
        return AltitudeBin(ALTITUDE_BIN_LABELS[0])
    if agl_m < 100.0:
        return AltitudeBin(ALTITUDE_BIN_LABELS[1])
    if agl_m < 150.0:
        return AltitudeBin(ALTITUDE_BIN_LABELS[2])
    return AltitudeBin(ALTITUDE_BIN_LABELS[3])


# --- EXIF GPS extraction ----------------------------------------------------

_GPS_IFD_POINTER = 0x8825
_GPS_LAT_REF, _GPS_LAT = 1, 2
_GPS_LON_REF, _GPS_LON = 3, 4
_GPS_ALT_REF, _GPS_ALT = 5, 6


def _exif_value(buf: bytes, order: str, tiff_base: int, entry_off: int):
    tag, ftype, count = struct.unpack_from(order + "HHI", buf, entry_off)
    sizes = {1: 1, 2: 1, 3: 2, 4: 4, 5: 8}
    if ftype not in sizes:
        return tag, None
    total = sizes[ftype] * count
    if total <= 4:
        value_off = entry_off + 8
    else:
        (rel,) = struct.unpack_from(order + "I", buf, entry_off + 8)
        value_off = tiff_base + rel
    if ftype == 2:  # ASCII
        raw = buf[value_off : value_off + count]
        return tag, raw.split(b"\0", 1)[0].decode("ascii", "replace")
    if ftype == 5:  # RATIONAL
        vals = []
        for i in range(count):
            num, den = struct.unpack_from(order + "II", buf, value_off + 8 * i)
            if den == 0:
                raise ExifError(f"zero-denominator rational in GPS tag {tag}")
            vals.append(num / den)
        return tag, vals
    code = {1: "B", 3: "H", 4: "I"}[ftype]
    return tag, list(struct.unpack_from(order + code * count, buf, value_off))


def _parse_ifd(buf: bytes, order: str, tiff_base: int, ifd_off: int) -> dict[int, object]:
    (n,) = struct.unpack_from(order + "H", buf, tiff_base + ifd_off)
    out = {}
    for i in range(n):
        entry_off = tiff_base + ifd_off + 2 + 12 * i
        tag, value = _exif_value(buf, order, tiff_base, entry_off)
        if value is not None:
            out[tag] = value
    return out


def _dms_to_degrees(dms: list[float], ref: str) -> float:
    if len(dms) != 3:
        raise ExifError(f"expected 3 DMS rationals, got {len(dms)}")
    deg = dms[0] + dms[1] / 60.0 + dms[2] / 3600.0
    return -deg if ref in ("S", "W") else deg


def parse_exif_gps(
    jpeg: str | Path,
    *,
    fov_diag_deg: float = DEFAULT_FOV_DIAG_DEG,
    thermal_width_px: int = DEFAULT_THERMAL_WIDTH_PX,
) -> FrameMeta:
    """Extract GPS position and altitude from a JPEG's Exif APP1 segment.

    Altitude sign follows GPSAltitudeRef (1 = below the reference surface).
    Camera FOV and thermal width come from the keyword defaults since the GPS
    IFD does not carry them.
    """
    buf = Path(jpeg).read_bytes()
    if buf[:2] != b"\xff\xd8":
        raise ExifError("not a JPEG (missing SOI marker)")

    pos = 2
    tiff_base = None
    while pos + 4 <= len(buf):
        if buf[pos] != 0xFF:
            raise ExifError(f"bad JPEG marker at byte {pos}")
        marker = buf[pos + 1]
        if marker in (0xD8, 0xD9) or 0xD0 <= marker <= 0xD7:
            pos += 2
            continue
        if marker == 0xDA:  # start of scan, no Exif beyond this point
            break
        (seg_len,) = struct.unpack_from(">H", buf, pos + 2)
        if marker == 0xE1 and buf[pos + 4 : pos + 10] == b"Exif\x00\x00":
            tiff_base = pos + 10
            break
        pos += 2 + seg_len
    if tiff_base is None:
        raise ExifError("no APP1 Exif segment found")

    byte_order = buf[tiff_base : tiff_base + 2]
    if byte_order == b"II":
        order = "<"
    elif byte_order == b"MM":
        order = ">"
    else:
        raise ExifError(f"bad TIFF byte order in Exif: {byte_order!r}")
    magic, ifd0_off = struct.unpack_from(order + "HI", buf, tiff_base + 2)
    if magic != 42:
        raise ExifError(f"bad TIFF magic in Exif: {magic}")

    ifd0 = _parse_ifd(buf, order, tiff_base, ifd0_off)
    gps_ptr = ifd0.get(_GPS_IFD_POINTER)
    if not gps_ptr:
        raise ExifError("no GPS metadata (missing GPS IFD)")
    gps = _parse_ifd(buf, order, tiff_base, int(gps_ptr[0]))

    try:
        lat = _dms_to_degrees(gps[_GPS_LAT], str(gps[_GPS_LAT_REF]))
        lon = _dms_to_degrees(gps[_GPS_LON], str(gps[_GPS_LON_REF]))
        alt = float(gps[_GPS_ALT][0])
    except KeyError as exc:
        raise ExifError(f"no GPS metadata (missing GPS tag {exc.args[0]})") from exc
    alt_ref = gps.get(_GPS_ALT_REF, [0])
    if alt_ref and alt_ref[0] == 1:
        alt = -alt
    return FrameMeta(
        lat=lat,
        lon=lon,
        alt_ellipsoidal_m=alt,
        fov_diag_deg=fov_diag_deg,
        thermal_width_px=thermal_width_px,
    )
