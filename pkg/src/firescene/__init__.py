"""Deterministic wildfire scene analysis from radiometric thermal imagery.

Converts paired thermal rasters and UAV frame metadata into physically
grounded labels (hotspot inventories, spatial-distribution and intensity
classes, coverage and altitude bins, answer sheets) and audits label sets
with intra-frame logic rules and inter-frame near-duplicate matching.
"""

__version__ = "0.1.0"
