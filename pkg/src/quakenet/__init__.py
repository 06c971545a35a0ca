"""Earthquake survivability of optical backbones under seismic-zone-aware node relocation."""

__version__ = "0.1.0"
