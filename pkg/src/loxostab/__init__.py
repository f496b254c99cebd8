"""Loxodromic Moebius maps: fixed points, avoided regions and Hyers-Ulam stability."""

__version__ = "0.1.0"
