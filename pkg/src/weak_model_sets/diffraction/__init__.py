"""Diffraction intensities and their supports."""
