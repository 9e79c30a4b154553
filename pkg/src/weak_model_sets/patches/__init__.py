"""Patches, their frequencies and the patch counting entropy."""
