"""Projection-profile line and word segmentation."""
