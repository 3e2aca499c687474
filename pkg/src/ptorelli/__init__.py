"""Exact computations with homology markings on partitioned surfaces."""

__version__ = "0.1.0"
