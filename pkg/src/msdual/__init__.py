"""Multisegment duality toolkit."""
