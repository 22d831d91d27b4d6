"""Verification engine for norm-formula local factors."""

__version__ = "0.1.0"
