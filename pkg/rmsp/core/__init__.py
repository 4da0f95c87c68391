"""Core utilities (settings, logging)."""
