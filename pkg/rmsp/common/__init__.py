"""Shared error envelope and CLI error mapping."""
