"""Command middleware."""
