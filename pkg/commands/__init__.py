"""Command-line commands package."""
