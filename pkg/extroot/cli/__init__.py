"""Command line interface and run monitoring."""
