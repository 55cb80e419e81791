"""Subcommands of the qbosonization CLI."""
