"""Acceptance lines collected during the run, printed in the terminal summary."""

LINES = {}
