"""Shared helpers for paths and number formatting."""
