"""Sweep workflow built on smart_workflow tasks."""
